// Microbenchmarks for the hot paths: K-factor evaluation, vertex operator
// assembly, S-matrix path sums and one Lindblad RK4 step.

#include <benchmark/benchmark.h>

#include "ringopo/cavity.hpp"
#include "ringopo/lindblad.hpp"
#include "ringopo/smatrix.hpp"
#include "ringopo/vertex.hpp"

using namespace ringopo;

namespace {

struct Setup {
    cavity::CavityConfig cav;
    cavity::ModeSet modes;
    vertex::CouplingSet couplings;

    Setup() {
        cav.length = 1.0;
        cav.crystal_length = 0.01;
        cav.n_crys = 2.0;
        cav.gamma_prime = 10.0;
        cav.r_photon1 = 0.2;
        cav.r_photon2 = 0.3;
        cav.r_laser = 0.25;
        cav.c = 1.0;
        modes.omega_laser = 4.0;
        modes.omega_res = 4.0;
        modes.delta = 0.1;
        couplings.chi2 = 1e-3;
        couplings.chi4 = 5e-4;
        couplings.eps0 = 1.0;
        couplings.eps = 1.0;
        couplings.e_laser = {1.0, 0.0};
        couplings.a_crys = 1e-4;
        couplings.hbar = 1.0;
        couplings.length = 1.0;
    }
};

void BM_KRoundTripMag2(benchmark::State& state) {
    Setup s;
    double omega = 3.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cavity::k_round_trip_mag2(s.cav, omega, cavity::Mode::photon2));
        omega += 1e-6;
    }
}
BENCHMARK(BM_KRoundTripMag2);

void BM_VertexBruteForce(benchmark::State& state) {
    Setup s;
    const fock::Cutoff cut{static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(vertex::vertex_bruteforce(
            vertex::VertexKind::chi4_p2, cut, s.couplings, s.modes, s.cav, 0.001));
    }
}
BENCHMARK(BM_VertexBruteForce)->Arg(8)->Arg(12)->Arg(16);

void BM_SMatrix(benchmark::State& state) {
    Setup s;
    smatrix::SMatrixParams params;
    params.order_max = static_cast<int>(state.range(0));
    params.m_points = 8;
    const fock::Cutoff cut{16, 16};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            smatrix::s_matrix(s.cav, s.couplings, s.modes, cut, params));
    }
}
BENCHMARK(BM_SMatrix)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LindbladStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const fock::Cutoff cut{n, n};
    lindblad::MasterConfig cfg;
    cfg.gamma1 = 0.5;
    cfg.gamma2 = 1.0;
    cfg.hbar = 1.0;
    cfg.dt = 0.01;
    cfg.t_end = cfg.dt;
    cfg.hamiltonian = lindblad::squeeze_hamiltonian(0.2, 2, cut, 1.0);
    const auto rho0 = lindblad::DensityMatrix::vacuum(cut);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lindblad::evolve(rho0, cfg));
    }
}
BENCHMARK(BM_LindbladStep)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
