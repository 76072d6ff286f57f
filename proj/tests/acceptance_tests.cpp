// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <vector>

#include "ringopo/cavity.hpp"
#include "ringopo/fock.hpp"
#include "ringopo/gensqueeze.hpp"
#include "ringopo/langevin.hpp"
#include "ringopo/lindblad.hpp"
#include "ringopo/observables.hpp"
#include "ringopo/smatrix.hpp"
#include "ringopo/textio.hpp"
#include "ringopo/vertex.hpp"

using namespace ringopo;
using Complex = std::complex<double>;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// shared unit-free setup: hbar = eps = 1, omega_L = 4
struct Setup {
    cavity::CavityConfig cav;
    cavity::ModeSet modes;
    vertex::CouplingSet couplings;

    Setup() {
        cav.length = 1.0;
        cav.crystal_length = 0.01;
        cav.n_crys = 2.0;
        cav.c = 1.0;
        modes.omega_laser = 4.0;
        modes.omega_res = 4.0;
        modes.delta = 0.1;
        couplings.eps0 = 1.0;
        couplings.eps = 1.0;
        couplings.e_laser = {1.0, 0.0};
        couplings.a_crys = 1e-4;
        couplings.hbar = 1.0;
        couplings.length = 1.0;
    }
};

// ---------------------------------------------------------------- criterion 1

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    Setup s;
    s.couplings.chi2 = 1.0;
    s.couplings.chi4 = 1.0;
    const fock::Cutoff cut{14, 14};  // interior block n <= 8 needs headroom of 4 + margin

    std::ostringstream detail;
    bool all_pass = true;
    for (auto kind : vertex::all_vertex_kinds) {
        const auto op = vertex::vertex_bruteforce(kind, cut, s.couplings, s.modes, s.cav, 0.0);
        const auto t = vertex::traits(kind);
        bool mode_product_ok = true, resonance_ok = true;
        double worst_ratio = 1.0;
        for (int n1 = 0; n1 <= 8; ++n1) {
            for (int n2 = 0; n2 <= 8; ++n2) {
                const int k1 = n1 - t.dn1, k2 = n2 - t.dn2;
                if (!cut.contains(k1, k2)) continue;
                const double brute = std::abs(op.mat(cut.index(n1, n2), cut.index(k1, k2)));
                for (auto conv : {vertex::VertexConvention::mode_product,
                                  vertex::VertexConvention::resonance_squared}) {
                    const double closed = std::abs(
                        vertex::vertex_closed_form(kind, n1, n2, s.couplings, s.modes, conv)
                            .value);
                    bool& flag = conv == vertex::VertexConvention::mode_product
                                     ? mode_product_ok
                                     : resonance_ok;
                    if (closed == 0.0) {
                        if (brute > 1e-14) flag = false;
                    } else if (std::abs(brute - closed) > 1e-12 * closed) {
                        flag = false;
                        worst_ratio = std::max(worst_ratio, brute / closed);
                    }
                }
            }
        }
        const bool kind_pass = mode_product_ok || resonance_ok;
        if (!kind_pass) {
            all_pass = false;
            detail << vertex::kind_name(kind) << " max|brute|/|closed| = " << worst_ratio
                   << "; ";
        }
    }
    const double dt = seconds_since(t0);
    const bool runtime_ok = dt < 10.0;
    if (!runtime_ok) all_pass = false;
    detail << "runtime " << dt << " s";
    report(1, "vertex oracle equivalence (six kinds, interior n <= 8, 1e-12)", all_pass,
           detail.str());
}

// ---------------------------------------------------------------- criterion 2

double measured_phi_hwhm(const cavity::CavityConfig& cfg, cavity::Mode mode,
                         double omega_peak) {
    const double half = cavity::k_round_trip_mag2(cfg, omega_peak, mode) / 2.0;
    const double fsr = constants::two_pi * cfg.c / cfg.length;
    const int n = 400000;
    for (int i = 1; i < n; ++i) {
        const double w = omega_peak + (0.5 * fsr) * i / n;
        const double y = cavity::k_round_trip_mag2(cfg, w, mode);
        if (y <= half) {
            const double w_prev = omega_peak + (0.5 * fsr) * (i - 1) / n;
            const double y_prev = cavity::k_round_trip_mag2(cfg, w_prev, mode);
            const double w_cross = w_prev + (w - w_prev) * (y_prev - half) / (y_prev - y);
            return cavity::phase(cfg, w_cross) - cavity::phase(cfg, omega_peak);
        }
    }
    return 0.0;
}

void criterion_2() {
    cavity::CavityConfig cfg;
    cfg.length = 1.0;
    cfg.crystal_length = 1e-9;
    cfg.n_crys = 1.0;
    cfg.c = 1.0;

    bool pass = true;
    std::ostringstream detail;

    // scan maxima sit at integer phi/2pi within one grid step
    cfg.r_photon2 = 0.95;
    const double fsr = constants::two_pi * cfg.c / cfg.length;
    std::vector<double> grid;
    for (int i = 0; i <= 6000; ++i) grid.push_back(2.5 * fsr + 3.0 * fsr * i / 6000.0);
    const auto scan = cavity::resonance_scan(cfg, cavity::Mode::photon2, grid);
    const double step_phi = cavity::phase(cfg, grid[1]) - cavity::phase(cfg, grid[0]);
    if (scan.peaks.size() != 3) pass = false;
    for (const auto& peak : scan.peaks) {
        const double frac =
            std::abs(peak.phi_over_2pi - std::round(peak.phi_over_2pi)) * constants::two_pi;
        if (frac > step_phi) pass = false;
    }
    detail << scan.peaks.size() << " peaks";

    // estimate vs measured half width for the three loop gains
    for (double r : {0.90, 0.95, 0.99}) {
        cfg.r_photon2 = r;
        const double peak_omega = 4.0 * fsr;
        const double measured = measured_phi_hwhm(cfg, cavity::Mode::photon2, peak_omega);
        const double estimate = cavity::fwhm_estimate(cfg, cavity::Mode::photon2).value;
        const double rel = std::abs(estimate - measured) / measured;
        if (rel > 0.05) pass = false;
        detail << "; r=" << r << " rel=" << rel;
    }
    report(2, "resonance maxima and width estimate (5%)", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    Setup s;
    s.couplings.chi2 = 1e-3;
    s.couplings.chi4 = 5e-4;
    s.cav.gamma_prime = 10.0;
    s.cav.r_photon1 = 0.2;
    s.cav.r_photon2 = 0.3;
    s.cav.r_laser = 0.25;
    const fock::Cutoff cut{16, 16};

    bool pass = true;
    std::ostringstream detail;

    smatrix::SMatrixParams params;
    params.order_max = 4;
    params.m_points = 8;

    // exact identity at zero couplings
    {
        auto off = s;
        off.couplings.chi2 = 0.0;
        off.couplings.chi4 = 0.0;
        const auto r = smatrix::s_matrix(off.cav, off.couplings, off.modes, cut, params);
        if (!(r.totals.size() == 1 && r.totals.at({0, 0}) == Complex(1.0, 0.0) &&
              r.norm_deficit == 0.0)) {
            pass = false;
            detail << "identity violated; ";
        }
    }

    // selection rules from the vacuum at order <= 4
    const auto full = smatrix::s_matrix(s.cav, s.couplings, s.modes, cut, params);
    for (const auto& [state, amp] : full.totals) {
        if (std::abs(amp) == 0.0) continue;
        if (state.first % 4 != 0 || state.second % 2 != 0) {
            pass = false;
            detail << "selection rule violated at (" << state.first << "," << state.second
                   << "); ";
        }
    }

    // norm-deficit exponent 2.0 +/- 0.1 over a coupling sweep
    {
        std::vector<double> scales = {1.0, 0.5, 0.25, 0.125, 0.0625};
        std::vector<double> deficits;
        smatrix::SMatrixParams p2 = params;
        p2.order_max = 2;
        for (double scale : scales) {
            auto run = s;
            run.couplings.chi2 *= scale;
            run.couplings.chi4 *= scale;
            deficits.push_back(std::abs(
                smatrix::s_matrix(run.cav, run.couplings, run.modes, cut, p2).norm_deficit));
        }
        for (std::size_t i = 1; i < scales.size(); ++i) {
            const double expo =
                std::log(deficits[i - 1] / deficits[i]) / std::log(scales[i - 1] / scales[i]);
            if (std::abs(expo - 2.0) > 0.1) {
                pass = false;
                detail << "deficit exponent " << expo << "; ";
            }
        }
    }

    // quadrature self-consistency on grid doubling
    {
        smatrix::SMatrixParams p16 = params;
        p16.m_points = 16;
        const auto fine = smatrix::s_matrix(s.cav, s.couplings, s.modes, cut, p16);
        double worst = 0.0;
        for (const auto& [state, amp] : full.totals) {
            const auto it = fine.totals.find(state);
            if (it == fine.totals.end()) continue;
            if (std::abs(amp) > 0.0) {
                worst = std::max(worst, std::abs(amp - it->second) / std::abs(amp));
            }
        }
        if (worst > 1e-6) pass = false;
        detail << "doubling change " << worst << "; ";
    }

    const double dt = seconds_since(t0);
    if (dt > 120.0) pass = false;
    detail << "runtime " << dt << " s";
    report(3, "S-matrix structure (identity, selection rules, deficit exponent, quadrature)",
           pass, detail.str());
}

// ---------------------------------------------------------------- criterion 4

void criterion_4() {
    Setup s;
    s.couplings.chi2 = 1e-3;
    s.couplings.chi4 = 5e-4;
    const fock::Cutoff cut{16, 16};
    bool pass = true;
    std::ostringstream detail;

    observables::HusimiGridSpec spec;
    spec.radius = 4.0;
    spec.points_per_axis = 21;

    // vacuum case: pointwise Gaussian to 1e-10
    {
        auto off = s;
        off.couplings.chi2 = 0.0;
        off.couplings.chi4 = 0.0;
        smatrix::SMatrixParams params;
        params.order_max = 2;
        const auto r = smatrix::s_matrix(off.cav, off.couplings, off.modes, cut, params);
        const auto grid = observables::husimi(r, spec);
        double worst = 0.0;
        const int n = spec.points_per_axis;
        for (int i1 = 0; i1 < n; ++i1)
            for (int j1 = 0; j1 < n; ++j1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int j2 = 0; j2 < n; ++j2) {
                        const double a2 =
                            grid.axis[i1] * grid.axis[i1] + grid.axis[j1] * grid.axis[j1] +
                            grid.axis[i2] * grid.axis[i2] + grid.axis[j2] * grid.axis[j2];
                        worst = std::max(worst,
                                         std::abs(grid.values[grid.index(i1, j1, i2, j2)] -
                                                  std::exp(-a2)));
                    }
        if (worst > 1e-10) pass = false;
        detail << "vacuum pointwise " << worst << "; ";
    }

    // interacting run: positivity everywhere and unit normalization to 1e-3
    {
        smatrix::SMatrixParams params;
        params.order_max = 2;
        const auto r = smatrix::s_matrix(s.cav, s.couplings, s.modes, cut, params);
        const auto grid = observables::husimi(r, spec);
        for (double v : grid.values) {
            if (v < 0.0) {
                pass = false;
                detail << "negative value; ";
                break;
            }
        }
        if (std::abs(grid.integral_estimate - 1.0) > 1e-3) pass = false;
        detail << "integral " << grid.integral_estimate;
    }
    report(4, "Husimi positivity, normalization, vacuum limit", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 5

double half_width(const lindblad::SpectrumSeries1D& s) {
    const double target = std::abs(s.values[0] - 1.0) / 2.0;
    for (std::size_t i = 1; i < s.omega.size(); ++i) {
        const double v = std::abs(s.values[i] - 1.0);
        if (v <= target) {
            const double v0 = std::abs(s.values[i - 1] - 1.0);
            const double frac = (v0 - target) / (v0 - v);
            return s.omega[i - 1] + frac * (s.omega[i] - s.omega[i - 1]);
        }
    }
    return s.omega.back();
}

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;

    // two-mode trajectory at cutoff 12 per mode: trace/Hermiticity/positivity
    {
        const fock::Cutoff c{12, 12};
        lindblad::MasterConfig cfg;
        cfg.gamma1 = 0.4;
        cfg.gamma2 = 1.0;
        cfg.hbar = 1.0;
        cfg.dt = 1.0 / 128.0;
        cfg.t_end = 2.0;
        cfg.store_stride = 32;
        cfg.hamiltonian = lindblad::squeeze_hamiltonian(0.2, 2, c, 1.0);
        const auto traj =
            lindblad::evolve(lindblad::DensityMatrix::pure(fock::FockVector::basis_state(c, 1, 1)),
                             cfg);
        try {
            for (const auto& frame : traj.frames) frame.validate();
        } catch (const std::exception& e) {
            pass = false;
            detail << "state validity: " << e.what() << "; ";
        }
    }

    // pure-loss decay at 64 steps per 1/gamma, 1e-6 relative
    {
        const fock::Cutoff c{12, 12};
        lindblad::MasterConfig cfg;
        cfg.gamma1 = 0.0;
        cfg.gamma2 = 1.0;
        cfg.hbar = 1.0;
        cfg.dt = 1.0 / 64.0;
        cfg.t_end = 3.0;
        cfg.store_stride = 32;
        cfg.hamiltonian = fock::FockOperator::zero(c);
        const auto traj = lindblad::evolve(
            lindblad::DensityMatrix::pure(fock::FockVector::basis_state(c, 0, 1)), cfg);
        const auto n2 = fock::number_op(2, c);
        double worst = 0.0;
        for (std::size_t f = 0; f < traj.frames.size(); ++f) {
            const double got = traj.frames[f].expectation(n2).real();
            const double expected = std::exp(-traj.times[f]);
            worst = std::max(worst, std::abs(got - expected) / expected);
        }
        if (worst > 1e-6) pass = false;
        detail << "decay err " << worst << "; ";
    }

    // squeezing spectra: dip/peak and Lorentzian half widths within 2%
    for (double lam : {0.1, 0.25, 0.4}) {
        const fock::Cutoff c{0, lam < 0.3 ? 12 : 24};
        lindblad::MasterConfig cfg;
        cfg.gamma1 = 0.0;
        cfg.gamma2 = 1.0;
        cfg.hbar = 1.0;
        cfg.dt = 0.01;
        cfg.t_end = 400.0;
        cfg.hamiltonian = lindblad::squeeze_hamiltonian(lam, 2, c, 1.0);
        const auto ss = lindblad::steady_state(lindblad::DensityMatrix::vacuum(c), cfg, 1e-11);
        const auto parts = lindblad::mode_correlators(ss.rho, 2, 90.0, 1801, cfg);
        const auto grid = linspace(0.0, 2.5, 2001);
        const auto s_anti =
            lindblad::output_spectrum(lindblad::combine_quadrature(parts, 0.0), 1.0, grid);
        const auto s_sq = lindblad::output_spectrum(
            lindblad::combine_quadrature(parts, constants::pi / 2.0), 1.0, grid);
        if (!(s_sq.values[0] < 1.0 && s_anti.values[0] > 1.0)) {
            pass = false;
            detail << "lam=" << lam << " no dip/peak; ";
        }
        const double w_anti = half_width(s_anti);
        const double w_sq = half_width(s_sq);
        if (std::abs(w_anti - (0.5 - lam)) > 0.02 * (0.5 - lam) ||
            std::abs(w_sq - (0.5 + lam)) > 0.02 * (0.5 + lam)) {
            pass = false;
            detail << "lam=" << lam << " widths " << w_anti << "/" << w_sq << "; ";
        }
    }

    const double dt = seconds_since(t0);
    if (dt > 300.0) pass = false;
    detail << "runtime " << dt << " s";
    report(5, "Lindblad oracle (state validity, decay, squeezing spectra, widths 2%)", pass,
           detail.str());
}

// ---------------------------------------------------------------- criterion 6

void criterion_6() {
    // matched regime: transparent cavity; identical two-photon matrix element
    // and window on both sides
    Setup s;
    s.couplings.chi2 = 4.7e-6;
    s.couplings.chi4 = 0.0;
    const fock::Cutoff cut{0, 8};

    smatrix::SMatrixParams params;
    params.order_max = 1;
    params.m_points = 8;
    const auto pert = smatrix::s_matrix(s.cav, s.couplings, s.modes, {8, 8}, params);
    const double p_pert = std::norm(pert.totals.at({0, 2}));

    // the same coupling as a rate: g = |V| ell / (a hbar), window sqrt(2 pi)/delta
    const double v = std::abs(vertex::vertex_closed_form(vertex::VertexKind::chi2_p2, 0, 2,
                                                         s.couplings, s.modes,
                                                         vertex::VertexConvention::mode_product)
                                  .value);
    const double g = v * s.cav.crystal_length / (s.couplings.a_crys * s.couplings.hbar);
    const double t_eff = std::sqrt(constants::two_pi) / s.modes.delta;

    lindblad::MasterConfig cfg;
    cfg.gamma1 = 0.0;
    cfg.gamma2 = 0.01 / t_eff;  // small loss: gamma * T = 1e-2
    cfg.hbar = 1.0;
    cfg.dt = t_eff / 4000.0;
    cfg.t_end = t_eff;
    cfg.store_stride = 1 << 30;
    const auto a2 = fock::ladder(2, fock::LadderKind::annihilate, cut);
    lindblad::FockOperator h = fock::FockOperator::zero(cut);
    const Eigen::MatrixXcd ad2 = a2.mat.adjoint() * a2.mat.adjoint();
    h.mat = (g / std::sqrt(2.0)) * (ad2 + ad2.adjoint());  // <0,2|H|0,0> = hbar g
    cfg.hamiltonian = h;

    const auto traj = lindblad::evolve(lindblad::DensityMatrix::vacuum(cut), cfg);
    const auto& rho = traj.frames.back();
    const double p_lind = rho.rho(cut.index(0, 2), cut.index(0, 2)).real();

    const double rel = std::abs(p_pert - p_lind) / p_lind;
    std::ostringstream detail;
    detail << "P_pert=" << p_pert << " P_lindblad=" << p_lind << " rel=" << rel;
    report(6, "weak-coupling two-photon probability vs Lindblad (10%)", rel < 0.10,
           detail.str());
}

// ---------------------------------------------------------------- criterion 7

void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;

    // phase-diffusion anchor
    {
        langevin::LaserRates rates{1e6, 0.1, 1e3};
        const auto stats = langevin::laser_number_stats(rates);
        const auto pd = langevin::phase_diffusion(rates, stats.mean_n, 1e-8, 1000, 1);
        if (!(pd.sigma_theta_sq >= 1e-10 && pd.sigma_theta_sq <= 1e-9)) {
            pass = false;
        }
        detail << "sigma_theta^2 = " << pd.sigma_theta_sq << "; ";
    }

    // Fano window for A/C >= 100 from distribution moments
    for (double ratio : {100.0, 1000.0}) {
        langevin::LaserRates rates{ratio, 0.1, 1.0};
        const double center = (rates.pump - rates.loss) / rates.saturation;
        const double sigma = std::sqrt(rates.pump / rates.saturation);
        const auto dist = langevin::stationary_number_distribution(
            rates, linspace(center - 8.0 * sigma, center + 8.0 * sigma, 4001));
        const double fano = dist.variance / dist.mean;
        if (!(fano >= 0.95 && fano <= 1.05)) pass = false;
        detail << "fano(" << ratio << ")=" << fano << "; ";
    }

    // OU stationary variance within 3 standard errors at 1e4 trajectories
    {
        Eigen::MatrixXd a(1, 1), b(1, 1);
        a(0, 0) = 1.0;
        b(0, 0) = 1.0;
        langevin::EnsembleSpec spec;
        spec.trajectories = 10000;
        spec.seed = 11;
        spec.dt = 0.002;
        spec.t_end = 20.0;
        spec.burn_in = 5.0;
        spec.record_stride = 100;
        const auto stats = langevin::langevin_linear(a, b, spec);
        const double expected = 0.5;
        const double n_eff = spec.trajectories * (spec.t_end - spec.burn_in);  // tau_int = 1/2a
        const double se = expected * std::sqrt(2.0 / n_eff);
        const double dev = std::abs(stats.stationary_variance(0) - expected);
        if (dev > 3.0 * se) pass = false;
        detail << "OU var dev " << dev << " (3se=" << 3.0 * se << "); ";

        // bit reproducibility
        const auto again = langevin::langevin_linear(a, b, spec);
        if (again.stationary_variance(0) != stats.stationary_variance(0)) {
            pass = false;
            detail << "not reproducible; ";
        }
    }

    const double dt = seconds_since(t0);
    if (dt > 60.0) pass = false;
    detail << "runtime " << dt << " s";
    report(7, "laser classicality anchors and OU ensemble", pass, detail.str());
}

// ---------------------------------------------------------------- criterion 8

void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;

    // k = 1 coherent
    {
        const auto s = gensqueeze::generalized_squeeze_state(1, Complex(0.6, -0.3), 80);
        const double err = std::abs(s.mean_n() - 0.45);
        if (err > 1e-10) pass = false;
        detail << "k1 err " << err << "; ";
    }

    // k = 2 Gaussian oracle to 1e-8
    for (double z : {0.1, 0.3}) {
        const auto s = gensqueeze::generalized_squeeze_state(2, z, 300);
        const double r = 2.0 * z;
        const double err = std::abs(s.mean_n() - std::sinh(r) * std::sinh(r));
        if (err > 1e-8) pass = false;
        detail << "k2(z=" << z << ") err " << err << "; ";
    }

    // interior commutator identity to 1e-12 (constructed sign recorded)
    for (int k : {2, 3}) {
        const int cutoff = 40;
        const auto op = gensqueeze::k_photon_operator(k, cutoff);
        const Eigen::MatrixXcd comm = op * op.adjoint() - op.adjoint() * op;
        double worst = 0.0;
        for (int n = 0; n <= cutoff - 2 * k; ++n) {
            worst = std::max(worst, std::abs(comm(n, n) - Complex(-1.0, 0.0)));
        }
        if (worst > 1e-12) pass = false;
        detail << "[A,Adag]+1 dev " << worst << " (k=" << k << "); ";
    }

    // k = 3 ladder to cutoff 400, values reported, no verdict asserted
    {
        gensqueeze::GenSqueezeSpec spec;
        spec.k = 3;
        spec.z = 0.2;
        spec.cutoff = 400;
        spec.cutoff_ladder = {100, 200, 400};
        const auto rows = gensqueeze::convergence_report(spec);
        if (rows.size() != 3 || !std::isfinite(rows.back().log10_norm2_literal)) pass = false;
        detail << "k3 ladder rows " << rows.size() << "; ";
    }

    const double dt = seconds_since(t0);
    if (dt > 120.0) pass = false;
    detail << "runtime " << dt << " s";
    report(8, "generalized squeezing (k=1 exact, k=2 oracle, commutators, k=3 ladder)", pass,
           detail.str());
}

// ---------------------------------------------------------------- criterion 9

bool same_bytes(const fs::path& a, const fs::path& b) {
    return read_file(a) == read_file(b);
}

void criterion_9() {
#if !defined(RINGOPO_CLI_PATH) || !defined(RINGOPO_GOLDEN_DIR)
    report(9, "determinism of golden runs", false, "CLI path not wired into the build");
#else
    const std::string cli = RINGOPO_CLI_PATH;
    const fs::path golden_dir = RINGOPO_GOLDEN_DIR;
    const fs::path config = golden_dir / "golden.cfg";
    const fs::path work = fs::temp_directory_path() / "ringopo_acceptance";
    fs::remove_all(work);

    bool pass = true;
    std::ostringstream detail;
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"cavity-scan", ""},
        {"vertex-table", ""},
        {"smatrix", "--order 2"},
        {"langevin", ""},
        {"genqueeze", ""},
    };
    for (const auto& [sub, extra] : runs) {
        for (int round = 1; round <= 2; ++round) {
            const fs::path out = work / (sub + "_" + std::to_string(round));
            std::ostringstream cmd;
            cmd << cli << " " << sub << " --config " << config << " --out " << out << " "
                << extra << " >/dev/null 2>&1";
            if (std::system(cmd.str().c_str()) != 0) {
                pass = false;
                detail << sub << " run failed; ";
            }
        }
        const fs::path out1 = work / (sub + "_1");
        const fs::path out2 = work / (sub + "_2");
        if (!fs::exists(out1 / "manifest.json")) {
            pass = false;
            continue;
        }
        for (const auto& entry : fs::directory_iterator(out1)) {
            const auto name = entry.path().filename().string();
            if (name == "manifest.json") continue;  // carries wall-clock by design
            if (!fs::exists(out2 / name) || !same_bytes(entry.path(), out2 / name)) {
                pass = false;
                detail << sub << "/" << name << " differs; ";
            }
        }
    }

    // stored golden: the cavity scan CSV byte-for-byte
    const fs::path stored = golden_dir / "cavity_scan.csv";
    if (fs::exists(stored)) {
        if (!same_bytes(stored, work / "cavity-scan_1" / "cavity_scan.csv")) {
            pass = false;
            detail << "stored cavity_scan.csv differs; ";
        }
    } else {
        pass = false;
        detail << "stored golden missing; ";
    }
    report(9, "determinism of golden runs (byte-identical)", pass, detail.str());
#endif
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED\n"
                                : std::to_string(failures) + " CRITERIA FAILED\n");
    return failures == 0 ? 0 : 1;
}
