#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ringopo/cavity.hpp"
#include "ringopo/fock.hpp"

namespace ringopo::lindblad {

using Complex = std::complex<double>;
using fock::Cutoff;
using fock::FockOperator;

// Zero-temperature master equation for the two retained modes,
//   d rho/dt = -(i/hbar)[H, rho] + sum_i (gamma_i/2)(2 a_i rho a_i^dag
//              - a_i^dag a_i rho - rho a_i^dag a_i).
struct MasterConfig {
    double gamma1 = 0.0;  // cavity loss rate of mode 1 [1/s]
    double gamma2 = 0.0;  // cavity loss rate of mode 2 [1/s]
    FockOperator hamiltonian;  // rotating-frame H, Hermitian [J]
    double hbar = constants::hbar;
    double dt = 0.0;      // fixed RK4 step [s]
    double t_end = 0.0;   // [s]
    int store_stride = 1; // keep every k-th frame in trajectories

    void validate() const;  // Hermiticity to 1e-12, gamma >= 0, dt > 0
};

struct DensityMatrix {
    Cutoff cutoff;
    Eigen::MatrixXcd rho;

    static DensityMatrix pure(const fock::FockVector& v);
    static DensityMatrix vacuum(Cutoff c);

    double trace_real() const { return rho.trace().real(); }
    Complex expectation(const FockOperator& op) const;

    // Hermitian to 1e-10, trace 1 to 1e-10, eigenvalues >= -1e-8.
    void validate(double trace_tol = 1e-10, double herm_tol = 1e-10,
                  double eig_tol = 1e-8) const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> frames;
    double max_trace_drift = 0.0;
};

// Fixed-step RK4 integration of the Lindblad right-hand side. Throws
// NumericalError with step-size guidance if the trace drifts beyond 1e-6.
Trajectory evolve(const DensityMatrix& rho0, const MasterConfig& cfg);

// Evolves until ||L(rho)||_F < tol * ||rho||_F or t_end; `converged` tells
// which happened.
struct SteadyStateResult {
    DensityMatrix rho;
    bool converged = false;
    double residual = 0.0;
};
SteadyStateResult steady_state(const DensityMatrix& rho0, const MasterConfig& cfg,
                               double tol = 1e-9);

enum class PerturbSide { left, right };  // left: B rho; right: rho B

// Quantum regression: <A(t+tau) B(t)> = Tr[A exp(L tau)(B rho_ss)] on a
// uniform tau grid with spacing cfg.dt * stride. PerturbSide::right gives
// <B(t) A(t+tau)> = Tr[A exp(L tau)(rho_ss B)]. Emits a warning flag when
// rho_ss is not stationary to tolerance.
struct TwoTimeSeries {
    std::vector<double> tau;
    std::vector<Complex> values;
    bool stationary_warning = false;
};
TwoTimeSeries two_time(const DensityMatrix& rho_ss, const FockOperator& op_a,
                       const FockOperator& op_b, double tau_max, int n_samples,
                       const MasterConfig& cfg, PerturbSide side = PerturbSide::left);

// Evolves an arbitrary operator kernel under the same generator (regression
// building block; no density-matrix checks applied).
Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& m, const MasterConfig& cfg,
                           double duration);

// ||L(rho)||_F / ||rho||_F, the stationarity residual of the generator.
double generator_residual(const DensityMatrix& rho, const MasterConfig& cfg);

// The four theta-independent connected pieces a quadrature correlator is
// built from: <a(tau)a(0)>, <a^dag(0)a^dag(tau)>, <a^dag(tau)a(0)> and
// <a^dag(0)a(tau)> (steady-state connected). The creation pair is
// anti-time-ordered: that is the normal-ordering prescription of
// photodetection, and the only one whose quadrature combinations collapse
// to single Lorentzians below threshold.
struct ElementaryCorrelators {
    TwoTimeSeries aa, dd, da, ad;
};
ElementaryCorrelators mode_correlators(const DensityMatrix& rho_ss, int mode, double tau_max,
                                       int n_samples, const MasterConfig& cfg);

// Connected, normally-ordered, time-ordered quadrature autocorrelator
//   C_theta(tau) = <: X_theta(tau) X_theta(0) :>_T (connected)
// assembled as e^{-2i theta} aa + e^{2i theta} dd + da + ad.
TwoTimeSeries combine_quadrature(const ElementaryCorrelators& parts, double theta);

// Convenience: mode_correlators + combine_quadrature in one call.
TwoTimeSeries quadrature_correlator(const DensityMatrix& rho_ss, int mode, double theta,
                                    double tau_max, int n_samples, const MasterConfig& cfg);

struct SpectrumSeries1D {
    std::vector<double> omega;
    std::vector<double> values;
    std::string note;
};

// Output spectrum through the final mirror: S(omega) = 1 +
// gamma * int dt e^{-i omega t} C(t) over the full line (C(-t) = conj C(t)).
// The vacuum "+1" is included.
SpectrumSeries1D output_spectrum(const TwoTimeSeries& corr, double gamma,
                                 const std::vector<double>& omega_grid);

// Below-threshold degenerate-squeezing spectra in the printed form,
//   S1 = 1 + 2 gamma |lambda|^2 / ((gamma/2 - |lambda|)^2 + w^2),
//   S2 = 1 - 2 gamma |lambda|^2 / ((gamma/2 + |lambda|)^2 + w^2),
// w = omega - Omega (the grid is the detuning). Numerators carry |lambda|^2
// verbatim; see analytic_spectra_standard for the dimensionless variant.
struct AnalyticSpectra {
    std::vector<double> omega;
    std::vector<double> s1;
    std::vector<double> s2;
    bool threshold_warning = false;  // |lambda| >= gamma/2
};
AnalyticSpectra analytic_spectra(double lambda_mag, double gamma,
                                 const std::vector<double>& omega_grid);

// Same Lorentzians with the 2 gamma |lambda| numerator obtained from the
// master equation itself (dimensionless by construction).
AnalyticSpectra analytic_spectra_standard(double lambda_mag, double gamma,
                                          const std::vector<double>& omega_grid);

// S(omega) = (1/2pi) (A + i w)^{-1} B B^T (A^T - i w)^{-1}, evaluated
// verbatim for the supplied drift/noise matrices.
std::vector<Eigen::Matrix2cd> spectrum_matrix(const Eigen::Matrix2cd& a,
                                              const Eigen::Matrix2cd& b,
                                              const std::vector<double>& omega_grid);

// Degenerate-squeezing interaction H = (i hbar/2)(lambda a^dag^2 - conj(lambda) a^2)
// on one mode; drives d<a>/dt = lambda <a^dag> - (gamma/2)<a>.
FockOperator squeeze_hamiltonian(Complex lambda, int mode, Cutoff cutoff,
                                 double hbar = constants::hbar);

// Round-trip-loss reading of the mirror map: gamma = (c/L)(1 - r_total^2).
double gamma_from_mirrors(const cavity::CavityConfig& cfg, cavity::Mode mode);

}  // namespace ringopo::lindblad
