#include "ringopo/lindblad.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ringopo/errors.hpp"
#include "ringopo/textio.hpp"

namespace ringopo::lindblad {

void MasterConfig::validate() const {
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0)) {
        throw ValidationError("lindblad: gamma rates must be >= 0");
    }
    if (!(dt > 0.0)) throw ValidationError("lindblad: dt must be > 0");
    if (!(t_end >= 0.0)) throw ValidationError("lindblad: t_end must be >= 0");
    if (!(hbar > 0.0)) throw ValidationError("lindblad: hbar must be > 0");
    if (store_stride < 1) throw ValidationError("lindblad: store_stride must be >= 1");
    if (hamiltonian.hermiticity_defect() > 1e-12) {
        throw ValidationError("lindblad: hamiltonian must be Hermitian to 1e-12");
    }
}

DensityMatrix DensityMatrix::pure(const fock::FockVector& v) {
    const double n2 = v.norm2();
    if (!(n2 > 0.0)) throw ValidationError("DensityMatrix::pure: zero state");
    return {v.cutoff, (v.amps * v.amps.adjoint()) / n2};
}

DensityMatrix DensityMatrix::vacuum(Cutoff c) {
    return pure(fock::FockVector::basis_state(c, 0, 0));
}

Complex DensityMatrix::expectation(const FockOperator& op) const {
    if (!(op.cutoff == cutoff)) throw ValidationError("expectation: cutoff mismatch");
    return (op.mat * rho).trace();
}

void DensityMatrix::validate(double trace_tol, double herm_tol, double eig_tol) const {
    if (std::abs(rho.trace().real() - 1.0) > trace_tol || std::abs(rho.trace().imag()) > trace_tol) {
        throw NumericalError("density matrix: trace deviates from 1 beyond tolerance");
    }
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol * scale) {
        throw NumericalError("density matrix: lost Hermiticity");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
    if (es.eigenvalues().minCoeff() < -eig_tol) {
        throw NumericalError("density matrix: negative eigenvalue " +
                             format_g17(es.eigenvalues().minCoeff()));
    }
}

namespace {

struct Generator {
    Eigen::MatrixXcd h_over_hbar;  // H / hbar
    Eigen::MatrixXcd a1, a1d, n1;
    Eigen::MatrixXcd a2, a2d, n2;
    double gamma1, gamma2;

    explicit Generator(const MasterConfig& cfg) {
        const Cutoff c = cfg.hamiltonian.cutoff;
        h_over_hbar = cfg.hamiltonian.mat / cfg.hbar;
        a1 = fock::ladder(1, fock::LadderKind::annihilate, c).mat;
        a2 = fock::ladder(2, fock::LadderKind::annihilate, c).mat;
        a1d = a1.adjoint();
        a2d = a2.adjoint();
        n1 = a1d * a1;
        n2 = a2d * a2;
        gamma1 = cfg.gamma1;
        gamma2 = cfg.gamma2;
    }

    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const {
        Eigen::MatrixXcd out = Complex(0.0, -1.0) * (h_over_hbar * rho - rho * h_over_hbar);
        if (gamma1 > 0.0) {
            out += gamma1 * (a1 * rho * a1d - 0.5 * (n1 * rho + rho * n1));
        }
        if (gamma2 > 0.0) {
            out += gamma2 * (a2 * rho * a2d - 0.5 * (n2 * rho + rho * n2));
        }
        return out;
    }

    // one fixed RK4 step
    void step(Eigen::MatrixXcd& rho, double dt) const {
        const Eigen::MatrixXcd k1 = apply(rho);
        const Eigen::MatrixXcd k2 = apply(rho + 0.5 * dt * k1);
        const Eigen::MatrixXcd k3 = apply(rho + 0.5 * dt * k2);
        const Eigen::MatrixXcd k4 = apply(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const MasterConfig& cfg) {
    cfg.validate();
    if (!(rho0.cutoff == cfg.hamiltonian.cutoff)) {
        throw ValidationError("evolve: rho0 cutoff does not match the Hamiltonian");
    }
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    Generator gen(cfg);

    Trajectory traj;
    Eigen::MatrixXcd rho = rho0.rho;
    traj.times.push_back(0.0);
    traj.frames.push_back({rho0.cutoff, rho});

    for (long s = 1; s <= n_steps; ++s) {
        gen.step(rho, cfg.dt);
        const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        if (drift > 1e-6) {
            throw NumericalError(
                "evolve: trace drift " + format_g17(drift) +
                " exceeds 1e-6; reduce dt (rule of thumb: dt <= 1/(64 max(gamma, |H|/hbar)))");
        }
        if (s % cfg.store_stride == 0 || s == n_steps) {
            traj.times.push_back(s * cfg.dt);
            traj.frames.push_back({rho0.cutoff, rho});
        }
    }
    return traj;
}

SteadyStateResult steady_state(const DensityMatrix& rho0, const MasterConfig& cfg, double tol) {
    cfg.validate();
    Generator gen(cfg);
    Eigen::MatrixXcd rho = rho0.rho;
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const long check_every = std::max<long>(16, n_steps / 256);
    SteadyStateResult out{{rho0.cutoff, rho}, false, 0.0};
    for (long s = 1; s <= n_steps; ++s) {
        gen.step(rho, cfg.dt);
        if (s % check_every == 0 || s == n_steps) {
            const double res = gen.apply(rho).norm() / std::max(1e-300, rho.norm());
            out.residual = res;
            if (res < tol) {
                out.converged = true;
                break;
            }
        }
    }
    out.rho = {rho0.cutoff, rho};
    return out;
}

Eigen::MatrixXcd propagate(const Eigen::MatrixXcd& m, const MasterConfig& cfg,
                           double duration) {
    if (duration < 0.0) throw ValidationError("propagate: duration must be >= 0");
    Generator gen(cfg);
    Eigen::MatrixXcd out = m;
    const long full = static_cast<long>(duration / cfg.dt);
    for (long s = 0; s < full; ++s) gen.step(out, cfg.dt);
    const double rest = duration - full * cfg.dt;
    if (rest > 1e-15 * std::max(1.0, duration)) gen.step(out, rest);
    return out;
}

double generator_residual(const DensityMatrix& rho, const MasterConfig& cfg) {
    Generator gen(cfg);
    return gen.apply(rho.rho).norm() / std::max(1e-300, rho.rho.norm());
}

TwoTimeSeries two_time(const DensityMatrix& rho_ss, const FockOperator& op_a,
                       const FockOperator& op_b, double tau_max, int n_samples,
                       const MasterConfig& cfg, PerturbSide side) {
    cfg.validate();
    if (n_samples < 2) throw ValidationError("two_time: need at least 2 samples");
    if (!(tau_max > 0.0)) throw ValidationError("two_time: tau_max must be > 0");
    Generator gen(cfg);

    TwoTimeSeries series;
    series.stationary_warning =
        gen.apply(rho_ss.rho).norm() > 1e-6 * std::max(1e-300, rho_ss.rho.norm());

    // evolve the perturbed matrix under the same generator; sample on the grid
    Eigen::MatrixXcd m = side == PerturbSide::left ? (op_b.mat * rho_ss.rho).eval()
                                                   : (rho_ss.rho * op_b.mat).eval();
    const double dtau = tau_max / (n_samples - 1);
    const long stride = std::max<long>(1, std::lround(dtau / cfg.dt));
    const double dt = dtau / stride;

    for (int i = 0; i < n_samples; ++i) {
        series.tau.push_back(i * dtau);
        series.values.push_back((op_a.mat * m).trace());
        if (i + 1 < n_samples) {
            for (long s = 0; s < stride; ++s) gen.step(m, dt);
        }
    }
    return series;
}

ElementaryCorrelators mode_correlators(const DensityMatrix& rho_ss, int mode, double tau_max,
                                       int n_samples, const MasterConfig& cfg) {
    const Cutoff c = rho_ss.cutoff;
    const FockOperator a = fock::ladder(mode, fock::LadderKind::annihilate, c);
    const FockOperator ad = a.adjoint();

    const Complex ea = rho_ss.expectation(a);
    const Complex ead = std::conj(ea);

    auto connect = [](TwoTimeSeries s, Complex mean_product) {
        for (auto& v : s.values) v -= mean_product;
        return s;
    };
    // Normal ordering across times: annihilation pair time-ordered
    // (later-left), creation pair anti-time-ordered (earlier-left). Ordering
    // the creation pair the other way injects a spurious commutator term
    // ~sinh into the squeezed quadrature.
    ElementaryCorrelators parts;
    parts.aa = connect(two_time(rho_ss, a, a, tau_max, n_samples, cfg), ea * ea);
    parts.dd = connect(two_time(rho_ss, ad, ad, tau_max, n_samples, cfg, PerturbSide::right),
                       ead * ead);  // <a^dag(0) a^dag(tau)>
    parts.da = connect(two_time(rho_ss, ad, a, tau_max, n_samples, cfg), ead * ea);
    parts.ad = connect(two_time(rho_ss, a, ad, tau_max, n_samples, cfg, PerturbSide::right),
                       ea * ead);  // <a^dag(0) a(tau)>
    return parts;
}

TwoTimeSeries combine_quadrature(const ElementaryCorrelators& parts, double theta) {
    const Complex e_m2t = std::exp(Complex(0.0, -2.0 * theta));
    const Complex e_p2t = std::exp(Complex(0.0, 2.0 * theta));
    TwoTimeSeries out;
    out.tau = parts.da.tau;
    out.stationary_warning = parts.da.stationary_warning;
    out.values.resize(out.tau.size());
    for (std::size_t i = 0; i < out.tau.size(); ++i) {
        out.values[i] = e_m2t * parts.aa.values[i] + e_p2t * parts.dd.values[i] +
                        parts.da.values[i] + parts.ad.values[i];
    }
    return out;
}

TwoTimeSeries quadrature_correlator(const DensityMatrix& rho_ss, int mode, double theta,
                                    double tau_max, int n_samples, const MasterConfig& cfg) {
    return combine_quadrature(mode_correlators(rho_ss, mode, tau_max, n_samples, cfg), theta);
}

SpectrumSeries1D output_spectrum(const TwoTimeSeries& corr, double gamma,
                                 const std::vector<double>& omega_grid) {
    if (corr.tau.size() < 2) throw ValidationError("output_spectrum: correlator too short");
    SpectrumSeries1D out;
    out.omega = omega_grid;
    out.values.resize(omega_grid.size());
    out.note = "S(w) = 1 + gamma * FT of the normally-ordered correlator; trapezoid, no window";
    const double dtau = corr.tau[1] - corr.tau[0];
    for (std::size_t k = 0; k < omega_grid.size(); ++k) {
        const double w = omega_grid[k];
        // two-sided integral with C(-tau) = conj C(tau): 2 Re int_0^inf C e^{-iwt}
        Complex half_line = 0.0;
        for (std::size_t i = 0; i < corr.tau.size(); ++i) {
            const double weight = (i == 0 || i + 1 == corr.tau.size()) ? 0.5 : 1.0;
            half_line += weight * corr.values[i] * std::exp(Complex(0.0, -w * corr.tau[i]));
        }
        out.values[k] = 1.0 + gamma * 2.0 * (half_line * dtau).real();
    }
    return out;
}

namespace {

AnalyticSpectra lorentzian_pair(double lam, double gamma, const std::vector<double>& grid,
                                double numerator) {
    AnalyticSpectra out;
    out.omega = grid;
    out.threshold_warning = lam >= gamma / 2.0;
    out.s1.resize(grid.size());
    out.s2.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        const double dm = gamma / 2.0 - lam;
        const double dp = gamma / 2.0 + lam;
        out.s1[i] = 1.0 + numerator / (dm * dm + w * w);
        out.s2[i] = 1.0 - numerator / (dp * dp + w * w);
    }
    return out;
}

}  // namespace

AnalyticSpectra analytic_spectra(double lambda_mag, double gamma,
                                 const std::vector<double>& omega_grid) {
    if (!(lambda_mag >= 0.0) || !(gamma > 0.0)) {
        throw ValidationError("analytic_spectra: need lambda >= 0 and gamma > 0");
    }
    return lorentzian_pair(lambda_mag, gamma, omega_grid,
                           2.0 * gamma * lambda_mag * lambda_mag);
}

AnalyticSpectra analytic_spectra_standard(double lambda_mag, double gamma,
                                          const std::vector<double>& omega_grid) {
    if (!(lambda_mag >= 0.0) || !(gamma > 0.0)) {
        throw ValidationError("analytic_spectra_standard: need lambda >= 0 and gamma > 0");
    }
    return lorentzian_pair(lambda_mag, gamma, omega_grid, 2.0 * gamma * lambda_mag);
}

std::vector<Eigen::Matrix2cd> spectrum_matrix(const Eigen::Matrix2cd& a,
                                              const Eigen::Matrix2cd& b,
                                              const std::vector<double>& omega_grid) {
    std::vector<Eigen::Matrix2cd> out;
    out.reserve(omega_grid.size());
    const Eigen::Matrix2cd bbt = b * b.transpose();
    for (double w : omega_grid) {
        const Eigen::Matrix2cd left = a + Complex(0.0, w) * Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd right =
            a.transpose() - Complex(0.0, w) * Eigen::Matrix2cd::Identity();
        out.push_back(left.inverse() * bbt * right.inverse() / constants::two_pi);
    }
    return out;
}

FockOperator squeeze_hamiltonian(Complex lambda, int mode, Cutoff cutoff, double hbar) {
    const FockOperator a = fock::ladder(mode, fock::LadderKind::annihilate, cutoff);
    const Eigen::MatrixXcd ad2 = a.mat.adjoint() * a.mat.adjoint();
    FockOperator h = FockOperator::zero(cutoff);
    h.mat = Complex(0.0, 0.5 * hbar) * (lambda * ad2 - std::conj(lambda) * ad2.adjoint());
    return h;
}

double gamma_from_mirrors(const cavity::CavityConfig& cfg, cavity::Mode mode) {
    const double r = cfg.r_for(mode);
    return cfg.c / cfg.length * (1.0 - r * r);
}

}  // namespace ringopo::lindblad
