#include "ringopo/observables.hpp"

#include <cmath>

#include "ringopo/errors.hpp"
#include "ringopo/parallel.hpp"
#include "ringopo/textio.hpp"

namespace ringopo::observables {

using fock::Cutoff;
using fock::FockOperator;
using fock::FockVector;

PhotonStats photon_stats(const smatrix::SMatrixResult& result, int max_moment) {
    if (max_moment < 1) throw ValidationError("photon_stats: max_moment must be >= 1");
    if (result.totals.empty()) throw ValidationError("photon_stats: empty result");

    double norm = 0.0;
    for (const auto& [state, amp] : result.totals) norm += std::norm(amp);
    if (!(norm > 0.0)) {
        throw ValidationError("photon_stats: degenerate input, sum |amp|^2 = 0");
    }

    PhotonStats stats;
    stats.normalization = norm;
    for (int m1 = 0; m1 <= max_moment; ++m1) {
        for (int m2 = 0; m2 <= max_moment; ++m2) {
            double acc = 0.0;
            for (const auto& [state, amp] : result.totals) {
                acc += std::norm(amp) / norm * std::pow(double(state.first), m1) *
                       std::pow(double(state.second), m2);
            }
            stats.moments[{m1, m2}] = acc;
        }
    }
    stats.mean_n1 = stats.moments.at({1, 0});
    stats.mean_n2 = stats.moments.at({0, 1});
    return stats;
}

std::size_t HusimiGrid::index(int i_re1, int i_im1, int i_re2, int i_im2) const {
    const std::size_t n = axis.size();
    return ((static_cast<std::size_t>(i_re1) * n + i_im1) * n + i_re2) * n + i_im2;
}

HusimiGrid husimi(const fock::FockVector& state, const HusimiGridSpec& spec) {
    if (!(spec.radius > 0.0) || spec.points_per_axis < 2) {
        throw ValidationError("husimi: invalid grid spec");
    }
    const double norm2 = state.norm2();
    if (!(norm2 > 0.0)) throw ValidationError("husimi: zero state");
    FockVector psi = state;
    psi.amps /= std::sqrt(norm2);

    HusimiGrid grid;
    grid.spec = spec;
    const int n = spec.points_per_axis;
    grid.axis.resize(n);
    const double h = 2.0 * spec.radius / (n - 1);
    for (int i = 0; i < n; ++i) grid.axis[i] = -spec.radius + i * h;
    grid.values.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);

    // corner reach of the grid in |alpha|^2 against the basis ceiling
    const double corner = 2.0 * spec.radius * spec.radius;
    grid.truncation_warning =
        corner > 0.5 * std::min(state.cutoff.n1_max, state.cutoff.n2_max);

    parallel_for(static_cast<std::size_t>(n) * n, [&](std::size_t outer) {
        const int i_re1 = static_cast<int>(outer / n);
        const int i_im1 = static_cast<int>(outer % n);
        const Complex a1(grid.axis[i_re1], grid.axis[i_im1]);
        for (int i_re2 = 0; i_re2 < n; ++i_re2) {
            for (int i_im2 = 0; i_im2 < n; ++i_im2) {
                const Complex a2(grid.axis[i_re2], grid.axis[i_im2]);
                const auto ov = fock::coherent_overlap(a1, a2, psi);
                grid.values[grid.index(i_re1, i_im1, i_re2, i_im2)] = std::norm(ov.value);
            }
        }
    });

    // product trapezoid quadrature, integral over d^2a1 d^2a2 / pi^2
    auto w = [&](int i) { return (i == 0 || i == n - 1) ? 0.5 * h : h; };
    double integral = 0.0;
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < n; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < n; ++j2)
                    integral += w(i1) * w(j1) * w(i2) * w(j2) *
                                grid.values[grid.index(i1, j1, i2, j2)];
    grid.integral_estimate = integral / (constants::pi * constants::pi);
    return grid;
}

HusimiGrid husimi(const smatrix::SMatrixResult& result, const HusimiGridSpec& spec) {
    return husimi(smatrix::result_vector(result), spec);
}

std::string husimi_csv(const HusimiGrid& grid) {
    CsvWriter csv({"re_a1", "im_a1", "re_a2", "im_a2", "value"});
    const int n = static_cast<int>(grid.axis.size());
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < n; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < n; ++j2)
                    csv.add_row({grid.axis[i1], grid.axis[j1], grid.axis[i2], grid.axis[j2],
                                 grid.values[grid.index(i1, j1, i2, j2)]});
    return csv.str();
}

std::string correlator_kind_name(CorrelatorKind k) {
    switch (k) {
        case CorrelatorKind::c11: return "C11";
        case CorrelatorKind::c22: return "C22";
        case CorrelatorKind::c112: return "C112";
        case CorrelatorKind::c121: return "C121";
        case CorrelatorKind::c211: return "C211";
    }
    throw ValidationError("unknown correlator kind");
}

namespace {

// Output-mapped quadrature sqrt(gamma_i) (e^{-i theta} a_i + e^{i theta} a_i^dag).
FockOperator output_quadrature(int mode, double theta, double gamma, Cutoff cutoff) {
    const FockOperator a = fock::ladder(mode, fock::LadderKind::annihilate, cutoff);
    FockOperator x = FockOperator::zero(cutoff);
    const Complex em(std::cos(theta), -std::sin(theta));
    x.mat = std::sqrt(gamma) * (em * a.mat + std::conj(em) * a.mat.adjoint());
    return x;
}

FockOperator mean_subtracted(const FockOperator& op, const lindblad::DensityMatrix& rho) {
    FockOperator out = op;
    const Complex mean = rho.expectation(op);
    out.mat -= mean * Eigen::MatrixXcd::Identity(op.mat.rows(), op.mat.cols());
    return out;
}

}  // namespace

QuadCorrelator quad_correlator(CorrelatorKind kind, double theta, const CorrelatorTimes& times,
                               const lindblad::DensityMatrix& rho_ss,
                               const lindblad::MasterConfig& cfg) {
    if (!(times.tau_max > 0.0) || times.n_tau < 2) {
        throw ValidationError("quad_correlator: need tau_max > 0 and n_tau >= 2");
    }
    const bool three_point =
        kind == CorrelatorKind::c112 || kind == CorrelatorKind::c121 || kind == CorrelatorKind::c211;
    if (three_point && (!(times.sigma_max > 0.0) || times.n_sigma < 2)) {
        throw ValidationError(
            "quad_correlator: three-point kinds need sigma_max > 0 and n_sigma >= 2 "
            "(the printed orderings require both gaps nonnegative)");
    }

    const Cutoff c = rho_ss.cutoff;
    const double g1 = cfg.gamma1;
    const double g2 = cfg.gamma2;

    const FockOperator x1 = output_quadrature(1, theta, g1, c);
    const FockOperator x2 = output_quadrature(2, theta, g2, c);
    const FockOperator dx1 = mean_subtracted(x1, rho_ss);
    const FockOperator dx2 = mean_subtracted(x2, rho_ss);

    QuadCorrelator out;
    out.kind = kind;
    out.theta = theta;

    if (!three_point) {
        // Photodetected two-point correlator: normally ordered (the detector
        // does not register vacuum fluctuations) and connected, times the
        // output-coupling gamma.
        const int mode = kind == CorrelatorKind::c11 ? 1 : 2;
        const double gamma = mode == 1 ? g1 : g2;
        auto series = lindblad::combine_quadrature(
            lindblad::mode_correlators(rho_ss, mode, times.tau_max, times.n_tau, cfg), theta);
        out.tau = series.tau;
        out.values = series.values;
        for (auto& v : out.values) v *= gamma;
        out.stationary_warning = series.stationary_warning;
        return out;
    }

    // latest / middle / earliest operators per the printed patterns
    FockOperator late = dx1, mid = x1, early = dx2;
    if (kind == CorrelatorKind::c121) {
        late = dx1;
        mid = dx2;
        early = x1;
    } else if (kind == CorrelatorKind::c211) {
        late = dx2;
        mid = dx1;
        early = dx1;
    }

    const double dtau = times.tau_max / (times.n_tau - 1);
    const double dsig = times.sigma_max / (times.n_sigma - 1);
    out.tau.resize(times.n_tau);
    for (int i = 0; i < times.n_tau; ++i) out.tau[i] = i * dtau;
    out.sigma.resize(times.n_sigma);
    for (int j = 0; j < times.n_sigma; ++j) out.sigma[j] = j * dsig;
    out.values.assign(static_cast<std::size_t>(times.n_tau) * times.n_sigma, Complex(0.0));

    out.stationary_warning = lindblad::generator_residual(rho_ss, cfg) > 1e-6;

    // Walk the earliest gap (sigma) incrementally, then regress the latest
    // gap (tau) with the middle operator applied:
    //   value(tau, sigma) = Tr[ late e^{L tau}( mid e^{L sigma}( early rho_ss ) ) ]
    Eigen::MatrixXcd m_sigma = early.mat * rho_ss.rho;
    for (int j = 0; j < times.n_sigma; ++j) {
        Eigen::MatrixXcd m_tau = mid.mat * m_sigma;
        for (int i = 0; i < times.n_tau; ++i) {
            out.values[static_cast<std::size_t>(i) * times.n_sigma + j] =
                (late.mat * m_tau).trace();
            if (i + 1 < times.n_tau) m_tau = lindblad::propagate(m_tau, cfg, dtau);
        }
        if (j + 1 < times.n_sigma) m_sigma = lindblad::propagate(m_sigma, cfg, dsig);
    }
    return out;
}

SpectrumSeries spectrum(const QuadCorrelator& corr, const std::vector<double>& freq1,
                        const std::vector<double>& freq2) {
    if (corr.tau.size() < 2) throw ValidationError("spectrum: correlator too short");
    for (std::size_t i = 1; i < corr.tau.size(); ++i) {
        const double step = corr.tau[i] - corr.tau[i - 1];
        const double step0 = corr.tau[1] - corr.tau[0];
        if (std::abs(step - step0) > 1e-9 * step0) {
            throw ValidationError("spectrum: unevenly sampled correlator; resample first");
        }
    }
    SpectrumSeries out;
    out.kind = corr.kind;
    out.freq1 = freq1;
    const bool two_dim = !corr.sigma.empty();
    const double dtau = corr.tau[1] - corr.tau[0];

    if (!two_dim) {
        out.values.resize(freq1.size());
        for (std::size_t k = 0; k < freq1.size(); ++k) {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < corr.tau.size(); ++i) {
                const double w = (i == 0 || i + 1 == corr.tau.size()) ? 0.5 : 1.0;
                acc += w * corr.values[i] * std::exp(Complex(0.0, -freq1[k] * corr.tau[i]));
            }
            out.values[k] = acc * dtau;
        }
        return out;
    }

    if (freq2.empty()) throw ValidationError("spectrum: two-gap correlator needs freq2");
    out.freq2 = freq2;
    const double dsig = corr.sigma[1] - corr.sigma[0];
    out.values.resize(freq1.size() * freq2.size());
    for (std::size_t k1 = 0; k1 < freq1.size(); ++k1) {
        for (std::size_t k2 = 0; k2 < freq2.size(); ++k2) {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < corr.tau.size(); ++i) {
                const double wi = (i == 0 || i + 1 == corr.tau.size()) ? 0.5 : 1.0;
                for (std::size_t j = 0; j < corr.sigma.size(); ++j) {
                    const double wj = (j == 0 || j + 1 == corr.sigma.size()) ? 0.5 : 1.0;
                    acc += wi * wj * corr.values[i * corr.sigma.size() + j] *
                           std::exp(Complex(0.0, -freq1[k1] * corr.tau[i] -
                                                     freq2[k2] * corr.sigma[j]));
                }
            }
            out.values[k1 * freq2.size() + k2] = acc * dtau * dsig;
        }
    }
    return out;
}

std::string spectrum_csv(const SpectrumSeries& s) {
    if (s.freq2.empty()) {
        CsvWriter csv({"nu_rad_per_s", "re", "im"});
        for (std::size_t i = 0; i < s.freq1.size(); ++i) {
            csv.add_row({s.freq1[i], s.values[i].real(), s.values[i].imag()});
        }
        return csv.str();
    }
    CsvWriter csv({"mu_rad_per_s", "nu_rad_per_s", "re", "im"});
    for (std::size_t i = 0; i < s.freq1.size(); ++i) {
        for (std::size_t j = 0; j < s.freq2.size(); ++j) {
            const Complex v = s.values[i * s.freq2.size() + j];
            csv.add_row({s.freq1[i], s.freq2[j], v.real(), v.imag()});
        }
    }
    return csv.str();
}

}  // namespace ringopo::observables
