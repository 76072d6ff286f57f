#include "ringopo/gensqueeze.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ringopo/errors.hpp"
#include "ringopo/fock.hpp"
#include "ringopo/textio.hpp"

namespace ringopo::gensqueeze {

void GenSqueezeSpec::validate() const {
    if (k < 1) throw ValidationError("gensqueeze: k must be >= 1");
    if (cutoff < k) throw ValidationError("gensqueeze: cutoff must be >= k");
    for (std::size_t i = 1; i < cutoff_ladder.size(); ++i) {
        if (cutoff_ladder[i] <= cutoff_ladder[i - 1]) {
            throw ValidationError("gensqueeze: cutoff ladder must be strictly increasing");
        }
    }
    for (int c : cutoff_ladder) {
        if (c < k) throw ValidationError("gensqueeze: every ladder cutoff must be >= k");
    }
}

double SingleModeState::mean_n() const {
    double num = 0.0;
    for (int n = 0; n <= cutoff; ++n) num += n * std::norm(amps(n));
    const double den = norm2();
    return den > 0.0 ? num / den : 0.0;
}

namespace {

Eigen::MatrixXcd ladder_power(int cutoff, int k) {
    const Eigen::MatrixXcd a = fock::ladder_single(cutoff, fock::LadderKind::annihilate);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(cutoff + 1, cutoff + 1);
    for (int i = 0; i < k; ++i) p = a * p;
    return p;
}

Eigen::VectorXcd vacuum(int cutoff) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff + 1);
    v(0) = 1.0;
    return v;
}

}  // namespace

SingleModeState generalized_squeeze_state(int k, Complex z, int cutoff, ExponentForm form) {
    if (k < 1) throw ValidationError("generalized_squeeze_state: k must be >= 1");
    if (cutoff < k) throw ValidationError("generalized_squeeze_state: cutoff must be >= k");

    const Eigen::MatrixXcd ak = ladder_power(cutoff, k);
    const Eigen::MatrixXcd adk = ak.adjoint();
    Eigen::MatrixXcd gen = z * ak;
    if (form == ExponentForm::unitary) {
        gen -= std::conj(z) * adk;  // anti-Hermitian
    } else {
        gen += std::conj(z) * adk;  // Hermitian, as the closed form reads
    }
    return {cutoff, fock::expm_apply_dense(gen, vacuum(cutoff))};
}

double literal_log10_norm2(int k, Complex z, int cutoff) {
    // M = z a^k + conj(z) a^dag^k is Hermitian; ||exp(M)|0>||^2
    // = sum_i e^{2 lambda_i} |<v_i|0>|^2, assembled by log-sum-exp.
    const Eigen::MatrixXcd ak = ladder_power(cutoff, k);
    const Eigen::MatrixXcd m = z * ak + std::conj(z) * ak.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const Eigen::VectorXd lam = es.eigenvalues();
    const Eigen::VectorXcd overlap = es.eigenvectors().adjoint() * vacuum(cutoff);

    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= cutoff; ++i) {
        if (std::norm(overlap(i)) > 0.0) peak = std::max(peak, 2.0 * lam(i));
    }
    double acc = 0.0;
    for (int i = 0; i <= cutoff; ++i) {
        const double w = std::norm(overlap(i));
        if (w > 0.0) acc += w * std::exp(2.0 * lam(i) - peak);
    }
    return (peak + std::log(acc)) / std::log(10.0);
}

std::vector<ConvergenceRow> convergence_report(const GenSqueezeSpec& spec) {
    spec.validate();
    if (spec.cutoff_ladder.size() < 2) {
        throw ValidationError("convergence_report: ladder needs at least two cutoffs");
    }

    std::vector<SingleModeState> states;
    states.reserve(spec.cutoff_ladder.size());
    for (int c : spec.cutoff_ladder) {
        states.push_back(generalized_squeeze_state(spec.k, spec.z, c, ExponentForm::unitary));
    }

    std::vector<ConvergenceRow> rows;
    for (std::size_t i = 0; i < spec.cutoff_ladder.size(); ++i) {
        ConvergenceRow row;
        row.cutoff = spec.cutoff_ladder[i];
        row.log10_norm2_literal = literal_log10_norm2(spec.k, spec.z, row.cutoff);
        row.norm_literal = row.log10_norm2_literal > 2.0 * 307.0
                               ? std::numeric_limits<double>::infinity()
                               : std::pow(10.0, 0.5 * row.log10_norm2_literal);
        row.mean_n_unitary = states[i].mean_n();
        if (i + 1 < spec.cutoff_ladder.size()) {
            // embed the smaller state into the larger basis
            const auto& small = states[i];
            const auto& big = states[i + 1];
            Complex dot = 0.0;
            for (int n = 0; n <= small.cutoff; ++n) {
                dot += std::conj(big.amps(n)) * small.amps(n);
            }
            row.fidelity_to_next = std::abs(dot);
        } else {
            row.fidelity_to_next = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(row);
    }
    return rows;
}

std::string convergence_report_csv(const std::vector<ConvergenceRow>& rows) {
    CsvWriter csv({"cutoff", "log10_norm2_literal", "norm_literal", "mean_n_unitary",
                   "fidelity_to_next"});
    for (const auto& r : rows) {
        csv.add_row({double(r.cutoff), r.log10_norm2_literal, r.norm_literal, r.mean_n_unitary,
                     r.fidelity_to_next});
    }
    return csv.str();
}

Eigen::MatrixXcd k_photon_operator(int k, int cutoff) {
    if (k < 1) throw ValidationError("k_photon_operator: k must be >= 1");
    if (cutoff < k) throw ValidationError("k_photon_operator: cutoff must be >= k");
    const int d = cutoff + 1;
    // diagonal factor ( [[n/k]] (n-k)!/n! )^{1/2} evaluated on the image of
    // (a^dag)^k; log-space for the factorial ratio
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
    for (int n = k; n <= cutoff; ++n) {
        const double floor_nk = std::floor(double(n) / k);
        const double log_ratio = std::lgamma(double(n - k + 1)) - std::lgamma(double(n + 1));
        diag(n, n) = std::sqrt(floor_nk) * std::exp(0.5 * log_ratio);
    }
    const Eigen::MatrixXcd adk = ladder_power(cutoff, k).adjoint();
    return diag * adk;
}

SingleModeState s_k_state(int k, Complex z, int cutoff) {
    const Eigen::MatrixXcd a_k = k_photon_operator(k, cutoff);
    const Eigen::MatrixXcd gen = z * a_k.adjoint() - std::conj(z) * a_k;
    return {cutoff, fock::expm_apply_dense(gen, vacuum(cutoff))};
}

}  // namespace ringopo::gensqueeze
