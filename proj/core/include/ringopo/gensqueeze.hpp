#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ringopo::gensqueeze {

using Complex = std::complex<double>;

struct GenSqueezeSpec {
    int k = 2;
    Complex z{0.0, 0.0};
    int cutoff = 200;
    std::vector<int> cutoff_ladder;  // strictly increasing

    void validate() const;
};

// Single-mode state on the truncated basis |0..cutoff>.
struct SingleModeState {
    int cutoff;
    Eigen::VectorXcd amps;

    double norm2() const { return amps.squaredNorm(); }
    double mean_n() const;
};

enum class ExponentForm {
    unitary,  // exp(z a^k - conj(z) a^dag^k): anti-Hermitian generator, norm 1
    literal   // exp(z a^k + conj(z) a^dag^k): Hermitian generator, norm grows
};

// Generalized squeezed state U_k |0> on one cutoff. k = 1 gives a coherent
// state (<n> = |z|^2), k = 2 squeezed vacuum with even support.
SingleModeState generalized_squeeze_state(int k, Complex z, int cutoff,
                                          ExponentForm form = ExponentForm::unitary);

// log10 of the squared norm of the literal (Hermitian-generator) state:
// computed through an eigendecomposition with a log-sum-exp, so huge norms
// never overflow.
double literal_log10_norm2(int k, Complex z, int cutoff);

struct ConvergenceRow {
    int cutoff;
    double log10_norm2_literal;  // literal form
    double norm_literal;         // +inf when it overflows a double
    double mean_n_unitary;       // unitary form
    double fidelity_to_next;     // |<psi_c|psi_c'>| between consecutive cutoffs; NaN on last row
};

// Diagnostic ladder over spec.cutoff_ladder. Reports values only; no
// convergence verdict is attached for k >= 3 (the question is open).
std::vector<ConvergenceRow> convergence_report(const GenSqueezeSpec& spec);

std::string convergence_report_csv(const std::vector<ConvergenceRow>& rows);

// k-photon operator built exactly as the closed form reads:
//   A_(k) = ( [[n/k]] (n-k)!/n! )^{1/2} (a^dag)^k
// with [[.]] the floor. Acting on |n> this gives sqrt([[n/k]]+1) |n+k>;
// k = 1 reduces to the plain a^dag. Note the constructed operator is
// creation-type: its commutators come out as [A, A^dag] = -1 and
// [n, A] = +k A on the interior (the annihilation-type operator of the
// k-photon boson literature carries the opposite signs).
Eigen::MatrixXcd k_photon_operator(int k, int cutoff);

// S_(k)|0> with S_(k) = exp(z A_(k)^dag - conj(z) A_(k)); unitary for any
// cutoff >= k, norm 1 to 1e-10.
SingleModeState s_k_state(int k, Complex z, int cutoff);

}  // namespace ringopo::gensqueeze
