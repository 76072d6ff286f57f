#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace ringopo::fock {

using Complex = std::complex<double>;

// Truncated two-mode number basis. States |n1,n2> with 0 <= n_i <= n_i_max,
// stored row-major: flat index = n1*(n2_max+1) + n2.
struct Cutoff {
    int n1_max = 16;
    int n2_max = 16;

    int dim() const { return (n1_max + 1) * (n2_max + 1); }
    int index(int n1, int n2) const { return n1 * (n2_max + 1) + n2; }
    std::pair<int, int> unindex(int flat) const {
        return {flat / (n2_max + 1), flat % (n2_max + 1)};
    }
    bool contains(int n1, int n2) const {
        return n1 >= 0 && n1 <= n1_max && n2 >= 0 && n2 <= n2_max;
    }
    bool operator==(const Cutoff&) const = default;

    void validate() const;  // throws ValidationError if dim() <= 0 or above the safety limit
};

// Largest basis dimension a single operator matrix may have (dense storage).
inline constexpr int max_basis_dim = 4096;

struct FockVector {
    Cutoff cutoff;
    Eigen::VectorXcd amps;

    static FockVector zero(Cutoff c);
    static FockVector basis_state(Cutoff c, int n1, int n2);

    double norm2() const { return amps.squaredNorm(); }
    Complex at(int n1, int n2) const { return amps(cutoff.index(n1, n2)); }

    std::string to_json() const;
    static FockVector from_json(const std::string& text);
};

struct FockOperator {
    Cutoff cutoff;
    Eigen::MatrixXcd mat;  // dense; dims <= max_basis_dim keep this cheap

    static FockOperator zero(Cutoff c);
    static FockOperator identity(Cutoff c);

    FockVector apply(const FockVector& v) const;
    FockOperator adjoint() const;

    // Max |A - A^dagger| entry relative to max |A| entry (0 for exactly Hermitian).
    double hermiticity_defect() const;
};

enum class LadderKind { annihilate, create };

// Standard ladder matrix for one mode; creation at the top of the truncated
// basis maps the boundary state to zero (hard truncation).
FockOperator ladder(int mode, LadderKind kind, Cutoff cutoff);

// n_i = a_i^dagger a_i
FockOperator number_op(int mode, Cutoff cutoff);

// Field operator i * sum_i pref_i (phase_i a_i - conj(phase_i) a_i^dagger).
// pref_i > 0 required; |phase_i| must be 1 (unit complex). Hermitian by
// construction.
FockOperator quantized_field(const std::array<double, 2>& prefactors,
                             const std::array<Complex, 2>& phases, Cutoff cutoff);

// Matrix power by repeated squaring. Note the truncation caveat: entries are
// exact only on the sub-block with n_i <= n_i_max - n.
FockOperator op_power(const FockOperator& op, int n);

struct OverlapResult {
    Complex value;
    // Coherent-state probability mass lost to truncation, per mode; a warning
    // flag is set when either exceeds the tolerance below.
    double tail1 = 0.0;
    double tail2 = 0.0;
    bool truncated = false;
};
inline constexpr double overlap_tail_tolerance = 1e-10;

// <alpha1, alpha2 | v> = exp(-(|a1|^2+|a2|^2)/2) sum conj(a1)^n1 conj(a2)^n2
//                        / sqrt(n1! n2!) * amps(n1,n2)
// Factorials handled in log space, valid past n = 170.
OverlapResult coherent_overlap(Complex alpha1, Complex alpha2, const FockVector& v);

// exp(t*op) v. (Anti-)Hermitian operators go through an eigendecomposition;
// the general case uses scaled Taylor application.
FockVector expm_apply(const FockOperator& op, const FockVector& v, double t = 1.0);

// Single-mode helpers on a (n_max+1)-dimensional space (used by the
// generalized-squeezing module). Same hard truncation convention.
Eigen::MatrixXcd ladder_single(int n_max, LadderKind kind);
Eigen::VectorXcd expm_apply_dense(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v,
                                  double t = 1.0);

}  // namespace ringopo::fock
