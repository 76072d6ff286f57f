#pragma once

#include <vector>

namespace ringopo::cheb {

// Function represented by values on (n+1) Chebyshev-Lobatto points of [a, b],
// x_j = mid + half*cos(j pi / n). Supports the pieces the damping-chain
// quadrature needs: transform to coefficients, antiderivative, evaluation,
// definite integral.
class ChebFun {
public:
    ChebFun(double a, double b, std::vector<double> node_values);

    static std::vector<double> nodes(double a, double b, int n_points);

    int size() const { return static_cast<int>(vals_.size()); }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& values() const { return vals_; }

    double eval(double x) const;                 // Clenshaw on the coefficient form
    double definite_integral() const;            // over [a, b]
    ChebFun antiderivative() const;              // F with F(a) = 0

private:
    double a_, b_;
    std::vector<double> vals_;    // values at Lobatto nodes, j = 0..n
    std::vector<double> coef_;    // Chebyshev coefficients c_k, f = sum c_k T_k
};

// integral over y in [a,b] of exp(-gamma_gap |x - y|) g(y), sampled at the
// nodes of a fresh ChebFun. The kernel kink at y = x is handled exactly via
// forward/backward antiderivatives, so the result stays spectrally accurate.
ChebFun convolve_exp_kernel(const ChebFun& g, double gamma_gap);

}  // namespace ringopo::cheb
