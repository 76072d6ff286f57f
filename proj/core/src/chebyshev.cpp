#include "ringopo/chebyshev.hpp"

#include <cmath>

#include "ringopo/constants.hpp"
#include "ringopo/errors.hpp"

namespace ringopo::cheb {

std::vector<double> ChebFun::nodes(double a, double b, int n_points) {
    if (n_points < 2) throw ValidationError("ChebFun: need at least 2 nodes");
    const int n = n_points - 1;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::vector<double> x(n_points);
    for (int j = 0; j <= n; ++j) {
        x[j] = mid + half * std::cos(constants::pi * j / n);
    }
    return x;
}

ChebFun::ChebFun(double a, double b, std::vector<double> node_values)
    : a_(a), b_(b), vals_(std::move(node_values)) {
    if (!(b_ > a_)) throw ValidationError("ChebFun: require b > a");
    const int n = size() - 1;
    if (n < 1) throw ValidationError("ChebFun: need at least 2 nodes");

    // DCT-I style transform: c_k = (2/n) sum'' f(x_j) cos(j k pi / n),
    // endpoint terms halved, and c_0, c_n carry an extra 1/2.
    coef_.assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = 0.5 * vals_[0];  // j = 0: cos(0) = 1
        for (int j = 1; j < n; ++j) {
            s += vals_[j] * std::cos(constants::pi * j * k / n);
        }
        s += 0.5 * vals_[n] * std::cos(constants::pi * k);  // j = n
        coef_[k] = 2.0 * s / n;
    }
    coef_[0] *= 0.5;
    coef_[n] *= 0.5;
}

double ChebFun::eval(double x) const {
    const double xi = (2.0 * x - (a_ + b_)) / (b_ - a_);
    // Clenshaw recurrence on f = sum c_k T_k(xi)
    double b1 = 0.0, b2 = 0.0;
    for (int k = size() - 1; k >= 1; --k) {
        const double tmp = 2.0 * xi * b1 - b2 + coef_[k];
        b2 = b1;
        b1 = tmp;
    }
    return xi * b1 - b2 + coef_[0];
}

double ChebFun::definite_integral() const {
    // int_{-1}^{1} T_k = 2/(1-k^2) for even k, 0 for odd k
    double s = 0.0;
    for (int k = 0; k < size(); k += 2) {
        s += coef_[k] * 2.0 / (1.0 - double(k) * k);
    }
    return s * 0.5 * (b_ - a_);
}

ChebFun ChebFun::antiderivative() const {
    const int n = size() - 1;
    // In xi-space: int T_0 = T_1, int T_1 = T_2/4, int T_k = (T_{k+1}/(k+1) - T_{k-1}/(k-1))/2
    std::vector<double> bcoef(n + 2, 0.0);
    auto c = [&](int k) { return k <= n ? coef_[k] : 0.0; };
    bcoef[1] = c(0) - 0.5 * c(2);
    for (int m = 2; m <= n + 1; ++m) {
        bcoef[m] = (c(m - 1) - c(m + 1)) / (2.0 * m);
    }
    const double scale = 0.5 * (b_ - a_);
    for (int m = 1; m <= n + 1; ++m) bcoef[m] *= scale;
    // fix the constant so F(a) = 0, i.e. F(xi=-1) = 0; T_m(-1) = (-1)^m
    double at_minus1 = 0.0;
    for (int m = 1; m <= n + 1; ++m) at_minus1 += bcoef[m] * (m % 2 ? -1.0 : 1.0);
    bcoef[0] = -at_minus1;

    // materialize values at the (n+2)-point grid by Clenshaw
    const int np = n + 2;
    std::vector<double> xs = nodes(a_, b_, np);
    std::vector<double> vals(np);
    for (int j = 0; j < np; ++j) {
        const double xi = (2.0 * xs[j] - (a_ + b_)) / (b_ - a_);
        double b1 = 0.0, b2 = 0.0;
        for (int k = np - 1; k >= 1; --k) {
            const double tmp = 2.0 * xi * b1 - b2 + bcoef[k];
            b2 = b1;
            b1 = tmp;
        }
        vals[j] = xi * b1 - b2 + bcoef[0];
    }
    return ChebFun(a_, b_, std::move(vals));
}

ChebFun convolve_exp_kernel(const ChebFun& g, double gamma_gap) {
    if (gamma_gap < 0.0) throw ValidationError("convolve_exp_kernel: gamma must be >= 0");
    const double a = g.a(), b = g.b();
    const int np = g.size();
    const std::vector<double> xs = ChebFun::nodes(a, b, np);

    // F(x) = e^{-g x} int_a^x e^{+g y} f(y) dy + e^{+g x} int_x^b e^{-g y} f(y) dy.
    // Shift the exponents by the domain edges so nothing overflows.
    std::vector<double> pv(np), qv(np);
    for (int j = 0; j < np; ++j) {
        pv[j] = std::exp(gamma_gap * (xs[j] - b)) * g.values()[j];   // e^{g(y-b)} f
        qv[j] = std::exp(-gamma_gap * (xs[j] - a)) * g.values()[j];  // e^{-g(y-a)} f
    }
    ChebFun pint = ChebFun(a, b, std::move(pv)).antiderivative();
    ChebFun qint = ChebFun(a, b, std::move(qv)).antiderivative();
    const double qtot = qint.eval(b);

    std::vector<double> out(np);
    for (int j = 0; j < np; ++j) {
        const double x = xs[j];
        out[j] = std::exp(-gamma_gap * (x - b)) * pint.eval(x) +
                 std::exp(gamma_gap * (x - a)) * (qtot - qint.eval(x));
    }
    return ChebFun(a, b, std::move(out));
}

}  // namespace ringopo::cheb
