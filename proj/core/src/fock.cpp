#include "ringopo/fock.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "ringopo/errors.hpp"

namespace ringopo::fock {

void Cutoff::validate() const {
    if (n1_max < 0 || n2_max < 0) {
        throw ValidationError("cutoff: n1_max and n2_max must be >= 0");
    }
    if (dim() > max_basis_dim) {
        throw ValidationError("cutoff: basis dimension " + std::to_string(dim()) +
                              " exceeds safety limit " + std::to_string(max_basis_dim));
    }
}

FockVector FockVector::zero(Cutoff c) {
    c.validate();
    return {c, Eigen::VectorXcd::Zero(c.dim())};
}

FockVector FockVector::basis_state(Cutoff c, int n1, int n2) {
    c.validate();
    if (!c.contains(n1, n2)) throw ValidationError("basis_state: occupation outside cutoff");
    FockVector v{c, Eigen::VectorXcd::Zero(c.dim())};
    v.amps(c.index(n1, n2)) = 1.0;
    return v;
}

std::string FockVector::to_json() const {
    nlohmann::json j;
    j["cutoff"] = {{"n1_max", cutoff.n1_max}, {"n2_max", cutoff.n2_max}};
    auto& arr = j["amps"] = nlohmann::json::array();
    for (int i = 0; i < amps.size(); ++i) {
        arr.push_back({amps(i).real(), amps(i).imag()});
    }
    return j.dump();
}

FockVector FockVector::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Cutoff c{j.at("cutoff").at("n1_max").get<int>(), j.at("cutoff").at("n2_max").get<int>()};
    c.validate();
    const auto& arr = j.at("amps");
    if (static_cast<int>(arr.size()) != c.dim()) {
        throw ValidationError("FockVector::from_json: amplitude count does not match cutoff");
    }
    FockVector v{c, Eigen::VectorXcd(c.dim())};
    for (int i = 0; i < c.dim(); ++i) {
        v.amps(i) = Complex(arr[i][0].get<double>(), arr[i][1].get<double>());
    }
    return v;
}

FockOperator FockOperator::zero(Cutoff c) {
    c.validate();
    return {c, Eigen::MatrixXcd::Zero(c.dim(), c.dim())};
}

FockOperator FockOperator::identity(Cutoff c) {
    c.validate();
    return {c, Eigen::MatrixXcd::Identity(c.dim(), c.dim())};
}

FockVector FockOperator::apply(const FockVector& v) const {
    if (!(v.cutoff == cutoff)) throw ValidationError("operator/vector cutoff mismatch");
    return {cutoff, mat * v.amps};
}

FockOperator FockOperator::adjoint() const { return {cutoff, mat.adjoint()}; }

double FockOperator::hermiticity_defect() const {
    const double scale = mat.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigen::MatrixXcd ladder_single(int n_max, LadderKind kind) {
    const int d = n_max + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n <= n_max; ++n) {
        if (kind == LadderKind::annihilate) {
            m(n - 1, n) = std::sqrt(static_cast<double>(n));  // a|n> = sqrt(n)|n-1>
        } else {
            m(n, n - 1) = std::sqrt(static_cast<double>(n));  // a^dag|n-1> = sqrt(n)|n>
        }
    }
    return m;
}

FockOperator ladder(int mode, LadderKind kind, Cutoff cutoff) {
    cutoff.validate();
    if (mode != 1 && mode != 2) throw ValidationError("ladder: mode must be 1 or 2");
    const int d1 = cutoff.n1_max + 1;
    const int d2 = cutoff.n2_max + 1;
    Eigen::MatrixXcd single =
        ladder_single(mode == 1 ? cutoff.n1_max : cutoff.n2_max, kind);
    FockOperator op = FockOperator::zero(cutoff);
    // kron with identity on the other mode, row-major (n1, n2) layout
    if (mode == 1) {
        for (int r = 0; r < d1; ++r)
            for (int c = 0; c < d1; ++c)
                if (single(r, c) != 0.0)
                    for (int k = 0; k < d2; ++k)
                        op.mat(r * d2 + k, c * d2 + k) = single(r, c);
    } else {
        for (int r = 0; r < d2; ++r)
            for (int c = 0; c < d2; ++c)
                if (single(r, c) != 0.0)
                    for (int k = 0; k < d1; ++k)
                        op.mat(k * d2 + r, k * d2 + c) = single(r, c);
    }
    return op;
}

FockOperator number_op(int mode, Cutoff cutoff) {
    FockOperator a = ladder(mode, LadderKind::annihilate, cutoff);
    return {cutoff, a.mat.adjoint() * a.mat};
}

FockOperator quantized_field(const std::array<double, 2>& prefactors,
                             const std::array<Complex, 2>& phases, Cutoff cutoff) {
    cutoff.validate();
    for (int i = 0; i < 2; ++i) {
        if (!(prefactors[i] > 0.0)) {
            throw ValidationError("quantized_field: mode prefactor must be > 0");
        }
        if (std::abs(std::abs(phases[i]) - 1.0) > 1e-12) {
            throw ValidationError("quantized_field: mode phase must be a unit complex number");
        }
    }
    FockOperator e = FockOperator::zero(cutoff);
    const Complex i_unit(0.0, 1.0);
    for (int mode = 1; mode <= 2; ++mode) {
        FockOperator a = ladder(mode, LadderKind::annihilate, cutoff);
        const double p = prefactors[mode - 1];
        const Complex ph = phases[mode - 1];
        e.mat += i_unit * p * (ph * a.mat - std::conj(ph) * a.mat.adjoint());
    }
    return e;
}

FockOperator op_power(const FockOperator& op, int n) {
    if (n < 0) throw ValidationError("op_power: exponent must be >= 0");
    FockOperator result = FockOperator::identity(op.cutoff);
    FockOperator base = op;
    int e = n;
    while (e > 0) {
        if (e & 1) result.mat = result.mat * base.mat;
        e >>= 1;
        if (e) base.mat = base.mat * base.mat;
    }
    return result;
}

namespace {

// Probability mass of |alpha> beyond n_max: 1 - e^{-x} sum_{n<=n_max} x^n/n!,
// summed in log space from the largest term.
double coherent_tail(double abs2, int n_max) {
    if (abs2 <= 0.0) return 0.0;
    double cdf = 0.0;
    double log_term = -abs2;  // log of e^{-x} x^0/0!
    for (int n = 0; n <= n_max; ++n) {
        cdf += std::exp(log_term);
        log_term += std::log(abs2) - std::log1p(static_cast<double>(n));
    }
    return std::max(0.0, 1.0 - cdf);
}

}  // namespace

OverlapResult coherent_overlap(Complex alpha1, Complex alpha2, const FockVector& v) {
    const double a1s = std::norm(alpha1);
    const double a2s = std::norm(alpha2);
    const Complex c1 = std::conj(alpha1);
    const Complex c2 = std::conj(alpha2);

    // conj(alpha)^n / sqrt(n!) per mode, built recursively
    std::vector<Complex> f1(v.cutoff.n1_max + 1), f2(v.cutoff.n2_max + 1);
    f1[0] = 1.0;
    for (int n = 1; n <= v.cutoff.n1_max; ++n) f1[n] = f1[n - 1] * c1 / std::sqrt(double(n));
    f2[0] = 1.0;
    for (int n = 1; n <= v.cutoff.n2_max; ++n) f2[n] = f2[n - 1] * c2 / std::sqrt(double(n));

    Complex sum = 0.0;
    for (int n1 = 0; n1 <= v.cutoff.n1_max; ++n1) {
        Complex partial = 0.0;
        for (int n2 = 0; n2 <= v.cutoff.n2_max; ++n2) {
            partial += f2[n2] * v.amps(v.cutoff.index(n1, n2));
        }
        sum += f1[n1] * partial;
    }

    OverlapResult r;
    r.value = std::exp(-0.5 * (a1s + a2s)) * sum;
    r.tail1 = coherent_tail(a1s, v.cutoff.n1_max);
    r.tail2 = coherent_tail(a2s, v.cutoff.n2_max);
    r.truncated = r.tail1 > overlap_tail_tolerance || r.tail2 > overlap_tail_tolerance;
    return r;
}

namespace {

bool is_finite(const Eigen::MatrixXcd& m) { return m.allFinite(); }

// exp(tA)v for general A: scale so |tA| norm is small, then 2^s sequential
// Taylor applications.
Eigen::VectorXcd expm_taylor(const Eigen::MatrixXcd& a, Eigen::VectorXcd v, double t) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(t);  // inf-norm bound
    int s = 0;
    while (norm / std::exp2(s) > 1.0 && s < 60) ++s;
    const double dt = t / std::exp2(s);
    const long reps = static_cast<long>(std::exp2(s));
    for (long rep = 0; rep < reps; ++rep) {
        Eigen::VectorXcd term = v;
        Eigen::VectorXcd acc = v;
        for (int k = 1; k < 64; ++k) {
            term = (a * term) * (dt / k);
            acc += term;
            if (term.norm() <= 1e-18 * (acc.norm() + 1e-300)) break;
        }
        v.swap(acc);
    }
    return v;
}

}  // namespace

Eigen::VectorXcd expm_apply_dense(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v,
                                  double t) {
    if (!is_finite(m) || !v.allFinite() || !std::isfinite(t)) {
        throw NumericalError("expm_apply: non-finite input");
    }
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return v;

    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
    const double anti = (m + m.adjoint()).cwiseAbs().maxCoeff() / scale;

    if (herm < 1e-13) {
        // Hermitian: exp(tM) = U exp(t d) U^dag
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        Eigen::VectorXcd w = es.eigenvectors().adjoint() * v;
        for (int i = 0; i < w.size(); ++i) w(i) *= std::exp(t * es.eigenvalues()(i));
        return es.eigenvectors() * w;
    }
    if (anti < 1e-13) {
        // Anti-Hermitian: M = iH with H Hermitian; exp(tM) = U exp(i t d) U^dag
        Eigen::MatrixXcd h = m / Complex(0.0, 1.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        Eigen::VectorXcd w = es.eigenvectors().adjoint() * v;
        for (int i = 0; i < w.size(); ++i) {
            w(i) *= std::exp(Complex(0.0, t * es.eigenvalues()(i)));
        }
        return es.eigenvectors() * w;
    }
    return expm_taylor(m, v, t);
}

FockVector expm_apply(const FockOperator& op, const FockVector& v, double t) {
    if (!(v.cutoff == op.cutoff)) throw ValidationError("expm_apply: cutoff mismatch");
    return {v.cutoff, expm_apply_dense(op.mat, v.amps, t)};
}

}  // namespace ringopo::fock
