#include <doctest.h>

#include <cmath>
#include <complex>

#include "ringopo/errors.hpp"
#include "ringopo/gensqueeze.hpp"
#include "ringopo/constants.hpp"
#include "ringopo/fock.hpp"

using namespace ringopo;
using namespace ringopo::gensqueeze;
using Complex = std::complex<double>;

namespace {

double mean_x2(const SingleModeState& s, double theta) {
    // <X_theta^2> with X = e^{-i theta} a + e^{i theta} a^dag
    const Eigen::MatrixXcd a = fock::ladder_single(s.cutoff, fock::LadderKind::annihilate);
    const Complex em = std::polar(1.0, -theta);
    const Eigen::MatrixXcd x = em * a + std::conj(em) * a.adjoint();
    const Complex v = s.amps.dot(x * (x * s.amps));
    return v.real() / s.norm2();
}

}  // namespace

TEST_CASE("k = 1 unitary state is coherent: norm 1 and <n> = |z|^2 to 1e-10") {
    for (Complex z : {Complex(0.7, 0.0), Complex(0.3, -0.4), Complex(0.0, 0.9)}) {
        const auto s = generalized_squeeze_state(1, z, 80);
        CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.mean_n() == doctest::Approx(std::norm(z)).epsilon(1e-10));
    }
}

TEST_CASE("z = 0 returns the vacuum") {
    const auto s = generalized_squeeze_state(3, 0.0, 50);
    CHECK(std::abs(s.amps(0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("k = 2 unitary state: even support, Gaussian-state oracle to 1e-8") {
    // generator z a^2 - z* a^dag^2 with z real equals the standard squeeze
    // S(xi = 2z): <n> = sinh^2(2z), <X_0^2> = e^{-4z}, <X_{pi/2}^2> = e^{+4z}
    for (double z : {0.1, 0.2, 0.3}) {
        const auto s = generalized_squeeze_state(2, z, 300);
        CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-10));

        for (int n = 1; n < 40; n += 2) CHECK(std::abs(s.amps(n)) < 1e-13);

        const double r = 2.0 * z;
        CHECK(s.mean_n() == doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-8));
        CHECK(mean_x2(s, 0.0) == doctest::Approx(std::exp(-2.0 * r)).epsilon(1e-8));
        CHECK(mean_x2(s, ringopo::constants::pi / 2.0) ==
              doctest::Approx(std::exp(2.0 * r)).epsilon(1e-8));
    }
}

TEST_CASE("literal exponent form is not norm preserving") {
    const auto s = generalized_squeeze_state(2, 0.2, 120, ExponentForm::literal);
    CHECK(s.norm2() > 1.0);
    // the log10 route agrees with the direct norm where it fits in a double
    const double log10n2 = literal_log10_norm2(2, 0.2, 120);
    CHECK(std::pow(10.0, log10n2) == doctest::Approx(s.norm2()).epsilon(1e-8));
}

TEST_CASE("literal log-norm stays finite for k = 3 at cutoff 400") {
    const double v = literal_log10_norm2(3, Complex(0.2, 0.1), 400);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
}

TEST_CASE("k_photon_operator: k = 1 reduces to the plain ladder") {
    const auto a1 = k_photon_operator(1, 12);
    const auto ad = fock::ladder_single(12, fock::LadderKind::create);
    CHECK((a1 - ad).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("k_photon_operator: action and interior commutators") {
    for (int k : {2, 3, 4}) {
        const int cutoff = 30;
        const auto op = k_photon_operator(k, cutoff);

        SUBCASE("matrix elements sqrt(floor(n/k) + 1)") {
            for (int n = 0; n + k <= cutoff; ++n) {
                const double expected = std::sqrt(std::floor(double(n) / k) + 1.0);
                CHECK(std::abs(op(n + k, n)) == doctest::Approx(expected).epsilon(1e-13));
            }
        }

        SUBCASE("[A, A^dag] = -1 on the interior, exactly to 1e-12") {
            // the as-printed construction is creation-type, so the commutator
            // carries the opposite sign to the annihilation-type convention
            const Eigen::MatrixXcd comm = op * op.adjoint() - op.adjoint() * op;
            for (int n = 0; n <= cutoff - 2 * k; ++n) {
                CHECK(std::abs(comm(n, n) - Complex(-1.0, 0.0)) < 1e-12);
            }
        }

        SUBCASE("[n, A] = +k A on the interior (raising operator)") {
            const int d = cutoff + 1;
            Eigen::MatrixXcd num = Eigen::MatrixXcd::Zero(d, d);
            for (int n = 0; n <= cutoff; ++n) num(n, n) = n;
            const Eigen::MatrixXcd comm = num * op - op * num;
            const Eigen::MatrixXcd target = double(k) * op;
            for (int n = 0; n + k <= cutoff; ++n) {
                CHECK(std::abs(comm(n + k, n) - target(n + k, n)) < 1e-12);
            }
        }
    }
}

TEST_CASE("s_k_state: unitary, vacuum at z = 0, small-z growth k|z|^2") {
    for (int k : {1, 2, 3}) {
        const auto vac = s_k_state(k, 0.0, 40);
        CHECK(std::abs(vac.amps(0) - Complex(1.0, 0.0)) < 1e-14);

        const auto s = s_k_state(k, Complex(0.2, 0.1), 60);
        CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-10));

        const Complex z_small(0.01, 0.0);
        const auto tiny = s_k_state(k, z_small, 40);
        CHECK(tiny.mean_n() ==
              doctest::Approx(k * std::norm(z_small)).epsilon(5e-4));
    }
}

TEST_CASE("convergence_report: k = 2 fidelity saturates by cutoff 200") {
    GenSqueezeSpec spec;
    spec.k = 2;
    spec.z = 0.2;
    spec.cutoff_ladder = {50, 100, 200, 400};
    spec.cutoff = 400;
    const auto rows = convergence_report(spec);
    REQUIRE(rows.size() == 4);
    // |<psi_200 | psi_400>| within 1e-6 of unity
    CHECK(std::abs(rows[2].fidelity_to_next - 1.0) < 1e-6);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(std::isfinite(rows[i].fidelity_to_next));
    }
    CHECK(std::isnan(rows.back().fidelity_to_next));
}

TEST_CASE("convergence_report: k = 3 rows present up to cutoff 400, values only") {
    GenSqueezeSpec spec;
    spec.k = 3;
    spec.z = 0.2;
    spec.cutoff_ladder = {100, 200, 400};
    spec.cutoff = 400;
    const auto rows = convergence_report(spec);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(std::isfinite(row.log10_norm2_literal));
        CHECK(std::isfinite(row.mean_n_unitary));
    }
    const auto csv = convergence_report_csv(rows);
    CHECK(csv.rfind("cutoff,log10_norm2_literal,norm_literal,mean_n_unitary,fidelity_to_next\n",
                    0) == 0);
}

TEST_CASE("spec validation") {
    GenSqueezeSpec spec;
    spec.k = 0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.k = 2;
    spec.cutoff = 1;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.cutoff = 100;
    spec.cutoff_ladder = {100, 50};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    CHECK_THROWS_AS(generalized_squeeze_state(2, 0.1, 1), ValidationError);
}
