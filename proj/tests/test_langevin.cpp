#include <doctest.h>

#include <cmath>

#include "ringopo/errors.hpp"
#include "ringopo/langevin.hpp"
#include "ringopo/lindblad.hpp"
#include "ringopo/textio.hpp"

using namespace ringopo;
using namespace ringopo::langevin;

TEST_CASE("NormalRng: deterministic stream with sane moments") {
    NormalRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    NormalRng rng(7);
    double m = 0.0, m2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.next();
        m += v;
        m2 += v * v;
    }
    m /= n;
    m2 /= n;
    CHECK(std::abs(m) < 0.01);
    CHECK(m2 - m * m == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("mix_seed separates trajectories") {
    CHECK(mix_seed(0, 0) != mix_seed(0, 1));
    CHECK(mix_seed(0, 5) != mix_seed(1, 5));
}

TEST_CASE("langevin_linear: no noise decays deterministically to zero") {
    Eigen::MatrixXd a(1, 1), b(1, 1);
    a(0, 0) = 2.0;
    b(0, 0) = 0.0;
    EnsembleSpec spec;
    spec.trajectories = 8;
    spec.dt = 1e-3;
    spec.t_end = 4.0;
    spec.record_stride = 100;
    Eigen::VectorXd x0(1);
    x0(0) = 1.0;
    const auto stats = langevin_linear(a, b, spec, x0);
    CHECK(stats.mean.back()(0) == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(stats.variance.back()(0) < 1e-20);
    // Euler decay tracks e^{-2t} at O(dt)
    const std::size_t mid = stats.times.size() / 2;
    CHECK(stats.mean[mid](0) ==
          doctest::Approx(std::exp(-2.0 * stats.times[mid])).epsilon(0.01));
}

TEST_CASE("langevin_linear: OU stationary variance within 3 standard errors") {
    Eigen::MatrixXd a(1, 1), b(1, 1);
    a(0, 0) = 1.0;
    b(0, 0) = 1.0;
    EnsembleSpec spec;
    spec.trajectories = 10000;
    spec.seed = 11;
    spec.dt = 0.002;  // Euler-Maruyama variance bias ~ a dt / 2 stays well under the noise
    spec.t_end = 20.0;
    spec.burn_in = 5.0;
    spec.record_stride = 50;
    const auto stats = langevin_linear(a, b, spec);

    const double expected = 0.5;  // b^2 / 2a
    // effective sample count: one independent draw per autocorrelation time
    const double n_eff = spec.trajectories * (spec.t_end - spec.burn_in) * (2.0 * a(0, 0)) / 2.0;
    const double se = expected * std::sqrt(2.0 / n_eff);
    CHECK(std::abs(stats.stationary_variance(0) - expected) < 3.0 * se);
    CHECK(std::abs(stats.stationary_mean(0)) < 3.0 * se);
}

TEST_CASE("langevin_linear: ensemble spectrum matches the drift/noise matrix form") {
    Eigen::MatrixXd a(1, 1), b(1, 1);
    a(0, 0) = 1.0;
    b(0, 0) = 1.0;
    EnsembleSpec spec;
    spec.trajectories = 10000;
    spec.seed = 3;
    spec.dt = 0.02;
    spec.t_end = 30.0;
    spec.burn_in = 8.0;
    spec.record_stride = 100;
    const auto stats = langevin_linear(a, b, spec);
    REQUIRE(!stats.spectrum_freq.empty());

    Eigen::Matrix2cd a2 = Eigen::Matrix2cd::Zero(), b2 = Eigen::Matrix2cd::Zero();
    a2(0, 0) = a(0, 0);
    a2(1, 1) = 1.0;  // spectator component
    b2(0, 0) = b(0, 0);
    for (int k = 1; k <= 5; ++k) {
        const double w = stats.spectrum_freq[k];
        const auto s = lindblad::spectrum_matrix(a2, b2, {w})[0];
        CHECK(stats.spectrum_first_component[k] ==
              doctest::Approx(s(0, 0).real()).epsilon(0.10));
    }
}

TEST_CASE("langevin_linear: bit reproducible and thread-count independent") {
    Eigen::MatrixXd a(1, 1), b(1, 1);
    a(0, 0) = 1.3;
    b(0, 0) = 0.7;
    EnsembleSpec spec;
    spec.trajectories = 500;
    spec.seed = 99;
    spec.dt = 0.01;
    spec.t_end = 2.0;
    spec.burn_in = 0.5;
    const auto s1 = langevin_linear(a, b, spec);
    const auto s2 = langevin_linear(a, b, spec);
    CHECK(s1.stationary_variance(0) == s2.stationary_variance(0));
    CHECK(s1.stationary_mean(0) == s2.stationary_mean(0));
    for (std::size_t r = 0; r < s1.times.size(); ++r) {
        CHECK(s1.mean[r](0) == s2.mean[r](0));
    }
}

TEST_CASE("langevin_linear: unstable drift rejected") {
    Eigen::MatrixXd a(1, 1), b(1, 1);
    a(0, 0) = -0.5;
    b(0, 0) = 1.0;
    EnsembleSpec spec;
    spec.trajectories = 2;
    CHECK_THROWS_AS(langevin_linear(a, b, spec), NumericalError);
}

TEST_CASE("laser_number_stats: closed forms and thresholds") {
    SUBCASE("strong pump: <n> about 1e7") {
        LaserRates r{1e6, 0.1, 1e3};
        const auto s = laser_number_stats(r);
        CHECK(s.mean_n == doctest::Approx((1e6 - 1e3) / 0.1).epsilon(1e-14));
        CHECK(s.mean_n == doctest::Approx(1e7).epsilon(1e-2));
        CHECK(s.sigma_n == doctest::Approx(std::sqrt(1e7)).epsilon(1e-3));
    }
    SUBCASE("A = 2C gives Fano 2") {
        LaserRates r{2.0, 0.5, 1.0};
        CHECK(laser_number_stats(r).fano == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("far above threshold the light is Poissonian") {
        LaserRates r{1e6, 0.1, 10.0};
        CHECK(laser_number_stats(r).fano == doctest::Approx(1.0).epsilon(1e-4));
    }
    SUBCASE("below threshold rejected") {
        LaserRates r{1.0, 0.1, 2.0};
        CHECK_THROWS_AS(laser_number_stats(r), ValidationError);
    }
}

TEST_CASE("phase_diffusion: closed form, ensemble slope, paper-scale anchor") {
    LaserRates rates{1e6, 0.1, 1e3};
    SUBCASE("t = 0 gives zero spread") {
        const auto pd = phase_diffusion(rates, 1e7, 0.0, 100, 1);
        CHECK(pd.sigma_theta_sq == 0.0);
        CHECK(pd.ensemble_sigma_sq == 0.0);
    }
    SUBCASE("cavity-transit anchor: sigma^2 = 5e-10") {
        const auto pd = phase_diffusion(rates, 1e7, 1e-8, 1000, 1);
        CHECK(pd.sigma_theta_sq == doctest::Approx(5e-10).epsilon(1e-12));
        CHECK(pd.sigma_theta_sq < 1e-9);
        CHECK(pd.sigma_theta_sq > 1e-10);
    }
    SUBCASE("walker ensemble tracks the closed form within 5%") {
        const auto pd = phase_diffusion(rates, 1e7, 2.0, 10000, 7);
        CHECK(pd.ensemble_sigma_sq ==
              doctest::Approx(pd.sigma_theta_sq).epsilon(0.05));
    }
}

TEST_CASE("stationary_number_distribution: peak, variance, symmetry, Fano") {
    LaserRates rates{100.0, 0.1, 1.0};  // A/C = 100
    const double center = (rates.pump - rates.loss) / rates.saturation;  // 990
    const double sigma = std::sqrt(rates.pump / rates.saturation);      // ~31.6
    const auto grid = linspace(center - 8.0 * sigma, center + 8.0 * sigma, 2001);
    const auto dist = stationary_number_distribution(rates, grid);

    // peak at the center
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < dist.p.size(); ++i) {
        if (dist.p[i] > dist.p[argmax]) argmax = i;
    }
    CHECK(dist.n[argmax] == doctest::Approx(center).epsilon(1e-2));

    CHECK(dist.mean == doctest::Approx(center).epsilon(1e-6));
    CHECK(dist.variance == doctest::Approx(rates.pump / rates.saturation).epsilon(1e-3));

    // symmetric about the peak
    CHECK(dist.p.front() == doctest::Approx(dist.p.back()).epsilon(1e-9));

    const double fano = dist.variance / dist.mean;
    CHECK(fano > 0.95);
    CHECK(fano < 1.05);
}
