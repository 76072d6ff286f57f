#include "ringopo/langevin.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "ringopo/constants.hpp"
#include "ringopo/errors.hpp"
#include "ringopo/parallel.hpp"

namespace ringopo::langevin {

namespace {

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

double NormalRng::next_uniform() {
    // 53-bit mantissa in (0, 1); never returns 0
    const uint64_t bits = splitmix64(state_) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double NormalRng::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = constants::two_pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

uint64_t mix_seed(uint64_t seed, uint64_t trajectory) {
    uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (trajectory + 1));
    return splitmix64(s);
}

void LaserRates::validate() const {
    if (!(pump > 0.0) || !(saturation > 0.0) || !(loss > 0.0)) {
        throw ValidationError("laser rates: A, B, C must all be > 0");
    }
}

void EnsembleSpec::validate() const {
    if (trajectories < 1) throw ValidationError("ensemble: trajectories must be >= 1");
    if (!(dt > 0.0)) throw ValidationError("ensemble: dt must be > 0");
    if (!(t_end > 0.0)) throw ValidationError("ensemble: t_end must be > 0");
    if (record_stride < 1) throw ValidationError("ensemble: record_stride must be >= 1");
    if (burn_in < 0.0 || burn_in >= t_end) {
        throw ValidationError("ensemble: burn_in must lie in [0, t_end)");
    }
}

namespace {

int fft_size(long available) {
    int n = 1;
    while (2 * n <= available && n < 512) n *= 2;
    return n;
}

// radix-2 in-place FFT (size a power of two)
void fft_pow2(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -constants::two_pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = x[i + k];
                const auto v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

EnsembleStats langevin_linear(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const EnsembleSpec& spec, const Eigen::VectorXd& x0) {
    spec.validate();
    const int dim = static_cast<int>(a.rows());
    if (a.cols() != dim || b.rows() != dim || b.cols() != dim) {
        throw ValidationError("langevin_linear: A and B must be square and matching");
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    for (int i = 0; i < dim; ++i) {
        if (!(es.eigenvalues()(i).real() > 0.0)) {
            throw NumericalError(
                "langevin_linear: drift matrix A must have eigenvalues with positive real "
                "part (stationary state requires it)");
        }
    }

    Eigen::VectorXd start = x0.size() == dim ? x0 : Eigen::VectorXd::Zero(dim);
    const long n_steps = std::lround(spec.t_end / spec.dt);
    const long n_rec = n_steps / spec.record_stride + 1;
    const long burn_steps = std::lround(spec.burn_in / spec.dt);

    EnsembleStats out;
    out.times.resize(n_rec);
    for (long r = 0; r < n_rec; ++r) out.times[r] = r * spec.record_stride * spec.dt;

    const int nfft = fft_size(n_steps - burn_steps);
    struct TrajResult {
        std::vector<Eigen::VectorXd> recorded;
        Eigen::VectorXd stat_sum, stat_sum2;
        long stat_count = 0;
        std::vector<double> periodogram;  // first component, nfft/2 bins
    };

    // running totals, always merged in trajectory order: results are
    // bit-identical for any worker count
    std::vector<Eigen::VectorXd> time_sum(n_rec, Eigen::VectorXd::Zero(dim));
    std::vector<Eigen::VectorXd> time_sum2(n_rec, Eigen::VectorXd::Zero(dim));
    Eigen::VectorXd stat_sum = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd stat_sum2 = Eigen::VectorXd::Zero(dim);
    long stat_count = 0;
    std::vector<double> spec_sum(nfft >= 2 ? nfft / 2 : 0, 0.0);
    long spec_count = 0;

    const double sqrt_dt = std::sqrt(spec.dt);
    constexpr long block_size = 64;  // bounds transient memory
    std::vector<TrajResult> block(std::min<long>(block_size, spec.trajectories));

    for (long block_start = 0; block_start < spec.trajectories; block_start += block_size) {
        const long count = std::min<long>(block_size, spec.trajectories - block_start);
        parallel_for(static_cast<std::size_t>(count), [&](std::size_t bi) {
            const uint64_t k = static_cast<uint64_t>(block_start + bi);
            NormalRng rng(mix_seed(spec.seed, k));
            TrajResult& tr = block[bi];
            tr.recorded.assign(1, start);
            tr.recorded.reserve(n_rec);
            tr.stat_sum = Eigen::VectorXd::Zero(dim);
            tr.stat_sum2 = Eigen::VectorXd::Zero(dim);
            tr.stat_count = 0;
            tr.periodogram.clear();

            Eigen::VectorXd x = start;
            Eigen::VectorXd noise(dim);
            std::vector<double> tail;
            tail.reserve(nfft);

            for (long s = 1; s <= n_steps; ++s) {
                for (int i = 0; i < dim; ++i) noise(i) = rng.next();
                x += spec.dt * (-(a * x)) + sqrt_dt * (b * noise);
                if (s % spec.record_stride == 0) tr.recorded.push_back(x);
                if (s > burn_steps) {
                    tr.stat_sum += x;
                    tr.stat_sum2 += x.cwiseProduct(x);
                    ++tr.stat_count;
                    if (static_cast<long>(tail.size()) < nfft) tail.push_back(x(0));
                }
            }

            if (nfft >= 2 && static_cast<long>(tail.size()) == nfft) {
                std::vector<std::complex<double>> f(tail.begin(), tail.end());
                fft_pow2(f);
                tr.periodogram.resize(nfft / 2);
                // S(w_k) estimate with the 1/(2 pi) spectral convention
                for (int i = 0; i < nfft / 2; ++i) {
                    tr.periodogram[i] = std::norm(f[i]) * spec.dt / (constants::two_pi * nfft);
                }
            }
        });

        for (long bi = 0; bi < count; ++bi) {
            const TrajResult& tr = block[bi];
            for (long r = 0; r < n_rec; ++r) {
                time_sum[r] += tr.recorded[r];
                time_sum2[r] += tr.recorded[r].cwiseProduct(tr.recorded[r]);
            }
            stat_sum += tr.stat_sum;
            stat_sum2 += tr.stat_sum2;
            stat_count += tr.stat_count;
            if (!tr.periodogram.empty()) {
                for (std::size_t i = 0; i < spec_sum.size(); ++i) {
                    spec_sum[i] += tr.periodogram[i];
                }
                ++spec_count;
            }
        }
    }

    out.mean.resize(n_rec);
    out.variance.resize(n_rec);
    const double nt = spec.trajectories;
    for (long r = 0; r < n_rec; ++r) {
        out.mean[r] = time_sum[r] / nt;
        out.variance[r] =
            (time_sum2[r] / nt - out.mean[r].cwiseProduct(out.mean[r])).cwiseMax(0.0);
    }

    if (stat_count > 0) {
        out.stationary_mean = stat_sum / double(stat_count);
        out.stationary_variance = (stat_sum2 / double(stat_count) -
                                   out.stationary_mean.cwiseProduct(out.stationary_mean))
                                      .cwiseMax(0.0);
        out.stationary_samples = stat_count;
    }

    if (spec_count > 0) {
        out.spectrum_freq.resize(spec_sum.size());
        out.spectrum_first_component.resize(spec_sum.size());
        const double dw = constants::two_pi / (nfft * spec.dt);
        for (std::size_t i = 0; i < spec_sum.size(); ++i) {
            out.spectrum_freq[i] = i * dw;
            out.spectrum_first_component[i] = spec_sum[i] / spec_count;
        }
    }
    return out;
}

LaserNumberStats laser_number_stats(const LaserRates& rates) {
    rates.validate();
    if (!(rates.pump > rates.loss)) {
        throw ValidationError("laser_number_stats: below threshold (requires A > C)");
    }
    LaserNumberStats s;
    s.mean_n = (rates.pump - rates.loss) / rates.saturation;
    s.sigma_n = std::sqrt(rates.pump / rates.saturation);
    s.fano = rates.pump / (rates.pump - rates.loss);
    return s;
}

PhaseDiffusion phase_diffusion(const LaserRates& rates, double mean_n, double t, int walkers,
                               uint64_t seed) {
    rates.validate();
    if (t < 0.0) throw ValidationError("phase_diffusion: t must be >= 0");
    if (!(mean_n > 0.0)) throw ValidationError("phase_diffusion: mean_n must be > 0");

    PhaseDiffusion out;
    out.diffusion_constant = rates.pump / (2.0 * mean_n);
    out.sigma_theta_sq = out.diffusion_constant * t;

    // Direct walk against the underlying diffusion equation
    // dP/dt = (A/4<n>) d^2P/dtheta^2, whose variance grows as 2 (A/4<n>) t
    // = sigma_theta_sq above.
    const double d_eq = rates.pump / (4.0 * mean_n);
    const int steps = 256;
    const double dt = t > 0.0 ? t / steps : 0.0;
    const double kick = std::sqrt(2.0 * d_eq * dt);
    std::vector<double> finals(walkers);
    parallel_for(static_cast<std::size_t>(walkers), [&](std::size_t k) {
        NormalRng rng(mix_seed(seed, k));
        double theta = 0.0;
        for (int s = 0; s < steps; ++s) theta += kick * rng.next();
        finals[k] = theta;
    });
    double m = 0.0, m2 = 0.0;
    for (double v : finals) {
        m += v;
        m2 += v * v;
    }
    m /= walkers;
    out.ensemble_sigma_sq = m2 / walkers - m * m;
    return out;
}

NumberDistribution stationary_number_distribution(const LaserRates& rates,
                                                  const std::vector<double>& n_grid) {
    rates.validate();
    if (n_grid.size() < 3) throw ValidationError("number_distribution: grid too small");
    NumberDistribution out;
    out.n = n_grid;
    out.p.resize(n_grid.size());
    const double center = (rates.pump - rates.loss) / rates.saturation;
    const double curv = rates.saturation / (2.0 * rates.pump);
    double norm = 0.0;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double d = n_grid[i] - center;
        out.p[i] = std::exp(-curv * d * d);
        norm += out.p[i];
    }
    for (auto& v : out.p) v /= norm;

    double mean = 0.0;
    for (std::size_t i = 0; i < n_grid.size(); ++i) mean += out.p[i] * n_grid[i];
    double var = 0.0;
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        var += out.p[i] * (n_grid[i] - mean) * (n_grid[i] - mean);
    }
    out.mean = mean;
    out.variance = var;
    return out;
}

}  // namespace ringopo::langevin
