#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ringopo::langevin {

// Deterministic normal generator: splitmix64 stream + Box-Muller. Fully
// specified here so ensembles are bit-reproducible across library versions.
class NormalRng {
public:
    explicit NormalRng(uint64_t seed) : state_(seed) {}
    double next();          // standard normal
    double next_uniform();  // (0, 1)

private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Per-trajectory seeding: trajectory k draws from stream mix(seed, k), so
// results do not depend on scheduling order.
uint64_t mix_seed(uint64_t seed, uint64_t trajectory);

struct LaserRates {
    double pump = 0.0;        // A [1/s]
    double saturation = 0.0;  // B [1/s]
    double loss = 0.0;        // C [1/s]
    void validate() const;    // all > 0
};

struct EnsembleSpec {
    int trajectories = 10000;
    uint64_t seed = 0;
    double dt = 1e-3;       // [s]
    double t_end = 10.0;    // [s]
    int record_stride = 1;  // statistics sampled every k-th step
    double burn_in = 0.0;   // discard t < burn_in for stationary statistics
    void validate() const;
};

// d x_i/dt = -A_ij x_j + B_ij xi_j with unit-intensity white noise xi
// (Euler-Maruyama). Real components; the (alpha, alpha*) pair maps onto two
// real components upstream. Per-time ensemble mean/variance, stationary
// moments over the post-burn-in window, and an averaged tail periodogram
// comparable to spectrum_matrix.
struct EnsembleStats {
    std::vector<double> times;                   // recorded grid
    std::vector<Eigen::VectorXd> mean;           // per recorded time
    std::vector<Eigen::VectorXd> variance;       // per recorded time, per component
    Eigen::VectorXd stationary_mean;
    Eigen::VectorXd stationary_variance;
    long stationary_samples = 0;

    std::vector<double> spectrum_freq;           // angular frequency [rad/s]
    std::vector<double> spectrum_first_component;  // (1/2pi)-normalized estimate
};

EnsembleStats langevin_linear(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const EnsembleSpec& spec,
                              const Eigen::VectorXd& x0 = Eigen::VectorXd());

struct LaserNumberStats {
    double mean_n;   // (A - C)/B
    double sigma_n;  // sqrt(A/B)
    double fano;     // sigma^2/mean = A/(A - C)
};
LaserNumberStats laser_number_stats(const LaserRates& rates);

// Phase diffusion sigma_theta^2(t) = (A / 2<n>) t, plus a direct random-walk
// ensemble slope for cross-checking.
struct PhaseDiffusion {
    double sigma_theta_sq;         // closed form
    double ensemble_sigma_sq;      // measured at t over the walker ensemble
    double diffusion_constant;     // D = A / 2<n>
};
PhaseDiffusion phase_diffusion(const LaserRates& rates, double mean_n, double t,
                               int walkers = 10000, uint64_t seed = 0);

// Stationary P(n) ~ exp(-(B/2A)(n - (A-C)/B)^2) on the given n grid,
// normalized by the grid sum; mean/variance by moment sums.
struct NumberDistribution {
    std::vector<double> n;
    std::vector<double> p;
    double mean;
    double variance;
};
NumberDistribution stationary_number_distribution(const LaserRates& rates,
                                                  const std::vector<double>& n_grid);

}  // namespace ringopo::langevin
