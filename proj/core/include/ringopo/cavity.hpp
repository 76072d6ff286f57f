#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ringopo/constants.hpp"

namespace ringopo::cavity {

using Complex = std::complex<double>;

// The three circulating waves: the pump at omega_L and the two retained
// photon modes at omega_L/4 and omega_L/2.
enum class Mode { laser, photon1, photon2 };

// Ring resonator geometry and optics. r holds the round-trip mirror product
// r1*r2*r3*r4 per mode; it is stored per mode because both r and gamma' can
// depend on frequency. gamma' applies inside the crystal only, and is
// dropped for the laser (pumping holds the pump amplitude fixed).
struct CavityConfig {
    double length = 1.5;           // L, round-trip path [m]
    double crystal_length = 0.01;  // ell [m]
    double n_crys = 2.2;           // refractive index of the crystal
    double gamma_prime = 0.0;      // damping per length inside the crystal [1/m]
    double r_laser = 0.0;          // mirror product at omega_L
    double r_photon1 = 0.0;        // mirror product at omega_1
    double r_photon2 = 0.0;        // mirror product at omega_2
    double r2_single = 0.0;        // output mirror amplitude reflection (PD leg)
    double c = constants::c_vacuum;

    // Optional per-mode gamma' overrides (photon modes only).
    std::optional<double> gamma_prime_photon1;
    std::optional<double> gamma_prime_photon2;

    double r_for(Mode m) const;
    double gamma_for(Mode m) const;  // 0 for the laser
    double c_crystal() const { return c / n_crys; }

    void validate() const;
};

// Laser/resonance frequencies and the Gaussian averaging width. The photon
// modes are fixed fractions of the pump: omega1 = omega_L/4, omega2 = omega_L/2.
struct ModeSet {
    double omega_laser = 0.0;  // rad/s
    double omega_res = 0.0;    // center of the Gaussian weight [rad/s]
    double delta = 0.0;        // Gaussian width [rad/s]

    double omega1() const { return omega_laser / 4.0; }
    double omega2() const { return omega_laser / 2.0; }
    double omega_for(Mode m) const;

    void validate() const;
};

// Round-trip phase phi(omega) = (omega/c)(L - ell) + (omega n_crys / c) ell.
double phase(const CavityConfig& cfg, double omega);

// |K|^2 = 1 / [(1 - x)^2 + 4 x sin^2(phi/2)], x = r e^{-gamma' ell}.
// Resonant buildup factor of the field intensity.
double k_round_trip_mag2(const CavityConfig& cfg, double omega, Mode mode);

struct FwhmEstimate {
    double value;       // |1 - x| / sqrt(x); half-width at half max in phi [rad]
    double omega_fsr;   // free spectral range 2 pi c / L [rad/s]
    bool in_validity;   // the x ~ 1 expansion holds; false when x < 0.9
};
FwhmEstimate fwhm_estimate(const CavityConfig& cfg, Mode mode);

struct ResonancePeak {
    double omega;          // refined by parabolic interpolation around the grid maximum
    double k_mag2;
    double phi_over_2pi;   // integer at an exact resonance
};

struct ResonanceScan {
    std::vector<double> omega;
    std::vector<double> k_mag2;
    std::vector<ResonancePeak> peaks;
};

// Samples |K|^2 over omega_grid (parallel over points, deterministic order)
// and locates maxima.
ResonanceScan resonance_scan(const CavityConfig& cfg, Mode mode,
                             const std::vector<double>& omega_grid);

// CSV with header omega_rad_per_s,k_mag2 and one row per grid point.
std::string resonance_scan_csv(const ResonanceScan& scan);

// Damping factor between two crystal planes,
//   K_C(z, z') = e^{-gamma'|z - z'|} / (1 - r e^{i phi - gamma' ell}).
// Phase-stripped: the oscillatory propagation phase lives with the vertices.
Complex k_crystal(const CavityConfig& cfg, const ModeSet& modes, Mode mode, double z,
                  double z_prime);

// Laser leg between two planes: 1 / (1 - r_L e^{i phi(omega_L)}), gamma' dropped.
Complex k_laser(const CavityConfig& cfg, const ModeSet& modes, double z, double z_prime);

// Final leg through the output mirror to the photodetector:
//   sqrt(1 - r2^2) e^{-gamma' (ell/2 - z_f)} / (1 - r e^{i phi - gamma' ell}).
Complex k_to_detector(const CavityConfig& cfg, const ModeSet& modes, Mode mode, double z_f);

}  // namespace ringopo::cavity
