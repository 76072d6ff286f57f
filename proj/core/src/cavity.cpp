#include "ringopo/cavity.hpp"

#include <cmath>

#include "ringopo/errors.hpp"
#include "ringopo/parallel.hpp"
#include "ringopo/textio.hpp"

namespace ringopo::cavity {

double CavityConfig::r_for(Mode m) const {
    switch (m) {
        case Mode::laser: return r_laser;
        case Mode::photon1: return r_photon1;
        case Mode::photon2: return r_photon2;
    }
    throw ValidationError("unknown mode label");
}

double CavityConfig::gamma_for(Mode m) const {
    switch (m) {
        case Mode::laser: return 0.0;
        case Mode::photon1: return gamma_prime_photon1.value_or(gamma_prime);
        case Mode::photon2: return gamma_prime_photon2.value_or(gamma_prime);
    }
    throw ValidationError("unknown mode label");
}

void CavityConfig::validate() const {
    if (!(crystal_length > 0.0) || !(crystal_length < length)) {
        throw ValidationError("cavity: require 0 < crystal_length < length");
    }
    if (!(n_crys >= 1.0)) throw ValidationError("cavity: n_crys must be >= 1");
    if (!(gamma_prime >= 0.0)) throw ValidationError("cavity: gamma_prime must be >= 0");
    for (auto ov : {gamma_prime_photon1, gamma_prime_photon2}) {
        if (ov && !(*ov >= 0.0)) throw ValidationError("cavity: gamma_prime override must be >= 0");
    }
    for (double r : {r_laser, r_photon1, r_photon2}) {
        if (!(r >= 0.0 && r < 1.0)) {
            throw ValidationError("cavity: mirror products r must lie in [0, 1)");
        }
    }
    if (!(r2_single >= 0.0 && r2_single < 1.0)) {
        throw ValidationError("cavity: r2_single must lie in [0, 1)");
    }
    if (!(c > 0.0)) throw ValidationError("cavity: c must be > 0");
}

double ModeSet::omega_for(Mode m) const {
    switch (m) {
        case Mode::laser: return omega_laser;
        case Mode::photon1: return omega1();
        case Mode::photon2: return omega2();
    }
    throw ValidationError("unknown mode label");
}

void ModeSet::validate() const {
    if (!(omega_laser > 0.0)) throw ValidationError("modes: omega_laser must be > 0");
    if (!(omega_res > 0.0)) throw ValidationError("modes: omega_res must be > 0");
    if (!(delta > 0.0)) throw ValidationError("modes: delta must be > 0");
}

double phase(const CavityConfig& cfg, double omega) {
    if (!(omega > 0.0)) throw ValidationError("phase: omega must be > 0");
    return omega / cfg.c * (cfg.length - cfg.crystal_length) +
           omega * cfg.n_crys / cfg.c * cfg.crystal_length;
}

namespace {

// x = r e^{-gamma' ell}; the loop gain magnitude per round trip.
double loop_gain(const CavityConfig& cfg, Mode mode) {
    return cfg.r_for(mode) * std::exp(-cfg.gamma_for(mode) * cfg.crystal_length);
}

void require_subunit_gain(double x) {
    if (x >= 1.0) {
        throw ValidationError(
            "round-trip gain r e^{-gamma' ell} must be < 1 (got " + format_g17(x) + ")");
    }
}

}  // namespace

double k_round_trip_mag2(const CavityConfig& cfg, double omega, Mode mode) {
    const double x = loop_gain(cfg, mode);
    require_subunit_gain(x);
    const double s = std::sin(0.5 * phase(cfg, omega));
    return 1.0 / ((1.0 - x) * (1.0 - x) + 4.0 * x * s * s);
}

FwhmEstimate fwhm_estimate(const CavityConfig& cfg, Mode mode) {
    const double x = loop_gain(cfg, mode);
    require_subunit_gain(x);
    if (!(x > 0.0)) throw ValidationError("fwhm_estimate: requires r e^{-gamma' ell} in (0,1)");
    FwhmEstimate est;
    est.value = std::abs(1.0 - x) / std::sqrt(x);
    est.omega_fsr = constants::two_pi * cfg.c / cfg.length;
    est.in_validity = x >= 0.9;
    return est;
}

ResonanceScan resonance_scan(const CavityConfig& cfg, Mode mode,
                             const std::vector<double>& omega_grid) {
    if (omega_grid.empty()) throw ValidationError("resonance_scan: empty omega grid");
    ResonanceScan scan;
    scan.omega = omega_grid;
    scan.k_mag2.resize(omega_grid.size());
    parallel_for(omega_grid.size(), [&](std::size_t i) {
        scan.k_mag2[i] = k_round_trip_mag2(cfg, omega_grid[i], mode);
    });

    // Interior local maxima, refined by a parabola through the three samples
    // around the peak (grid resolution otherwise dominates the peak position).
    for (std::size_t i = 1; i + 1 < scan.k_mag2.size(); ++i) {
        const double ym = scan.k_mag2[i - 1], y0 = scan.k_mag2[i], yp = scan.k_mag2[i + 1];
        if (y0 >= ym && y0 > yp) {
            const double denom = ym - 2.0 * y0 + yp;
            double shift = 0.0;
            if (denom != 0.0) shift = 0.5 * (ym - yp) / denom;
            shift = std::clamp(shift, -0.5, 0.5);
            const double h = (scan.omega[i + 1] - scan.omega[i - 1]) / 2.0;
            ResonancePeak peak;
            peak.omega = scan.omega[i] + shift * h;
            peak.k_mag2 = k_round_trip_mag2(cfg, peak.omega, mode);
            peak.phi_over_2pi = phase(cfg, peak.omega) / constants::two_pi;
            scan.peaks.push_back(peak);
        }
    }
    return scan;
}

std::string resonance_scan_csv(const ResonanceScan& scan) {
    CsvWriter csv({"omega_rad_per_s", "k_mag2"});
    for (std::size_t i = 0; i < scan.omega.size(); ++i) {
        csv.add_row({scan.omega[i], scan.k_mag2[i]});
    }
    return csv.str();
}

namespace {

// Shared resonance denominator 1 - r e^{i phi - gamma' ell}.
Complex resonance_denominator(const CavityConfig& cfg, const ModeSet& modes, Mode mode) {
    const double phi = phase(cfg, modes.omega_for(mode));
    const double x = loop_gain(cfg, mode);
    require_subunit_gain(x);
    return 1.0 - x * std::exp(Complex(0.0, phi));
}

void require_inside_crystal(const CavityConfig& cfg, double z, const char* who) {
    const double h = cfg.crystal_length / 2.0;
    if (z < -h || z > h) {
        throw ValidationError(std::string(who) + ": position outside the crystal [-ell/2, ell/2]");
    }
}

}  // namespace

Complex k_crystal(const CavityConfig& cfg, const ModeSet& modes, Mode mode, double z,
                  double z_prime) {
    require_inside_crystal(cfg, z, "k_crystal");
    require_inside_crystal(cfg, z_prime, "k_crystal");
    const double g = cfg.gamma_for(mode);
    return std::exp(-g * std::abs(z - z_prime)) / resonance_denominator(cfg, modes, mode);
}

Complex k_laser(const CavityConfig& cfg, const ModeSet& modes, double z, double z_prime) {
    (void)z;
    (void)z_prime;  // position-independent: no crystal damping on the pump
    const double phi = phase(cfg, modes.omega_laser);
    const Complex den = 1.0 - cfg.r_laser * std::exp(Complex(0.0, phi));
    if (std::abs(den) < 1e-12) {
        throw ValidationError(
            "k_laser: resonant denominator vanishes (perfectly reflecting configuration)");
    }
    return 1.0 / den;
}

Complex k_to_detector(const CavityConfig& cfg, const ModeSet& modes, Mode mode, double z_f) {
    require_inside_crystal(cfg, z_f, "k_to_detector");
    const double g = cfg.gamma_for(mode);
    const double t2 = std::sqrt(1.0 - cfg.r2_single * cfg.r2_single);
    return t2 * std::exp(-g * (cfg.crystal_length / 2.0 - z_f)) /
           resonance_denominator(cfg, modes, mode);
}

}  // namespace ringopo::cavity
