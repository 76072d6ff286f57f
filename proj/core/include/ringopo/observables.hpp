#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ringopo/lindblad.hpp"
#include "ringopo/smatrix.hpp"

namespace ringopo::observables {

using Complex = std::complex<double>;

// Photon-number statistics of the post-interaction state. Probabilities are
// renormalized by sum |amp|^2: the truncated perturbative series is not
// unitary order by order.
struct PhotonStats {
    double mean_n1 = 0.0;
    double mean_n2 = 0.0;
    std::map<std::pair<int, int>, double> moments;  // (m1,m2) -> <n1^m1 n2^m2>
    double normalization = 0.0;                     // the sum |amp|^2 used
};
PhotonStats photon_stats(const smatrix::SMatrixResult& result, int max_moment);

struct HusimiGridSpec {
    double radius = 4.0;       // re/im extent per complex plane
    int points_per_axis = 21;  // odd keeps alpha = 0 on the grid
};

// Q function H(a1, a2) = |<a1, a2 | psi>|^2 over the product of two
// rectangular complex-plane lattices, psi the normalized S|initial>.
struct HusimiGrid {
    HusimiGridSpec spec;
    std::vector<double> axis;     // shared re/im axis
    std::vector<double> values;   // flattened [re1][im1][re2][im2]
    double integral_estimate = 0.0;  // grid product quadrature of H / pi^2
    bool truncation_warning = false; // grid reaches |alpha|^2 > n_max/2

    std::size_t index(int i_re1, int i_im1, int i_re2, int i_im2) const;
};
HusimiGrid husimi(const smatrix::SMatrixResult& result, const HusimiGridSpec& spec);
HusimiGrid husimi(const fock::FockVector& state, const HusimiGridSpec& spec);

std::string husimi_csv(const HusimiGrid& grid);

enum class CorrelatorKind { c11, c22, c112, c121, c211 };
std::string correlator_kind_name(CorrelatorKind k);

// Phase-shifted photodetector correlators via quantum regression on the
// Lindblad evolution, mapped to output fields by sqrt(gamma) per operator
// (input-output relation). Two-point kinds are normally ordered and
// connected -- the photodetector registers no vacuum fluctuations, and on an
// uncoupled vacuum they vanish identically. Three-point kinds run over gaps
// (tau, sigma) with the latest operator applied last, as the plain operator
// products read. The printed delta-subtraction pattern per kind:
//   c11 : <dX1(t) dX1(t')>          c22 : <dX2(t) dX2(t')>
//   c112: <dX1 X1 dX2>              c121: <dX1 dX2 X1>
//   c211: <dX2 dX1 dX1>
struct QuadCorrelator {
    CorrelatorKind kind;
    double theta = 0.0;
    std::vector<double> tau;     // first gap
    std::vector<double> sigma;   // second gap (three-point kinds)
    std::vector<Complex> values; // flattened [tau][sigma] for 2-gap kinds
    bool stationary_warning = false;
};

struct CorrelatorTimes {
    double tau_max = 0.0;
    int n_tau = 0;
    double sigma_max = 0.0;  // three-point kinds only
    int n_sigma = 0;
};

QuadCorrelator quad_correlator(CorrelatorKind kind, double theta, const CorrelatorTimes& times,
                               const lindblad::DensityMatrix& rho_ss,
                               const lindblad::MasterConfig& cfg);

// Spectra: S(nu) = int_0^inf dtau C(tau) e^{-i nu tau} for the two-point
// kinds, S(mu, nu) = int int C(tau, sigma) e^{-i(mu tau + nu sigma)} for the
// three-point ones. Trapezoid on the sampled gaps; windowing disclosed in
// metadata.
struct SpectrumSeries {
    CorrelatorKind kind;
    std::vector<double> freq1;
    std::vector<double> freq2;   // empty for 1-D kinds
    std::vector<Complex> values; // flattened [freq1][freq2]
    std::string window = "none (trapezoid)";
};
SpectrumSeries spectrum(const QuadCorrelator& corr, const std::vector<double>& freq1,
                        const std::vector<double>& freq2 = {});

std::string spectrum_csv(const SpectrumSeries& s);

}  // namespace ringopo::observables
