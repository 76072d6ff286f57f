#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringopo/cavity.hpp"
#include "ringopo/fock.hpp"
#include "ringopo/vertex.hpp"

namespace ringopo::smatrix {

using Complex = std::complex<double>;
using State = std::pair<int, int>;  // (n1, n2)

// One term of the perturbative sum: an ordered vertex sequence with the
// (n1, n2) lattice states it passes through, initial state first.
struct DiagramPath {
    std::vector<vertex::VertexKind> kinds;  // chronological order
    std::vector<State> states;              // size kinds.size() + 1

    int order() const { return static_cast<int>(kinds.size()); }
    State initial() const { return states.front(); }
    State final_state() const { return states.back(); }
};

// Gauss-Legendre nodes/weights on [-ell/2, ell/2]; weights sum to ell.
// Used directly for single-vertex integrals and as the reporting grid;
// multi-vertex chains are evaluated by the kink-exact spectral scheme in
// chebyshev.hpp, with resolution tied to m_points.
struct QuadratureGrid {
    int m_points = 8;
    std::vector<double> nodes;
    std::vector<double> weights;

    static QuadratureGrid gauss_legendre(int m_points, double half_length);
};

struct SMatrixParams {
    State initial{0, 0};
    int order_max = 4;
    int m_points = 8;
    vertex::VertexConvention convention = vertex::VertexConvention::mode_product;
    // Peak approximation by default: the Gaussian weight enters at its peak
    // value 1/(sqrt(2 pi) delta). The full-Gaussian variant multiplies in
    // exp(-(omega_L - omega_res)^2 / 2 delta^2) per vertex.
    bool full_gaussian_weight = false;
    // Entry plane of the incoming photon leg; defaults to -ell/2 and must not
    // lie inside the crystal.
    std::optional<double> z_entry;
};

// Hard limits: the path count grows combinatorially with order.
inline constexpr int hard_order_limit = 6;
inline constexpr std::size_t hard_path_limit = 10'000'000;

struct SMatrixResult {
    State initial;
    // amplitudes[k]: contribution of order k (k = 0 holds the identity)
    std::vector<std::map<State, Complex>> per_order;
    std::map<State, Complex> totals;
    double norm_deficit = 0.0;  // 1 - sum |total amplitude|^2

    // metadata
    int order_max = 0;
    fock::Cutoff cutoff;
    vertex::VertexConvention convention{};
    int m_points = 0;
    std::string pd_mode_rule = "mode changed by the final vertex";

    std::string to_json() const;
};

// Gaussian averaging weight W(|dE|) = exp(-(|dE| - omega_res)^2 / 2 delta^2)
// / (sqrt(2 pi) delta). Exposed for diagnostics and the sharp-peak check.
double gaussian_weight(double delta_energy, const cavity::ModeSet& modes);

// All vertex sequences of length <= order_max starting from `initial` whose
// intermediate states stay inside the cutoff with nonnegative occupations.
// Deterministic lexicographic order (by order, then kind sequence); includes
// the single empty order-0 path. Throws if order_max exceeds the hard limit
// or the path count exceeds the guard.
std::vector<DiagramPath> enumerate_paths(State initial, int order_max, fock::Cutoff cutoff);

// Amplitude of one path: product of the per-vertex prefactor
// (-2 pi i / (hbar sqrt(2 pi) delta)), the closed-form vertex values at the
// path's bra states, the damping-factor chain (K to the detector from the
// last vertex, one K_crystal + one K_laser per gap, K_crystal back to
// z_entry), integrated over the vertex positions in the crystal. Positions
// are summed per crystal plane (integral dz / a_crys per vertex).
Complex amplitude(const DiagramPath& path, const cavity::CavityConfig& cfg,
                  const vertex::CouplingSet& couplings, const cavity::ModeSet& modes,
                  const SMatrixParams& params);

// Full Gaussian-averaged S-matrix from `params.initial`: sums path amplitudes
// per final state and order, includes the order-0 identity. Paths evaluate in
// parallel; the reduction runs in enumeration order, so results are
// bit-stable across runs and thread counts.
SMatrixResult s_matrix(const cavity::CavityConfig& cfg, const vertex::CouplingSet& couplings,
                       const cavity::ModeSet& modes, fock::Cutoff cutoff,
                       SMatrixParams params);

// The post-S-matrix state sum_f amp_f |f> as a FockVector (not normalized).
fock::FockVector result_vector(const SMatrixResult& result);

}  // namespace ringopo::smatrix
