#include "ringopo/smatrix.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "ringopo/chebyshev.hpp"
#include "ringopo/errors.hpp"
#include "ringopo/parallel.hpp"

namespace ringopo::smatrix {

using cavity::Mode;
using vertex::VertexKind;

QuadratureGrid QuadratureGrid::gauss_legendre(int m_points, double half_length) {
    if (m_points < 1) throw ValidationError("quadrature: m_points must be >= 1");
    QuadratureGrid grid;
    grid.m_points = m_points;
    grid.nodes.resize(m_points);
    grid.weights.resize(m_points);
    // Newton iteration on P_m; standard Golub-Welsch-free construction.
    const int m = m_points;
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(constants::pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        grid.nodes[i] = -x * half_length;
        grid.nodes[m - 1 - i] = x * half_length;
        grid.weights[i] = w * half_length;
        grid.weights[m - 1 - i] = w * half_length;
    }
    return grid;
}

double gaussian_weight(double delta_energy, const cavity::ModeSet& modes) {
    modes.validate();
    const double d = std::abs(delta_energy) - modes.omega_res;
    return std::exp(-d * d / (2.0 * modes.delta * modes.delta)) /
           (std::sqrt(constants::two_pi) * modes.delta);
}

std::vector<DiagramPath> enumerate_paths(State initial, int order_max, fock::Cutoff cutoff) {
    cutoff.validate();
    if (!cutoff.contains(initial.first, initial.second)) {
        throw ValidationError("enumerate_paths: initial state outside cutoff");
    }
    if (order_max < 0) throw ValidationError("enumerate_paths: order_max must be >= 0");
    if (order_max > hard_order_limit) {
        throw ValidationError("enumerate_paths: order_max " + std::to_string(order_max) +
                              " exceeds the hard limit " + std::to_string(hard_order_limit) +
                              " (path count grows combinatorially)");
    }

    std::vector<DiagramPath> out;
    DiagramPath current;
    current.states.push_back(initial);

    // depth-first, kinds tried in canonical enum order -> lexicographic output
    auto dfs = [&](auto&& self, int depth) -> void {
        out.push_back(current);
        if (out.size() > hard_path_limit) {
            throw ValidationError("enumerate_paths: path count exceeds the guard");
        }
        if (depth == order_max) return;
        const State s = current.states.back();
        for (VertexKind kind : vertex::all_vertex_kinds) {
            const auto t = vertex::traits(kind);
            const State next{s.first + t.dn1, s.second + t.dn2};
            if (!cutoff.contains(next.first, next.second)) continue;
            current.kinds.push_back(kind);
            current.states.push_back(next);
            self(self, depth + 1);
            current.kinds.pop_back();
            current.states.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

namespace {

Mode mode_changed(VertexKind kind) {
    return vertex::traits(kind).dn1 != 0 ? Mode::photon1 : Mode::photon2;
}

int cheb_points(int m_points) {
    return std::clamp(4 * m_points, 16, 512) + 1;
}

}  // namespace

Complex amplitude(const DiagramPath& path, const cavity::CavityConfig& cfg,
                  const vertex::CouplingSet& couplings, const cavity::ModeSet& modes,
                  const SMatrixParams& params) {
    const int n = path.order();
    if (n == 0) return Complex(1.0, 0.0);
    if (static_cast<int>(path.states.size()) != n + 1) {
        throw ValidationError("amplitude: path states do not match its vertex count");
    }

    cfg.validate();
    couplings.validate();
    modes.validate();
    const double half = cfg.crystal_length / 2.0;
    const double z_entry = params.z_entry.value_or(-half);
    if (z_entry > -half * (1.0 - 1e-12)) {
        throw ValidationError("amplitude: z_entry must lie at or before the crystal entry -ell/2");
    }
    for (Mode m : {Mode::photon1, Mode::photon2}) {
        if (cfg.gamma_for(m) * cfg.crystal_length > 60.0) {
            throw NumericalError("amplitude: gamma' * ell too large for the chain quadrature");
        }
    }

    // Per-vertex scalar factor: (-2 pi i / hbar) W with W at (or scaled from)
    // the Gaussian peak, times the closed-form vertex element. Positions are
    // summed per crystal plane: integral dz / a_crys per vertex.
    const double wpeak = 1.0 / (std::sqrt(constants::two_pi) * modes.delta);
    double gauss = 1.0;
    if (params.full_gaussian_weight) {
        const double d = modes.omega_laser - modes.omega_res;
        gauss = std::exp(-d * d / (2.0 * modes.delta * modes.delta));
    }
    const Complex per_vertex_prefactor =
        Complex(0.0, -constants::two_pi) / couplings.hbar * wpeak * gauss;

    Complex acc(1.0, 0.0);
    for (int j = 1; j <= n; ++j) {
        const State bra = path.states[j];
        const auto v = vertex::vertex_closed_form(path.kinds[j - 1], bra.first, bra.second,
                                                  couplings, modes, params.convention);
        acc *= per_vertex_prefactor * v.value / couplings.a_crys;
    }

    // Damping-factor constants. Each leg is labeled by the mode changed by
    // the vertex at its later end; the detector leg follows the final vertex.
    const Mode entry_mode = mode_changed(path.kinds.front());
    const Mode pd_mode = mode_changed(path.kinds.back());
    acc *= cavity::k_crystal(cfg, modes, entry_mode, 0.0, 0.0);  // resonance factor, e^0 numerator
    for (int j = 1; j < n; ++j) {
        const Mode gap_mode = mode_changed(path.kinds[j]);  // later end of gap (j-1, j)
        acc *= cavity::k_crystal(cfg, modes, gap_mode, 0.0, 0.0);
        acc *= cavity::k_laser(cfg, modes, 0.0, 0.0);
    }
    acc *= cavity::k_to_detector(cfg, modes, pd_mode, half);  // sqrt(1-r2^2) and resonance factor

    // Exponential-damping chain over the vertex positions, earliest first:
    //   J = int du_1..du_n  e^{-g_pd (ell/2 - u_n)} prod e^{-g_gap |u_j - u_{j+1}|}
    //                        e^{-g_entry (u_1 - z_entry)}
    // The entry/PD exponents at the reference points were stripped into the
    // resonance factors above (numerators e^0), so they are applied here.
    const int np = cheb_points(params.m_points);
    const double g_entry = cfg.gamma_for(entry_mode);
    std::vector<double> xs = cheb::ChebFun::nodes(-half, half, np);
    std::vector<double> g0(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        g0[i] = std::exp(-g_entry * (xs[i] - z_entry));
    }
    cheb::ChebFun g(-half, half, std::move(g0));
    for (int j = 1; j < n; ++j) {
        const double g_gap = cfg.gamma_for(mode_changed(path.kinds[j]));
        g = cheb::convolve_exp_kernel(g, g_gap);
    }
    const double g_pd = cfg.gamma_for(pd_mode);
    std::vector<double> last(g.size());
    const std::vector<double> xs2 = cheb::ChebFun::nodes(-half, half, g.size());
    for (int i = 0; i < g.size(); ++i) {
        last[i] = std::exp(-g_pd * (half - xs2[i])) * g.values()[i];
    }
    const double j_integral = cheb::ChebFun(-half, half, std::move(last)).definite_integral();

    acc *= j_integral;
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
        throw NumericalError("amplitude: non-finite value for a path of order " +
                             std::to_string(n));
    }
    return acc;
}

SMatrixResult s_matrix(const cavity::CavityConfig& cfg, const vertex::CouplingSet& couplings,
                       const cavity::ModeSet& modes, fock::Cutoff cutoff,
                       SMatrixParams params) {
    const auto paths = enumerate_paths(params.initial, params.order_max, cutoff);

    std::vector<Complex> amps(paths.size());
    parallel_for(paths.size(), [&](std::size_t i) {
        amps[i] = amplitude(paths[i], cfg, couplings, modes, params);
    });

    SMatrixResult result;
    result.initial = params.initial;
    result.per_order.assign(params.order_max + 1, {});
    result.order_max = params.order_max;
    result.cutoff = cutoff;
    result.convention = params.convention;
    result.m_points = params.m_points;

    // fixed reduction order (paths are already in enumeration order)
    for (std::size_t i = 0; i < paths.size(); ++i) {
        result.per_order[paths[i].order()][paths[i].final_state()] += amps[i];
    }
    for (auto& order_map : result.per_order) {
        std::erase_if(order_map, [](const auto& kv) { return kv.second == Complex(0.0); });
    }
    for (const auto& order_map : result.per_order) {
        for (const auto& [state, amp] : order_map) result.totals[state] += amp;
    }
    std::erase_if(result.totals, [](const auto& kv) { return kv.second == Complex(0.0); });

    double sum2 = 0.0;
    for (const auto& [state, amp] : result.totals) sum2 += std::norm(amp);
    result.norm_deficit = 1.0 - sum2;
    return result;
}

fock::FockVector result_vector(const SMatrixResult& result) {
    fock::FockVector v = fock::FockVector::zero(result.cutoff);
    for (const auto& [state, amp] : result.totals) {
        v.amps(result.cutoff.index(state.first, state.second)) = amp;
    }
    return v;
}

std::string SMatrixResult::to_json() const {
    nlohmann::json j;
    j["initial"] = {initial.first, initial.second};
    j["order_max"] = order_max;
    j["cutoff"] = {{"n1_max", cutoff.n1_max}, {"n2_max", cutoff.n2_max}};
    j["convention"] = vertex::convention_name(convention);
    j["m_points"] = m_points;
    j["pd_mode_rule"] = pd_mode_rule;
    auto& orders = j["per_order"] = nlohmann::json::array();
    for (std::size_t k = 0; k < per_order.size(); ++k) {
        nlohmann::json entry;
        entry["order"] = k;
        auto& states = entry["amplitudes"] = nlohmann::json::array();
        for (const auto& [state, amp] : per_order[k]) {
            states.push_back({{"n1", state.first},
                              {"n2", state.second},
                              {"re", amp.real()},
                              {"im", amp.imag()}});
        }
        orders.push_back(std::move(entry));
    }
    auto& totals_json = j["totals"] = nlohmann::json::array();
    for (const auto& [state, amp] : totals) {
        totals_json.push_back({{"n1", state.first},
                               {"n2", state.second},
                               {"re", amp.real()},
                               {"im", amp.imag()}});
    }
    j["norm_deficit"] = norm_deficit;
    return j.dump(2);
}

}  // namespace ringopo::smatrix
