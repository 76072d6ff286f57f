#include "ringopo/vertex.hpp"

#include <cmath>

#include "ringopo/errors.hpp"
#include "ringopo/textio.hpp"

namespace ringopo::vertex {

void CouplingSet::validate() const {
    if (!(eps > 0.0)) throw ValidationError("couplings: eps must be > 0");
    if (!(eps0 > 0.0)) throw ValidationError("couplings: eps0 must be > 0");
    if (!(a_crys > 0.0)) throw ValidationError("couplings: a_crys must be > 0");
    if (!(hbar > 0.0)) throw ValidationError("couplings: hbar must be > 0");
    if (!(length > 0.0)) throw ValidationError("couplings: length must be > 0");
    if (!std::isfinite(chi2) || !std::isfinite(chi4)) {
        throw ValidationError("couplings: chi2/chi4 must be finite reals");
    }
}

VertexTraits traits(VertexKind kind) {
    switch (kind) {
        case VertexKind::chi4_p4: return {+4, 0, LaserSide::emit, 4};
        case VertexKind::chi4_m4: return {-4, 0, LaserSide::absorb, 4};
        case VertexKind::chi4_p2: return {0, +2, LaserSide::emit, 4};
        case VertexKind::chi4_m2: return {0, -2, LaserSide::absorb, 4};
        case VertexKind::chi2_p2: return {0, +2, LaserSide::emit, 2};
        case VertexKind::chi2_m2: return {0, -2, LaserSide::absorb, 2};
    }
    throw ValidationError("unknown vertex kind");
}

std::string kind_name(VertexKind kind) {
    switch (kind) {
        case VertexKind::chi4_p4: return "chi4_p4";
        case VertexKind::chi4_m4: return "chi4_m4";
        case VertexKind::chi4_p2: return "chi4_p2";
        case VertexKind::chi4_m2: return "chi4_m2";
        case VertexKind::chi2_p2: return "chi2_p2";
        case VertexKind::chi2_m2: return "chi2_m2";
    }
    throw ValidationError("unknown vertex kind");
}

std::string convention_name(VertexConvention c) {
    return c == VertexConvention::mode_product ? "mode-product" : "resonance-squared";
}

double delta_energy(VertexKind kind, const ModeSet& modes) {
    const VertexTraits t = traits(kind);
    return t.dn1 * modes.omega1() + t.dn2 * modes.omega2();
}

VertexAmplitude vertex_closed_form(VertexKind kind, int n1, int n2,
                                   const CouplingSet& couplings, const ModeSet& modes,
                                   VertexConvention convention) {
    const VertexTraits t = traits(kind);
    const int ket1 = n1 - t.dn1;
    const int ket2 = n2 - t.dn2;
    if (n1 < 0 || n2 < 0 || ket1 < 0 || ket2 < 0) {
        return {kind, Complex(0.0, 0.0)};
    }

    const double hbar = couplings.hbar;
    const double le = couplings.length * couplings.eps;
    // Per-mode energy density factors hbar omega_i / (2 L eps); the
    // resonance-squared normalization replaces them by omega_res multiples.
    double pref = 0.0;
    const bool res = convention == VertexConvention::resonance_squared;
    const double p1 = res ? hbar * modes.omega_res / (8.0 * le)
                          : hbar * modes.omega1() / (2.0 * le);
    const double p2 = res ? hbar * modes.omega_res / (4.0 * le)
                          : hbar * modes.omega2() / (2.0 * le);

    double radical = 0.0;
    double sign = 1.0;
    switch (kind) {
        case VertexKind::chi4_p4:
            pref = 10.0 * couplings.eps0 * couplings.chi4 * p1 * p1;
            radical = std::sqrt(double(n1 - 3) * (n1 - 2) * (n1 - 1) * n1);
            break;
        case VertexKind::chi4_m4:
            pref = 10.0 * couplings.eps0 * couplings.chi4 * p1 * p1;
            radical = std::sqrt(double(n1 + 1) * (n1 + 2) * (n1 + 3) * (n1 + 4));
            break;
        case VertexKind::chi4_p2:
            pref = 10.0 * couplings.eps0 * couplings.chi4 *
                   (res ? p2 * p2 : p1 * p2) * (2.0 * n1 + 1.0);
            radical = std::sqrt(double(n2) * (n2 - 1));
            sign = -1.0;
            break;
        case VertexKind::chi4_m2:
            pref = 10.0 * couplings.eps0 * couplings.chi4 *
                   (res ? p2 * p2 : p1 * p2) * (2.0 * n1 + 1.0);
            radical = std::sqrt(double(n2 + 1) * (n2 + 2));
            sign = -1.0;
            break;
        case VertexKind::chi2_p2:
            pref = 3.0 * couplings.eps0 * couplings.chi2 * p2;
            radical = std::sqrt(double(n2 - 1) * n2);
            break;
        case VertexKind::chi2_m2:
            pref = 3.0 * couplings.eps0 * couplings.chi2 * p2;
            radical = std::sqrt(double(n2 + 2) * (n2 + 1));
            break;
    }

    const Complex laser =
        t.side == LaserSide::emit ? couplings.e_laser : std::conj(couplings.e_laser);
    return {kind, sign * pref * couplings.a_crys * laser * radical};
}

FockOperator vertex_bruteforce(VertexKind kind, Cutoff cutoff, const CouplingSet& couplings,
                               const ModeSet& modes, const CavityConfig& cavity_cfg,
                               double z) {
    couplings.validate();
    cutoff.validate();
    const double half = cavity_cfg.crystal_length / 2.0;
    if (z < -half || z > half) {
        throw ValidationError("vertex_bruteforce: z outside the crystal");
    }
    const VertexTraits t = traits(kind);
    const int power = t.chi_order;  // E^2 for chi2 kinds, E^4 for chi4 kinds
    if (cutoff.n1_max < power || cutoff.n2_max < power) {
        throw ValidationError(
            "vertex_bruteforce: cutoff too small for an interior-block comparison "
            "(need n_i_max >= the field power)");
    }

    const double le = couplings.length * couplings.eps;
    const std::array<double, 2> pref = {
        std::sqrt(couplings.hbar * modes.omega1() / (2.0 * le)),
        std::sqrt(couplings.hbar * modes.omega2() / (2.0 * le))};
    const double cp = cavity_cfg.c_crystal();
    const std::array<Complex, 2> phases = {
        std::exp(Complex(0.0, modes.omega1() * z / cp)),
        std::exp(Complex(0.0, modes.omega2() * z / cp))};

    const FockOperator e = fock::quantized_field(pref, phases, cutoff);
    FockOperator pw = fock::op_power(e, power);

    const double chi = power == 2 ? couplings.chi2 : couplings.chi4;
    const double combinatorial = power == 2 ? 6.0 : 20.0;
    const Complex laser =
        t.side == LaserSide::emit ? couplings.e_laser : std::conj(couplings.e_laser);
    const Complex scale = 0.5 * couplings.eps0 * combinatorial * chi * couplings.a_crys * laser;

    FockOperator block = FockOperator::zero(cutoff);
    for (int b1 = 0; b1 <= cutoff.n1_max; ++b1) {
        for (int b2 = 0; b2 <= cutoff.n2_max; ++b2) {
            const int k1 = b1 - t.dn1;
            const int k2 = b2 - t.dn2;
            if (!cutoff.contains(k1, k2)) continue;
            block.mat(cutoff.index(b1, b2), cutoff.index(k1, k2)) =
                scale * pw.mat(cutoff.index(b1, b2), cutoff.index(k1, k2));
        }
    }
    return block;
}

std::vector<VertexKind> list_allowed_transitions(int n1, int n2, LaserSide direction) {
    if (n1 < 0 || n2 < 0) throw ValidationError("list_allowed_transitions: negative occupation");
    std::vector<VertexKind> out;
    for (VertexKind kind : all_vertex_kinds) {
        const VertexTraits t = traits(kind);
        if (t.side != direction) continue;
        if (n1 + t.dn1 < 0 || n2 + t.dn2 < 0) continue;
        out.push_back(kind);
    }
    return out;
}

FockOperator rotating_hamiltonian(Cutoff cutoff, const CouplingSet& couplings,
                                  const ModeSet& modes, const CavityConfig& cavity_cfg,
                                  double z) {
    FockOperator h = FockOperator::zero(cutoff);
    for (VertexKind kind : all_vertex_kinds) {
        h.mat += vertex_bruteforce(kind, cutoff, couplings, modes, cavity_cfg, z).mat;
    }
    return h;
}

std::string vertex_table_csv(int n1_max, int n2_max, const CouplingSet& couplings,
                             const ModeSet& modes, VertexConvention convention) {
    if (n1_max < 0 || n2_max < 0) throw ValidationError("vertex_table_csv: negative range");
    CsvWriter csv({"kind", "n1", "n2", "re", "im", "convention"});
    for (VertexKind kind : all_vertex_kinds) {
        for (int n1 = 0; n1 <= n1_max; ++n1) {
            for (int n2 = 0; n2 <= n2_max; ++n2) {
                const auto amp = vertex_closed_form(kind, n1, n2, couplings, modes, convention);
                csv.add_row_raw({kind_name(kind), std::to_string(n1), std::to_string(n2),
                                 format_g17(amp.value.real()), format_g17(amp.value.imag()),
                                 convention_name(convention)});
            }
        }
    }
    return csv.str();
}

}  // namespace ringopo::vertex
