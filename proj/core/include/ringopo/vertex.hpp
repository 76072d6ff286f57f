#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ringopo/cavity.hpp"
#include "ringopo/fock.hpp"

namespace ringopo::vertex {

using Complex = std::complex<double>;
using cavity::CavityConfig;
using cavity::ModeSet;
using fock::Cutoff;
using fock::FockOperator;

// Material and pump constants entering the interaction Hamiltonian
//   H'_1 = 1/2 eps0 E_L(z) { 6 chi2 E_q^2 + 20 chi4 E_q^4 },
// integrated over one crystal plane (factor a_crys).
struct CouplingSet {
    double chi2 = 0.0;      // [m/V]
    double chi4 = 0.0;      // [(m/V)^3]
    double eps0 = constants::eps0;
    double eps = constants::eps0;  // eps0 (1 + chi1)
    Complex e_laser{0.0, 0.0};     // classical pump amplitude E_L [V/m]
    double a_crys = 0.0;           // lattice constant [m]
    double hbar = constants::hbar;
    double length = 1.5;           // mode normalization length L [m]

    void validate() const;
};

// The six elementary processes. Photon-number changes per kind:
//   chi4_p4 (+4,0)   pump absorbed, four omega_1 photons out
//   chi4_m4 (-4,0)   four omega_1 photons absorbed into the pump
//   chi4_p2 (0,+2)   pump absorbed, two omega_2 photons out (omega_1 spectator pair)
//   chi4_m2 (0,-2)   reverse of chi4_p2
//   chi2_p2 (0,+2)   pump absorbed, two omega_2 photons out
//   chi2_m2 (0,-2)   reverse of chi2_p2
// Every kind changes the photon energy by exactly +/- omega_L.
enum class VertexKind { chi4_p4, chi4_m4, chi4_p2, chi4_m2, chi2_p2, chi2_m2 };

inline constexpr std::array<VertexKind, 6> all_vertex_kinds = {
    VertexKind::chi4_p4, VertexKind::chi4_m4, VertexKind::chi4_p2,
    VertexKind::chi4_m2, VertexKind::chi2_p2, VertexKind::chi2_m2};

enum class LaserSide { emit, absorb };  // emit: E_L factor; absorb: conj(E_L)

struct VertexTraits {
    int dn1;
    int dn2;
    LaserSide side;
    int chi_order;  // 2 or 4
};
VertexTraits traits(VertexKind kind);
std::string kind_name(VertexKind kind);
double delta_energy(VertexKind kind, const ModeSet& modes);  // +/- omega_L exactly

// The two printed prefactor normalizations. They agree for the pure kinds
// (chi4_p4/m4, chi2_p2/m2) when omega_res = omega_laser and differ by a
// factor 2 for chi4_p2/m2:
//   mode_product      uses (hbar omega_1/2L eps)(hbar omega_2/2L eps)
//   resonance_squared uses (hbar omega_res/4L eps)^2
enum class VertexConvention { mode_product, resonance_squared };
std::string convention_name(VertexConvention c);

struct VertexAmplitude {
    VertexKind kind;
    Complex value;  // energy matrix element [J]
};

// Closed-form matrix element <n1,n2| H_1(0) |n1-dn1, n2-dn2>; (n1, n2) are
// the bra occupations. Zero when the ket would have a negative occupation.
VertexAmplitude vertex_closed_form(VertexKind kind, int n1, int n2,
                                   const CouplingSet& couplings, const ModeSet& modes,
                                   VertexConvention convention);

// Operator oracle: builds E_q(z) explicitly, forms the chi^(2) or chi^(4)
// interaction term with the appropriate pump factor, and keeps only the
// block with (delta n1, delta n2) equal to the kind's change (the
// energy-conserving block |delta E| = omega_L). The z-dependent phases of
// the surviving block have unit magnitude.
FockOperator vertex_bruteforce(VertexKind kind, Cutoff cutoff, const CouplingSet& couplings,
                               const ModeSet& modes, const CavityConfig& cavity_cfg, double z);

// Kinds applicable from the state (n1, n2) in the given direction: the
// destination (n1 + dn1, n2 + dn2) must be a valid occupation (matrix
// elements are then structurally nonzero).
std::vector<VertexKind> list_allowed_transitions(int n1, int n2, LaserSide direction);

// Hermitian rotating-frame interaction Hamiltonian at plane z: the sum of
// all six energy-conserving vertex blocks. Emit/absorb blocks are mutual
// adjoints, so the sum is Hermitian.
FockOperator rotating_hamiltonian(Cutoff cutoff, const CouplingSet& couplings,
                                  const ModeSet& modes, const CavityConfig& cavity_cfg,
                                  double z);

// CSV dump of the closed forms over a bra range: kind,n1,n2,re,im,convention.
std::string vertex_table_csv(int n1_max, int n2_max, const CouplingSet& couplings,
                             const ModeSet& modes, VertexConvention convention);

}  // namespace ringopo::vertex
