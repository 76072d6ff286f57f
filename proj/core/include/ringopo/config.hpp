#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ringopo/cavity.hpp"
#include "ringopo/fock.hpp"
#include "ringopo/observables.hpp"
#include "ringopo/smatrix.hpp"
#include "ringopo/vertex.hpp"

namespace ringopo::config {

// Flat key = value run configuration ('#' comments, blank lines ignored).
// Unknown keys are rejected; every missing optional key takes the documented
// default. The full schema is listed in the README and mirrors the fields
// below.
struct ScanParams {
    cavity::Mode mode = cavity::Mode::photon2;
    double omega_min = 0.0;
    double omega_max = 0.0;
    int points = 0;
};

struct VertexTableParams {
    int n1_max = 8;
    int n2_max = 8;
};

struct LindbladParams {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double dt = 0.0;
    double t_end = 0.0;
    std::string hamiltonian = "squeeze";  // "squeeze" or "vertex"
    double lambda = 0.0;                  // squeeze-form coupling [1/s]
    double rep_z = 0.0;                   // representative plane for "vertex"
};

struct SpectraParams {
    std::vector<observables::CorrelatorKind> kinds;
    double theta = 0.0;
    double tau_max = 0.0;
    int n_tau = 0;
    double sigma_max = 0.0;
    int n_sigma = 0;
    double nu_min = 0.0, nu_max = 0.0;
    int n_nu = 0;
    double mu_min = 0.0, mu_max = 0.0;
    int n_mu = 0;
};

struct OracleParams {
    double omega_min = 0.0, omega_max = 0.0;  // detuning grid [rad/s]
    int points = 0;
    int theta_points = 64;
    double tau_max = 0.0;
    int n_tau = 0;
};

struct LangevinParams {
    std::string mode = "ou";  // "ou" or "laser"
    double ou_a = 1.0;
    double ou_b = 1.0;
    int trajectories = 10000;
    double dt = 1e-3;
    double t_end = 10.0;
    double burn_in = 0.0;
    int record_stride = 1;
    double laser_pump = 0.0;
    double laser_saturation = 0.0;
    double laser_loss = 0.0;
    double phase_time = 0.0;
    double n_grid_min = 0.0, n_grid_max = 0.0;
    int n_grid_points = 0;
};

struct GenSqueezeParams {
    int k = 2;
    double z_re = 0.2, z_im = 0.0;
    std::vector<int> ladder;
};

struct RunConfig {
    uint64_t seed = 0;
    cavity::CavityConfig cavity;
    cavity::ModeSet modes;
    vertex::CouplingSet couplings;
    fock::Cutoff cutoff;
    smatrix::SMatrixParams smatrix;
    observables::HusimiGridSpec husimi;
    int observables_max_moment = 2;
    ScanParams scan;
    VertexTableParams vertex_table;
    LindbladParams lindblad;
    SpectraParams spectra;
    OracleParams oracle;
    LangevinParams langevin;
    GenSqueezeParams gensqueeze;

    // Fully resolved key -> value view (sorted), embedded in manifests; a
    // config file round-trips through this exactly.
    std::map<std::string, std::string> resolved() const;

    void validate() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

}  // namespace ringopo::config
