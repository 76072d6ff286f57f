#include "ringopo/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "ringopo/errors.hpp"
#include "ringopo/textio.hpp"

namespace ringopo::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class KeyValues {
public:
    explicit KeyValues(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": expected key = value");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) {
                throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
            }
            if (!map_.emplace(key, value).second) {
                throw ValidationError("config: duplicate key '" + key + "'");
            }
        }
    }

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        consumed_.insert(key);
        auto it = map_.find(key);
        return it == map_.end() ? fallback : it->second;
    }

    std::string require_string(const std::string& key) {
        consumed_.insert(key);
        auto it = map_.find(key);
        if (it == map_.end()) throw ValidationError("config: missing required key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) {
        consumed_.insert(key);
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        return parse_double(key, it->second);
    }

    double require_double(const std::string& key) {
        return parse_double(key, require_string(key));
    }

    long get_long(const std::string& key, long fallback) {
        consumed_.insert(key);
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        return parse_long(key, it->second);
    }

    bool get_bool(const std::string& key, bool fallback) {
        consumed_.insert(key);
        auto it = map_.find(key);
        if (it == map_.end()) return fallback;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        throw ValidationError("config: key '" + key + "' must be true/false");
    }

    void reject_unknown() const {
        for (const auto& [key, value] : map_) {
            if (!consumed_.count(key)) {
                throw ValidationError("config: unknown key '" + key + "'");
            }
        }
    }

private:
    static double parse_double(const std::string& key, const std::string& text) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ValidationError("config: key '" + key + "' expects a number, got '" + text +
                                  "'");
        }
    }
    static long parse_long(const std::string& key, const std::string& text) {
        try {
            std::size_t used = 0;
            const long v = std::stol(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ValidationError("config: key '" + key + "' expects an integer, got '" + text +
                                  "'");
        }
    }

    std::map<std::string, std::string> map_;
    std::set<std::string> consumed_;
};

cavity::Mode parse_mode(const std::string& key, const std::string& text) {
    if (text == "laser") return cavity::Mode::laser;
    if (text == "photon1") return cavity::Mode::photon1;
    if (text == "photon2") return cavity::Mode::photon2;
    throw ValidationError("config: key '" + key + "' must be laser/photon1/photon2");
}

std::string mode_name(cavity::Mode m) {
    switch (m) {
        case cavity::Mode::laser: return "laser";
        case cavity::Mode::photon1: return "photon1";
        case cavity::Mode::photon2: return "photon2";
    }
    return "?";
}

std::vector<int> parse_int_list(const std::string& key, const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ValidationError("config: key '" + key + "' expects integers, got '" + item +
                                  "'");
        }
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    KeyValues kv(text);
    RunConfig rc;

    rc.seed = static_cast<uint64_t>(kv.get_long("seed", 0));

    rc.cavity.length = kv.get_double("cavity.length_m", rc.cavity.length);
    rc.cavity.crystal_length = kv.get_double("cavity.crystal_length_m", rc.cavity.crystal_length);
    rc.cavity.n_crys = kv.get_double("cavity.n_crys", rc.cavity.n_crys);
    rc.cavity.gamma_prime = kv.get_double("cavity.gamma_prime_per_m", 0.0);
    if (kv.has("cavity.gamma_prime_photon1_per_m")) {
        rc.cavity.gamma_prime_photon1 = kv.get_double("cavity.gamma_prime_photon1_per_m", 0.0);
    }
    if (kv.has("cavity.gamma_prime_photon2_per_m")) {
        rc.cavity.gamma_prime_photon2 = kv.get_double("cavity.gamma_prime_photon2_per_m", 0.0);
    }
    rc.cavity.r_laser = kv.get_double("cavity.r_laser", 0.0);
    rc.cavity.r_photon1 = kv.get_double("cavity.r_photon1", 0.0);
    rc.cavity.r_photon2 = kv.get_double("cavity.r_photon2", 0.0);
    rc.cavity.r2_single = kv.get_double("cavity.r2_single", 0.0);
    rc.cavity.c = kv.get_double("cavity.c_m_per_s", constants::c_vacuum);

    rc.modes.omega_laser = kv.require_double("modes.omega_laser_rad_per_s");
    rc.modes.omega_res = kv.get_double("modes.omega_res_rad_per_s", rc.modes.omega_laser);
    rc.modes.delta = kv.require_double("modes.delta_rad_per_s");

    rc.couplings.chi2 = kv.get_double("couplings.chi2_m_per_v", 0.0);
    rc.couplings.chi4 = kv.get_double("couplings.chi4_m3_per_v3", 0.0);
    rc.couplings.eps0 = kv.get_double("couplings.eps0_f_per_m", constants::eps0);
    rc.couplings.eps = kv.get_double("couplings.eps_f_per_m", rc.couplings.eps0);
    rc.couplings.e_laser = {kv.get_double("couplings.e_laser_re_v_per_m", 0.0),
                            kv.get_double("couplings.e_laser_im_v_per_m", 0.0)};
    rc.couplings.a_crys = kv.get_double("couplings.a_crys_m", 5e-10);
    rc.couplings.hbar = kv.get_double("couplings.hbar_j_s", constants::hbar);
    rc.couplings.length = rc.cavity.length;

    rc.cutoff.n1_max = static_cast<int>(kv.get_long("cutoff.n1_max", 16));
    rc.cutoff.n2_max = static_cast<int>(kv.get_long("cutoff.n2_max", 16));

    rc.smatrix.initial = {static_cast<int>(kv.get_long("smatrix.initial_n1", 0)),
                          static_cast<int>(kv.get_long("smatrix.initial_n2", 0))};
    rc.smatrix.order_max = static_cast<int>(kv.get_long("smatrix.order_max", 4));
    rc.smatrix.m_points = static_cast<int>(kv.get_long("smatrix.m_points", 8));
    const std::string conv = kv.get_string("smatrix.convention", "mode-product");
    if (conv == "mode-product") {
        rc.smatrix.convention = vertex::VertexConvention::mode_product;
    } else if (conv == "resonance-squared") {
        rc.smatrix.convention = vertex::VertexConvention::resonance_squared;
    } else {
        throw ValidationError(
            "config: smatrix.convention must be mode-product or resonance-squared");
    }
    rc.smatrix.full_gaussian_weight = kv.get_bool("smatrix.full_gaussian", false);

    rc.husimi.radius = kv.get_double("husimi.radius", 4.0);
    rc.husimi.points_per_axis = static_cast<int>(kv.get_long("husimi.points_per_axis", 21));
    rc.observables_max_moment = static_cast<int>(kv.get_long("observables.max_moment", 2));

    rc.scan.mode = parse_mode("scan.mode", kv.get_string("scan.mode", "photon2"));
    rc.scan.omega_min = kv.get_double("scan.omega_min_rad_per_s", 0.0);
    rc.scan.omega_max = kv.get_double("scan.omega_max_rad_per_s", 0.0);
    rc.scan.points = static_cast<int>(kv.get_long("scan.points", 0));

    rc.vertex_table.n1_max = static_cast<int>(kv.get_long("vertex_table.n1_max", 8));
    rc.vertex_table.n2_max = static_cast<int>(kv.get_long("vertex_table.n2_max", 8));

    rc.lindblad.gamma1 = kv.get_double("lindblad.gamma1_per_s", 0.0);
    rc.lindblad.gamma2 = kv.get_double("lindblad.gamma2_per_s", 0.0);
    rc.lindblad.dt = kv.get_double("lindblad.dt_s", 0.0);
    rc.lindblad.t_end = kv.get_double("lindblad.t_end_s", 0.0);
    rc.lindblad.hamiltonian = kv.get_string("lindblad.hamiltonian", "squeeze");
    if (rc.lindblad.hamiltonian != "squeeze" && rc.lindblad.hamiltonian != "vertex") {
        throw ValidationError("config: lindblad.hamiltonian must be squeeze or vertex");
    }
    rc.lindblad.lambda = kv.get_double("lindblad.lambda_per_s", 0.0);
    rc.lindblad.rep_z = kv.get_double("lindblad.rep_z_m", 0.0);

    const std::string kinds = kv.get_string("spectra.kinds", "C22");
    std::istringstream kin(kinds);
    std::string item;
    while (std::getline(kin, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (item == "C11") rc.spectra.kinds.push_back(observables::CorrelatorKind::c11);
        else if (item == "C22") rc.spectra.kinds.push_back(observables::CorrelatorKind::c22);
        else if (item == "C112") rc.spectra.kinds.push_back(observables::CorrelatorKind::c112);
        else if (item == "C121") rc.spectra.kinds.push_back(observables::CorrelatorKind::c121);
        else if (item == "C211") rc.spectra.kinds.push_back(observables::CorrelatorKind::c211);
        else throw ValidationError("config: spectra.kinds entry '" + item + "' unknown");
    }
    rc.spectra.theta = kv.get_double("spectra.theta_rad", 0.0);
    rc.spectra.tau_max = kv.get_double("spectra.tau_max_s", 0.0);
    rc.spectra.n_tau = static_cast<int>(kv.get_long("spectra.n_tau", 0));
    rc.spectra.sigma_max = kv.get_double("spectra.sigma_max_s", 0.0);
    rc.spectra.n_sigma = static_cast<int>(kv.get_long("spectra.n_sigma", 0));
    rc.spectra.nu_min = kv.get_double("spectra.nu_min_rad_per_s", 0.0);
    rc.spectra.nu_max = kv.get_double("spectra.nu_max_rad_per_s", 0.0);
    rc.spectra.n_nu = static_cast<int>(kv.get_long("spectra.n_nu", 0));
    rc.spectra.mu_min = kv.get_double("spectra.mu_min_rad_per_s", rc.spectra.nu_min);
    rc.spectra.mu_max = kv.get_double("spectra.mu_max_rad_per_s", rc.spectra.nu_max);
    rc.spectra.n_mu = static_cast<int>(kv.get_long("spectra.n_mu", rc.spectra.n_nu));

    rc.oracle.omega_min = kv.get_double("oracle.omega_min_rad_per_s", 0.0);
    rc.oracle.omega_max = kv.get_double("oracle.omega_max_rad_per_s", 0.0);
    rc.oracle.points = static_cast<int>(kv.get_long("oracle.points", 0));
    rc.oracle.theta_points = static_cast<int>(kv.get_long("oracle.theta_points", 64));
    rc.oracle.tau_max = kv.get_double("oracle.tau_max_s", 0.0);
    rc.oracle.n_tau = static_cast<int>(kv.get_long("oracle.n_tau", 0));

    rc.langevin.mode = kv.get_string("langevin.mode", "ou");
    if (rc.langevin.mode != "ou" && rc.langevin.mode != "laser") {
        throw ValidationError("config: langevin.mode must be ou or laser");
    }
    rc.langevin.ou_a = kv.get_double("langevin.ou_a_per_s", 1.0);
    rc.langevin.ou_b = kv.get_double("langevin.ou_b", 1.0);
    rc.langevin.trajectories = static_cast<int>(kv.get_long("langevin.trajectories", 10000));
    rc.langevin.dt = kv.get_double("langevin.dt_s", 1e-3);
    rc.langevin.t_end = kv.get_double("langevin.t_end_s", 10.0);
    rc.langevin.burn_in = kv.get_double("langevin.burn_in_s", 0.0);
    rc.langevin.record_stride = static_cast<int>(kv.get_long("langevin.record_stride", 1));
    rc.langevin.laser_pump = kv.get_double("langevin.laser_pump_per_s", 0.0);
    rc.langevin.laser_saturation = kv.get_double("langevin.laser_saturation_per_s", 0.0);
    rc.langevin.laser_loss = kv.get_double("langevin.laser_loss_per_s", 0.0);
    rc.langevin.phase_time = kv.get_double("langevin.phase_time_s", 0.0);
    rc.langevin.n_grid_min = kv.get_double("langevin.n_grid_min", 0.0);
    rc.langevin.n_grid_max = kv.get_double("langevin.n_grid_max", 0.0);
    rc.langevin.n_grid_points = static_cast<int>(kv.get_long("langevin.n_grid_points", 0));

    rc.gensqueeze.k = static_cast<int>(kv.get_long("gensqueeze.k", 2));
    rc.gensqueeze.z_re = kv.get_double("gensqueeze.z_re", 0.2);
    rc.gensqueeze.z_im = kv.get_double("gensqueeze.z_im", 0.0);
    if (kv.has("gensqueeze.ladder")) {
        rc.gensqueeze.ladder = parse_int_list("gensqueeze.ladder",
                                              kv.get_string("gensqueeze.ladder", ""));
    }

    kv.reject_unknown();
    rc.validate();
    return rc;
}

RunConfig parse_config(const std::string& path) {
    return parse_config_text(read_file(path));
}

void RunConfig::validate() const {
    cavity.validate();
    modes.validate();
    couplings.validate();
    cutoff.validate();
    if (smatrix.order_max < 0 || smatrix.order_max > smatrix::hard_order_limit) {
        throw ValidationError("config: smatrix.order_max must lie in [0, " +
                              std::to_string(smatrix::hard_order_limit) + "]");
    }
    if (smatrix.m_points < 1) throw ValidationError("config: smatrix.m_points must be >= 1");
    if (!cutoff.contains(smatrix.initial.first, smatrix.initial.second)) {
        throw ValidationError("config: smatrix.initial state outside the cutoff");
    }
    if (husimi.points_per_axis < 2 || !(husimi.radius > 0.0)) {
        throw ValidationError("config: husimi grid needs radius > 0 and >= 2 points per axis");
    }
    if (observables_max_moment < 1) {
        throw ValidationError("config: observables.max_moment must be >= 1");
    }
}

std::map<std::string, std::string> RunConfig::resolved() const {
    std::map<std::string, std::string> m;
    auto put = [&](const std::string& k, double v) { m[k] = format_g17(v); };
    auto puti = [&](const std::string& k, long v) { m[k] = std::to_string(v); };

    puti("seed", static_cast<long>(seed));
    put("cavity.length_m", cavity.length);
    put("cavity.crystal_length_m", cavity.crystal_length);
    put("cavity.n_crys", cavity.n_crys);
    put("cavity.gamma_prime_per_m", cavity.gamma_prime);
    if (cavity.gamma_prime_photon1) {
        put("cavity.gamma_prime_photon1_per_m", *cavity.gamma_prime_photon1);
    }
    if (cavity.gamma_prime_photon2) {
        put("cavity.gamma_prime_photon2_per_m", *cavity.gamma_prime_photon2);
    }
    put("cavity.r_laser", cavity.r_laser);
    put("cavity.r_photon1", cavity.r_photon1);
    put("cavity.r_photon2", cavity.r_photon2);
    put("cavity.r2_single", cavity.r2_single);
    put("cavity.c_m_per_s", cavity.c);
    put("modes.omega_laser_rad_per_s", modes.omega_laser);
    put("modes.omega_res_rad_per_s", modes.omega_res);
    put("modes.delta_rad_per_s", modes.delta);
    put("couplings.chi2_m_per_v", couplings.chi2);
    put("couplings.chi4_m3_per_v3", couplings.chi4);
    put("couplings.eps0_f_per_m", couplings.eps0);
    put("couplings.eps_f_per_m", couplings.eps);
    put("couplings.e_laser_re_v_per_m", couplings.e_laser.real());
    put("couplings.e_laser_im_v_per_m", couplings.e_laser.imag());
    put("couplings.a_crys_m", couplings.a_crys);
    put("couplings.hbar_j_s", couplings.hbar);
    puti("cutoff.n1_max", cutoff.n1_max);
    puti("cutoff.n2_max", cutoff.n2_max);
    puti("smatrix.initial_n1", smatrix.initial.first);
    puti("smatrix.initial_n2", smatrix.initial.second);
    puti("smatrix.order_max", smatrix.order_max);
    puti("smatrix.m_points", smatrix.m_points);
    m["smatrix.convention"] = vertex::convention_name(smatrix.convention);
    m["smatrix.full_gaussian"] = smatrix.full_gaussian_weight ? "true" : "false";
    put("husimi.radius", husimi.radius);
    puti("husimi.points_per_axis", husimi.points_per_axis);
    puti("observables.max_moment", observables_max_moment);
    m["scan.mode"] = mode_name(scan.mode);
    put("scan.omega_min_rad_per_s", scan.omega_min);
    put("scan.omega_max_rad_per_s", scan.omega_max);
    puti("scan.points", scan.points);
    puti("vertex_table.n1_max", vertex_table.n1_max);
    puti("vertex_table.n2_max", vertex_table.n2_max);
    put("lindblad.gamma1_per_s", lindblad.gamma1);
    put("lindblad.gamma2_per_s", lindblad.gamma2);
    put("lindblad.dt_s", lindblad.dt);
    put("lindblad.t_end_s", lindblad.t_end);
    m["lindblad.hamiltonian"] = lindblad.hamiltonian;
    put("lindblad.lambda_per_s", lindblad.lambda);
    put("lindblad.rep_z_m", lindblad.rep_z);
    {
        std::string joined;
        for (auto k : spectra.kinds) {
            if (!joined.empty()) joined += ',';
            joined += observables::correlator_kind_name(k);
        }
        m["spectra.kinds"] = joined;
    }
    put("spectra.theta_rad", spectra.theta);
    put("spectra.tau_max_s", spectra.tau_max);
    puti("spectra.n_tau", spectra.n_tau);
    put("spectra.sigma_max_s", spectra.sigma_max);
    puti("spectra.n_sigma", spectra.n_sigma);
    put("spectra.nu_min_rad_per_s", spectra.nu_min);
    put("spectra.nu_max_rad_per_s", spectra.nu_max);
    puti("spectra.n_nu", spectra.n_nu);
    put("spectra.mu_min_rad_per_s", spectra.mu_min);
    put("spectra.mu_max_rad_per_s", spectra.mu_max);
    puti("spectra.n_mu", spectra.n_mu);
    put("oracle.omega_min_rad_per_s", oracle.omega_min);
    put("oracle.omega_max_rad_per_s", oracle.omega_max);
    puti("oracle.points", oracle.points);
    puti("oracle.theta_points", oracle.theta_points);
    put("oracle.tau_max_s", oracle.tau_max);
    puti("oracle.n_tau", oracle.n_tau);
    m["langevin.mode"] = langevin.mode;
    put("langevin.ou_a_per_s", langevin.ou_a);
    put("langevin.ou_b", langevin.ou_b);
    puti("langevin.trajectories", langevin.trajectories);
    put("langevin.dt_s", langevin.dt);
    put("langevin.t_end_s", langevin.t_end);
    put("langevin.burn_in_s", langevin.burn_in);
    puti("langevin.record_stride", langevin.record_stride);
    put("langevin.laser_pump_per_s", langevin.laser_pump);
    put("langevin.laser_saturation_per_s", langevin.laser_saturation);
    put("langevin.laser_loss_per_s", langevin.laser_loss);
    put("langevin.phase_time_s", langevin.phase_time);
    put("langevin.n_grid_min", langevin.n_grid_min);
    put("langevin.n_grid_max", langevin.n_grid_max);
    puti("langevin.n_grid_points", langevin.n_grid_points);
    puti("gensqueeze.k", gensqueeze.k);
    put("gensqueeze.z_re", gensqueeze.z_re);
    put("gensqueeze.z_im", gensqueeze.z_im);
    {
        std::string joined;
        for (int c : gensqueeze.ladder) {
            if (!joined.empty()) joined += ',';
            joined += std::to_string(c);
        }
        m["gensqueeze.ladder"] = joined;
    }
    return m;
}

}  // namespace ringopo::config
