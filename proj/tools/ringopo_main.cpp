// ringopo: ring-cavity nonlinear quantum optics simulator.
//
// Subcommands run one pipeline each against a flat key=value config and
// write CSV/JSON artifacts plus a manifest.json into the output directory.
// Exit status: 0 success, 1 validation/config error, 2 numerical error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ringopo/cavity.hpp"
#include "ringopo/config.hpp"
#include "ringopo/errors.hpp"
#include "ringopo/gensqueeze.hpp"
#include "ringopo/langevin.hpp"
#include "ringopo/lindblad.hpp"
#include "ringopo/manifest.hpp"
#include "ringopo/observables.hpp"
#include "ringopo/smatrix.hpp"
#include "ringopo/textio.hpp"
#include "ringopo/vertex.hpp"

namespace fs = std::filesystem;
using namespace ringopo;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<uint64_t> seed;
    std::optional<int> order;
    std::vector<int> cutoff;  // n1 n2
};

struct RunContext {
    config::RunConfig cfg;
    fs::path out;
    manifest::RunManifest mani;

    void emit(const std::string& name, const std::string& content) {
        write_file(out / name, content);
        mani.outputs.push_back(name);
    }
    void finish() { mani.write(out); }
};

RunContext make_context(const CliOptions& opt, const std::string& subcommand) {
    RunContext ctx;
    const std::string text = read_file(opt.config_path);
    ctx.cfg = config::parse_config_text(text);
    if (opt.seed) ctx.cfg.seed = *opt.seed;
    if (opt.order) ctx.cfg.smatrix.order_max = *opt.order;
    if (!opt.cutoff.empty()) {
        if (opt.cutoff.size() != 2) throw ValidationError("--cutoff expects two integers");
        ctx.cfg.cutoff = {opt.cutoff[0], opt.cutoff[1]};
    }
    ctx.cfg.validate();

    ctx.out = fs::path(opt.out_dir);
    fs::create_directories(ctx.out);
    ctx.mani.subcommand = subcommand;
    ctx.mani.config_path = opt.config_path;
    ctx.mani.input_sha256 = sha256_hex(text);
    ctx.mani.seed = ctx.cfg.seed;
    ctx.mani.wall_clock_utc = manifest::now_utc_iso8601();
    ctx.mani.resolved_config = ctx.cfg.resolved();
    return ctx;
}

lindblad::MasterConfig make_master_config(const config::RunConfig& rc) {
    lindblad::MasterConfig mc;
    mc.gamma1 = rc.lindblad.gamma1;
    mc.gamma2 = rc.lindblad.gamma2;
    mc.dt = rc.lindblad.dt;
    mc.t_end = rc.lindblad.t_end;
    mc.hbar = rc.couplings.hbar;
    if (rc.lindblad.hamiltonian == "squeeze") {
        mc.hamiltonian =
            lindblad::squeeze_hamiltonian(rc.lindblad.lambda, 2, rc.cutoff, rc.couplings.hbar);
    } else {
        // plane sum of the per-plane interaction at the representative z
        mc.hamiltonian = vertex::rotating_hamiltonian(rc.cutoff, rc.couplings, rc.modes,
                                                      rc.cavity, rc.lindblad.rep_z);
        mc.hamiltonian.mat *= rc.cavity.crystal_length / rc.couplings.a_crys;
    }
    return mc;
}

// ---------------------------------------------------------------------- runs

void run_cavity_scan(RunContext& ctx) {
    const auto& rc = ctx.cfg;
    if (rc.scan.points < 2 || !(rc.scan.omega_max > rc.scan.omega_min) ||
        !(rc.scan.omega_min > 0.0)) {
        throw ValidationError(
            "cavity-scan: set scan.omega_min_rad_per_s < scan.omega_max_rad_per_s (both > 0) "
            "and scan.points >= 2");
    }
    const auto grid = linspace(rc.scan.omega_min, rc.scan.omega_max, rc.scan.points);
    const auto scan = cavity::resonance_scan(rc.cavity, rc.scan.mode, grid);
    ctx.emit("cavity_scan.csv", cavity::resonance_scan_csv(scan));

    nlohmann::json j;
    j["omega_fsr_rad_per_s"] = constants::two_pi * rc.cavity.c / rc.cavity.length;
    if (rc.cavity.r_for(rc.scan.mode) > 0.0) {  // the width estimate needs feedback
        const auto est = cavity::fwhm_estimate(rc.cavity, rc.scan.mode);
        j["fwhm_estimate_phi_rad"] = est.value;
        j["fwhm_estimate_in_validity"] = est.in_validity;
    }
    auto& peaks = j["peaks"] = nlohmann::json::array();
    for (const auto& p : scan.peaks) {
        peaks.push_back({{"omega_rad_per_s", p.omega},
                         {"k_mag2", p.k_mag2},
                         {"phi_over_2pi", p.phi_over_2pi}});
    }
    ctx.emit("cavity_scan_summary.json", j.dump(2) + "\n");
}

void run_vertex_table(RunContext& ctx) {
    const auto& rc = ctx.cfg;
    ctx.emit("vertex_table.csv",
             vertex::vertex_table_csv(rc.vertex_table.n1_max, rc.vertex_table.n2_max,
                                      rc.couplings, rc.modes, rc.smatrix.convention));
}

smatrix::SMatrixResult compute_smatrix(const config::RunConfig& rc) {
    return smatrix::s_matrix(rc.cavity, rc.couplings, rc.modes, rc.cutoff, rc.smatrix);
}

void run_smatrix(RunContext& ctx) {
    ctx.emit("smatrix.json", compute_smatrix(ctx.cfg).to_json() + "\n");
}

void run_observables(RunContext& ctx) {
    const auto result = compute_smatrix(ctx.cfg);
    const auto stats = observables::photon_stats(result, ctx.cfg.observables_max_moment);
    nlohmann::json j;
    j["mean_n1"] = stats.mean_n1;
    j["mean_n2"] = stats.mean_n2;
    j["normalization"] = stats.normalization;
    j["norm_deficit"] = result.norm_deficit;
    auto& mom = j["moments"] = nlohmann::json::array();
    for (const auto& [key, value] : stats.moments) {
        mom.push_back({{"m1", key.first}, {"m2", key.second}, {"value", value}});
    }
    ctx.emit("observables.json", j.dump(2) + "\n");
}

void run_husimi(RunContext& ctx) {
    const auto result = compute_smatrix(ctx.cfg);
    const auto grid = observables::husimi(result, ctx.cfg.husimi);
    ctx.emit("husimi.csv", observables::husimi_csv(grid));
    nlohmann::json j;
    j["integral_estimate"] = grid.integral_estimate;
    j["truncation_warning"] = grid.truncation_warning;
    j["radius"] = grid.spec.radius;
    j["points_per_axis"] = grid.spec.points_per_axis;
    ctx.emit("husimi_summary.json", j.dump(2) + "\n");
}

void run_spectra(RunContext& ctx) {
    const auto& rc = ctx.cfg;
    if (rc.spectra.kinds.empty() || rc.spectra.n_tau < 2 || !(rc.spectra.tau_max > 0.0) ||
        rc.spectra.n_nu < 2) {
        throw ValidationError(
            "spectra: set spectra.kinds, spectra.tau_max_s, spectra.n_tau and the nu grid");
    }
    lindblad::MasterConfig mc = make_master_config(rc);
    auto ss = lindblad::steady_state(lindblad::DensityMatrix::vacuum(rc.cutoff), mc);

    nlohmann::json summary;
    summary["steady_state_converged"] = ss.converged;
    summary["steady_state_residual"] = ss.residual;
    summary["theta_rad"] = rc.spectra.theta;

    const auto nu = linspace(rc.spectra.nu_min, rc.spectra.nu_max, rc.spectra.n_nu);
    for (auto kind : rc.spectra.kinds) {
        observables::CorrelatorTimes times;
        times.tau_max = rc.spectra.tau_max;
        times.n_tau = rc.spectra.n_tau;
        times.sigma_max = rc.spectra.sigma_max;
        times.n_sigma = rc.spectra.n_sigma;
        const auto corr =
            observables::quad_correlator(kind, rc.spectra.theta, times, ss.rho, mc);
        observables::SpectrumSeries spec;
        if (corr.sigma.empty()) {
            spec = observables::spectrum(corr, nu);
        } else {
            const auto mu = linspace(rc.spectra.mu_min, rc.spectra.mu_max, rc.spectra.n_mu);
            spec = observables::spectrum(corr, mu, nu);
        }
        const std::string name = "spectrum_" + observables::correlator_kind_name(kind) + ".csv";
        ctx.emit(name, observables::spectrum_csv(spec));
        summary["windows"][observables::correlator_kind_name(kind)] = spec.window;
        summary["stationary_warning"] = corr.stationary_warning;
    }
    ctx.emit("spectra_summary.json", summary.dump(2) + "\n");
}

void run_oracle_spectra(RunContext& ctx) {
    const auto& rc = ctx.cfg;
    if (rc.oracle.points < 2 || rc.oracle.n_tau < 2 || !(rc.oracle.tau_max > 0.0)) {
        throw ValidationError("oracle-spectra: set oracle.{omega grid, tau_max_s, n_tau}");
    }
    lindblad::MasterConfig mc = make_master_config(rc);
    auto ss = lindblad::steady_state(lindblad::DensityMatrix::vacuum(rc.cutoff), mc);
    const auto parts =
        lindblad::mode_correlators(ss.rho, 2, rc.oracle.tau_max, rc.oracle.n_tau, mc);

    // squeezed quadrature: theta minimizing S(omega = 0) on a theta grid
    double theta_star = 0.0, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rc.oracle.theta_points; ++i) {
        const double theta = constants::pi * i / rc.oracle.theta_points;
        const auto c = lindblad::combine_quadrature(parts, theta);
        const auto s = lindblad::output_spectrum(c, mc.gamma2, {0.0});
        if (s.values[0] < best) {
            best = s.values[0];
            theta_star = theta;
        }
    }

    const auto grid = linspace(rc.oracle.omega_min, rc.oracle.omega_max, rc.oracle.points);
    const auto s_min = lindblad::output_spectrum(
        lindblad::combine_quadrature(parts, theta_star), mc.gamma2, grid);
    const auto s_orth = lindblad::output_spectrum(
        lindblad::combine_quadrature(parts, theta_star + constants::pi / 2.0), mc.gamma2, grid);
    const auto analytic = lindblad::analytic_spectra(std::abs(rc.lindblad.lambda),
                                                     rc.lindblad.gamma2, grid);

    CsvWriter csv({"omega", "S_theta_min", "S_theta_plus90", "S1_analytic", "S2_analytic"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.add_row({grid[i], s_min.values[i], s_orth.values[i], analytic.s1[i],
                     analytic.s2[i]});
    }
    ctx.emit("oracle_spectra.csv", csv.str());

    nlohmann::json j;
    j["theta_min_rad"] = theta_star;
    j["s_at_center_min"] = best;
    j["threshold_warning"] = analytic.threshold_warning;
    j["steady_state_converged"] = ss.converged;
    const auto standard = lindblad::analytic_spectra_standard(std::abs(rc.lindblad.lambda),
                                                              rc.lindblad.gamma2, {0.0});
    j["s2_standard_at_center"] = standard.s2[0];
    ctx.emit("oracle_spectra_summary.json", j.dump(2) + "\n");
}

void run_langevin(RunContext& ctx) {
    const auto& rc = ctx.cfg;
    langevin::EnsembleSpec spec;
    spec.trajectories = rc.langevin.trajectories;
    spec.seed = rc.seed;
    spec.dt = rc.langevin.dt;
    spec.t_end = rc.langevin.t_end;
    spec.burn_in = rc.langevin.burn_in;
    spec.record_stride = rc.langevin.record_stride;

    nlohmann::json j;
    if (rc.langevin.mode == "ou") {
        Eigen::MatrixXd a(1, 1), b(1, 1);
        a(0, 0) = rc.langevin.ou_a;
        b(0, 0) = rc.langevin.ou_b;
        const auto stats = langevin::langevin_linear(a, b, spec);

        CsvWriter csv({"time_s", "mean", "variance"});
        for (std::size_t r = 0; r < stats.times.size(); ++r) {
            csv.add_row({stats.times[r], stats.mean[r](0), stats.variance[r](0)});
        }
        ctx.emit("langevin_series.csv", csv.str());

        if (!stats.spectrum_freq.empty()) {
            CsvWriter scsv({"omega_rad_per_s", "spectrum_estimate"});
            for (std::size_t i = 0; i < stats.spectrum_freq.size(); ++i) {
                scsv.add_row({stats.spectrum_freq[i], stats.spectrum_first_component[i]});
            }
            ctx.emit("langevin_spectrum.csv", scsv.str());
        }

        j["stationary_mean"] = stats.stationary_mean(0);
        j["stationary_variance"] = stats.stationary_variance(0);
        j["stationary_variance_expected"] =
            rc.langevin.ou_b * rc.langevin.ou_b / (2.0 * rc.langevin.ou_a);
        j["stationary_samples"] = stats.stationary_samples;
    } else {
        langevin::LaserRates rates{rc.langevin.laser_pump, rc.langevin.laser_saturation,
                                   rc.langevin.laser_loss};
        const auto n_stats = langevin::laser_number_stats(rates);
        j["mean_n"] = n_stats.mean_n;
        j["sigma_n"] = n_stats.sigma_n;
        j["fano"] = n_stats.fano;
        const auto pd = langevin::phase_diffusion(rates, n_stats.mean_n, rc.langevin.phase_time,
                                                  rc.langevin.trajectories, rc.seed);
        j["sigma_theta_sq"] = pd.sigma_theta_sq;
        j["sigma_theta_sq_ensemble"] = pd.ensemble_sigma_sq;
        j["diffusion_constant"] = pd.diffusion_constant;
        if (rc.langevin.n_grid_points >= 3) {
            const auto dist = langevin::stationary_number_distribution(
                rates, linspace(rc.langevin.n_grid_min, rc.langevin.n_grid_max,
                                rc.langevin.n_grid_points));
            CsvWriter csv({"n", "p"});
            for (std::size_t i = 0; i < dist.n.size(); ++i) csv.add_row({dist.n[i], dist.p[i]});
            ctx.emit("laser_number_distribution.csv", csv.str());
            j["distribution_mean"] = dist.mean;
            j["distribution_variance"] = dist.variance;
            j["distribution_fano"] = dist.variance / dist.mean;
        }
    }
    ctx.emit("langevin_summary.json", j.dump(2) + "\n");
}

void run_gensqueeze(RunContext& ctx) {
    const auto& rc = ctx.cfg;
    gensqueeze::GenSqueezeSpec spec;
    spec.k = rc.gensqueeze.k;
    spec.z = {rc.gensqueeze.z_re, rc.gensqueeze.z_im};
    spec.cutoff_ladder = rc.gensqueeze.ladder;
    if (spec.cutoff_ladder.empty()) spec.cutoff_ladder = {50, 100, 200, 400};
    spec.cutoff = spec.cutoff_ladder.back();
    spec.validate();

    const auto rows = gensqueeze::convergence_report(spec);
    ctx.emit("gensqueeze_ladder.csv", gensqueeze::convergence_report_csv(rows));

    nlohmann::json j;
    j["k"] = spec.k;
    j["z_re"] = spec.z.real();
    j["z_im"] = spec.z.imag();
    j["note"] =
        "ladder values are reported as computed; no convergence verdict is attached for k >= 3";
    ctx.emit("gensqueeze_summary.json", j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ring-cavity nonlinear quantum optics simulator"};
    app.require_subcommand(1);

    CliOptions opt;
    const std::vector<std::pair<std::string, void (*)(RunContext&)>> commands = {
        {"cavity-scan", run_cavity_scan},   {"vertex-table", run_vertex_table},
        {"smatrix", run_smatrix},           {"observables", run_observables},
        {"husimi", run_husimi},             {"spectra", run_spectra},
        {"oracle-spectra", run_oracle_spectra}, {"langevin", run_langevin},
        {"genqueeze", run_gensqueeze},
    };

    for (const auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "run configuration file")->required();
        sub->add_option("--out", opt.out_dir, "output directory (default: out)");
        sub->add_option("--seed", opt.seed, "override the config seed");
        sub->add_option("--order", opt.order, "override smatrix.order_max");
        sub->add_option("--cutoff", opt.cutoff, "override cutoff: n1_max n2_max")->expected(2);
        void (*run)(RunContext&) = fn;
        std::string cmd_name = name;
        sub->callback([&opt, run, cmd_name]() {
            RunContext ctx = make_context(opt, cmd_name);
            run(ctx);
            ctx.finish();
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
