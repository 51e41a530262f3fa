// Command-line front end: run the contact experiments or a convergence study.
#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vcfem/bench.hpp"
#include "vcfem/report.hpp"

namespace {

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(vcfem::parse_resolution(item));
    return out;
}

vcfem::SnapshotSpec parse_snapshots(const std::string& text) {
    vcfem::SnapshotSpec spec;
    if (text == "final") {
        spec.policy = vcfem::SnapshotSpec::Policy::Final;
    } else if (text == "all") {
        spec.policy = vcfem::SnapshotSpec::Policy::All;
    } else if (text.rfind("every:", 0) == 0) {
        spec.policy = vcfem::SnapshotSpec::Policy::EveryM;
        spec.every = std::stoi(text.substr(6));
        if (spec.every < 1) throw vcfem::ConfigError("snapshot stride must be >= 1");
    } else {
        throw vcfem::ConfigError("snapshots must be final, all or every:<m>; got " + text);
    }
    return spec;
}

// Applies "key = value" lines from a flat config file to options the user
// did not pass on the command line (flags win). Unknown keys are errors.
class ConfigBinder {
  public:
    explicit ConfigBinder(CLI::App* cmd) : cmd_(cmd) {}

    void bind(const std::string& key, const std::string& flag,
              const std::function<void(const std::string&)>& assign) {
        setters_[key] = {flag, assign};
    }

    void apply(const std::string& path) const {
        for (const auto& [key, value] : vcfem::read_flat_config(path)) {
            const auto it = setters_.find(key);
            if (it == setters_.end())
                throw vcfem::ConfigError("unknown config key: " + key);
            if (cmd_->count(it->second.first) > 0) continue;  // flag overrides file
            it->second.second(value);
        }
    }

  private:
    CLI::App* cmd_;
    std::map<std::string, std::pair<std::string, std::function<void(const std::string&)>>>
        setters_;
};

void bind_string(ConfigBinder& binder, const std::string& key, const std::string& flag,
                 std::string& target) {
    binder.bind(key, flag, [&target](const std::string& v) { target = v; });
}

void bind_double(ConfigBinder& binder, const std::string& key, const std::string& flag,
                 double& target) {
    binder.bind(key, flag, [&target, key](const std::string& v) {
        try {
            target = std::stod(v);
        } catch (const std::exception&) {
            throw vcfem::ConfigError("config key " + key + " is not a number: " + v);
        }
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-D quasistatic viscoelastic frictional contact with damage"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // keep -h free for the mesh size

    // simulate: one experiment run with field output.
    auto* simulate = app.add_subcommand("simulate", "run one experiment and write fields");
    simulate->set_help_flag("--help", "print help");
    std::string sim_config;
    int experiment = 1;
    std::string h_text = "1/32", k_text = "1/32", out_dir = "out";
    double zeta0 = 1.0;
    std::string snapshots_text = "final";
    double visc_shear = 2.0, visc_bulk = 2.0, lame_mu = 4.0, lame_lambda = 4.0;
    double kappa = 0.5, friction_bound = 20.0, final_time = 1.0;
    vcfem::SolverTolerances default_tol;
    double cg_rel_tol = default_tol.cg_rel_tol;
    double qp_rel_tol = default_tol.qp_rel_tol;
    double newton_grad_tol = default_tol.newton_grad_tol;
    simulate->add_option("--config", sim_config,
                         "flat key = value file; flags override file values");
    simulate->add_option("--experiment", experiment, "experiment id (1|2|3)")
        ->check(CLI::Range(1, 3));
    simulate->add_option("--h", h_text, "mesh size, e.g. 1/32");
    simulate->add_option("--k", k_text, "time step size, e.g. 1/32");
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--zeta0", zeta0, "constant initial damage value");
    simulate->add_option("--snapshots", snapshots_text, "final | all | every:<m>");
    simulate->add_option("--visc-shear", visc_shear, "shear viscosity coefficient");
    simulate->add_option("--visc-bulk", visc_bulk, "bulk viscosity coefficient");
    simulate->add_option("--lame-mu", lame_mu, "Lame mu");
    simulate->add_option("--lame-lambda", lame_lambda, "Lame lambda");
    simulate->add_option("--kappa", kappa, "microcrack diffusion coefficient");
    simulate->add_option("--friction-bound", friction_bound, "friction coefficient");
    simulate->add_option("--T", final_time, "final time");
    simulate->add_option("--cg-rel-tol", cg_rel_tol, "conjugate gradient tolerance");
    simulate->add_option("--qp-rel-tol", qp_rel_tol, "damage QP tolerance");
    simulate->add_option("--newton-grad-tol", newton_grad_tol, "velocity Newton tolerance");

    // converge: paper-style error table on the square benchmark.
    auto* converge = app.add_subcommand("converge", "benchmark convergence study");
    converge->set_help_flag("--help", "print help");
    std::string conv_config;
    std::string sweep_text = "h", values_text = "1/4,1/8,1/16";
    std::string fixed_text = "1/128", ref_text = "1/128", conv_out = "out";
    std::string error_time_text = "final";
    converge->add_option("--config", conv_config,
                         "flat key = value file; flags override file values");
    converge->add_option("--sweep", sweep_text, "swept variable (h|k)")
        ->check(CLI::IsMember({"h", "k"}));
    converge->add_option("--values", values_text, "comma-separated resolutions, e.g. 1/2,1/4");
    converge->add_option("--fixed", fixed_text, "resolution of the non-swept variable");
    converge->add_option("--ref", ref_text, "reference resolution for the swept variable");
    converge->add_option("--out", conv_out, "output directory");
    converge->add_option("--error-time", error_time_text,
                         "measure errors at the final time or as the max over common "
                         "time nodes (final|max)")
        ->check(CLI::IsMember({"final", "max"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (!sim_config.empty()) {
                ConfigBinder binder(simulate);
                binder.bind("experiment", "--experiment", [&](const std::string& v) {
                    experiment = std::stoi(v);
                });
                bind_string(binder, "h", "--h", h_text);
                bind_string(binder, "k", "--k", k_text);
                bind_string(binder, "out", "--out", out_dir);
                bind_double(binder, "zeta0", "--zeta0", zeta0);
                bind_string(binder, "snapshots", "--snapshots", snapshots_text);
                bind_double(binder, "visc-shear", "--visc-shear", visc_shear);
                bind_double(binder, "visc-bulk", "--visc-bulk", visc_bulk);
                bind_double(binder, "lame-mu", "--lame-mu", lame_mu);
                bind_double(binder, "lame-lambda", "--lame-lambda", lame_lambda);
                bind_double(binder, "kappa", "--kappa", kappa);
                bind_double(binder, "friction-bound", "--friction-bound", friction_bound);
                bind_double(binder, "T", "--T", final_time);
                bind_double(binder, "cg-rel-tol", "--cg-rel-tol", cg_rel_tol);
                bind_double(binder, "qp-rel-tol", "--qp-rel-tol", qp_rel_tol);
                bind_double(binder, "newton-grad-tol", "--newton-grad-tol", newton_grad_tol);
                binder.apply(sim_config);
            }
            if (experiment < 1 || experiment > 3)
                throw vcfem::ConfigError("experiment id must be 1, 2 or 3");

            vcfem::SimConfig cfg = vcfem::experiment_config(
                experiment, vcfem::parse_resolution(h_text), vcfem::parse_resolution(k_text));
            cfg.material.visc_shear = visc_shear;
            cfg.material.visc_bulk = visc_bulk;
            cfg.material.lame_mu = lame_mu;
            cfg.material.lame_lambda = lame_lambda;
            cfg.material.kappa = kappa;
            cfg.friction.bound = friction_bound;
            cfg.T = final_time;
            cfg.tol.cg_rel_tol = cg_rel_tol;
            cfg.tol.qp_rel_tol = qp_rel_tol;
            cfg.tol.newton_grad_tol = newton_grad_tol;
            cfg.zeta0 = zeta0;
            cfg.snapshots = parse_snapshots(snapshots_text);
            cfg.out_dir = out_dir;

            const vcfem::RunResult result = vcfem::run_simulation(cfg);
            vcfem::write_run_outputs(cfg, result);

            const auto& last = result.timeseries.back();
            std::cout << "experiment " << experiment << " finished: " << cfg.N << " steps, "
                      << result.mesh.num_vertices() << " vertices\n"
                      << "  damage range at T: [" << last.min_zeta << ", " << last.max_zeta
                      << "], velocity V-norm " << last.w_V << "\n"
                      << "  outputs in " << out_dir << "\n";
        } else if (converge->parsed()) {
            if (!conv_config.empty()) {
                ConfigBinder binder(converge);
                bind_string(binder, "sweep", "--sweep", sweep_text);
                bind_string(binder, "values", "--values", values_text);
                bind_string(binder, "fixed", "--fixed", fixed_text);
                bind_string(binder, "ref", "--ref", ref_text);
                bind_string(binder, "out", "--out", conv_out);
                bind_string(binder, "error-time", "--error-time", error_time_text);
                binder.apply(conv_config);
            }
            if (sweep_text != "h" && sweep_text != "k")
                throw vcfem::ConfigError("sweep must be h or k; got " + sweep_text);
            if (error_time_text != "final" && error_time_text != "max")
                throw vcfem::ConfigError("error-time must be final or max; got " +
                                         error_time_text);

            const char sweep = sweep_text[0];
            const std::vector<double> values = parse_value_list(values_text);
            const double fixed = vcfem::parse_resolution(fixed_text);
            const double ref = vcfem::parse_resolution(ref_text);
            const vcfem::ErrorTime error_time = error_time_text == "max"
                                                    ? vcfem::ErrorTime::MaxOverCommonNodes
                                                    : vcfem::ErrorTime::Final;

            vcfem::ConvergenceReport report = vcfem::run_convergence(
                sweep, values, fixed, ref, nullptr, nullptr, error_time);

            std::filesystem::create_directories(conv_out);
            const std::string path =
                (std::filesystem::path(conv_out) / "report.csv").string();
            vcfem::write_report_csv(path, report);
            vcfem::write_report_csv(std::cout, report);
            std::cout << "report written to " << path << "\n";
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
