// qsdlab command-line front end: trajectory/ensemble runs, noise statistics,
// figure presets, and the validation suite. CSV files are the normative
// output; SVG plots are best-effort extras.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>

#include "qsdlab/csv.hpp"
#include "qsdlab/ensemble.hpp"
#include "qsdlab/errors.hpp"
#include "qsdlab/invariants.hpp"
#include "qsdlab/models.hpp"
#include "qsdlab/noise.hpp"
#include "qsdlab/qsd.hpp"
#include "qsdlab/svg.hpp"
#include "qsdlab/validate.hpp"

using json = nlohmann::json;
using namespace qsdlab;

namespace {

struct RunConfig {
    std::string model = "rwa-qubit";
    double gamma = 1.0, Gamma = 1.0, lambda = 1.0, omega = 1.0;
    double tmax = 5.0, dt = 1e-3;
    std::uint64_t seed = 42, master_seed = 0;
    int n_paths = 1000;
    std::string method = "numeric";
    std::string out;
    std::string plot;
    std::string psi0, rho0, target;  // complex vectors/matrices as [re, im] pair JSON
    std::string sampler = "ar1";
    int n_modes = 512;
    std::string dump_path;
};

const std::set<std::string> kConfigKeys = {
    "model", "gamma", "Gamma", "lambda", "omega", "tmax", "dt", "seed", "master-seed",
    "n-paths", "method", "out", "plot", "psi0", "rho0", "target", "sampler", "n-modes",
    "dump-path"};

// JSON config file with the same key names as the flags; flags override.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream f(path);
    if (!f) throw Error("config file not found: " + path);
    json j = json::parse(f);
    for (const auto& [key, value] : j.items())
        if (!kConfigKeys.count(key)) throw Error("unknown config key: " + key);
    auto num = [&](const char* k, double& out) { if (j.count(k)) out = j.at(k).get<double>(); };
    auto str = [&](const char* k, std::string& out) { if (j.count(k)) out = j.at(k).get<std::string>(); };
    str("model", cfg.model);
    num("gamma", cfg.gamma);
    num("Gamma", cfg.Gamma);
    num("lambda", cfg.lambda);
    num("omega", cfg.omega);
    num("tmax", cfg.tmax);
    num("dt", cfg.dt);
    if (j.count("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.count("master-seed")) cfg.master_seed = j.at("master-seed").get<std::uint64_t>();
    if (j.count("n-paths")) cfg.n_paths = j.at("n-paths").get<int>();
    if (j.count("n-modes")) cfg.n_modes = j.at("n-modes").get<int>();
    str("method", cfg.method);
    str("out", cfg.out);
    str("plot", cfg.plot);
    str("sampler", cfg.sampler);
    str("dump-path", cfg.dump_path);
    if (j.count("psi0")) cfg.psi0 = j.at("psi0").dump();
    if (j.count("rho0")) cfg.rho0 = j.at("rho0").dump();
    if (j.count("target")) cfg.target = j.at("target").dump();
}

Vector parse_state(const std::string& text, int dim, const char* what) {
    json j = json::parse(text, nullptr, true);
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw Error(std::string(what) + ": expected " + std::to_string(dim) + " [re, im] pairs");
    Vector v(dim);
    for (int i = 0; i < dim; ++i)
        v(i) = Complex(j[i].at(0).get<double>(), j[i].at(1).get<double>());
    return v;
}

Matrix parse_density(const std::string& text, int dim) {
    json j = json::parse(text, nullptr, true);
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw Error("rho0: expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                    " matrix of [re, im] pairs");
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(j[r].size()) != dim) throw Error("rho0: ragged matrix");
        for (int c = 0; c < dim; ++c)
            m(r, c) = Complex(j[r][c].at(0).get<double>(), j[r][c].at(1).get<double>());
    }
    return m;
}

ModelSpec build_model(const RunConfig& cfg) {
    const CorrelationSpec corr{cfg.gamma, cfg.Gamma};
    if (cfg.model == "rwa-qubit") return make_rwa_qubit(cfg.lambda, corr);
    if (cfg.model == "three-level") return make_three_level(cfg.omega, corr);
    if (cfg.model == "reverse-engineered")
        return make_reverse_engineered(cfg.omega, cfg.lambda, corr);
    throw InvalidSpec("unknown model '" + cfg.model +
                      "' (expected rwa-qubit, three-level, reverse-engineered)");
}

// Canonical config echo written into every CSV (keys sorted by nlohmann).
std::string config_echo(const RunConfig& cfg) {
    json j;
    j["model"] = cfg.model;
    j["gamma"] = cfg.gamma;
    j["Gamma"] = cfg.Gamma;
    j["lambda"] = cfg.lambda;
    j["omega"] = cfg.omega;
    j["tmax"] = cfg.tmax;
    j["dt"] = cfg.dt;
    j["seed"] = cfg.seed;
    j["master-seed"] = cfg.master_seed;
    j["n-paths"] = cfg.n_paths;
    j["method"] = cfg.method;
    j["sampler"] = cfg.sampler;
    j["n-modes"] = cfg.n_modes;
    return j.dump();
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    return f;
}

InvariantSeries closed_form_invariant(const SolvedModel& sm) {
    switch (sm.model.kind) {
        case ModelKind::rwa_qubit: return qubit_invariant(sm);
        case ModelKind::three_level: return three_level_invariant(sm);
        case ModelKind::reverse_engineered: return reverse_target_invariant(sm);
        default: throw InvalidSpec("no invariant construction for this model");
    }
}

int cmd_trajectory(const RunConfig& cfg) {
    if (cfg.method != "numeric" && cfg.method != "analytic" && cfg.method != "both")
        throw InvalidSpec("method must be numeric, analytic, or both");
    ModelSpec model = build_model(cfg);
    TimeGrid grid = TimeGrid::from_duration(0.0, cfg.tmax, cfg.dt);
    Vector psi0 = Vector::Zero(model.dim);
    psi0(0) = 1.0;
    if (!cfg.psi0.empty()) psi0 = parse_state(cfg.psi0, model.dim, "psi0");

    SolvedModel sm = solve_model(model, sample_model_noise(model, grid, cfg.seed));
    std::optional<TrajectoryRecord> numeric, analytic;
    if (cfg.method != "analytic") numeric = integrate_right_trajectory(sm, psi0);
    if (cfg.method != "numeric") analytic = analytic_solution(closed_form_invariant(sm), sm, psi0);

    const std::string out_path = cfg.out.empty() ? "trajectory.csv" : cfg.out;
    std::ofstream f = open_output(out_path);
    CsvWriter csv(f);
    csv.comment("qsdlab trajectory");
    csv.comment("config: " + config_echo(cfg));
    csv.comment("seed: " + std::to_string(cfg.seed));

    std::vector<std::string> cols = {"t"};
    auto add_cols = [&](const std::string& suffix) {
        for (int c = 0; c < model.dim; ++c) {
            cols.push_back("re_psi_" + std::to_string(c) + suffix);
            cols.push_back("im_psi_" + std::to_string(c) + suffix);
        }
        cols.push_back("norm" + suffix);
    };
    const bool both = numeric && analytic;
    if (both) {
        add_cols("_num");
        add_cols("_ana");
    } else {
        add_cols("");
    }
    csv.header(cols);
    for (int i = 0; i < grid.node_count(); ++i) {
        std::vector<double> row = {grid.node_time(i)};
        auto add_state = [&](const TrajectoryRecord& rec) {
            for (int c = 0; c < model.dim; ++c) {
                row.push_back(rec.right_states[i](c).real());
                row.push_back(rec.right_states[i](c).imag());
            }
            row.push_back(rec.norms[i]);
        };
        if (numeric) add_state(*numeric);
        if (analytic) add_state(*analytic);
        csv.row(row);
    }

    if (both) {
        double dev = 0.0;
        for (int i = 0; i < grid.node_count(); ++i)
            dev = std::max(dev, (numeric->right_states[i] - analytic->right_states[i])
                                    .cwiseAbs()
                                    .maxCoeff());
        std::cout << "max componentwise deviation (numeric vs analytic): " << format_double(dev)
                  << "\n";
    }
    std::cout << "wrote " << out_path << "\n";

    if (!cfg.plot.empty()) {
        std::vector<SvgSeries> series;
        const TrajectoryRecord& rec = numeric ? *numeric : *analytic;
        for (int c = 0; c < model.dim; ++c) {
            SvgSeries re{"re psi_" + std::to_string(c), {}, {}}, im{"im psi_" + std::to_string(c), {}, {}};
            for (int i = 0; i < grid.node_count(); ++i) {
                re.x.push_back(grid.node_time(i));
                re.y.push_back(rec.right_states[i](c).real());
                im.x.push_back(grid.node_time(i));
                im.y.push_back(rec.right_states[i](c).imag());
            }
            series.push_back(std::move(re));
            series.push_back(std::move(im));
        }
        write_svg_plot(cfg.plot, "trajectory: " + cfg.model, series);
        std::cout << "wrote " << cfg.plot << "\n";
    }
    return 0;
}

int write_ensemble_csv(const RunConfig& cfg, const ModelSpec& model, const EnsembleResult& res,
                       const std::string& out_path, const std::string& note) {
    std::ofstream f = open_output(out_path);
    CsvWriter csv(f);
    csv.comment("qsdlab ensemble");
    if (!note.empty()) csv.comment(note);
    csv.comment("config: " + config_echo(cfg));
    csv.comment("master-seed: " + std::to_string(res.master_seed) +
                ", n-paths: " + std::to_string(res.n_paths));

    std::vector<std::string> cols = {"t"};
    for (int r = 0; r < model.dim; ++r)
        for (int c = 0; c < model.dim; ++c) {
            cols.push_back("re_rho_" + std::to_string(r) + std::to_string(c));
            cols.push_back("im_rho_" + std::to_string(r) + std::to_string(c));
        }
    cols.push_back("trace_re");
    cols.push_back("trace_im");
    cols.push_back("purity");
    const bool with_fid = !res.fidelity_series.empty();
    if (with_fid) {
        cols.push_back("fidelity");
        cols.push_back("stderr_fidelity");
    }
    csv.header(cols);
    for (int i = 0; i < res.grid.node_count(); ++i) {
        std::vector<double> row = {res.grid.node_time(i)};
        for (int r = 0; r < model.dim; ++r)
            for (int c = 0; c < model.dim; ++c) {
                row.push_back(res.rho[i](r, c).real());
                row.push_back(res.rho[i](r, c).imag());
            }
        row.push_back(res.trace[i].real());
        row.push_back(res.trace[i].imag());
        row.push_back(res.purity_series[i]);
        if (with_fid) {
            row.push_back(res.fidelity_series[i]);
            row.push_back(res.stderr_series[i]);
        }
        csv.row(row);
    }
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_ensemble(const RunConfig& cfg) {
    if (cfg.method != "numeric" && cfg.method != "analytic")
        throw InvalidSpec("ensemble method must be numeric or analytic");
    ModelSpec model = build_model(cfg);
    TimeGrid grid = TimeGrid::from_duration(0.0, cfg.tmax, cfg.dt);

    Matrix rho0;
    if (!cfg.rho0.empty()) {
        rho0 = parse_density(cfg.rho0, model.dim);
    } else {
        Vector psi0 = Vector::Zero(model.dim);
        psi0(0) = 1.0;
        if (!cfg.psi0.empty()) psi0 = parse_state(cfg.psi0, model.dim, "psi0");
        rho0 = psi0 * psi0.adjoint();
    }

    EnsembleOptions opt;
    opt.n_paths = cfg.n_paths;
    opt.master_seed = cfg.master_seed;
    opt.method = cfg.method == "analytic" ? EnsembleMethod::analytic : EnsembleMethod::numeric;
    if (!cfg.target.empty())
        opt.target = parse_state(cfg.target, model.dim, "target");
    else if (model.kind == ModelKind::reverse_engineered)
        opt.target = steering_target();

    EnsembleResult res = run_ensemble(model, rho0, grid, opt);
    const std::string out_path = cfg.out.empty() ? "ensemble.csv" : cfg.out;
    write_ensemble_csv(cfg, model, res, out_path, "");

    if (!cfg.plot.empty()) {
        std::vector<SvgSeries> series;
        SvgSeries pur{"purity", {}, {}};
        for (int i = 0; i < grid.node_count(); ++i) {
            pur.x.push_back(grid.node_time(i));
            pur.y.push_back(res.purity_series[i]);
        }
        series.push_back(std::move(pur));
        if (!res.fidelity_series.empty()) {
            SvgSeries fid{"fidelity", {}, {}};
            for (int i = 0; i < grid.node_count(); ++i) {
                fid.x.push_back(grid.node_time(i));
                fid.y.push_back(res.fidelity_series[i]);
            }
            series.push_back(std::move(fid));
        }
        write_svg_plot(cfg.plot, "ensemble: " + cfg.model, series);
        std::cout << "wrote " << cfg.plot << "\n";
    }
    return 0;
}

int cmd_noise_stats(const RunConfig& cfg) {
    const CorrelationSpec corr{cfg.gamma, cfg.Gamma};
    TimeGrid grid = TimeGrid::from_duration(0.0, cfg.tmax, cfg.dt);

    std::vector<NoisePath> paths(cfg.n_paths);
    std::optional<ModeSumSpec> modes;
    if (cfg.sampler == "mode-sum") modes = ModeSumSpec::lorentzian(corr, cfg.n_modes);
    else if (cfg.sampler != "ar1")
        throw InvalidSpec("sampler must be ar1 or mode-sum");
    for (int i = 0; i < cfg.n_paths; ++i) {
        const std::uint64_t seed = split_seed(cfg.master_seed, i);
        paths[i] = modes ? sample_mode_sum_path(*modes, grid, seed)
                         : sample_ou_path(corr, grid, seed);
    }
    NoiseStatReport rep = noise_statistics(paths);

    const std::string out_path = cfg.out.empty() ? "noise_stats.csv" : cfg.out;
    std::ofstream f = open_output(out_path);
    CsvWriter csv(f);
    csv.comment("qsdlab noise statistics (process z; samples are z*)");
    csv.comment("config: " + config_echo(cfg));
    if (modes)
        csv.comment("mode-sum residual vs alpha: " +
                    format_double(modes->residual_against(corr, grid.t_end())));
    csv.header({"kind", "t", "s", "re", "im", "se"});
    const int m = grid.half_count();
    for (int k = 0; k < m; ++k)
        f << "mean," << format_double(grid.half_time(k)) << "," << format_double(grid.half_time(k))
          << "," << format_double(rep.mean[k].real()) << "," << format_double(rep.mean[k].imag())
          << "," << format_double(rep.mean_se[k]) << "\n";
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
            f << "cov," << format_double(grid.half_time(k)) << ","
              << format_double(grid.half_time(l)) << "," << format_double(rep.covariance(k, l).real())
              << "," << format_double(rep.covariance(k, l).imag()) << ","
              << format_double(rep.covariance_se(k, l)) << "\n";
            f << "pseudo," << format_double(grid.half_time(k)) << ","
              << format_double(grid.half_time(l)) << "," << format_double(rep.pseudo(k, l).real())
              << "," << format_double(rep.pseudo(k, l).imag()) << ","
              << format_double(rep.pseudo_se(k, l)) << "\n";
        }
    std::cout << "wrote " << out_path << "\n";

    if (!cfg.dump_path.empty() && !paths.empty()) {
        std::ofstream d = open_output(cfg.dump_path);
        CsvWriter dump(d);
        dump.comment("first sampled path; config: " + config_echo(cfg));
        dump.header({"t", "re_z", "im_z"});
        for (int k = 0; k < m; ++k)
            dump.row({grid.half_time(k), paths[0].samples[k].real(), paths[0].samples[k].imag()});
        std::cout << "wrote " << cfg.dump_path << "\n";
    }
    return 0;
}

int cmd_fig1(RunConfig cfg) {
    cfg.model = "rwa-qubit";
    cfg.gamma = cfg.Gamma = cfg.lambda = 1.0;
    cfg.tmax = 5.0;
    cfg.dt = 1e-4;
    cfg.method = "both";
    if (cfg.out.empty()) cfg.out = "fig1_trajectory.csv";
    if (cfg.psi0.empty()) cfg.psi0 = "[[1,0],[0,0]]";
    return cmd_trajectory(cfg);
}

int cmd_fig2(RunConfig cfg) {
    cfg.model = "reverse-engineered";
    cfg.gamma = cfg.Gamma = cfg.lambda = cfg.omega = 1.0;  // figure parameters defaulted
    cfg.tmax = 10.0;
    if (cfg.dt > 4e-3) cfg.dt = 4e-3;
    ModelSpec model = build_model(cfg);
    TimeGrid grid = TimeGrid::from_duration(0.0, cfg.tmax, cfg.dt);

    std::vector<SvgSeries> series;
    int rc = 0;
    for (int state_seed : {1, 2, 3}) {
        // rho0 = A A^dagger / tr(A A^dagger) with seeded complex Gaussian A
        std::mt19937_64 engine(static_cast<std::uint64_t>(state_seed));
        std::normal_distribution<double> normal;
        Matrix A(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const double re = normal(engine);
                const double im = normal(engine);
                A(r, c) = Complex(re, im);
            }
        Matrix rho0 = A * A.adjoint();
        rho0 /= rho0.trace().real();

        EnsembleOptions opt;
        opt.n_paths = cfg.n_paths;
        opt.master_seed = cfg.master_seed + static_cast<std::uint64_t>(state_seed);
        opt.target = steering_target();
        EnsembleResult res = run_ensemble(model, rho0, grid, opt);

        const std::string out_path =
            (cfg.out.empty() ? std::string("fig2") : cfg.out) + "_state" +
            std::to_string(state_seed) + ".csv";
        write_ensemble_csv(cfg, model, res, out_path,
                           "state seed " + std::to_string(state_seed) +
                               "; parameters defaulted to gamma=Gamma=lambda=omega=1");
        std::cout << "state " << state_seed
                  << ": final fidelity = " << format_double(res.fidelity_series.back())
                  << ", final purity = " << format_double(res.purity_series.back()) << "\n";

        SvgSeries fid{"fidelity (state " + std::to_string(state_seed) + ")", {}, {}};
        SvgSeries pur{"purity (state " + std::to_string(state_seed) + ")", {}, {}};
        for (int i = 0; i < grid.node_count(); ++i) {
            fid.x.push_back(grid.node_time(i));
            fid.y.push_back(res.fidelity_series[i]);
            pur.x.push_back(grid.node_time(i));
            pur.y.push_back(res.purity_series[i]);
        }
        series.push_back(std::move(fid));
        series.push_back(std::move(pur));
    }
    if (!cfg.plot.empty()) {
        write_svg_plot(cfg.plot, "steering toward the target state", series);
        std::cout << "wrote " << cfg.plot << "\n";
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsdlab: non-Markovian quantum state diffusion toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    // Load --config first so explicit flags override file values.
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") apply_config_file(argv[i + 1], cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    static std::string config_path_sink;  // consumed in the pre-scan above
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path_sink,
                        "JSON config file (same keys as flags; flags override)");
        sub->add_option("--model", cfg.model, "rwa-qubit | three-level | reverse-engineered");
        sub->add_option("--gamma", cfg.gamma, "inverse bath memory time");
        sub->add_option("--Gamma", cfg.Gamma, "noise strength");
        sub->add_option("--lambda", cfg.lambda, "system-bath coupling");
        sub->add_option("--omega", cfg.omega, "system frequency");
        sub->add_option("--tmax", cfg.tmax, "end time");
        sub->add_option("--dt", cfg.dt, "grid step");
        sub->add_option("--out", cfg.out, "output CSV path");
        sub->add_option("--plot", cfg.plot, "optional SVG plot path");
    };

    CLI::App* traj = app.add_subcommand("trajectory", "integrate one quantum trajectory");
    add_common(traj);
    traj->add_option("--seed", cfg.seed, "noise path seed");
    traj->add_option("--method", cfg.method, "numeric | analytic | both");
    traj->add_option("--psi0", cfg.psi0, "initial state as [re,im] pairs");

    CLI::App* ens = app.add_subcommand("ensemble", "Monte Carlo density-matrix reconstruction");
    add_common(ens);
    ens->add_option("--master-seed", cfg.master_seed, "ensemble master seed");
    ens->add_option("--n-paths", cfg.n_paths, "number of noise realizations");
    ens->add_option("--method", cfg.method, "numeric | analytic");
    ens->add_option("--psi0", cfg.psi0, "pure initial state as [re,im] pairs");
    ens->add_option("--rho0", cfg.rho0, "initial density matrix as [re,im] pairs");
    ens->add_option("--target", cfg.target, "fidelity target state");

    CLI::App* noise = app.add_subcommand("noise-stats", "noise ensemble statistics");
    add_common(noise);
    noise->add_option("--master-seed", cfg.master_seed, "ensemble master seed");
    noise->add_option("--n-paths", cfg.n_paths, "number of paths");
    noise->add_option("--sampler", cfg.sampler, "ar1 | mode-sum");
    noise->add_option("--n-modes", cfg.n_modes, "mode count for mode-sum");
    noise->add_option("--dump-path", cfg.dump_path, "CSV dump of the first path (t, re_z, im_z)");

    CLI::App* fig1 = app.add_subcommand("fig1", "trajectory preset: qubit, gamma=Gamma=lambda=1");
    add_common(fig1);
    fig1->add_option("--seed", cfg.seed, "noise path seed");

    CLI::App* fig2 = app.add_subcommand("fig2", "steering preset: three random mixed states");
    add_common(fig2);
    fig2->add_option("--master-seed", cfg.master_seed, "ensemble master seed");
    fig2->add_option("--n-paths", cfg.n_paths, "paths per state");

    CLI::App* val = app.add_subcommand("validate", "run the validation suite");
    bool list_only = false, full = false, negative = false;
    val->add_flag("--list", list_only, "print criterion identifiers without running");
    val->add_flag("--full", full, "acceptance-scale sizes (default: reduced)");
    val->add_flag("--negative-control", negative,
                  "check that a mis-forced Riccati build is detected");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (traj->parsed()) return cmd_trajectory(cfg);
        if (ens->parsed()) return cmd_ensemble(cfg);
        if (noise->parsed()) return cmd_noise_stats(cfg);
        if (fig1->parsed()) return cmd_fig1(cfg);
        if (fig2->parsed()) {
            if (!fig2->count("--n-paths")) cfg.n_paths = 5000;
            return cmd_fig2(cfg);
        }
        if (val->parsed()) {
            if (list_only) {
                for (const auto& [id, name] : list_criteria()) std::cout << id << " " << name << "\n";
                return 0;
            }
            if (negative) return run_negative_control(std::cout) ? 0 : 1;
            auto results = run_validation(full, std::cout);
            bool all = true;
            for (const auto& res : results) all = all && res.pass;
            if (!all) {
                std::cout << "validation FAILED:";
                for (const auto& res : results)
                    if (!res.pass) std::cout << " " << res.id;
                std::cout << "\n";
                return 1;
            }
            std::cout << "validation passed (" << results.size() << " criteria)\n";
            return 0;
        }
    } catch (const NumericalBlowup& e) {
        std::cerr << "numerical blowup: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
