// Command-line front end for the QRWS simulator and optimization pipeline.
//
// Exit codes: 0 success, 1 runtime failure, 2 flag/validation failure.
// Failures print a single machine-parsable line `error:<module>:<kind>: ...`
// on stderr.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qrws/mlp.hpp"
#include "qrws/optimize.hpp"
#include "qrws/ridge.hpp"
#include "qrws/sweep.hpp"
#include "qrws/walk.hpp"

namespace {

using namespace qrws;

constexpr double kPi = std::numbers::pi;

struct CliError {
    std::string module;
    std::string kind;
    std::string message;
    int exit_code;
};

[[noreturn]] void fail(const std::string& module, const std::string& kind,
                       const std::string& message, int exit_code) {
    throw CliError{module, kind, message, exit_code};
}

// Angles are decimal radians; the token `pi` (optionally with a decimal
// multiplier, e.g. `1.5pi`) is expanded.
double parse_angle(const std::string& text) {
    std::string s = text;
    double sign = 1.0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
    }
    if (s == "pi") return sign * kPi;
    if (s.size() > 2 && s.ends_with("pi")) {
        const std::string head = s.substr(0, s.size() - 2);
        try {
            std::size_t used = 0;
            const double mult = std::stod(head, &used);
            if (used == head.size()) return sign * mult * kPi;
        } catch (const std::exception&) {
        }
        fail("cli", "bad-angle", "cannot parse angle '" + text + "'", 2);
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return sign * v;
    } catch (const std::exception&) {
    }
    fail("cli", "bad-angle", "cannot parse angle '" + text + "'", 2);
}

int default_workers() {
    if (const char* env = std::getenv("QRWS_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_output(const std::string& path, const std::string& module) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(module, "io", "cannot open for writing: " + path, 1);
    return out;
}

void write_heatmap_script(const std::string& csv_path, const std::string& title) {
    std::ofstream out(csv_path + ".gp");
    out << "# gnuplot script, renders " << csv_path << "\n";
    out << "set datafile separator ','\n";
    out << "set title '" << title << "'\n";
    out << "set xlabel 'phi [rad]'\nset ylabel 'zeta [rad]'\n";
    out << "set view map\nset pm3d interpolate 2,2\n";
    out << "splot '" << csv_path << "' skip 1 using 1:2:4 with pm3d notitle\n";
}

void write_profile_script(const std::string& csv_path, const std::string& title) {
    std::ofstream out(csv_path + ".gp");
    out << "# gnuplot script, renders " << csv_path << "\n";
    out << "set datafile separator ','\n";
    out << "set title '" << title << "'\n";
    out << "set xlabel 'phi [rad]'\nset ylabel 'p'\n";
    out << "plot '" << csv_path << "' skip 1 using 1:3 with lines notitle\n";
}

std::vector<SweepRecord> load_records(const std::vector<std::string>& paths) {
    std::vector<SweepRecord> records;
    for (const std::string& path : paths) {
        const Dataset ds = load_csv(path);
        records.insert(records.end(), ds.records.begin(), ds.records.end());
    }
    return records;
}

CurveSpec parse_curve(const std::string& name, int k, double alpha) {
    if (name == "line32") return CurveSpec::line32(k);
    if (name == "line33") return CurveSpec::line33();
    if (name == "line34") return CurveSpec::line34();
    if (name == "sine") return CurveSpec::sine(alpha);
    fail("ridgefit", "bad-curve", "unknown curve '" + name + "'", 2);
}

struct TableRow {
    std::string method;
    int n;
    std::string phi, zeta, p;
};

int run_cli(int argc, char** argv) {
    CLI::App app{"Quantum random walk search on the hypercube: simulation, "
                 "Monte Carlo sweeps, surrogate training, and coin-phase "
                 "optimization"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; explicit flags win");

    int workers = default_workers();
    app.add_option("--workers", workers, "worker thread count (also QRWS_WORKERS)")
        ->check(CLI::PositiveNumber);
    int max_qubits = kDefaultMaxCoinQubits;
    app.add_option("--max-qubits", max_qubits,
                   "memory-cap override: largest accepted coin qubit count")
        ->check(CLI::PositiveNumber);

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "run the walk once and print p");
    int sim_n = 2;
    std::string sim_phi = "pi", sim_zeta = "pi";
    std::uint64_t sim_target = 0;
    std::optional<int> sim_steps;
    std::optional<int> sim_scan;
    std::string sim_out;
    simulate->add_option("--n", sim_n, "coin qubit count")->required();
    simulate->add_option("--phi", sim_phi, "walk-coin reflection phase [rad]")->required();
    simulate->add_option("--zeta", sim_zeta, "walk-coin global phase [rad]")->required();
    simulate->add_option("--target", sim_target, "marked node index");
    simulate->add_option("--steps", sim_steps, "iteration count (default: standard count)");
    simulate->add_option("--scan", sim_scan, "also scan probabilities for 0..K iterations");
    simulate->add_option("--out", sim_out, "CSV path for the per-step scan (header step,p)");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over random (phi, zeta)");
    int sw_n = 2;
    std::uint64_t sw_samples = 1000, sw_seed = 0;
    bool sw_kbest = false;
    std::string sw_out;
    sweep_cmd->add_option("--n", sw_n, "coin qubit count")->required();
    sweep_cmd->add_option("--samples", sw_samples, "number of random samples")->required();
    sweep_cmd->add_option("--seed", sw_seed, "sampling seed");
    sweep_cmd->add_flag("--k-best", sw_kbest, "also record the argmax step per sample");
    sweep_cmd->add_option("--out", sw_out, "output CSV path")->required();

    // ---- grid ----
    auto* grid_cmd = app.add_subcommand("grid", "regular (phi, zeta) grid evaluation");
    int gr_n = 2, gr_res = 101;
    std::string gr_out;
    bool gr_plot = false;
    grid_cmd->add_option("--n", gr_n, "coin qubit count")->required();
    grid_cmd->add_option("--res", gr_res, "points per axis")->required();
    grid_cmd->add_option("--out", gr_out, "output CSV path")->required();
    grid_cmd->add_flag("--plot", gr_plot, "write a gnuplot heatmap script next to the CSV");

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "fit the surrogate network to sweep data");
    std::vector<std::string> tr_data;
    int tr_inputs = 2, tr_layers = 9, tr_neurons = 13;
    TrainConfig tr_config;
    std::string tr_out, tr_loss_csv;
    train_cmd->add_option("--data", tr_data, "input sweep CSV (repeatable; mixes n when --inputs 3)")
        ->required();
    train_cmd->add_option("--inputs", tr_inputs, "input dimension: 2 = (phi, zeta), 3 = (phi, zeta, n)");
    train_cmd->add_option("--layers", tr_layers, "hidden layer count");
    train_cmd->add_option("--neurons", tr_neurons, "neurons per hidden layer");
    train_cmd->add_option("--epochs", tr_config.epochs, "training epochs");
    train_cmd->add_option("--batch", tr_config.batch_size, "mini-batch size");
    train_cmd->add_option("--lr", tr_config.learning_rate, "learning rate");
    train_cmd->add_option("--patience", tr_config.patience, "early-stopping patience [epochs]");
    train_cmd->add_option("--seed", tr_config.seed, "initialization/shuffle seed");
    train_cmd->add_option("--out", tr_out, "model output path")->required();
    train_cmd->add_option("--loss-csv", tr_loss_csv, "per-epoch loss CSV (epoch,train_loss,val_loss)");

    // ---- gridsearch ----
    auto* gs_cmd = app.add_subcommand("gridsearch", "architecture grid search over (L, N)");
    std::vector<std::string> gs_data;
    int gs_inputs = 2;
    std::vector<int> gs_layers, gs_neurons;
    TrainConfig gs_config;
    gs_config.epochs = 40;
    std::string gs_out;
    bool gs_plot = false;
    gs_cmd->add_option("--data", gs_data, "input sweep CSV (repeatable)")->required();
    gs_cmd->add_option("--inputs", gs_inputs, "input dimension (2 or 3)");
    gs_cmd->add_option("--layers", gs_layers, "hidden layer counts to try")->required();
    gs_cmd->add_option("--neurons", gs_neurons, "neuron counts to try")->required();
    gs_cmd->add_option("--epochs", gs_config.epochs, "per-cell epoch budget");
    gs_cmd->add_option("--patience", gs_config.patience, "early-stopping patience");
    gs_cmd->add_option("--seed", gs_config.seed, "training seed");
    gs_cmd->add_option("--out", gs_out, "heatmap CSV (L,N,val_loss)")->required();
    gs_cmd->add_flag("--plot", gs_plot, "write a gnuplot heatmap script next to the CSV");

    // ---- optimize ----
    auto* opt_cmd = app.add_subcommand("optimize", "maximize p over (phi, zeta)");
    int op_n = 2;
    std::string op_method = "de";
    std::string op_model;
    MaximizeConfig op_config;
    std::string op_out;
    opt_cmd->add_option("--n", op_n, "coin qubit count")->required();
    opt_cmd->add_option("--method", op_method, "de | sobol")
        ->check(CLI::IsMember({"de", "sobol"}));
    opt_cmd->add_option("--model", op_model, "surrogate model path (default: direct simulator)");
    opt_cmd->add_option("--seed", op_config.de.seed, "optimizer seed");
    opt_cmd->add_option("--population", op_config.de.population, "DE population size");
    opt_cmd->add_option("--generations", op_config.de.generations, "DE generations");
    opt_cmd->add_option("--samples", op_config.sobol.samples, "Sobol sample count");
    opt_cmd->add_option("--top-k", op_config.sobol.top_k, "Sobol seeds refined locally");
    opt_cmd->add_option("--out", op_out, "result CSV (method,n,phi,zeta,value,evals)");

    // ---- ridge ----
    auto* ridge_cmd = app.add_subcommand("ridge", "extract the high-probability zeta(phi) ridge");
    int rg_n = 2, rg_grid = 201;
    std::string rg_model, rg_out;
    ridge_cmd->add_option("--n", rg_n, "coin qubit count")->required();
    ridge_cmd->add_option("--grid", rg_grid, "phi grid size");
    ridge_cmd->add_option("--model", rg_model, "surrogate model path (default: direct simulator)");
    ridge_cmd->add_option("--out", rg_out, "ridge CSV (phi,zeta_unwrapped,p)")->required();

    // ---- fit-alpha ----
    auto* fit_cmd = app.add_subcommand("fit-alpha", "fit the sine-correction coefficient");
    std::string fa_source = "sim";
    int fa_n = 2, fa_grid = 201;
    std::string fa_model, fa_out;
    fit_cmd->add_option("--source", fa_source, "sim | model")
        ->check(CLI::IsMember({"sim", "model"}));
    fit_cmd->add_option("--n", fa_n, "coin qubit count")->required();
    fit_cmd->add_option("--grid", fa_grid, "phi grid size");
    fit_cmd->add_option("--model", fa_model, "model path (required with --source model)");
    fit_cmd->add_option("--out", fa_out, "fit CSV (alpha,rms_residual,n,source)");

    // ---- profile ----
    auto* prof_cmd = app.add_subcommand("profile", "probability along a zeta(phi) curve");
    int pf_n = 2, pf_grid = 201, pf_k = 1;
    std::string pf_curve = "line32";
    double pf_alpha = 0.0;
    std::string pf_model, pf_out;
    bool pf_plot = false;
    prof_cmd->add_option("--n", pf_n, "coin qubit count")->required();
    prof_cmd->add_option("--curve", pf_curve, "line32 | line33 | line34 | sine")
        ->check(CLI::IsMember({"line32", "line33", "line34", "sine"}));
    prof_cmd->add_option("--k", pf_k, "line32 branch offset");
    prof_cmd->add_option("--alpha", pf_alpha, "sine-curve coefficient");
    prof_cmd->add_option("--grid", pf_grid, "phi grid size");
    prof_cmd->add_option("--model", pf_model, "surrogate model path (default: direct simulator)");
    prof_cmd->add_option("--out", pf_out, "profile CSV (phi,zeta,p)")->required();
    prof_cmd->add_flag("--plot", pf_plot, "write a gnuplot line-plot script next to the CSV");

    // ---- predict ----
    auto* pred_cmd = app.add_subcommand("predict", "evaluate a saved surrogate model");
    std::string pr_model, pr_phi, pr_zeta;
    std::optional<int> pr_n;
    pred_cmd->add_option("--model", pr_model, "model path")->required();
    pred_cmd->add_option("--phi", pr_phi, "reflection phase [rad]")->required();
    pred_cmd->add_option("--zeta", pr_zeta, "global phase [rad]")->required();
    pred_cmd->add_option("--n", pr_n, "coin qubit count (combined model only)");

    // ---- tables ----
    auto* tab_cmd = app.add_subcommand("tables", "reproduce the optimization summary tables");
    std::string tb_outdir = ".";
    std::string tb_model1, tb_model2, tb_model3;
    std::uint64_t tb_seed = 0;
    tab_cmd->add_option("--outdir", tb_outdir, "directory for table1.csv and table2.csv");
    tab_cmd->add_option("--model-n1", tb_model1, "surrogate model for n = 1 (optional)");
    tab_cmd->add_option("--model-n2", tb_model2, "surrogate model for n = 2 (optional)");
    tab_cmd->add_option("--model-n3", tb_model3, "surrogate model for n = 3 (optional)");
    tab_cmd->add_option("--seed", tb_seed, "optimizer seed");

    // global flags (--workers, --max-qubits, --config) may follow the
    // subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    GenerateOptions gen_options;
    gen_options.workers = workers;
    gen_options.max_coin_qubits = max_qubits;

    if (*simulate) {
        const double phi = parse_angle(sim_phi);
        const double zeta = parse_angle(sim_zeta);
        RunOptions opt;
        opt.max_coin_qubits = max_qubits;
        if (sim_scan) {
            const auto scan = scan_iterations(sim_n, phi, zeta, {sim_target}, *sim_scan);
            const std::string path = sim_out.empty() ? "scan.csv" : sim_out;
            auto out = open_output(path, "qrws_core");
            out << "step,p\n";
            for (std::size_t k = 0; k < scan.size(); ++k)
                out << k << "," << fmt17(scan[k]) << "\n";
            std::cout << "p=" << fmt17(scan.back()) << "\n";
            std::cout << "k=" << (scan.size() - 1) << "\n";
            std::cout << "scan written to " << path << "\n";
        } else {
            opt.steps = sim_steps;
            const RunResult r = run(sim_n, phi, zeta, {sim_target}, opt);
            std::cout << "p=" << fmt17(r.probability) << "\n";
            std::cout << "k=" << r.steps << "\n";
        }
        return 0;
    }

    if (*sweep_cmd) {
        gen_options.with_k_best = sw_kbest;
        const Dataset ds = generate(sw_n, sw_samples, sw_seed, gen_options);
        save_csv(ds, sw_out);
        std::cout << "wrote " << ds.records.size() << " records to " << sw_out << "\n";
        return 0;
    }

    if (*grid_cmd) {
        const Dataset ds = grid(gr_n, gr_res, gen_options);
        save_csv(ds, gr_out);
        if (gr_plot) write_heatmap_script(gr_out, "p(phi, zeta), n = " + std::to_string(gr_n));
        std::cout << "wrote " << ds.records.size() << " records to " << gr_out << "\n";
        return 0;
    }

    if (*train_cmd) {
        const auto records = load_records(tr_data);
        const TrainOutcome out = train(records, tr_inputs, tr_layers, tr_neurons, tr_config);
        save_model(out.model, tr_out);
        if (!tr_loss_csv.empty()) {
            auto loss_out = open_output(tr_loss_csv, "surrogate");
            loss_out << "epoch,train_loss,val_loss\n";
            for (std::size_t e = 0; e < out.report.train_loss.size(); ++e)
                loss_out << e << "," << fmt17(out.report.train_loss[e]) << ","
                         << fmt17(out.report.val_loss[e]) << "\n";
        }
        std::cout << "best epoch " << out.report.best_epoch << ", validation loss "
                  << fmt17(out.model.best_val_loss) << "\n";
        std::cout << "model written to " << tr_out << "\n";
        return 0;
    }

    if (*gs_cmd) {
        const auto records = load_records(gs_data);
        const GridSearchResult result =
            grid_search(records, gs_inputs, gs_layers, gs_neurons, gs_config);
        auto out = open_output(gs_out, "surrogate");
        out << "L,N,val_loss\n";
        for (std::size_t li = 0; li < result.layer_values.size(); ++li)
            for (std::size_t ni = 0; ni < result.neuron_values.size(); ++ni) {
                out << result.layer_values[li] << "," << result.neuron_values[ni] << ",";
                const double v = result.at(li, ni);
                if (v >= 0.0) out << fmt17(v);
                out << "\n";
            }
        if (gs_plot) {
            std::ofstream gp(gs_out + ".gp");
            gp << "set datafile separator ','\n";
            gp << "set xlabel 'N'\nset ylabel 'L'\nset view map\n";
            gp << "splot '" << gs_out << "' skip 1 using 2:1:3 with points pt 5 ps 3 "
                  "palette notitle\n";
        }
        std::cout << "wrote " << result.val_loss.size() << " cells to " << gs_out << "\n";
        return 0;
    }

    if (*opt_cmd) {
        op_config.sobol.seed = op_config.de.seed;
        op_config.max_coin_qubits = max_qubits;
        std::optional<MlpModel> model;
        if (!op_model.empty()) model = load_model(op_model);
        const OptMethod method =
            (op_method == "de") ? OptMethod::DifferentialEvolution : OptMethod::SobolMultistart;
        const OptResult r =
            maximize_probability(model ? &*model : nullptr, op_n, method, op_config);
        std::cout << "method=" << r.method << " n=" << op_n << " phi=" << fmt17(r.point[0])
                  << " zeta=" << fmt17(r.point[1]) << " value=" << fmt17(r.value)
                  << " evals=" << r.evaluations << "\n";
        if (r.direct_probability)
            std::cout << "direct simulator check: p=" << fmt17(*r.direct_probability) << "\n";
        if (!op_out.empty()) {
            auto out = open_output(op_out, "optimize");
            out << "method,n,phi,zeta,value,evals\n";
            out << r.method << "," << op_n << "," << fmt17(r.point[0]) << ","
                << fmt17(r.point[1]) << "," << fmt17(r.value) << "," << r.evaluations << "\n";
        }
        return 0;
    }

    if (*ridge_cmd) {
        std::optional<MlpModel> model;
        if (!rg_model.empty()) model = load_model(rg_model);
        const PEvaluator eval = model ? model_evaluator(*model, rg_n)
                                      : simulator_evaluator(rg_n, max_qubits);
        const auto points = extract_ridge(eval, rg_grid);
        auto out = open_output(rg_out, "ridgefit");
        out << "phi,zeta_unwrapped,p\n";
        for (const RidgePoint& pt : points)
            out << fmt17(pt.phi) << "," << fmt17(pt.zeta_unwrapped) << "," << fmt17(pt.p)
                << "\n";
        std::cout << "wrote " << points.size() << " ridge points to " << rg_out << "\n";
        return 0;
    }

    if (*fit_cmd) {
        std::optional<MlpModel> model;
        if (fa_source == "model") {
            if (fa_model.empty())
                fail("ridgefit", "missing-model", "--source model requires --model", 2);
            model = load_model(fa_model);
        }
        const PEvaluator eval = model ? model_evaluator(*model, fa_n)
                                      : simulator_evaluator(fa_n, max_qubits);
        const AlphaFit fit = fit_alpha(extract_ridge(eval, fa_grid));
        std::cout << "alpha=" << fmt17(fit.alpha)
                  << " rms_residual=" << fmt17(fit.rms_residual) << "\n";
        if (!fa_out.empty()) {
            auto out = open_output(fa_out, "ridgefit");
            out << "alpha,rms_residual,n,source\n";
            out << fmt17(fit.alpha) << "," << fmt17(fit.rms_residual) << "," << fa_n << ","
                << fa_source << "\n";
        }
        return 0;
    }

    if (*prof_cmd) {
        std::optional<MlpModel> model;
        if (!pf_model.empty()) model = load_model(pf_model);
        const PEvaluator eval = model ? model_evaluator(*model, pf_n)
                                      : simulator_evaluator(pf_n, max_qubits);
        const CurveSpec spec = parse_curve(pf_curve, pf_k, pf_alpha);
        const Profile prof = profile(eval, spec, pf_grid);
        auto out = open_output(pf_out, "ridgefit");
        out << "phi,zeta,p\n";
        for (const ProfilePoint& pt : prof)
            out << fmt17(pt.phi) << "," << fmt17(pt.zeta) << "," << fmt17(pt.p) << "\n";
        if (pf_plot) write_profile_script(pf_out, "p along " + pf_curve);
        std::cout << "wrote " << prof.size() << " profile points to " << pf_out << "\n";
        return 0;
    }

    if (*pred_cmd) {
        const MlpModel model = load_model(pr_model);
        const double p =
            predict_p(model, parse_angle(pr_phi), parse_angle(pr_zeta), pr_n);
        std::cout << "p=" << fmt17(p) << "\n";
        return 0;
    }

    if (*tab_cmd) {
        MaximizeConfig config;
        config.de.seed = tb_seed;
        config.sobol.seed = tb_seed;
        config.max_coin_qubits = max_qubits;

        std::vector<TableRow> rows;
        for (int n : {1, 2, 3}) {
            for (const char* method : {"sobol", "de"}) {
                TableRow row{method, n, "", "", ""};
                try {
                    const OptMethod m = std::string(method) == "de"
                                            ? OptMethod::DifferentialEvolution
                                            : OptMethod::SobolMultistart;
                    const OptResult r = maximize_probability(nullptr, n, m, config);
                    row.phi = fmt17(r.point[0]);
                    row.zeta = fmt17(r.point[1]);
                    row.p = fmt17(r.value);
                } catch (const std::exception&) {
                    // missing cells stay blank
                }
                rows.push_back(row);
            }
            if (n == 1) {
                rows.push_back({"theoretical-max", 1, "", "", fmt17(0.5)});
            } else {
                TableRow row{"grover", n, fmt17(kPi), fmt17(kPi), ""};
                try {
                    RunOptions opt;
                    opt.max_coin_qubits = max_qubits;
                    row.p = fmt17(run(n, kPi, kPi, {0}, opt).probability);
                } catch (const std::exception&) {
                }
                rows.push_back(row);
            }
        }
        auto t1 = open_output(tb_outdir + "/table1.csv", "cli");
        t1 << "method,n,phi,zeta,p\n";
        for (const TableRow& row : rows)
            t1 << row.method << "," << row.n << "," << row.phi << "," << row.zeta << ","
               << row.p << "\n";

        auto t2 = open_output(tb_outdir + "/table2.csv", "cli");
        t2 << "n,alpha_mc,alpha_dnn\n";
        const std::string model_paths[3] = {tb_model1, tb_model2, tb_model3};
        for (int n : {1, 2, 3}) {
            std::string mc, dnn;
            try {
                mc = fmt17(fit_alpha(extract_ridge(simulator_evaluator(n, max_qubits), 201)).alpha);
            } catch (const std::exception&) {
            }
            const std::string& path = model_paths[n - 1];
            if (!path.empty()) {
                try {
                    const MlpModel model = load_model(path);
                    dnn = fmt17(fit_alpha(extract_ridge(model_evaluator(model, n), 201)).alpha);
                } catch (const std::exception&) {
                }
            }
            t2 << n << "," << mc << "," << dnn << "\n";
        }
        std::cout << "wrote " << tb_outdir << "/table1.csv and " << tb_outdir
                  << "/table2.csv\n";
        return 0;
    }

    fail("cli", "no-subcommand", "no subcommand selected", 2);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error:" << e.module << ":" << e.kind << ": " << e.message << "\n";
        return e.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error:cli:validation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error:cli:runtime: " << e.what() << "\n";
        return 1;
    }
}
