// Command-line front end: dataset simulation plus the three soft-sensor
// experiment sweeps. Every run writes its summary CSV/JSON, per-run record
// CSVs, and a config echo sufficient to reproduce the outputs byte for byte.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smw/dataset.hpp"
#include "smw/harness.hpp"
#include "smw/report.hpp"
#include "smw/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string data_path;
    std::string preset;
    std::string y_col = "y";
    std::vector<std::string> models{"mmw", "pls", "rpls", "rf", "rfpls"};
    std::string windows = "4";
    std::string delays = "1";
    std::string mode = "continuous";
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::size_t trees = 1000;
    double lambda = -1.0; // unset; resolved from the preset or the 0.1 default
    std::size_t y_lag = 0;
    double jitter_epsilon = 0.0;
    std::size_t window = 4; // single-window commands

    // simulate
    std::string regime = "drifting";
    std::size_t sim_n = 0;   // 0 = regime default
    std::size_t sim_vars = 0;
    double sim_noise = -1.0;
    std::size_t drift_period = 0; // 0 = regime default
};

// "2-10,15,20,25" or "1..9" style lists
std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    try {
        std::string token;
        std::stringstream ss(text);
        while (std::getline(ss, token, ',')) {
            if (token.empty()) continue;
            std::size_t lo = 0, hi = 0;
            const auto dots = token.find("..");
            const auto dash = token.find('-');
            if (dots != std::string::npos) {
                lo = std::stoul(token.substr(0, dots));
                hi = std::stoul(token.substr(dots + 2));
            } else if (dash != std::string::npos && dash > 0) {
                lo = std::stoul(token.substr(0, dash));
                hi = std::stoul(token.substr(dash + 1));
            } else {
                lo = hi = std::stoul(token);
            }
            if (hi < lo) throw std::invalid_argument("descending range");
            for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
        }
    } catch (const std::exception&) {
        throw smw::ContractViolation("cannot parse list '" + text + "'; expected e.g. 2-10,15,20,25 or 1..9");
    }
    if (out.empty()) throw smw::ContractViolation("empty list '" + text + "'");
    return out;
}

void apply_preset(Options& opt) {
    if (opt.preset.empty()) return;
    if (opt.preset == "debutanizer") {
        if (opt.y_lag == 0) opt.y_lag = 8;
        if (opt.lambda < 0.0) opt.lambda = 0.01;
    } else if (opt.preset == "sru") {
        if (opt.jitter_epsilon == 0.0) opt.jitter_epsilon = 1e-6;
        if (opt.lambda < 0.0) opt.lambda = 0.05;
    } else if (opt.preset == "penicillin") {
        if (opt.lambda < 0.0) opt.lambda = 0.10;
    } else {
        throw smw::ContractViolation("unknown preset '" + opt.preset + "' (debutanizer, sru, penicillin)");
    }
}

smw::Dataset load_data(const Options& opt) {
    if (opt.data_path.empty()) throw smw::ContractViolation("no dataset given; pass --data PATH");
    smw::Dataset d = smw::load_csv(opt.data_path, opt.y_col);
    if (opt.y_lag > 0) d = smw::lag_align(d, opt.y_lag);
    if (opt.jitter_epsilon > 0.0) d = smw::jitter_duplicate_y(d, opt.jitter_epsilon);
    return d;
}

std::vector<smw::ModelSpec> build_specs(const Options& opt) {
    std::vector<smw::ModelSpec> specs;
    for (const std::string& name : opt.models) {
        const auto kind = smw::parse_model_kind(name);
        if (!kind)
            throw CLI::ValidationError("--models",
                                       "unknown model '" + name + "'; choose from {mmw, pls, rpls, rf, rfpls}");
        smw::ModelSpec spec;
        spec.kind = *kind;
        spec.window = opt.window;
        spec.lambda = opt.lambda < 0.0 ? 0.1 : opt.lambda;
        spec.forest.n_trees = opt.trees;
        spec.seed = opt.seed;
        specs.push_back(spec);
    }
    return specs;
}

ordered_json config_echo(const Options& opt, const std::string& command) {
    ordered_json cfg;
    cfg["command"] = command;
    cfg["data"] = opt.data_path;
    cfg["preset"] = opt.preset;
    cfg["y_col"] = opt.y_col;
    cfg["y_lag"] = opt.y_lag;
    cfg["jitter_epsilon"] = opt.jitter_epsilon;
    cfg["models"] = opt.models;
    cfg["windows"] = opt.windows;
    cfg["window"] = opt.window;
    cfg["delays"] = opt.delays;
    cfg["mode"] = opt.mode;
    cfg["seed"] = opt.seed;
    cfg["trees"] = opt.trees;
    cfg["lambda"] = opt.lambda < 0.0 ? 0.1 : opt.lambda;
    cfg["out"] = opt.out_dir;
    cfg["regime"] = opt.regime;
    cfg["sim_n"] = opt.sim_n;
    cfg["sim_vars"] = opt.sim_vars;
    cfg["sim_noise"] = opt.sim_noise;
    cfg["drift_period"] = opt.drift_period;
    return cfg;
}

void write_outputs(const Options& opt, const std::string& command, const std::vector<smw::SweepRow>& rows,
                   const std::string& param_name, const std::string& stem) {
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    smw::write_file_atomic(dir / (stem + "_summary.csv"), smw::sweep_csv(rows, param_name));
    smw::write_file_atomic(dir / (stem + "_summary.json"), smw::summary_json(rows));
    smw::write_file_atomic(dir / "config.json", config_echo(opt, command).dump(2) + "\n");
    for (const smw::SweepRow& row : rows) {
        if (!row.ok) continue;
        const std::string name = "records_" + row.model + "_" + param_name + std::to_string(row.param) + ".csv";
        smw::write_file_atomic(dir / name, smw::records_csv(row.report));
    }
    for (const smw::SweepRow& row : rows) {
        if (row.ok)
            std::cout << row.model << " " << param_name << "=" << row.param << " rmsep=" << smw::format_double(row.rmsep)
                      << " n=" << row.n << " flagged=" << row.flagged << "\n";
        else
            std::cerr << row.model << " " << param_name << "=" << row.param << " failed: " << row.error << "\n";
    }
    std::cout << "wrote " << (dir / (stem + "_summary.csv")).string() << "\n";
}

int cmd_simulate(const Options& opt) {
    smw::SimConfig cfg = opt.regime == "monotonic" ? smw::monotonic_defaults(opt.seed) : smw::drifting_defaults(opt.seed);
    if (opt.sim_n > 0) cfg.n_samples = opt.sim_n;
    if (opt.sim_vars > 0) cfg.n_variables = opt.sim_vars;
    if (opt.sim_noise >= 0.0) cfg.noise_sd = opt.sim_noise;
    if (opt.drift_period > 0) cfg.drift_period = opt.drift_period;

    const smw::Dataset d = smw::generate(cfg);
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    const fs::path path = dir / ("sim_" + opt.regime + ".csv");
    smw::write_csv(d, path);
    smw::write_file_atomic(dir / "config.json", config_echo(opt, "simulate").dump(2) + "\n");
    std::cout << path.string() << " " << d.X.rows() << " rows\n";
    return 0;
}

int cmd_sweep_window(const Options& opt) {
    const smw::Dataset d = load_data(opt);
    const std::vector<std::size_t> sizes = parse_size_list(opt.windows);
    const std::size_t max_w = *std::max_element(sizes.begin(), sizes.end());
    if (d.X.rows() < max_w + 1)
        throw smw::ContractViolation("dataset has " + std::to_string(d.X.rows()) +
                                     " samples; the largest window " + std::to_string(max_w) +
                                     " needs at least " + std::to_string(max_w + 1));
    const smw::UpdatePolicy policy{opt.mode == "delayed" ? smw::UpdatePolicy::Mode::delayed
                                                         : smw::UpdatePolicy::Mode::continuous,
                                   parse_size_list(opt.delays).front()};
    const auto rows = smw::sweep_window_size(d, build_specs(opt), sizes, policy);
    write_outputs(opt, "sweep-window", rows, "window", "window");
    return 0;
}

int cmd_sweep_delay(const Options& opt) {
    const smw::Dataset d = load_data(opt);
    const smw::UpdatePolicy::Mode mode =
        opt.mode == "delayed" ? smw::UpdatePolicy::Mode::delayed : smw::UpdatePolicy::Mode::continuous;
    const auto rows = smw::sweep_delay(d, build_specs(opt), parse_size_list(opt.delays), mode);
    write_outputs(opt, "sweep-delay", rows, "delay", "delay");
    return 0;
}

int cmd_one_step(const Options& opt) {
    const smw::Dataset d = load_data(opt);
    const smw::UpdatePolicy policy{smw::UpdatePolicy::Mode::continuous, 1};
    const auto rows = smw::sweep_window_size(d, build_specs(opt), {opt.window}, policy);
    write_outputs(opt, "one-step", rows, "window", "one_step");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"small moving-window soft-sensor calibration harness"};
    app.require_subcommand(1);
    Options opt;

    auto add_data_flags = [&](CLI::App* cmd) {
        cmd->add_option("--data", opt.data_path, "dataset CSV path");
        cmd->add_option("--preset", opt.preset, "dataset preset: debutanizer (y_lag 8), sru (jitter 1e-6), penicillin");
        cmd->add_option("--y-col", opt.y_col, "y column name or 0-based index (default y)");
        cmd->add_option("--models", opt.models, "model list from {mmw, pls, rpls, rf, rfpls}")->delimiter(',');
        cmd->add_option("--seed", opt.seed, "base seed (per-window forest seeds derive from it)");
        cmd->add_option("--out", opt.out_dir, "output directory (default out)");
        cmd->add_option("--trees", opt.trees, "trees per forest (default 1000)");
        cmd->add_option("--lambda", opt.lambda, "recursive PLS forgetting factor (default from preset, else 0.1)");
        cmd->add_option("--y-lag", opt.y_lag, "re-pair y with sensor rows this many samples earlier");
        cmd->add_option("--jitter-epsilon", opt.jitter_epsilon, "offset added to break exact duplicate y runs");
        cmd->add_option("--window", opt.window, "calibration window size (default 4)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "generate a synthetic process dataset");
    simulate->add_option("--regime", opt.regime, "monotonic or drifting")
        ->check(CLI::IsMember({"monotonic", "drifting"}));
    simulate->add_option("--n", opt.sim_n, "sample count (0 = regime default)");
    simulate->add_option("--vars", opt.sim_vars, "sensor count (0 = regime default)");
    simulate->add_option("--noise-sd", opt.sim_noise, "sensor noise standard deviation");
    simulate->add_option("--drift-period", opt.drift_period, "drifting regime rotation quarter-period");
    simulate->add_option("--seed", opt.seed, "generator seed");
    simulate->add_option("--out", opt.out_dir, "output directory");

    CLI::App* sweep_window = app.add_subcommand("sweep-window", "RMSEP as a function of window size");
    add_data_flags(sweep_window);
    sweep_window->add_option("--windows", opt.windows, "window sizes, e.g. 2-10,15,20,25");
    sweep_window->add_option("--mode", opt.mode, "update mode")->check(CLI::IsMember({"continuous", "delayed"}));
    sweep_window->add_option("--delays", opt.delays, "single prediction delay for the sweep (default 1)");

    CLI::App* sweep_delay = app.add_subcommand("sweep-delay", "RMSEP as a function of prediction delay");
    add_data_flags(sweep_delay);
    sweep_delay->add_option("--delays", opt.delays, "delays, e.g. 1..9");
    sweep_delay->add_option("--mode", opt.mode, "update mode")->check(CLI::IsMember({"continuous", "delayed"}));

    CLI::App* one_step = app.add_subcommand("one-step", "one-step-ahead RMSEP table for the chosen models");
    add_data_flags(one_step);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        apply_preset(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (sweep_window->parsed()) return cmd_sweep_window(opt);
        if (sweep_delay->parsed()) return cmd_sweep_delay(opt);
        if (one_step->parsed()) return cmd_one_step(opt);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const smw::ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
