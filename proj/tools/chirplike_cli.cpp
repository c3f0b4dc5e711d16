// chirplike command-line front end.
//
//   chirplike synth    --p 1 --q 1 --params 10,10,1.5,10,10,0.1 --n 100 --sigma2 0.1 --seed 7 --output y.csv
//   chirplike fit      --input y.csv --p 1 --q 1 --output fit.json
//   chirplike fit      --input y.csv --select-order --pmax 14 --qmax 2 --output fit.json
//   chirplike simulate --config table2.json --output table2.json
//   chirplike replay   table2.json.manifest.json
//
// Every command first resolves its flags into a JSON configuration, then runs
// from that configuration alone. The configuration is stored in the
// <output>.manifest.json sidecar, which `replay` feeds back in.
//
// Exit codes: 0 success, 2 usage, 3 data parse, 4 numerical failure.

#include <chrono>
#include <charconv>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chirplike/chirplike.hpp"
#include "chirplike/io.hpp"

namespace {

using namespace chirplike;

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;

struct ParamFlags {
    std::optional<std::size_t> p, q;
    std::string params;
};

struct NoiseFlags {
    std::optional<double> sigma2;
    std::string type{"iid"};
    double rho{0.5};
};

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write failed for '" + path + "'");
}

/// "report.json" -> "report.<tag>.csv"; other names get ".<tag>.csv" appended.
std::string sibling_csv(const std::string& output, const std::string& tag) {
    std::filesystem::path path(output);
    if (path.extension() == ".json") path.replace_extension();
    return path.string() + "." + tag + ".csv";
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        std::string field = text.substr(start, end - start);
        const auto first = field.find_first_not_of(" \t");
        const auto last = field.find_last_not_of(" \t");
        field = first == std::string::npos ? "" : field.substr(first, last - first + 1);
        double value{};
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw InvalidInput("--params: '" + field + "' is not a number");
        }
        out.push_back(value);
        start = end + 1;
    }
    return out;
}

/// --params is either a JSON parameter file or a comma list of p (A, B, alpha)
/// triples followed by q (C, D, beta) triples.
MultiParams resolve_params(const ParamFlags& flags) {
    MultiParams params;
    if (!flags.params.empty() && std::filesystem::is_regular_file(flags.params)) {
        params = multi_params_from_json(read_json_file(flags.params));
    } else {
        const std::size_t p = flags.p.value_or(0), q = flags.q.value_or(0);
        const auto values = flags.params.empty() ? std::vector<double>{} : parse_number_list(flags.params);
        if (values.size() != 3 * (p + q)) {
            throw InvalidInput("--params: expected " + std::to_string(3 * (p + q)) + " values for p = " +
                               std::to_string(p) + ", q = " + std::to_string(q) + ", got " +
                               std::to_string(values.size()));
        }
        for (std::size_t j = 0; j < p; ++j) params.sinusoids.push_back({values[3 * j], values[3 * j + 1], values[3 * j + 2]});
        for (std::size_t k = 0; k < q; ++k) {
            const std::size_t at = 3 * (p + k);
            params.chirps.push_back({values[at], values[at + 1], values[at + 2]});
        }
    }
    if (flags.p && *flags.p != params.p()) throw InvalidInput("--p disagrees with the parameter file");
    if (flags.q && *flags.q != params.q()) throw InvalidInput("--q disagrees with the parameter file");
    return params;
}

NoiseSpec resolve_noise(const NoiseFlags& flags, double default_sigma2) {
    const double sigma2 = flags.sigma2.value_or(default_sigma2);
    if (flags.type == "iid") return NoiseSpec::iid(sigma2);
    if (flags.type == "ma1") return NoiseSpec::moving_average(sigma2, flags.rho);
    throw InvalidInput("--noise must be iid or ma1");
}

struct Outputs {
    std::vector<std::string> files;
};

// ---------------------------------------------------------------------------
// Commands, each driven by its resolved configuration.

Outputs run_synth(const json& config) {
    const auto params = multi_params_from_json(config.at("params"));
    const auto n = config.at("n").get<std::size_t>();
    const auto noise = noise_spec_from_json(config.at("noise"));
    const auto seed = config.at("seed").get<std::uint64_t>();
    const auto y = synthesize(params, n, noise, seed);
    std::ostringstream csv;
    write_signal_csv(csv, y);
    const auto output = config.value("output", std::string());
    if (output.empty()) {
        std::cout << csv.str();
        return {};
    }
    write_text(output, csv.str());
    return {{output}};
}

Outputs run_fit(const json& config) {
    const auto input = config.at("input").get<std::string>();
    const auto y = read_signal_csv_file(input);
    const auto method = parse_fit_method(config.at("method").get<std::string>());

    json report;
    FitResult fit;
    if (config.at("select_order").get<bool>()) {
        if (method != FitMethod::Sequential) throw InvalidInput("--select-order requires --method sequential");
        auto selection = select_order_bic(y, config.at("pmax").get<std::size_t>(), config.at("qmax").get<std::size_t>());
        fit = std::move(selection.fit);
        json table = json::array();
        for (const auto& row : selection.bic_table) {
            json cells = json::array();
            for (double v : row) cells.push_back(std::isfinite(v) ? json(v) : json(nullptr));
            table.push_back(cells);
        }
        report["order_selection"] = {{"p", selection.p}, {"q", selection.q}, {"bic_table", table}};
    } else {
        const auto p = config.at("p").get<std::size_t>(), q = config.at("q").get<std::size_t>();
        if (method == FitMethod::Joint) {
            if (p != 1 || q != 1) throw InvalidInput("--method joint fits the one-component model (--p 1 --q 1)");
            fit = fit_joint_one(y);
        } else {
            fit = fit_sequential_multi(y, p, q);
        }
    }

    // Standard errors use sigma^2 c: from the flags when a noise variance is
    // given, otherwise the residual variance (which estimates sigma^2 c).
    double scale{};
    std::string source;
    if (!config.at("sigma2").is_null()) {
        const auto noise = noise_spec_from_json(config.at("noise"));
        scale = noise.sigma2 * c_constant(noise);
        source = "given";
    } else {
        const auto dof = static_cast<double>(y.size()) - static_cast<double>(fit.params.parameter_count());
        scale = dof > 0 ? fit.sse / dof : 0.0;
        source = "residual";
    }
    if (fit.params.p() + fit.params.q() > 0) attach_asymptotic_se(fit, scale, 1.0);

    report["input"] = input;
    report["fit"] = to_json(fit);
    report["noise_scale"] = {{"sigma2_c", scale}, {"source", source}};

    const auto output = config.value("output", std::string());
    if (output.empty()) {
        std::cout << report.dump(2) << '\n';
        return {};
    }
    const auto fitted_path = sibling_csv(output, "fitted");
    report["fitted_csv"] = std::filesystem::path(fitted_path).filename().string();
    std::ostringstream csv;
    write_fitted_csv(csv, y, evaluate(fit.params, y.size()));
    write_text(output, report.dump(2) + "\n");
    write_text(fitted_path, csv.str());
    return {{output, fitted_path}};
}

Outputs run_simulate(const json& config) {
    auto experiment = experiment_config_from_json(config.at("experiment"));
    experiment.threads = config.value("threads", std::size_t{0});
    experiment.validate();
    const auto report = run_experiment(experiment);
    std::ostringstream table;
    write_report_table_csv(table, report);
    const auto body = to_json(report).dump(2) + "\n";
    const auto output = config.value("output", std::string());
    if (output.empty()) {
        std::cout << body << table.str();
        return {};
    }
    const auto table_path = sibling_csv(output, "table");
    write_text(output, body);
    write_text(table_path, table.str());
    return {{output, table_path}};
}

Outputs dispatch(const std::string& command, const json& config) {
    if (command == "synth") return run_synth(config);
    if (command == "fit") return run_fit(config);
    if (command == "simulate") return run_simulate(config);
    throw InvalidInput("unknown command '" + command + "' in manifest");
}

/// Runs and, when files were written, leaves <primary output>.manifest.json.
void execute(const std::string& command, const json& config) {
    const auto started = utc_now();
    const auto clock = std::chrono::steady_clock::now();
    const auto outputs = dispatch(command, config);
    if (outputs.files.empty()) return;
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock).count();
    json files = json::array();
    for (const auto& f : outputs.files) files.push_back(f);
    const json manifest{{"command", command},
                        {"config", config},
                        {"seed", config.contains("seed") ? config["seed"]
                                 : config.contains("experiment") ? config["experiment"]["base_seed"]
                                                                 : json(nullptr)},
                        {"version", kVersion},
                        {"started_at", started},
                        {"finished_at", utc_now()},
                        {"runtime_seconds", runtime},
                        {"outputs", files}};
    write_text(outputs.files.front() + ".manifest.json", manifest.dump(2) + "\n");
}

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--p", flags.p, "Number of sinusoid components");
    cmd->add_option("--q", flags.q, "Number of chirp components");
    cmd->add_option("--params", flags.params,
                    "Comma list A,B,alpha per sinusoid then C,D,beta per chirp, or a JSON parameter file");
}

void add_noise_flags(CLI::App* cmd, NoiseFlags& flags) {
    cmd->add_option("--sigma2", flags.sigma2, "Innovation variance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--noise", flags.type, "Noise process")->check(CLI::IsMember({"iid", "ma1"}));
    cmd->add_option("--rho", flags.rho, "MA(1) coefficient for --noise ma1");
}

int run(int argc, char** argv) {
    CLI::App app{"Chirp-like model synthesis, fitting and simulation"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string output;

    auto* synth = app.add_subcommand("synth", "Write a synthetic signal as t,y CSV");
    ParamFlags synth_params;
    NoiseFlags synth_noise;
    std::size_t synth_n = 0;
    std::uint64_t synth_seed = 0;
    add_param_flags(synth, synth_params);
    add_noise_flags(synth, synth_noise);
    synth->add_option("--n", synth_n, "Sample count")->required()->check(CLI::PositiveNumber);
    synth->add_option("--seed", synth_seed, "Noise seed");
    synth->add_option("--output", output, "Output CSV (default: stdout)");

    auto* fit = app.add_subcommand("fit", "Fit the model to a signal file");
    std::string fit_input, fit_method{"sequential"};
    std::size_t fit_p = 1, fit_q = 1, fit_pmax = 3, fit_qmax = 3;
    bool select = false;
    NoiseFlags fit_noise;
    fit->add_option("--input", fit_input, "Signal CSV: one column y, or two columns t,y")->required();
    fit->add_option("--p", fit_p, "Sinusoid components");
    fit->add_option("--q", fit_q, "Chirp components");
    fit->add_option("--method", fit_method, "Estimator")->check(CLI::IsMember({"joint", "sequential"}));
    fit->add_flag("--select-order", select, "Choose (p, q) by BIC");
    fit->add_option("--pmax", fit_pmax, "Largest p tried by --select-order");
    fit->add_option("--qmax", fit_qmax, "Largest q tried by --select-order");
    add_noise_flags(fit, fit_noise);
    fit->add_option("--output", output, "Report JSON (default: stdout); the fitted CSV goes alongside");

    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    std::string sim_config, sim_method;
    ParamFlags sim_params;
    NoiseFlags sim_noise;
    std::optional<std::size_t> sim_n, sim_reps;
    std::optional<std::uint64_t> sim_seed;
    std::size_t threads = 0;
    simulate->add_option("--config", sim_config, "Experiment JSON; flags below override its fields");
    add_param_flags(simulate, sim_params);
    add_noise_flags(simulate, sim_noise);
    simulate->add_option("--n", sim_n, "Sample count")->check(CLI::PositiveNumber);
    simulate->add_option("--replicates", sim_reps, "Replicate count")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed, "Base seed");
    simulate->add_option("--method", sim_method, "Estimator")->check(CLI::IsMember({"joint", "sequential"}));
    simulate->add_option("--threads", threads, "Worker threads (0: automatic; CHIRPLIKE_THREADS caps)");
    simulate->add_option("--output", output, "Report JSON (default: stdout); the table CSV goes alongside");

    auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    std::string manifest_path;
    replay->add_option("manifest", manifest_path, "A .manifest.json sidecar")->required();
    replay->add_option("--output", output, "Write to this path instead of the recorded one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*synth) {
        const json config{{"params", to_json(resolve_params(synth_params))},
                          {"n", synth_n},
                          {"noise", to_json(resolve_noise(synth_noise, 0.0))},
                          {"seed", synth_seed},
                          {"output", output}};
        execute("synth", config);
    } else if (*fit) {
        const json config{{"input", fit_input},
                          {"p", fit_p},
                          {"q", fit_q},
                          {"method", fit_method},
                          {"select_order", select},
                          {"pmax", fit_pmax},
                          {"qmax", fit_qmax},
                          {"sigma2", fit_noise.sigma2 ? json(*fit_noise.sigma2) : json(nullptr)},
                          {"noise", to_json(resolve_noise(fit_noise, 0.0))},
                          {"output", output}};
        execute("fit", config);
    } else if (*simulate) {
        json experiment = sim_config.empty() ? json::object() : read_json_file(sim_config);
        if (!sim_params.params.empty() || !experiment.contains("truth")) {
            experiment["truth"] = to_json(resolve_params(sim_params));
        }
        if (sim_noise.sigma2 || !experiment.contains("noise")) {
            const double fallback = experiment.contains("noise") ? experiment["noise"].value("sigma2", 0.1) : 0.1;
            experiment["noise"] = to_json(resolve_noise(sim_noise, fallback));
        }
        if (sim_n) experiment["n"] = *sim_n;
        if (!experiment.contains("n")) throw InvalidInput("simulate needs --n or a config with \"n\"");
        if (sim_reps) experiment["replicates"] = *sim_reps;
        if (sim_seed) experiment["base_seed"] = *sim_seed;
        if (!sim_method.empty()) experiment["method"] = sim_method;
        // Normalise through the typed config so the manifest holds every field.
        const json config{{"experiment", to_json(experiment_config_from_json(experiment))},
                          {"threads", threads},
                          {"output", output}};
        execute("simulate", config);
    } else if (*replay) {
        const auto manifest = read_json_file(manifest_path);
        json config;
        std::string command;
        try {
            command = manifest.at("command").get<std::string>();
            config = manifest.at("config");
        } catch (const json::exception& e) {
            throw ParseError(manifest_path + ": " + e.what(), 0);
        }
        if (!output.empty()) config["output"] = output;
        execute(command, config);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const chirplike::ParseError& e) {
        std::cerr << "chirplike: parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const chirplike::InvalidInput& e) {
        std::cerr << "chirplike: " << e.what() << '\n';
        return kExitUsage;
    } catch (const chirplike::NumericalFailure& e) {
        std::cerr << "chirplike: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "chirplike: parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "chirplike: " << e.what() << '\n';
        return 1;
    }
}
