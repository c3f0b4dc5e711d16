#include "chirplike/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "chirplike/errors.hpp"

namespace chirplike {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_number(std::string_view field, double& out) {
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

SignalSeries read_signal_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    bool seen_data_line = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto fields = split_fields(body);
        std::vector<double> numbers(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) numeric = numeric && parse_number(fields[i], numbers[i]);

        if (!numeric) {
            if (!seen_data_line && columns == 0) {
                // Header row: fixes the column count, carries no data.
                columns = fields.size();
                seen_data_line = true;
                if (columns != 1 && columns != 2) throw ParseError("expected 1 or 2 columns, got " + std::to_string(columns), line_no);
                continue;
            }
            throw ParseError("non-numeric value", line_no);
        }
        seen_data_line = true;
        if (columns == 0) columns = fields.size();
        if (columns != 1 && columns != 2) throw ParseError("expected 1 or 2 columns, got " + std::to_string(fields.size()), line_no);
        if (fields.size() != columns) {
            throw ParseError("expected " + std::to_string(columns) + " column(s), got " + std::to_string(fields.size()), line_no);
        }
        if (columns == 2) {
            const double expected = static_cast<double>(values.size() + 1);
            if (numbers[0] != expected) {
                throw ParseError("time index must run 1..n contiguously; expected " + format_double(expected) + ", got " +
                                     std::string(fields[0]),
                                 line_no);
            }
            values.push_back(numbers[1]);
        } else {
            values.push_back(numbers[0]);
        }
    }
    if (values.empty()) throw ParseError("no samples found", line_no);
    return SignalSeries(std::move(values));
}

SignalSeries read_signal_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return read_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const SignalSeries& y) {
    out << "t,y\n";
    for (std::size_t t = 1; t <= y.size(); ++t) out << t << ',' << format_double(y.samples[t - 1]) << '\n';
}

void write_fitted_csv(std::ostream& out, const SignalSeries& y, const std::vector<double>& fitted) {
    out << "t,y,fitted\n";
    for (std::size_t t = 1; t <= y.size(); ++t) {
        out << t << ',' << format_double(y.samples[t - 1]) << ',' << format_double(fitted.at(t - 1)) << '\n';
    }
}

void write_report_table_csv(std::ostream& out, const ExperimentReport& report) {
    out << "statistic";
    for (const auto& p : report.parameters) out << ',' << p.name;
    out << '\n';
    const auto row = [&](const char* label, double ParameterSummary::*field) {
        out << label;
        for (const auto& p : report.parameters) out << ',' << format_double(p.*field);
        out << '\n';
    };
    row("Truth", &ParameterSummary::truth);
    row("Average", &ParameterSummary::average);
    row("Bias", &ParameterSummary::bias);
    row("Variance", &ParameterSummary::variance);
    row("MSE", &ParameterSummary::mse);
    row("Asym Var", &ParameterSummary::asym_var);
}

json to_json(const MultiParams& params) {
    json out{{"sinusoids", json::array()}, {"chirps", json::array()}};
    for (const auto& s : params.sinusoids) out["sinusoids"].push_back({{"A", s.a}, {"B", s.b}, {"alpha", s.frequency}});
    for (const auto& c : params.chirps) out["chirps"].push_back({{"C", c.c}, {"D", c.d}, {"beta", c.rate}});
    return out;
}

namespace {

template <typename Fn>
auto json_guard(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what(), 0);
    }
}

} // namespace

MultiParams multi_params_from_json(const json& j) {
    return json_guard("parameters", [&] {
        MultiParams out;
        for (const auto& s : j.value("sinusoids", json::array())) {
            out.sinusoids.push_back({s.at("A").get<double>(), s.at("B").get<double>(), s.at("alpha").get<double>()});
        }
        for (const auto& c : j.value("chirps", json::array())) {
            out.chirps.push_back({c.at("C").get<double>(), c.at("D").get<double>(), c.at("beta").get<double>()});
        }
        return out;
    });
}

json to_json(const NoiseSpec& noise) {
    json coefs = json::array();
    for (const auto& c : noise.coefficients) coefs.push_back({{"lag", c.lag}, {"value", c.value}});
    return {{"sigma2", noise.sigma2}, {"coefficients", coefs}};
}

NoiseSpec noise_spec_from_json(const json& j) {
    return json_guard("noise", [&] {
        const double sigma2 = j.at("sigma2").get<double>();
        if (j.contains("coefficients")) {
            NoiseSpec spec{{}, sigma2};
            for (const auto& c : j.at("coefficients")) {
                spec.coefficients.push_back({c.at("lag").get<int>(), c.at("value").get<double>()});
            }
            return spec;
        }
        const auto type = j.value("type", std::string("iid"));
        if (type == "iid") return NoiseSpec::iid(sigma2);
        if (type == "ma1") return NoiseSpec::moving_average(sigma2, j.value("rho", 0.5));
        throw ParseError("noise: unknown type '" + type + "' (expected iid or ma1)", 0);
    });
}

json to_json(const ExperimentConfig& config) {
    return {{"truth", to_json(config.truth)},
            {"n", config.n},
            {"noise", to_json(config.noise)},
            {"replicates", config.replicates},
            {"method", std::string(to_string(config.method))},
            {"base_seed", config.base_seed},
            {"keep_raw", config.keep_raw}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig config;
    json_guard("experiment config", [&] {
        config.truth = multi_params_from_json(j.at("truth"));
        config.n = j.at("n").get<std::size_t>();
        if (j.contains("noise")) config.noise = noise_spec_from_json(j.at("noise"));
        config.replicates = j.value("replicates", config.replicates);
        config.method = parse_fit_method(j.value("method", std::string("sequential")));
        config.base_seed = j.value("base_seed", config.base_seed);
        config.keep_raw = j.value("keep_raw", false);
        config.threads = j.value("threads", std::size_t{0});
        return 0;
    });
    return config;
}

json to_json(const ExperimentReport& report) {
    json params = json::array();
    for (const auto& p : report.parameters) {
        params.push_back({{"name", p.name},
                          {"truth", p.truth},
                          {"average", p.average},
                          {"bias", p.bias},
                          {"variance", p.variance},
                          {"mse", p.mse},
                          {"asym_var", p.asym_var}});
    }
    json out{{"config", to_json(report.config)},
             {"parameters", params},
             {"completed", report.completed},
             {"failures", report.failures},
             {"failure_messages", report.failure_messages}};
    if (report.config.keep_raw) out["raw"] = report.raw;
    return out;
}

json to_json(const FitResult& fit) {
    json trace = json::array();
    for (const auto& s : fit.trace) {
        trace.push_back({{"stage", s.stage},
                         {"kind", std::string(to_string(s.kind))},
                         {"initial", s.initial},
                         {"refined", s.refined}});
    }
    json se = json::array();
    for (double v : fit.asym_se) se.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    return {{"method", std::string(to_string(fit.method))},
            {"n", fit.n},
            {"p", fit.params.p()},
            {"q", fit.params.q()},
            {"parameter_count", fit.params.parameter_count()},
            {"params", to_json(fit.params)},
            {"parameter_names", fit.params.parameter_names()},
            {"sse", fit.sse},
            {"bic", std::isfinite(fit.bic) ? json(fit.bic) : json(nullptr)},
            {"asym_se", se},
            {"trace", trace}};
}

} // namespace chirplike
