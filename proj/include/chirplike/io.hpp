#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "chirplike/estimators.hpp"
#include "chirplike/montecarlo.hpp"
#include "chirplike/model.hpp"

namespace chirplike {

using json = nlohmann::json;

/// %.17g: enough digits for an exact double round trip.
[[nodiscard]] std::string format_double(double value);

/// Header-optional CSV with either one column (y, t implied as 1..n) or two
/// columns (t, y) with t = 1..n contiguous. Blank lines and lines starting
/// with '#' are skipped. Throws ParseError carrying the offending line.
[[nodiscard]] SignalSeries read_signal_csv(std::istream& in);
[[nodiscard]] SignalSeries read_signal_csv_file(const std::string& path);

/// "t,y" header then one row per sample.
void write_signal_csv(std::ostream& out, const SignalSeries& y);
/// "t,y,fitted" header then one row per sample.
void write_fitted_csv(std::ostream& out, const SignalSeries& y, const std::vector<double>& fitted);

/// Parameter table: one column per parameter, rows Truth, Average, Bias,
/// Variance, MSE, Asym Var.
void write_report_table_csv(std::ostream& out, const ExperimentReport& report);

[[nodiscard]] json to_json(const MultiParams& params);
[[nodiscard]] MultiParams multi_params_from_json(const json& j);

/// Accepts {"type": "iid"|"ma1", "sigma2": s, "rho": r} or
/// {"sigma2": s, "coefficients": [{"lag": j, "value": a}, ...]}.
[[nodiscard]] json to_json(const NoiseSpec& noise);
[[nodiscard]] NoiseSpec noise_spec_from_json(const json& j);

[[nodiscard]] json to_json(const ExperimentConfig& config);
[[nodiscard]] ExperimentConfig experiment_config_from_json(const json& j);

/// Deterministic content only: the runtime is left to the run manifest.
[[nodiscard]] json to_json(const ExperimentReport& report);

[[nodiscard]] json to_json(const FitResult& fit);

} // namespace chirplike
