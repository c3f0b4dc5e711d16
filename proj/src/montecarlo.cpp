#include "chirplike/montecarlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "chirplike/asymptotics.hpp"
#include "chirplike/errors.hpp"

namespace chirplike {

void ExperimentConfig::validate() const {
    if (replicates < 1) throw InvalidInput("replicates must be at least 1");
    if (truth.p() + truth.q() == 0) throw InvalidInput("truth must contain at least one component");
    if (n < std::max<std::size_t>(6 * (truth.p() + truth.q()), 2)) {
        throw InvalidInput("sample count too small for the number of components");
    }
    if (!(noise.sigma2 >= 0.0)) throw InvalidInput("noise variance must be non-negative");
    if (method == FitMethod::Joint && (truth.p() != 1 || truth.q() != 1)) {
        throw InvalidInput("joint fitting is available for the one-component model (p = q = 1) only");
    }
    if (const auto issues = identifiability_issues(truth); !issues.empty()) {
        throw InvalidInput("truth is not identifiable: " + issues.front());
    }
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate) noexcept {
    std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(replicate) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::size_t worker_count(std::size_t requested) {
    std::size_t count = requested;
    if (count == 0) count = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CHIRPLIKE_THREADS")) {
        char* end = nullptr;
        const auto cap = std::strtoull(env, &end, 10);
        if (end != env && cap > 0) count = std::min<std::size_t>(count, cap);
    }
    return std::max<std::size_t>(count, 1);
}

double pairwise_sum(std::span<const double> values) noexcept {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

double mean_of(std::span<const double> values) {
    return values.empty() ? std::nan("") : pairwise_sum(values) / static_cast<double>(values.size());
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    const std::size_t reps = config.replicates;
    std::vector<std::optional<std::vector<double>>> estimates(reps);
    std::vector<std::string> errors(reps);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t r = next++; r < reps; r = next++) {
            const auto y = synthesize(config.truth, config.n, config.noise, replicate_seed(config.base_seed, r));
            try {
                const auto fit = config.method == FitMethod::Joint
                                     ? fit_joint_one(y)
                                     : fit_sequential_multi(y, config.truth.p(), config.truth.q());
                estimates[r] = fit.params.flatten();
            } catch (const NumericalFailure& e) {
                errors[r] = e.what();
            }
        }
    };

    const std::size_t workers = std::min(worker_count(config.threads), reps);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    ExperimentReport report;
    report.config = config;
    for (std::size_t r = 0; r < reps; ++r) {
        if (estimates[r]) {
            ++report.completed;
            if (config.keep_raw) report.raw.push_back(*estimates[r]);
        } else {
            ++report.failures;
            report.failure_messages.push_back("replicate " + std::to_string(r) + ": " + errors[r]);
        }
    }

    const auto truth = config.truth.flatten();
    const auto names = config.truth.parameter_names();
    const auto asym = asym_variances(config.truth, config.noise.sigma2, c_constant(config.noise), config.n).variances();
    std::vector<double> column;
    column.reserve(reps);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        column.clear();
        for (const auto& e : estimates) {
            if (e) column.push_back((*e)[i]);
        }
        ParameterSummary row;
        row.name = names[i];
        row.truth = truth[i];
        row.average = mean_of(column);
        row.bias = row.average - row.truth;
        for (double& v : column) v = (v - row.average) * (v - row.average);
        row.variance = mean_of(column);
        row.mse = row.variance + row.bias * row.bias;
        row.asym_var = asym[i];
        report.parameters.push_back(row);
    }

    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

double TrigFactor::operator()(std::size_t t) const noexcept {
    const double angle = phase == PhaseKind::Linear ? phi * static_cast<double>(t) : quadratic_phase(phi, t);
    return fn == TrigFn::Cos ? std::cos(angle) : std::sin(angle);
}

double empirical_trig_average(std::size_t k, const TrigProduct& product, std::size_t n,
                              TrigNormalization normalization) {
    if (n < 1) throw InvalidInput("sample count must be at least 1");
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    // Sum t^k f(t) / n^k term by term so that t^k never overflows.
    std::vector<double> terms(n);
    for (std::size_t t = 1; t <= n; ++t) {
        double value = product.first(t);
        if (product.second) value *= (*product.second)(t);
        terms[t - 1] = std::pow(static_cast<double>(t) / nn, kk) * value;
    }
    const double sum = pairwise_sum(terms);
    return normalization == TrigNormalization::Power ? sum / nn : sum / std::sqrt(nn);
}

double empirical_trig_average(std::size_t k, double phi, TrigKind kind, PhaseKind phase, std::size_t n) {
    const TrigFactor cos_f{TrigFn::Cos, phase, phi};
    const TrigFactor sin_f{TrigFn::Sin, phase, phi};
    switch (kind) {
    case TrigKind::CosSquared: return empirical_trig_average(k, {cos_f, cos_f}, n);
    case TrigKind::SinSquared: return empirical_trig_average(k, {sin_f, sin_f}, n);
    case TrigKind::SinCos: return empirical_trig_average(k, {sin_f, cos_f}, n);
    case TrigKind::Cos: return empirical_trig_average(k, {cos_f, std::nullopt}, n);
    case TrigKind::Sin: return empirical_trig_average(k, {sin_f, std::nullopt}, n);
    }
    return 0.0;
}

} // namespace chirplike
