#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chirplike/estimators.hpp"
#include "chirplike/model.hpp"

namespace chirplike {

struct ExperimentConfig {
    MultiParams truth;
    std::size_t n{100};
    NoiseSpec noise{NoiseSpec::iid(0.1)};
    std::size_t replicates{500};
    FitMethod method{FitMethod::Sequential};
    std::uint64_t base_seed{1};
    /// Keep every replicate's estimates in the report.
    bool keep_raw{false};
    /// Worker cap; 0 defers to CHIRPLIKE_THREADS, then the hardware.
    std::size_t threads{0};

    /// Throws InvalidInput on an unusable configuration.
    void validate() const;
};

/// One row group of a simulation table.
struct ParameterSummary {
    std::string name;
    double truth{};
    double average{};
    double bias{};
    /// Empirical variance about the replicate mean (divisor = replicate count).
    double variance{};
    /// Mean squared error about the truth: variance + bias^2.
    double mse{};
    double asym_var{};
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ParameterSummary> parameters;
    std::size_t completed{};
    std::size_t failures{};
    std::vector<std::string> failure_messages;
    double runtime_seconds{};
    /// Per-replicate estimates in flatten() order; only with keep_raw.
    std::vector<std::vector<double>> raw;
};

/// Seed of replicate r, a splitmix64 hash of (base, r). Independent of
/// execution order.
[[nodiscard]] std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate) noexcept;

/// Worker count for a request of `requested` (0 = automatic), capped by the
/// CHIRPLIKE_THREADS environment variable when set.
[[nodiscard]] std::size_t worker_count(std::size_t requested);

/// Sum of values by recursive halving; the result depends only on the order
/// of `values`.
[[nodiscard]] double pairwise_sum(std::span<const double> values) noexcept;

/// Replicated synthesis-and-fit; statistics per parameter plus the
/// closed-form asymptotic variances at the truth. Replicates whose fit throws
/// a NumericalFailure are counted and skipped.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentConfig& config);

enum class TrigFn { Cos, Sin };
enum class PhaseKind { Linear, Quadratic };

/// fn(phi t) or fn(phi t^2).
struct TrigFactor {
    TrigFn fn{TrigFn::Cos};
    PhaseKind phase{PhaseKind::Linear};
    double phi{};

    [[nodiscard]] double operator()(std::size_t t) const noexcept;
};

/// A single factor or a product of two.
struct TrigProduct {
    TrigFactor first;
    std::optional<TrigFactor> second;
};

enum class TrigKind { CosSquared, SinSquared, SinCos, Cos, Sin };

enum class TrigNormalization {
    Power,  ///< 1 / n^(k+1)
    RootN,  ///< 1 / (n^k sqrt(n))
};

/// norm * sum_{t=1}^n t^k * product(t).
[[nodiscard]] double empirical_trig_average(std::size_t k, const TrigProduct& product, std::size_t n,
                                            TrigNormalization normalization = TrigNormalization::Power);

/// Same-angle forms: cos^2, sin^2, sin*cos, or a plain cos / sin of phi t or phi t^2.
[[nodiscard]] double empirical_trig_average(std::size_t k, double phi, TrigKind kind, PhaseKind phase,
                                            std::size_t n);

} // namespace chirplike
