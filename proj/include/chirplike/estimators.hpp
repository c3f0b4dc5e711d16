#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "chirplike/model.hpp"
#include "chirplike/optimize.hpp"

namespace chirplike {

enum class FitMethod { Joint, Sequential };
enum class ComponentKind { Sinusoid, Chirp };

[[nodiscard]] std::string_view to_string(FitMethod method) noexcept;
/// Accepts "joint" or "sequential"; throws InvalidInput otherwise.
[[nodiscard]] FitMethod parse_fit_method(std::string_view text);
[[nodiscard]] std::string_view to_string(ComponentKind kind) noexcept;

/// One extraction stage: grid initializer and the refined argmin.
struct StageRecord {
    std::size_t stage{};
    ComponentKind kind{};
    double initial{};
    double refined{};
};

struct FitOptions {
    GridOptions grid{};
    double tolerance{kDefaultTolerance};
    int max_iterations{kDefaultMaxIterations};
    /// Estimates are clamped into (margin, pi - margin).
    double edge_margin{1e-6};
    /// Sequential stages refine this many of the highest grid peaks and keep
    /// the one with the smallest criterion. Off-grid scalloping can lower the
    /// strongest component's grid peak below a weaker one's.
    std::size_t candidates{3};
};

struct FitResult {
    MultiParams params;
    double sse{};
    std::size_t n{};
    double bic{};
    /// Empty until attach_asymptotic_se() fills it, then in flatten() order.
    std::vector<double> asym_se;
    FitMethod method{FitMethod::Sequential};
    /// Sequential fits: one record per component in extraction order.
    std::vector<StageRecord> trace;
};

/// n ln(SSE) + 2 (3p + 3q) ln(n).
[[nodiscard]] double bic(double sse, std::size_t n, std::size_t p, std::size_t q);

/// Least-squares fit of the one-component model: periodogram grid starts,
/// then coordinate descent on R(alpha, beta) inside one grid cell of each.
[[nodiscard]] FitResult fit_joint_one(const SignalSeries& y, const FitOptions& options = {});

/// Sinusoid first (minimise R1), subtract it, then the chirp (minimise R2).
[[nodiscard]] FitResult fit_sequential_one(const SignalSeries& y, const FitOptions& options = {});

/// p sinusoid stages followed by q chirp stages, each on the residual left
/// by the previous one. Components are reported in extraction order.
[[nodiscard]] FitResult fit_sequential_multi(const SignalSeries& y, std::size_t p, std::size_t q,
                                             const FitOptions& options = {});

struct OrderSelection {
    std::size_t p{};
    std::size_t q{};
    FitResult fit;
    /// bic_table[p][q] for every candidate pair.
    std::vector<std::vector<double>> bic_table;
};

/// Minimises BIC(p, q) over 0 <= p <= p_max, 0 <= q <= q_max. Sinusoid stages
/// are shared across candidates; chirp stages are rerun on the residual of
/// each p, so every SSE(p, q) is that of the sequential fit at (p, q).
/// Ties go to the smaller p, then the smaller q.
[[nodiscard]] OrderSelection select_order_bic(const SignalSeries& y, std::size_t p_max, std::size_t q_max,
                                              const FitOptions& options = {});

/// Fills fit.asym_se from the closed-form asymptotic variances at the
/// estimated parameters.
void attach_asymptotic_se(FitResult& fit, double sigma2, double c);

} // namespace chirplike
