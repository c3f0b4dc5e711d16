#include "chirplike/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "chirplike/asymptotics.hpp"
#include "chirplike/designmat.hpp"
#include "chirplike/errors.hpp"

namespace chirplike {

std::string_view to_string(FitMethod method) noexcept {
    return method == FitMethod::Joint ? "joint" : "sequential";
}

FitMethod parse_fit_method(std::string_view text) {
    if (text == "joint") return FitMethod::Joint;
    if (text == "sequential") return FitMethod::Sequential;
    throw InvalidInput("unknown fit method '" + std::string(text) + "' (expected joint or sequential)");
}

std::string_view to_string(ComponentKind kind) noexcept {
    return kind == ComponentKind::Sinusoid ? "sinusoid" : "chirp";
}

double bic(double sse, std::size_t n, std::size_t p, std::size_t q) {
    const double nn = static_cast<double>(n);
    const double log_sse = sse > 0.0 ? std::log(sse) : -std::numeric_limits<double>::infinity();
    return nn * log_sse + 2.0 * static_cast<double>(3 * p + 3 * q) * std::log(nn);
}

namespace {

void require_samples(std::size_t n, std::size_t p, std::size_t q) {
    const std::size_t needed = std::max<std::size_t>(6 * (p + q), 2);
    if (n < needed) {
        throw InvalidInput("need at least " + std::to_string(needed) + " samples to fit " + std::to_string(p) +
                           " sinusoid(s) and " + std::to_string(q) + " chirp(s), got " + std::to_string(n));
    }
}

/// Sums of squares of the series must stay finite for any criterion to mean anything.
void require_finite_energy(const SignalSeries& y) {
    if (!std::isfinite(y.energy())) throw NumericalFailure("signal energy overflows double precision");
}

double clamp_open(double x, double margin) { return std::clamp(x, margin, std::numbers::pi - margin); }

Bracket refine_bracket(double centre, double half_width, const FitOptions& options) {
    return {clamp_open(centre - half_width, options.edge_margin), clamp_open(centre + half_width, options.edge_margin),
            options.tolerance};
}

std::string stage_context(std::size_t stage, ComponentKind kind) {
    return "stage " + std::to_string(stage) + " (" + std::string(to_string(kind)) + "): ";
}

template <typename Fn>
auto with_stage_context(std::size_t stage, ComponentKind kind, Fn&& fn) {
    try {
        return fn();
    } catch (const DegenerateDesign& e) {
        throw DegenerateDesign(stage_context(stage, kind) + e.what());
    } catch (const NonConvergence& e) {
        throw NonConvergence(stage_context(stage, kind) + e.what());
    }
}

/// Runs extraction stages on a working residual.
class SequentialExtractor {
public:
    SequentialExtractor(const SignalSeries& y, const FitOptions& options) : residual_(y), options_(options) {}

    Sinusoid next_sinusoid() {
        const std::size_t stage = trace_.size() + 1;
        return with_stage_context(stage, ComponentKind::Sinusoid, [&] {
            const std::size_t n = residual_.size();
            const auto [peak, best] = refine_best(top_I1_grid_peaks(residual_, options_.candidates, options_.grid),
                                                  std::numbers::pi / static_cast<double>(n),
                                                  [&](double a) { return criterion_R1(residual_, a); });
            const double alpha = clamp_open(best.x, options_.edge_margin);
            const auto z = build_sinusoid(alpha, n);
            const Eigen::VectorXd mu = profile_linear(residual_, z);
            subtract(z, mu);
            trace_.push_back({stage, ComponentKind::Sinusoid, peak.location, alpha});
            return Sinusoid{mu(0), mu(1), alpha};
        });
    }

    Chirp next_chirp() {
        const std::size_t stage = trace_.size() + 1;
        return with_stage_context(stage, ComponentKind::Chirp, [&] {
            const std::size_t n = residual_.size();
            const double nn = static_cast<double>(n);
            const auto [peak, best] = refine_best(top_I2_grid_peaks(residual_, options_.candidates, options_.grid),
                                                  std::numbers::pi / (nn * nn),
                                                  [&](double b) { return criterion_R2(residual_, b); });
            const double beta = clamp_open(best.x, options_.edge_margin);
            const auto z = build_chirp(beta, n);
            const Eigen::VectorXd mu = profile_linear(residual_, z);
            subtract(z, mu);
            trace_.push_back({stage, ComponentKind::Chirp, peak.location, beta});
            return Chirp{mu(0), mu(1), beta};
        });
    }

    [[nodiscard]] const SignalSeries& residual() const noexcept { return residual_; }
    [[nodiscard]] const std::vector<StageRecord>& trace() const noexcept { return trace_; }

private:
    /// Brent within one grid step of each candidate; the smallest criterion
    /// wins, ties to the higher peak.
    template <typename Criterion>
    std::pair<GridPeak, ScalarMinimum> refine_best(const std::vector<GridPeak>& peaks, double step,
                                                   Criterion&& criterion) const {
        std::optional<std::pair<GridPeak, ScalarMinimum>> winner;
        for (const auto& peak : peaks) {
            const auto m = minimize_scalar(criterion, refine_bracket(peak.location, step, options_),
                                           options_.max_iterations);
            if (!winner || m.value < winner->second.value) winner.emplace(peak, m);
        }
        return *winner;
    }

    void subtract(const DesignMatrix& z, const Eigen::VectorXd& mu) {
        const Eigen::VectorXd fitted = z.entries * mu;
        for (std::size_t i = 0; i < residual_.size(); ++i) {
            residual_.samples[i] -= fitted(static_cast<Eigen::Index>(i));
        }
    }

    SignalSeries residual_;
    FitOptions options_;
    std::vector<StageRecord> trace_;
};

FitResult finish(MultiParams params, const SignalSeries& residual, std::size_t n, FitMethod method,
                 std::vector<StageRecord> trace) {
    FitResult fit;
    fit.sse = residual.energy();
    fit.n = n;
    fit.bic = bic(fit.sse, n, params.p(), params.q());
    fit.params = std::move(params);
    fit.method = method;
    fit.trace = std::move(trace);
    return fit;
}

} // namespace

FitResult fit_joint_one(const SignalSeries& y, const FitOptions& options) {
    const std::size_t n = y.size();
    require_samples(n, 1, 1);
    require_finite_energy(y);
    const double nn = static_cast<double>(n);
    const auto alpha0 = argmax_I1_grid(y, options.grid);
    const auto beta0 = argmax_I2_grid(y, options.grid);

    const Box box{refine_bracket(alpha0.location, std::numbers::pi / nn, options),
                  refine_bracket(beta0.location, std::numbers::pi / (nn * nn), options)};
    const Point2 start{std::clamp(alpha0.location, box.x.lo, box.x.hi), std::clamp(beta0.location, box.y.lo, box.y.hi)};
    const auto best = minimize_2d([&](double a, double b) { return criterion_R(y, a, b); }, start, box,
                                  10.0 * options.tolerance, options.max_iterations);

    const double alpha = clamp_open(best.point.x, options.edge_margin);
    const double beta = clamp_open(best.point.y, options.edge_margin);
    const auto z = build_full(alpha, beta, n);
    const Eigen::VectorXd mu = profile_linear(y, z);

    FitResult fit;
    fit.params = MultiParams({{mu(0), mu(1), alpha}}, {{mu(2), mu(3), beta}});
    fit.sse = projection_rss(y, z);
    fit.n = n;
    fit.bic = bic(fit.sse, n, 1, 1);
    fit.method = FitMethod::Joint;
    fit.trace = {{1, ComponentKind::Sinusoid, alpha0.location, alpha}, {2, ComponentKind::Chirp, beta0.location, beta}};
    return fit;
}

FitResult fit_sequential_one(const SignalSeries& y, const FitOptions& options) {
    return fit_sequential_multi(y, 1, 1, options);
}

FitResult fit_sequential_multi(const SignalSeries& y, std::size_t p, std::size_t q, const FitOptions& options) {
    const std::size_t n = y.size();
    if (p + q > 0) require_samples(n, p, q);
    require_finite_energy(y);
    SequentialExtractor extractor(y, options);
    MultiParams params;
    for (std::size_t j = 0; j < p; ++j) params.sinusoids.push_back(extractor.next_sinusoid());
    for (std::size_t k = 0; k < q; ++k) params.chirps.push_back(extractor.next_chirp());
    return finish(std::move(params), extractor.residual(), n, FitMethod::Sequential, extractor.trace());
}

OrderSelection select_order_bic(const SignalSeries& y, std::size_t p_max, std::size_t q_max,
                                const FitOptions& options) {
    const std::size_t n = y.size();
    if (p_max + q_max > 0) require_samples(n, p_max, q_max);
    require_finite_energy(y);

    // Sinusoid stages never depend on later stages: one extraction serves every p.
    SequentialExtractor sinusoid_pass(y, options);
    std::vector<SignalSeries> after_sinusoids{y};
    std::vector<Sinusoid> sinusoids;
    for (std::size_t j = 0; j < p_max; ++j) {
        sinusoids.push_back(sinusoid_pass.next_sinusoid());
        after_sinusoids.push_back(sinusoid_pass.residual());
    }

    OrderSelection out;
    out.bic_table.assign(p_max + 1, std::vector<double>(q_max + 1));
    double best_bic = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::size_t p = 0; p <= p_max; ++p) {
        // Chirp stages run on the residual after exactly p sinusoids.
        SequentialExtractor chirp_pass(after_sinusoids[p], options);
        std::vector<Chirp> chirps;
        for (std::size_t q = 0; q <= q_max; ++q) {
            if (q > 0) chirps.push_back(chirp_pass.next_chirp());
            const double value = bic(chirp_pass.residual().energy(), n, p, q);
            out.bic_table[p][q] = value;
            if (!have_best || value < best_bic) {
                have_best = true;
                best_bic = value;
                out.p = p;
                out.q = q;
                MultiParams params(std::vector<Sinusoid>(sinusoids.begin(), sinusoids.begin() + static_cast<std::ptrdiff_t>(p)),
                                   chirps);
                auto trace = std::vector<StageRecord>(sinusoid_pass.trace().begin(),
                                                      sinusoid_pass.trace().begin() + static_cast<std::ptrdiff_t>(p));
                for (auto record : chirp_pass.trace()) {
                    record.stage += p;
                    trace.push_back(record);
                }
                out.fit = finish(std::move(params), chirp_pass.residual(), n, FitMethod::Sequential, std::move(trace));
            }
        }
    }
    return out;
}

void attach_asymptotic_se(FitResult& fit, double sigma2, double c) {
    fit.asym_se.clear();
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& s : fit.params.sinusoids) {
        if (s.power() > 0.0) {
            const auto report = asym_variances(MultiParams({s}, {}), sigma2, c, fit.n);
            const auto& se = report.sinusoids.front().standard_error;
            fit.asym_se.insert(fit.asym_se.end(), se.begin(), se.end());
        } else {
            fit.asym_se.insert(fit.asym_se.end(), {nan, nan, nan});
        }
    }
    for (const auto& ch : fit.params.chirps) {
        if (ch.power() > 0.0) {
            const auto report = asym_variances(MultiParams({}, {ch}), sigma2, c, fit.n);
            const auto& se = report.chirps.front().standard_error;
            fit.asym_se.insert(fit.asym_se.end(), se.begin(), se.end());
        } else {
            fit.asym_se.insert(fit.asym_se.end(), {nan, nan, nan});
        }
    }
}

} // namespace chirplike
