#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chirplike {

/// A cos(frequency * t) + B sin(frequency * t), frequency in radians/sample.
struct Sinusoid {
    double a{};
    double b{};
    double frequency{};

    [[nodiscard]] double power() const noexcept { return a * a + b * b; }
    bool operator==(const Sinusoid&) const = default;
};

/// C cos(rate * t^2) + D sin(rate * t^2), rate in radians/sample^2.
struct Chirp {
    double c{};
    double d{};
    double rate{};

    [[nodiscard]] double power() const noexcept { return c * c + d * d; }
    bool operator==(const Chirp&) const = default;
};

/// The six parameters (A, B, alpha, C, D, beta) of the one-component model.
struct ChirpLikeParams {
    Sinusoid sinusoid;
    Chirp chirp;

    bool operator==(const ChirpLikeParams&) const = default;
};

/// p sinusoids followed by q quadratic-phase terms.
struct MultiParams {
    std::vector<Sinusoid> sinusoids;
    std::vector<Chirp> chirps;

    MultiParams() = default;
    MultiParams(std::vector<Sinusoid> s, std::vector<Chirp> c)
        : sinusoids(std::move(s)), chirps(std::move(c)) {}
    explicit MultiParams(const ChirpLikeParams& one) : sinusoids{one.sinusoid}, chirps{one.chirp} {}

    [[nodiscard]] std::size_t p() const noexcept { return sinusoids.size(); }
    [[nodiscard]] std::size_t q() const noexcept { return chirps.size(); }
    [[nodiscard]] std::size_t parameter_count() const noexcept { return 3 * (p() + q()); }

    /// Flattened (A1, B1, alpha1, ..., Cq, Dq, betaq).
    [[nodiscard]] std::vector<double> flatten() const;
    /// Names matching flatten(): "A1", "B1", "alpha1", ..., "betaq".
    [[nodiscard]] std::vector<std::string> parameter_names() const;
    /// Inverse of flatten() for the given component counts.
    static MultiParams unflatten(std::span<const double> values, std::size_t p, std::size_t q);

    /// The first p sinusoids and first q chirps.
    [[nodiscard]] MultiParams truncated(std::size_t p, std::size_t q) const;

    bool operator==(const MultiParams&) const = default;
};

/// Throws InvalidInput unless every frequency and rate lies in (0, pi).
void check_frequency_ranges(const MultiParams& params);

/// Violations of the identifiability conditions on a "true" parameter set:
/// distinct frequencies, distinct rates, strictly decreasing positive powers
/// within each family. Empty when the set is well posed.
[[nodiscard]] std::vector<std::string> identifiability_issues(const MultiParams& params);

/// y(1), ..., y(n). samples[i] holds y(i + 1).
struct SignalSeries {
    std::vector<double> samples;

    SignalSeries() = default;
    explicit SignalSeries(std::vector<double> values) : samples(std::move(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
    /// Value at time t, 1 <= t <= n.
    [[nodiscard]] double at_time(std::size_t t) const { return samples.at(t - 1); }
    [[nodiscard]] std::span<const double> view() const noexcept { return samples; }
    [[nodiscard]] double energy() const noexcept;

    bool operator==(const SignalSeries&) const = default;
};

/// One coefficient a(lag) of the linear process X(t) = sum_j a(j) e(t - j).
struct LagCoefficient {
    int lag{};
    double value{};

    bool operator==(const LagCoefficient&) const = default;
};

/// Stationary linear-process noise with i.i.d. Gaussian innovations.
struct NoiseSpec {
    std::vector<LagCoefficient> coefficients;
    double sigma2{};

    static NoiseSpec iid(double sigma2);
    /// X(t) = e(t) + rho e(t - 1).
    static NoiseSpec moving_average(double sigma2, double rho = 0.5);

    [[nodiscard]] int min_lag() const noexcept;
    [[nodiscard]] int max_lag() const noexcept;

    bool operator==(const NoiseSpec&) const = default;
};

/// Phase rate * t^2 reduced into [0, 2 pi).
[[nodiscard]] double quadratic_phase(double rate, std::size_t t) noexcept;

/// Noise-free signal plus optional linear-process noise; t runs over 1..n.
[[nodiscard]] SignalSeries synthesize(const MultiParams& params, std::size_t n,
                                      const std::optional<NoiseSpec>& noise = std::nullopt,
                                      std::uint64_t seed = 0);

/// X(1..n) drawn from the linear process. Innovations before t = 1 are drawn
/// so that every X(t) has its full support.
[[nodiscard]] SignalSeries gen_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed);

/// Sum of the fitted components evaluated at t = 1..n (no range checks).
[[nodiscard]] std::vector<double> evaluate(const MultiParams& params, std::size_t n);

} // namespace chirplike
