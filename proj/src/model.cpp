#include "chirplike/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "chirplike/errors.hpp"

namespace chirplike {

std::vector<double> MultiParams::flatten() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (const auto& s : sinusoids) {
        out.insert(out.end(), {s.a, s.b, s.frequency});
    }
    for (const auto& c : chirps) {
        out.insert(out.end(), {c.c, c.d, c.rate});
    }
    return out;
}

std::vector<std::string> MultiParams::parameter_names() const {
    std::vector<std::string> names;
    names.reserve(parameter_count());
    for (std::size_t j = 1; j <= p(); ++j) {
        const auto idx = std::to_string(j);
        names.insert(names.end(), {"A" + idx, "B" + idx, "alpha" + idx});
    }
    for (std::size_t k = 1; k <= q(); ++k) {
        const auto idx = std::to_string(k);
        names.insert(names.end(), {"C" + idx, "D" + idx, "beta" + idx});
    }
    return names;
}

MultiParams MultiParams::unflatten(std::span<const double> values, std::size_t p, std::size_t q) {
    if (values.size() != 3 * (p + q)) {
        throw InvalidInput("expected " + std::to_string(3 * (p + q)) + " parameter values, got " +
                           std::to_string(values.size()));
    }
    MultiParams out;
    std::size_t i = 0;
    for (std::size_t j = 0; j < p; ++j, i += 3) {
        out.sinusoids.push_back({values[i], values[i + 1], values[i + 2]});
    }
    for (std::size_t k = 0; k < q; ++k, i += 3) {
        out.chirps.push_back({values[i], values[i + 1], values[i + 2]});
    }
    return out;
}

MultiParams MultiParams::truncated(std::size_t p_keep, std::size_t q_keep) const {
    if (p_keep > p() || q_keep > q()) {
        throw InvalidInput("truncation beyond the fitted component counts");
    }
    return {std::vector<Sinusoid>(sinusoids.begin(), sinusoids.begin() + static_cast<std::ptrdiff_t>(p_keep)),
            std::vector<Chirp>(chirps.begin(), chirps.begin() + static_cast<std::ptrdiff_t>(q_keep))};
}

namespace {

bool in_open_range(double x) { return x > 0.0 && x < std::numbers::pi; }

} // namespace

void check_frequency_ranges(const MultiParams& params) {
    for (std::size_t j = 0; j < params.p(); ++j) {
        if (!in_open_range(params.sinusoids[j].frequency)) {
            throw InvalidInput("sinusoid " + std::to_string(j + 1) + " frequency must lie in (0, pi)");
        }
    }
    for (std::size_t k = 0; k < params.q(); ++k) {
        if (!in_open_range(params.chirps[k].rate)) {
            throw InvalidInput("chirp " + std::to_string(k + 1) + " frequency rate must lie in (0, pi)");
        }
    }
}

std::vector<std::string> identifiability_issues(const MultiParams& params) {
    std::vector<std::string> issues;
    std::set<double> seen;
    for (const auto& s : params.sinusoids) {
        if (!in_open_range(s.frequency)) issues.push_back("sinusoid frequency outside (0, pi)");
        if (!seen.insert(s.frequency).second) issues.push_back("repeated sinusoid frequency");
    }
    seen.clear();
    for (const auto& c : params.chirps) {
        if (!in_open_range(c.rate)) issues.push_back("chirp rate outside (0, pi)");
        if (!seen.insert(c.rate).second) issues.push_back("repeated chirp rate");
    }
    for (std::size_t j = 0; j < params.p(); ++j) {
        const double pw = params.sinusoids[j].power();
        if (pw <= 0.0) issues.push_back("sinusoid " + std::to_string(j + 1) + " has zero power");
        if (j > 0 && pw >= params.sinusoids[j - 1].power()) {
            issues.push_back("sinusoid powers not strictly decreasing at " + std::to_string(j + 1));
        }
    }
    for (std::size_t k = 0; k < params.q(); ++k) {
        const double pw = params.chirps[k].power();
        if (pw <= 0.0) issues.push_back("chirp " + std::to_string(k + 1) + " has zero power");
        if (k > 0 && pw >= params.chirps[k - 1].power()) {
            issues.push_back("chirp powers not strictly decreasing at " + std::to_string(k + 1));
        }
    }
    return issues;
}

double SignalSeries::energy() const noexcept {
    double sum = 0.0;
    for (double y : samples) sum += y * y;
    return sum;
}

NoiseSpec NoiseSpec::iid(double sigma2) { return {{{0, 1.0}}, sigma2}; }

NoiseSpec NoiseSpec::moving_average(double sigma2, double rho) { return {{{0, 1.0}, {1, rho}}, sigma2}; }

int NoiseSpec::min_lag() const noexcept {
    int lo = 0;
    for (const auto& c : coefficients) lo = std::min(lo, c.lag);
    return lo;
}

int NoiseSpec::max_lag() const noexcept {
    int hi = 0;
    for (const auto& c : coefficients) hi = std::max(hi, c.lag);
    return hi;
}

double quadratic_phase(double rate, std::size_t t) noexcept {
    // rate * t^2 reaches ~1e5 radians at n ~ 1e3; reduce in extended precision.
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double tt = static_cast<long double>(t);
    long double phase = std::fmod(static_cast<long double>(rate) * tt * tt, two_pi);
    if (phase < 0) phase += two_pi;
    return static_cast<double>(phase);
}

std::vector<double> evaluate(const MultiParams& params, std::size_t n) {
    std::vector<double> y(n, 0.0);
    for (const auto& s : params.sinusoids) {
        for (std::size_t t = 1; t <= n; ++t) {
            const double phase = s.frequency * static_cast<double>(t);
            y[t - 1] += s.a * std::cos(phase) + s.b * std::sin(phase);
        }
    }
    for (const auto& c : params.chirps) {
        for (std::size_t t = 1; t <= n; ++t) {
            const double phase = quadratic_phase(c.rate, t);
            y[t - 1] += c.c * std::cos(phase) + c.d * std::sin(phase);
        }
    }
    return y;
}

SignalSeries gen_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
    if (!(spec.sigma2 >= 0.0)) {
        throw InvalidInput("noise variance must be non-negative");
    }
    std::vector<double> x(n, 0.0);
    if (spec.sigma2 == 0.0 || n == 0) {
        return SignalSeries(std::move(x));
    }
    // X(t) needs e(t - j) for every lag j: e indices run from 1 - max_lag to n - min_lag.
    const int lo = spec.min_lag();
    const int hi = spec.max_lag();
    const std::size_t count = n + static_cast<std::size_t>(hi - lo);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(spec.sigma2));
    std::vector<double> e(count);
    for (double& v : e) v = normal(rng);

    // e(s) lives at e[s - (1 - hi)].
    for (std::size_t t = 1; t <= n; ++t) {
        double acc = 0.0;
        for (const auto& c : spec.coefficients) {
            const auto s = static_cast<std::ptrdiff_t>(t) - c.lag;
            acc += c.value * e[static_cast<std::size_t>(s - (1 - hi))];
        }
        x[t - 1] = acc;
    }
    return SignalSeries(std::move(x));
}

SignalSeries synthesize(const MultiParams& params, std::size_t n, const std::optional<NoiseSpec>& noise,
                        std::uint64_t seed) {
    if (n < 1) {
        throw InvalidInput("sample count must be at least 1");
    }
    check_frequency_ranges(params);
    auto y = evaluate(params, n);
    if (noise) {
        const auto x = gen_noise(*noise, n, seed);
        for (std::size_t i = 0; i < n; ++i) y[i] += x.samples[i];
    }
    return SignalSeries(std::move(y));
}

} // namespace chirplike
