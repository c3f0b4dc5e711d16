#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "chirplike/errors.hpp"
#include "chirplike/model.hpp"

using namespace chirplike;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MultiParams one_component() { return MultiParams({{10, 10, 1.5}}, {{10, 10, 0.1}}); }

double sample_variance(const std::vector<double>& x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += (v - mean) * (v - mean);
    return s / static_cast<double>(x.size());
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
}

} // namespace

TEST_CASE("synthesize: quarter-turn sinusoid hits exact trig values", "[model]") {
    const MultiParams p({{1, 0, std::numbers::pi / 2}}, {});
    const auto y = synthesize(p, 4);
    REQUIRE(y.size() == 4);
    CHECK_THAT(y.at_time(1), WithinAbs(0.0, 1e-15));
    CHECK_THAT(y.at_time(2), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(y.at_time(3), WithinAbs(0.0, 1e-15));
    CHECK_THAT(y.at_time(4), WithinAbs(1.0, 1e-15));
}

TEST_CASE("synthesize: empty model with zero-variance noise is all zeros", "[model]") {
    const auto y = synthesize(MultiParams{}, 25, NoiseSpec::iid(0.0), 3);
    REQUIRE(y.size() == 25);
    for (double v : y.samples) CHECK(v == 0.0);
}

TEST_CASE("synthesize: one-component design matches the model sum", "[model]") {
    const auto y = synthesize(one_component(), 100, NoiseSpec::iid(0.1), 11);
    const auto clean = synthesize(one_component(), 100);
    REQUIRE(y.size() == 100);
    for (std::size_t t = 1; t <= 100; ++t) {
        const long double tt = t;
        const long double expected = 10 * std::cos(1.5L * tt) + 10 * std::sin(1.5L * tt) +
                                     10 * std::cos(0.1L * tt * tt) + 10 * std::sin(0.1L * tt * tt);
        CHECK_THAT(clean.at_time(t), WithinAbs(static_cast<double>(expected), 1e-11));
    }
    const auto noise = gen_noise(NoiseSpec::iid(0.1), 100, 11);
    for (std::size_t t = 1; t <= 100; ++t) {
        CHECK_THAT(y.at_time(t), WithinAbs(clean.at_time(t) + noise.at_time(t), 1e-12));
    }
}

TEST_CASE("synthesize: rejects bad inputs", "[model]") {
    CHECK_THROWS_AS(synthesize(one_component(), 0), InvalidInput);
    CHECK_THROWS_AS(synthesize(MultiParams({{1, 0, 0.0}}, {}), 10), InvalidInput);
    CHECK_THROWS_AS(synthesize(MultiParams({{1, 0, std::numbers::pi}}, {}), 10), InvalidInput);
    CHECK_THROWS_AS(synthesize(MultiParams({}, {{1, 0, -0.1}}), 10), InvalidInput);
    CHECK_THROWS_AS(synthesize(MultiParams({}, {{1, 0, 4.0}}), 10), InvalidInput);
}

TEST_CASE("synthesize: linear in the amplitudes", "[model]") {
    const auto base = synthesize(one_component(), 300);
    MultiParams scaled = one_component();
    const double s = -2.75;
    for (auto& c : scaled.sinusoids) c.a *= s, c.b *= s;
    for (auto& c : scaled.chirps) c.c *= s, c.d *= s;
    const auto y = synthesize(scaled, 300);
    for (std::size_t i = 0; i < 300; ++i) CHECK_THAT(y.samples[i], WithinAbs(s * base.samples[i], 1e-12));
}

TEST_CASE("synthesize: sinusoid values repeat with the phase lattice", "[model]") {
    // alpha = 2 pi / 7: alpha t mod 2 pi repeats every 7 samples.
    const MultiParams p({{1.3, -0.4, 2 * std::numbers::pi / 7}}, {});
    const auto y = synthesize(p, 70);
    for (std::size_t t = 1; t + 7 <= 70; ++t) CHECK_THAT(y.at_time(t + 7), WithinAbs(y.at_time(t), 1e-12));
}

TEST_CASE("quadratic_phase: reduced angle agrees with long double evaluation", "[model]") {
    for (double rate : {0.1, 0.7123, 3.1}) {
        for (std::size_t t : {1u, 17u, 999u, 4000u}) {
            const double phase = quadratic_phase(rate, t);
            CHECK(phase >= 0.0);
            CHECK(phase < 2 * std::numbers::pi);
            const long double tt = t;
            const long double ref = static_cast<long double>(rate) * tt * tt;
            CHECK_THAT(std::cos(phase), WithinAbs(static_cast<double>(std::cos(ref)), 1e-9));
            CHECK_THAT(std::sin(phase), WithinAbs(static_cast<double>(std::sin(ref)), 1e-9));
        }
    }
}

TEST_CASE("gen_noise: zero variance gives zeros", "[model]") {
    const auto x = gen_noise(NoiseSpec::iid(0.0), 50, 9);
    for (double v : x.samples) CHECK(v == 0.0);
}

TEST_CASE("gen_noise: iid sample variance near sigma^2", "[model]") {
    const auto x = gen_noise(NoiseSpec::iid(1.0), 100000, 1234);
    CHECK_THAT(sample_variance(x.samples), WithinRel(1.0, 0.05));
}

TEST_CASE("gen_noise: MA(1) sample variance near sigma^2 (1 + rho^2)", "[model]") {
    const auto x = gen_noise(NoiseSpec::moving_average(1.0, 0.5), 100000, 1234);
    CHECK_THAT(sample_variance(x.samples), WithinRel(1.25, 0.05));
}

TEST_CASE("gen_noise: MA(1) has the lag-one autocovariance rho sigma^2", "[model]") {
    const auto x = gen_noise(NoiseSpec::moving_average(1.0, 0.5), 100000, 77);
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += x.samples[i] * x.samples[i - 1];
    CHECK_THAT(s / static_cast<double>(x.size() - 1), WithinAbs(0.5, 0.02));
}

TEST_CASE("gen_noise: deterministic per seed, decorrelated across seeds", "[model]") {
    const auto a = gen_noise(NoiseSpec::iid(1.0), 100000, 5);
    const auto b = gen_noise(NoiseSpec::iid(1.0), 100000, 5);
    const auto c = gen_noise(NoiseSpec::iid(1.0), 100000, 6);
    CHECK(a == b);
    CHECK(std::fabs(correlation(a.samples, c.samples)) < 0.05);
}

TEST_CASE("gen_noise: rejects negative variance", "[model]") {
    CHECK_THROWS_AS(gen_noise(NoiseSpec::iid(-1.0), 10, 1), InvalidInput);
}

TEST_CASE("gen_noise: two-sided lags are fully formed", "[model]") {
    // X(t) = e(t + 1) + e(t - 1): the first and last samples need innovations
    // outside 1..n, and both must be drawn.
    NoiseSpec spec{{{-1, 1.0}, {1, 1.0}}, 1.0};
    const auto x = gen_noise(spec, 100000, 3);
    CHECK_THAT(sample_variance(x.samples), WithinRel(2.0, 0.05));
}

TEST_CASE("MultiParams: flatten, names and unflatten round-trip", "[model]") {
    const MultiParams p({{1, 2, 0.3}, {4, 5, 0.6}}, {{7, 8, 0.09}});
    const auto flat = p.flatten();
    REQUIRE(flat == std::vector<double>{1, 2, 0.3, 4, 5, 0.6, 7, 8, 0.09});
    REQUIRE(p.parameter_names() ==
            std::vector<std::string>{"A1", "B1", "alpha1", "A2", "B2", "alpha2", "C1", "D1", "beta1"});
    CHECK(MultiParams::unflatten(flat, 2, 1) == p);
    CHECK(p.truncated(1, 0) == MultiParams({{1, 2, 0.3}}, {}));
    CHECK(p.parameter_count() == 9);
}

TEST_CASE("identifiability_issues flags the assumption violations", "[model]") {
    CHECK(identifiability_issues(MultiParams({{10, 10, 1.5}, {8, 8, 2.5}}, {{10, 10, 0.1}, {8, 8, 0.2}})).empty());
    CHECK_FALSE(identifiability_issues(MultiParams({{10, 10, 1.5}, {8, 8, 1.5}}, {})).empty());
    CHECK_FALSE(identifiability_issues(MultiParams({{8, 8, 1.5}, {10, 10, 2.5}}, {})).empty());
    CHECK_FALSE(identifiability_issues(MultiParams({}, {{0, 0, 0.1}})).empty());
    CHECK_FALSE(identifiability_issues(MultiParams({}, {{1, 1, 0.1}, {1, 1, 0.2}})).empty());
}
