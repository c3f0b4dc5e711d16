#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "chirplike/designmat.hpp"
#include "chirplike/errors.hpp"
#include "oracles.hpp"

using namespace chirplike;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SignalSeries pure_sinusoid(double a, double b, double alpha, std::size_t n) {
    return synthesize(MultiParams({{a, b, alpha}}, {}), n);
}

SignalSeries pure_chirp(double c, double d, double beta, std::size_t n) {
    return synthesize(MultiParams({}, {{c, d, beta}}), n);
}

} // namespace

TEST_CASE("build_full: zero angles give a constant row", "[designmat]") {
    const auto z = build_full(0.0, 0.0, 1);
    REQUIRE(z.rows() == 1);
    REQUIRE(z.cols() == 4);
    CHECK(z.entries(0, 0) == 1.0);
    CHECK(z.entries(0, 1) == 0.0);
    CHECK(z.entries(0, 2) == 1.0);
    CHECK(z.entries(0, 3) == 0.0);
}

TEST_CASE("build_full: quarter-turn rows", "[designmat]") {
    const double h = std::numbers::pi / 2;
    const auto z = build_full(h, h, 2);
    const double expected[2][4] = {{0, 1, 0, 1}, {-1, 0, 1, 0}};
    // t = 1: (cos h, sin h, cos h, sin h); t = 2: (cos pi, sin pi, cos 2pi, sin 2pi).
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) CHECK_THAT(z.entries(i, j), WithinAbs(expected[i][j], 1e-15));
    }
    CHECK(z.column_kinds ==
          std::vector<ColumnKind>{ColumnKind::CosLinear, ColumnKind::SinLinear, ColumnKind::CosQuadratic,
                                  ColumnKind::SinQuadratic});
}

TEST_CASE("build_full: rejects an empty design", "[designmat]") {
    CHECK_THROWS_AS(build_full(1.0, 0.1, 0), InvalidInput);
}

TEST_CASE("build_multi: entries bounded and columns laid out per component", "[designmat]") {
    const double freqs[] = {0.4, 2.2};
    const double rates[] = {0.05};
    const auto z = build_multi(freqs, rates, 300);
    REQUIRE(z.cols() == 6);
    CHECK(z.entries.cwiseAbs().maxCoeff() <= 1.0);
    const auto ref = oracle::cos_quadratic(0.05, 300);
    for (int t = 0; t < 300; ++t) CHECK_THAT(z.entries(t, 4), WithinAbs(static_cast<double>(ref[t]), 1e-10));
}

TEST_CASE("build_full: squared column norms close to n/2", "[designmat]") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.1, std::numbers::pi - 0.1);
    for (std::size_t n : {200u, 1000u, 5000u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto z = build_full(u(rng), u(rng), n);
            const double slack = std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(n));
            for (int j = 0; j < 4; ++j) {
                CHECK(std::fabs(z.entries.col(j).squaredNorm() - static_cast<double>(n) / 2) <= slack);
            }
        }
    }
}

TEST_CASE("build_full: scaled Gram matrix approaches the identity", "[designmat]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.1, std::numbers::pi - 0.1);
    const std::size_t n = 10000;
    for (int rep = 0; rep < 5; ++rep) {
        const auto z = build_full(u(rng), u(rng), n);
        const Eigen::MatrixXd g = (2.0 / n) * z.entries.transpose() * z.entries;
        CHECK((g - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 0.05);
    }
}

TEST_CASE("profile_linear: zero response gives zero amplitudes", "[designmat]") {
    const SignalSeries y(std::vector<double>(50, 0.0));
    const auto mu = profile_linear(y, build_full(1.5, 0.1, 50));
    CHECK(mu.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("profile_linear: recovers generating amplitudes at the true nonlinear parameters", "[designmat]") {
    const auto y = synthesize(MultiParams({{3, -2, 1.5}}, {{1, 4, 0.1}}), 200);
    const auto mu = profile_linear(y, build_full(1.5, 0.1, 200));
    const double truth[] = {3, -2, 1, 4};
    for (int i = 0; i < 4; ++i) CHECK_THAT(mu[i], WithinRel(truth[i], 1e-8));
}

TEST_CASE("profile_linear: one-component simulation design is recovered noise-free", "[designmat]") {
    const auto y = synthesize(MultiParams({{10, 10, 1.5}}, {{10, 10, 0.1}}), 100);
    const auto mu = profile_linear(y, build_full(1.5, 0.1, 100));
    for (int i = 0; i < 4; ++i) CHECK_THAT(mu[i], WithinRel(10.0, 1e-9));
}

TEST_CASE("profile_linear: agrees with long double normal equations", "[designmat]") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(150);
    for (double& x : v) x = g(rng);
    const SignalSeries y(v);
    const auto mu = profile_linear(y, build_full(0.9, 0.23, 150));
    const auto ref = oracle::normal_equation_solve(
        v, {oracle::cos_linear(0.9, 150), oracle::sin_linear(0.9, 150), oracle::cos_quadratic(0.23, 150),
            oracle::sin_quadratic(0.23, 150)});
    for (int i = 0; i < 4; ++i) CHECK_THAT(mu[i], WithinAbs(static_cast<double>(ref[i]), 1e-10));
}

TEST_CASE("profile_linear: collinear columns are rejected as degenerate", "[designmat]") {
    const SignalSeries y(std::vector<double>(20, 1.0));
    // alpha = beta = 0: cosine columns coincide and the sine columns vanish.
    CHECK_THROWS_AS(profile_linear(y, build_full(0.0, 0.0, 20)), DegenerateDesign);
    // alpha = pi: sin(pi t) is identically (numerically) zero.
    CHECK_THROWS_AS(profile_linear(y, build_sinusoid(std::numbers::pi, 20)), DegenerateDesign);
    // Fewer rows than columns.
    CHECK_THROWS_AS(profile_linear(SignalSeries({1.0, 2.0, 3.0}), build_full(0.5, 0.2, 3)), DegenerateDesign);
}

TEST_CASE("criterion_R: zero response and column-space membership", "[designmat]") {
    CHECK(criterion_R(SignalSeries(std::vector<double>(64, 0.0)), 1.0, 0.3) == 0.0);
    const auto y = synthesize(MultiParams({{3, -2, 1.5}}, {{1, 4, 0.1}}), 200);
    CHECK(criterion_R(y, 1.5, 0.1) <= 1e-12 * y.energy());
}

TEST_CASE("criterion_R: far from the truth most energy stays in the residual", "[designmat]") {
    const auto y = synthesize(MultiParams({{3, -2, 1.5}}, {{1, 4, 0.1}}), 200);
    CHECK(criterion_R(y, 2.0, 0.6) >= 0.5 * y.energy());
}

TEST_CASE("criterion_R: agrees with the long double projection oracle", "[designmat]") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.2, 2.9);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 60 + 10 * rep;
        std::vector<double> v(n);
        for (double& x : v) x = g(rng);
        const double a = u(rng), b = u(rng);
        const long double ref = oracle::rss(v, {oracle::cos_linear(a, n), oracle::sin_linear(a, n),
                                                oracle::cos_quadratic(b, n), oracle::sin_quadratic(b, n)});
        const double r = criterion_R(SignalSeries(v), a, b);
        CHECK_THAT(r, WithinRel(static_cast<double>(ref), 1e-10));
        CHECK(r >= 0.0);
        CHECK(r <= SignalSeries(v).energy());
    }
}

TEST_CASE("criterion_R equals the full criterion at the profiled amplitudes", "[designmat]") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.2, 2.9);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 120;
        std::vector<double> v(n);
        for (double& x : v) x = 3.0 * g(rng);
        const SignalSeries y(v);
        const double a = u(rng), b = u(rng);
        const auto mu = profile_linear(y, build_full(a, b, n));
        const MultiParams at({{mu[0], mu[1], a}}, {{mu[2], mu[3], b}});
        CHECK_THAT(criterion_R(y, a, b), WithinRel(full_criterion_Q(y, at), 1e-10));
    }
}

TEST_CASE("criterion_R never exceeds the single-block criteria", "[designmat]") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.2, 2.9);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> v(90);
        for (double& x : v) x = g(rng);
        const SignalSeries y(v);
        const double a = u(rng), b = u(rng);
        const double r = criterion_R(y, a, b);
        CHECK(r <= criterion_R1(y, a) * (1 + 1e-12));
        CHECK(r <= criterion_R2(y, b) * (1 + 1e-12));
    }
}

TEST_CASE("criterion_R1: zero, exact projection, chirp orthogonality", "[designmat]") {
    CHECK(criterion_R1(SignalSeries(std::vector<double>(40, 0.0)), 0.7) == 0.0);
    const auto s = pure_sinusoid(2.0, -1.0, 0.83, 300);
    CHECK(criterion_R1(s, 0.83) <= 1e-12 * s.energy());

    const std::size_t n = 500;
    const auto c = pure_chirp(5.0, 3.0, 0.1, n);
    for (std::size_t j = 1; j < n; ++j) {
        const double alpha = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        REQUIRE(criterion_R1(c, alpha) >= 0.9 * c.energy());
    }
}

TEST_CASE("criterion_R2: zero, exact projection, sinusoid orthogonality", "[designmat]") {
    CHECK(criterion_R2(SignalSeries(std::vector<double>(40, 0.0)), 0.7) == 0.0);
    const auto c = pure_chirp(2.0, -1.0, 0.031, 300);
    CHECK(criterion_R2(c, 0.031) <= 1e-12 * c.energy());

    const std::size_t n = 500;
    const auto s = pure_sinusoid(5.0, 3.0, 1.5, n);
    // Every point of the rate grid pi k / n^2 would take n^2 evaluations; a
    // stride of 97 still sweeps the whole of (0, pi).
    for (std::size_t k = 1; k < n * n; k += 97) {
        const double beta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n * n);
        REQUIRE(criterion_R2(s, beta) >= 0.9 * s.energy());
    }
}
