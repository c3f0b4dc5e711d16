#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>

#include "chirplike/asymptotics.hpp"
#include "chirplike/errors.hpp"

using namespace chirplike;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using Mat3 = std::array<std::array<long double, 3>, 3>;

// Cofactor inverse, independent of the library's Cholesky path.
Mat3 adjugate_inverse(const Eigen::Matrix3d& m) {
    Mat3 a{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
    const auto cof = [&](int r, int c) {
        const int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
        return a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    };
    const long double det = a[0][0] * cof(0, 0) + a[0][1] * cof(0, 1) + a[0][2] * cof(0, 2);
    Mat3 inv{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv[i][j] = cof(j, i) / det;
    return inv;
}

const MultiParams kOne({{10, 10, 1.5}}, {{10, 10, 0.1}});
const MultiParams kTwo({{10, 10, 1.5}, {8, 8, 2.5}}, {{10, 10, 0.1}, {8, 8, 0.2}});

} // namespace

TEST_CASE("c_constant", "[asymptotics]") {
    CHECK(c_constant(NoiseSpec::iid(1.0)) == 1.0);
    CHECK(c_constant(NoiseSpec::moving_average(1.0, 0.5)) == 1.25);
    CHECK(c_constant(NoiseSpec{{}, 1.0}) == 0.0);
}

TEST_CASE("sigma_block_sin: entries", "[asymptotics]") {
    CHECK_THAT(sigma_block_sin(10, 10)(2, 2), WithinRel(200.0 / 6, 1e-15));
    const auto s = sigma_block_sin(1, 0);
    const double expected[3][3] = {{0.5, 0, 0}, {0, 0.5, -0.25}, {0, -0.25, 1.0 / 6}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s(i, j) == expected[i][j]);
    CHECK_THROWS_AS(sigma_block_sin(0, 0), InvalidInput);
}

TEST_CASE("sigma_block_chirp: entries", "[asymptotics]") {
    CHECK_THAT(sigma_block_chirp(10, 10)(2, 2), WithinRel(20.0, 1e-15));
    const auto s = sigma_block_chirp(1, 0);
    const double expected[3][3] = {{0.5, 0, 0}, {0, 0.5, -1.0 / 6}, {0, -1.0 / 6, 0.1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(s(i, j) == expected[i][j]);
    CHECK_THROWS_AS(sigma_block_chirp(0, 0), InvalidInput);
}

TEST_CASE("invert_block: matches the cofactor inverse and closed forms", "[asymptotics]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-20, 20);
    for (int rep = 0; rep < 100; ++rep) {
        const double a = u(rng), b = u(rng);
        const double power = a * a + b * b;
        const auto s_inv = invert_block(sigma_block_sin(a, b));
        const auto s_ref = adjugate_inverse(sigma_block_sin(a, b));
        const auto c_inv = invert_block(sigma_block_chirp(a, b));
        const auto c_ref = adjugate_inverse(sigma_block_chirp(a, b));
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                CHECK_THAT(s_inv(i, j), WithinAbs(static_cast<double>(s_ref[i][j]), 1e-10 * (1 + std::fabs(s_ref[i][j]))));
                CHECK_THAT(c_inv(i, j), WithinAbs(static_cast<double>(c_ref[i][j]), 1e-10 * (1 + std::fabs(c_ref[i][j]))));
            }
        }
        CHECK_THAT(s_inv(2, 2), WithinRel(24.0 / power, 1e-10));
        CHECK_THAT(c_inv(2, 2), WithinRel(45.0 / (2 * power), 1e-10));
        CHECK_THAT(c_inv(0, 2), WithinRel(-15.0 * b / (2 * power), 1e-10));
        CHECK_THAT(c_inv(1, 2), WithinRel(15.0 * a / (2 * power), 1e-10));
    }
}

TEST_CASE("invert_block: rejects an indefinite matrix", "[asymptotics]") {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(2, 2) = -1;
    CHECK_THROWS_AS(invert_block(m), NumericalFailure);
}

TEST_CASE("asym_variances: one-component iid and MA(1) at n = 100", "[asymptotics]") {
    const auto iid = asym_variances(kOne, 0.1, 1.0, 100).variances();
    REQUIRE(iid.size() == 6);
    CHECK_THAT(iid[2], WithinRel(1.20e-8, 0.01));
    CHECK_THAT(iid[5], WithinRel(1.12e-12, 0.01));
    const auto ma = asym_variances(kOne, 0.1, 1.25, 100).variances();
    CHECK_THAT(ma[2], WithinRel(1.50e-8, 0.01));
    CHECK_THAT(ma[5], WithinRel(1.41e-12, 0.01));
}

TEST_CASE("asym_variances: two-component design at n = 100", "[asymptotics]") {
    const auto v = asym_variances(kTwo, 0.1, 1.0, 100).variances();
    REQUIRE(v.size() == 12);
    CHECK_THAT(v[2], WithinRel(1.20e-8, 0.01));
    CHECK_THAT(v[5], WithinRel(1.88e-8, 0.01));
    CHECK_THAT(v[8], WithinRel(1.12e-12, 0.01));
    CHECK_THAT(v[11], WithinRel(1.76e-12, 0.01));
}

TEST_CASE("asym_variances: amplitude variances and standard errors", "[asymptotics]") {
    const auto r = asym_variances(kOne, 0.5, 1.0, 200);
    const auto v = r.variances();
    const auto se = r.standard_errors();
    const auto inv = adjugate_inverse(sigma_block_sin(10, 10));
    CHECK_THAT(v[0], WithinRel(static_cast<double>(0.5L * inv[0][0] / 200), 1e-12));
    CHECK_THAT(v[1], WithinRel(static_cast<double>(0.5L * inv[1][1] / 200), 1e-12));
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(v[i] >= 0);
        CHECK_THAT(se[i], WithinRel(std::sqrt(v[i]), 1e-15));
    }
}

TEST_CASE("asym_variances: block-diagonal covariance with matching diagonal", "[asymptotics]") {
    const auto r = asym_variances(kTwo, 0.1, 1.0, 150);
    const auto cov = r.covariance();
    const auto v = r.variances();
    REQUIRE(cov.rows() == 12);
    for (int i = 0; i < 12; ++i) {
        CHECK_THAT(cov(i, i), WithinRel(v[static_cast<std::size_t>(i)], 1e-12));
        for (int j = 0; j < 12; ++j) {
            if (i / 3 != j / 3) CHECK(cov(i, j) == 0.0);
            CHECK(cov(i, j) == cov(j, i));
        }
    }
    for (const auto* family : {&r.sinusoids, &r.chirps}) {
        for (const auto& comp : *family) {
            Eigen::LLT<Eigen::Matrix3d> llt(comp.limit_covariance);
            CHECK(llt.info() == Eigen::Success);
        }
    }
}

TEST_CASE("asym_variances: frequency variance depends on the power only", "[asymptotics]") {
    const auto a = asym_variances(MultiParams({{10, 10, 1.5}}, {}), 0.1, 1.0, 100).variances();
    const auto b = asym_variances(MultiParams({{std::sqrt(200.0), 0, 1.5}}, {}), 0.1, 1.0, 100).variances();
    CHECK_THAT(a[2], WithinRel(b[2], 1e-12));
}

TEST_CASE("asym_variances: n^-3 and n^-5 scaling", "[asymptotics]") {
    const auto a = asym_variances(kOne, 0.1, 1.0, 100).variances();
    const auto b = asym_variances(kOne, 0.1, 1.0, 200).variances();
    CHECK_THAT(a[2] / b[2], WithinRel(8.0, 1e-12));
    CHECK_THAT(a[5] / b[5], WithinRel(32.0, 1e-12));
    CHECK_THAT(a[0] / b[0], WithinRel(2.0, 1e-12));
}

TEST_CASE("asym_variances: rejects zero power and n = 0", "[asymptotics]") {
    CHECK_THROWS_AS(asym_variances(MultiParams({{0, 0, 1.0}}, {}), 0.1, 1.0, 100), InvalidInput);
    CHECK_THROWS_AS(asym_variances(kOne, 0.1, 1.0, 0), InvalidInput);
}

TEST_CASE("estimate_noise_scale: recovers sigma^2 c from noise", "[asymptotics]") {
    const auto iid = gen_noise(NoiseSpec::iid(0.5), 4000, 1);
    CHECK_THAT(estimate_noise_scale(iid), WithinRel(0.5, 0.1));
    // The periodogram mean estimates the variance of X, sigma^2 (1 + rho^2).
    const auto ma = gen_noise(NoiseSpec::moving_average(0.5), 4000, 2);
    CHECK_THAT(estimate_noise_scale(ma), WithinRel(0.625, 0.1));
}
