#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "chirplike/model.hpp"

namespace chirplike {

/// sum_j a(j)^2 of the linear-process coefficients.
[[nodiscard]] double c_constant(const NoiseSpec& spec);

/// Limit information block of one sinusoid, in (A, B, alpha) order:
/// [[1/2, 0, B/4], [0, 1/2, -A/4], [B/4, -A/4, (A^2 + B^2)/6]].
[[nodiscard]] Eigen::Matrix3d sigma_block_sin(double a, double b);

/// Limit information block of one chirp, in (C, D, beta) order:
/// [[1/2, 0, D/6], [0, 1/2, -C/6], [D/6, -C/6, (C^2 + D^2)/10]].
[[nodiscard]] Eigen::Matrix3d sigma_block_chirp(double c, double d);

/// Inverse of a symmetric positive definite 3x3 block via Cholesky.
[[nodiscard]] Eigen::Matrix3d invert_block(const Eigen::Matrix3d& sigma);

/// Asymptotic behaviour of one three-parameter component.
struct ComponentAsymptotics {
    /// sigma^2 c Sigma^{-1}: covariance of the rate-scaled estimation error.
    Eigen::Matrix3d limit_covariance;
    /// Finite-n variances: amplitudes scale with 1/n, the frequency with
    /// 1/n^3 and the frequency rate with 1/n^5.
    std::array<double, 3> variance{};
    std::array<double, 3> standard_error{};
};

struct AsymReport {
    std::vector<ComponentAsymptotics> sinusoids;
    std::vector<ComponentAsymptotics> chirps;
    double c{};
    double sigma2{};
    std::size_t n{};

    /// Finite-n variances in MultiParams::flatten() order.
    [[nodiscard]] std::vector<double> variances() const;
    [[nodiscard]] std::vector<double> standard_errors() const;
    /// Full finite-n covariance; block diagonal across components.
    [[nodiscard]] Eigen::MatrixXd covariance() const;
};

/// Per-component asymptotic covariance of the (sequential) least-squares
/// estimators. Throws InvalidInput for a zero-power component or n < 1.
[[nodiscard]] AsymReport asym_variances(const MultiParams& params, double sigma2, double c, std::size_t n);

/// Plug-in estimate of sigma^2 c from a residual series: the mean of its
/// periodogram over the Fourier frequencies. Not part of the default path.
[[nodiscard]] double estimate_noise_scale(const SignalSeries& residual);

} // namespace chirplike
