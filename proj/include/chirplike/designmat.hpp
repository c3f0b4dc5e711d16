#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "chirplike/model.hpp"

namespace chirplike {

enum class ColumnKind { CosLinear, SinLinear, CosQuadratic, SinQuadratic };

/// Regression matrix of the chirp-like model, one row per t = 1..n.
struct DesignMatrix {
    Eigen::MatrixXd entries;
    std::vector<ColumnKind> column_kinds;

    [[nodiscard]] Eigen::Index rows() const noexcept { return entries.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return entries.cols(); }
};

/// Columns cos(alpha t), sin(alpha t).
[[nodiscard]] DesignMatrix build_sinusoid(double alpha, std::size_t n);
/// Columns cos(beta t^2), sin(beta t^2).
[[nodiscard]] DesignMatrix build_chirp(double beta, std::size_t n);
/// Row t = (cos(alpha t), sin(alpha t), cos(beta t^2), sin(beta t^2)).
[[nodiscard]] DesignMatrix build_full(double alpha, double beta, std::size_t n);
/// Sinusoid column pairs for every frequency, then chirp pairs for every rate.
[[nodiscard]] DesignMatrix build_multi(std::span<const double> frequencies, std::span<const double> rates,
                                       std::size_t n);

/// Condition estimate of Z^T Z above which the design is declared degenerate.
inline constexpr double kDegenerateCondition = 1e12;

/// Least-squares solve of the linear amplitudes for a fixed design, through a
/// column-pivoted Householder QR of Z. Throws DegenerateDesign when the
/// condition estimate of Z^T Z exceeds kDegenerateCondition.
[[nodiscard]] Eigen::VectorXd profile_linear(const SignalSeries& y, const DesignMatrix& z);

/// Y - Z mu for the profiled amplitudes mu.
[[nodiscard]] Eigen::VectorXd profile_residual(const SignalSeries& y, const DesignMatrix& z);

/// ||Y - Z mu_hat||^2.
[[nodiscard]] double projection_rss(const SignalSeries& y, const DesignMatrix& z);

/// Profile criterion R(alpha, beta) of the one-component model.
[[nodiscard]] double criterion_R(const SignalSeries& y, double alpha, double beta);
/// Profile criterion of the sinusoid-only fit.
[[nodiscard]] double criterion_R1(const SignalSeries& y, double alpha);
/// Profile criterion of the chirp-only fit.
[[nodiscard]] double criterion_R2(const SignalSeries& y, double beta);

/// Sum of squared errors of y against the model at the given parameters.
[[nodiscard]] double full_criterion_Q(const SignalSeries& y, const MultiParams& params);

} // namespace chirplike
