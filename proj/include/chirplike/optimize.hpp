#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "chirplike/model.hpp"

namespace chirplike {

/// Closed search interval [lo, hi] with an absolute tolerance on the argument.
struct Bracket {
    double lo{};
    double hi{};
    double tol{1e-9};
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kDefaultMaxIterations = 200;

struct ScalarMinimum {
    double x{};
    double value{};
    int iterations{};
};

/// Brent's method (parabolic interpolation with golden-section fallback) on
/// [lo, hi]. The result is never worse than either endpoint. Throws
/// NonConvergence when the iteration budget runs out.
[[nodiscard]] ScalarMinimum minimize_scalar(const std::function<double(double)>& f, const Bracket& bracket,
                                            int max_iterations = kDefaultMaxIterations);

struct Point2 {
    double x{};
    double y{};
};

/// Axis-aligned search box; each side carries its own scalar tolerance.
struct Box {
    Bracket x;
    Bracket y;

    [[nodiscard]] bool contains(const Point2& p) const noexcept {
        return p.x >= x.lo && p.x <= x.hi && p.y >= y.lo && p.y <= y.hi;
    }
};

struct Minimum2d {
    Point2 point;
    double value{};
    int sweeps{};
};

/// Coordinate descent: alternate minimize_scalar along x and y until the
/// joint movement of a sweep drops below `tol`. Never leaves the box.
[[nodiscard]] Minimum2d minimize_2d(const std::function<double(double, double)>& f, const Point2& start,
                                    const Box& box, double tol = 1e-8, int max_sweeps = kDefaultMaxIterations);

/// (1/n) |sum_t y(t) exp(-i alpha t)|^2 by direct summation.
[[nodiscard]] double periodogram_I1(const SignalSeries& y, double alpha);
/// (1/n) |sum_t y(t) exp(-i beta t^2)|^2 by direct summation.
[[nodiscard]] double periodogram_I2(const SignalSeries& y, double beta);

/// pi j / n.
[[nodiscard]] double fourier_frequency(std::size_t j, std::size_t n) noexcept;
/// pi k / n^2.
[[nodiscard]] double rate_grid_point(std::size_t k, std::size_t n) noexcept;

enum class GridMethod {
    Auto,         ///< Fft while the transform fits the size limit, Direct beyond.
    Fft,          ///< Exact grid values from one real FFT of the zero-padded series.
    Direct,       ///< Direct summation at every grid point.
    CoarseToFine, ///< Every stride-th point, then a full scan around the best one.
};

struct GridOptions {
    GridMethod method{GridMethod::Auto};
    /// Stride of the coarse pass; 0 picks 8.
    std::size_t stride{0};
    /// Largest transform length Auto hands to the FFT.
    std::size_t fft_limit{std::size_t{1} << 23};
};

/// I1 at the Fourier frequencies pi j / n, j = 1..n-1 (entry j - 1).
[[nodiscard]] std::vector<double> periodogram_I1_grid(const SignalSeries& y, GridMethod method = GridMethod::Auto);
/// I2 at pi k / n^2, k = 1..n^2 - 1 (entry k - 1).
[[nodiscard]] std::vector<double> periodogram_I2_grid(const SignalSeries& y, GridMethod method = GridMethod::Auto);

struct GridPeak {
    std::size_t index{}; ///< j or k, 1-based
    double location{};   ///< frequency or frequency rate
    double value{};
};

/// Grid maximiser of I1; ties go to the smaller frequency. Requires n >= 2.
[[nodiscard]] GridPeak argmax_I1_grid(const SignalSeries& y, const GridOptions& options = {});
/// Grid maximiser of I2; ties go to the smaller rate. Requires n >= 2.
[[nodiscard]] GridPeak argmax_I2_grid(const SignalSeries& y, const GridOptions& options = {});

/// Up to `count` local maxima of the I1 / I2 grid, highest first (ties to the
/// smaller index). The first entry is the argmax_*_grid peak. CoarseToFine
/// yields its single peak.
[[nodiscard]] std::vector<GridPeak> top_I1_grid_peaks(const SignalSeries& y, std::size_t count,
                                                      const GridOptions& options = {});
[[nodiscard]] std::vector<GridPeak> top_I2_grid_peaks(const SignalSeries& y, std::size_t count,
                                                      const GridOptions& options = {});

} // namespace chirplike
