#include "chirplike/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "chirplike/errors.hpp"
#include "fft_power.hpp"

namespace chirplike {

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, const Bracket& bracket, int max_iterations) {
    if (!(bracket.lo < bracket.hi)) throw InvalidInput("bracket requires lo < hi");
    if (!(bracket.tol > 0.0)) throw InvalidInput("bracket tolerance must be positive");

    constexpr double golden = 0.3819660112501051; // (3 - sqrt 5) / 2
    constexpr double rel_eps = 4.0 * std::numeric_limits<double>::epsilon();

    double a = bracket.lo;
    double b = bracket.hi;
    double x = a + golden * (b - a);
    double w = x;
    double v = x;
    double fx = f(x);
    double fw = fx;
    double fv = fx;
    double d = 0.0;
    double e = 0.0;

    int iter = 0;
    for (;; ++iter) {
        const double xm = 0.5 * (a + b);
        // Final interval width is at most 4 * tol1, so |x - x*| <= tol.
        const double tol1 = rel_eps * std::abs(x) + 0.25 * bracket.tol;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
        if (iter >= max_iterations) {
            throw NonConvergence("Brent minimisation did not converge within " + std::to_string(max_iterations) +
                                 " iterations");
        }

        bool golden_step = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_prev = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
                golden_step = false;
            }
        }
        if (golden_step) {
            e = (x >= xm) ? a - x : b - x;
            d = golden * e;
        }

        const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = f(u);
        if (fu <= fx) {
            (u >= x ? a : b) = x;
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            (u < x ? a : b) = u;
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }

    // A monotone objective pushes the minimiser onto an endpoint, which the
    // interior iteration only approaches to within tol.
    ScalarMinimum best{x, fx, iter};
    for (double edge : {bracket.lo, bracket.hi}) {
        const double fe = f(edge);
        if (fe < best.value) best = {edge, fe, iter};
    }
    return best;
}

Minimum2d minimize_2d(const std::function<double(double, double)>& f, const Point2& start, const Box& box, double tol,
                      int max_sweeps) {
    if (!box.contains(start)) throw InvalidInput("start point lies outside the search box");

    Point2 p = start;
    double value = f(p.x, p.y);
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const Point2 before = p;
        const auto along_x = minimize_scalar([&](double x) { return f(x, p.y); }, box.x);
        if (along_x.value <= value) {
            p.x = along_x.x;
            value = along_x.value;
        }
        const auto along_y = minimize_scalar([&](double y) { return f(p.x, y); }, box.y);
        if (along_y.value <= value) {
            p.y = along_y.x;
            value = along_y.value;
        }
        if (std::hypot(p.x - before.x, p.y - before.y) < tol) {
            return {p, value, sweep};
        }
    }
    throw NonConvergence("coordinate descent did not converge within " + std::to_string(max_sweeps) + " sweeps");
}

double periodogram_I1(const SignalSeries& y, double alpha) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t t = 1; t <= y.size(); ++t) {
        const double phase = alpha * static_cast<double>(t);
        re += y.samples[t - 1] * std::cos(phase);
        im += y.samples[t - 1] * std::sin(phase);
    }
    return y.empty() ? 0.0 : (re * re + im * im) / static_cast<double>(y.size());
}

double periodogram_I2(const SignalSeries& y, double beta) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t t = 1; t <= y.size(); ++t) {
        const double phase = quadratic_phase(beta, t);
        re += y.samples[t - 1] * std::cos(phase);
        im += y.samples[t - 1] * std::sin(phase);
    }
    return y.empty() ? 0.0 : (re * re + im * im) / static_cast<double>(y.size());
}

double fourier_frequency(std::size_t j, std::size_t n) noexcept {
    return std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

double rate_grid_point(std::size_t k, std::size_t n) noexcept {
    const double nn = static_cast<double>(n);
    return std::numbers::pi * static_cast<double>(k) / (nn * nn);
}

namespace {

__extension__ typedef unsigned __int128 u128;

// Grid points are pi * m / half_period with integer phase numerators, so the
// phase index (m * t^power) mod (2 * half_period) is exact.
double grid_value_direct(const SignalSeries& y, std::size_t m, std::size_t half_period, int power) {
    const u128 period = 2 * static_cast<u128>(half_period);
    const double scale = std::numbers::pi / static_cast<double>(half_period);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t t = 1; t <= y.size(); ++t) {
        const u128 tt = power == 1 ? u128{t} : u128{t} * t;
        const auto idx = static_cast<std::uint64_t>((u128{m} * tt) % period);
        const double phase = scale * static_cast<double>(idx);
        re += y.samples[t - 1] * std::cos(phase);
        im += y.samples[t - 1] * std::sin(phase);
    }
    return (re * re + im * im) / static_cast<double>(y.size());
}

std::vector<double> grid_direct(const SignalSeries& y, std::size_t points, std::size_t half_period, int power) {
    std::vector<double> values(points);
    for (std::size_t m = 1; m <= points; ++m) values[m - 1] = grid_value_direct(y, m, half_period, power);
    return values;
}

std::vector<double> grid_fft(const SignalSeries& y, std::size_t points, std::size_t half_period, int power) {
    std::vector<detail::SparseSample> sparse;
    sparse.reserve(y.size());
    for (std::size_t t = 1; t <= y.size(); ++t) {
        const std::size_t idx = power == 1 ? t : t * t;
        sparse.push_back({idx % (2 * half_period), y.samples[t - 1]});
    }
    const auto power_spectrum = detail::sparse_power_spectrum(sparse, 2 * half_period);
    std::vector<double> values(points);
    const double n = static_cast<double>(y.size());
    for (std::size_t m = 1; m <= points; ++m) values[m - 1] = power_spectrum[m] / n;
    return values;
}

std::vector<double> grid_values(const SignalSeries& y, int power, GridMethod method, std::size_t fft_limit) {
    const std::size_t n = y.size();
    const std::size_t half_period = power == 1 ? n : n * n;
    const std::size_t points = half_period - 1;
    if (method == GridMethod::Auto) {
        method = 2 * half_period <= fft_limit ? GridMethod::Fft : GridMethod::Direct;
    }
    if (method == GridMethod::Fft) return grid_fft(y, points, half_period, power);
    return grid_direct(y, points, half_period, power);
}

GridPeak first_max(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return {best + 1, 0.0, values[best]};
}

GridPeak argmax_grid(const SignalSeries& y, const GridOptions& options, int power) {
    const std::size_t n = y.size();
    if (n < 2) throw InvalidInput("grid search needs at least two samples");
    const std::size_t half_period = power == 1 ? n : n * n;
    const std::size_t points = half_period - 1;

    GridPeak peak;
    if (options.method == GridMethod::CoarseToFine) {
        const std::size_t stride = options.stride == 0 ? 8 : options.stride;
        std::size_t best = 1;
        double best_value = -1.0;
        for (std::size_t m = 1; m <= points; m += stride) {
            const double v = grid_value_direct(y, m, half_period, power);
            if (v > best_value) {
                best_value = v;
                best = m;
            }
        }
        const std::size_t lo = best > stride ? best - stride + 1 : 1;
        const std::size_t hi = std::min(points, best + stride - 1);
        peak = {best, 0.0, best_value};
        for (std::size_t m = lo; m <= hi; ++m) {
            const double v = m == best ? best_value : grid_value_direct(y, m, half_period, power);
            if (v > peak.value || (v == peak.value && m < peak.index)) peak = {m, 0.0, v};
        }
    } else {
        peak = first_max(grid_values(y, power, options.method, options.fft_limit));
    }
    peak.location = power == 1 ? fourier_frequency(peak.index, n) : rate_grid_point(peak.index, n);
    return peak;
}

std::vector<GridPeak> top_peaks_grid(const SignalSeries& y, std::size_t count, const GridOptions& options, int power) {
    if (count <= 1 || options.method == GridMethod::CoarseToFine) return {argmax_grid(y, options, power)};
    const std::size_t n = y.size();
    if (n < 2) throw InvalidInput("grid search needs at least two samples");
    const auto values = grid_values(y, power, options.method, options.fft_limit);
    // Local maxima; on a plateau the first point counts, as in first_max.
    std::vector<GridPeak> peaks;
    const std::size_t last = values.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        if ((i == 0 || values[i] > values[i - 1]) && (i == last || values[i] >= values[i + 1])) {
            peaks.push_back({i + 1, 0.0, values[i]});
        }
    }
    const auto higher = [](const GridPeak& a, const GridPeak& b) {
        return a.value > b.value || (a.value == b.value && a.index < b.index);
    };
    const std::size_t keep = std::min(count, peaks.size());
    std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(), higher);
    peaks.resize(keep);
    for (auto& p : peaks) p.location = power == 1 ? fourier_frequency(p.index, n) : rate_grid_point(p.index, n);
    return peaks;
}

} // namespace

std::vector<double> periodogram_I1_grid(const SignalSeries& y, GridMethod method) {
    if (y.size() < 2) return {};
    if (method == GridMethod::CoarseToFine) method = GridMethod::Direct;
    return grid_values(y, 1, method, GridOptions{}.fft_limit);
}

std::vector<double> periodogram_I2_grid(const SignalSeries& y, GridMethod method) {
    if (y.size() < 2) return {};
    if (method == GridMethod::CoarseToFine) method = GridMethod::Direct;
    return grid_values(y, 2, method, GridOptions{}.fft_limit);
}

GridPeak argmax_I1_grid(const SignalSeries& y, const GridOptions& options) { return argmax_grid(y, options, 1); }

GridPeak argmax_I2_grid(const SignalSeries& y, const GridOptions& options) { return argmax_grid(y, options, 2); }

std::vector<GridPeak> top_I1_grid_peaks(const SignalSeries& y, std::size_t count, const GridOptions& options) {
    return top_peaks_grid(y, count, options, 1);
}

std::vector<GridPeak> top_I2_grid_peaks(const SignalSeries& y, std::size_t count, const GridOptions& options) {
    return top_peaks_grid(y, count, options, 2);
}

} // namespace chirplike
