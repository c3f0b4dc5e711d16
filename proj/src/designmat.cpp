#include "chirplike/designmat.hpp"

#include <cmath>

#include <Eigen/QR>

#include "chirplike/errors.hpp"

namespace chirplike {

namespace {

void check_rows(std::size_t n) {
    if (n < 1) throw InvalidInput("design matrix needs at least one row");
}

void fill_linear(Eigen::MatrixXd& m, Eigen::Index col, double alpha) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double phase = alpha * static_cast<double>(i + 1);
        m(i, col) = std::cos(phase);
        m(i, col + 1) = std::sin(phase);
    }
}

void fill_quadratic(Eigen::MatrixXd& m, Eigen::Index col, double beta) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double phase = quadratic_phase(beta, static_cast<std::size_t>(i + 1));
        m(i, col) = std::cos(phase);
        m(i, col + 1) = std::sin(phase);
    }
}

Eigen::Map<const Eigen::VectorXd> as_vector(const SignalSeries& y) {
    return {y.samples.data(), static_cast<Eigen::Index>(y.size())};
}

} // namespace

DesignMatrix build_sinusoid(double alpha, std::size_t n) {
    check_rows(n);
    DesignMatrix z{Eigen::MatrixXd(static_cast<Eigen::Index>(n), 2), {ColumnKind::CosLinear, ColumnKind::SinLinear}};
    fill_linear(z.entries, 0, alpha);
    return z;
}

DesignMatrix build_chirp(double beta, std::size_t n) {
    check_rows(n);
    DesignMatrix z{Eigen::MatrixXd(static_cast<Eigen::Index>(n), 2),
                   {ColumnKind::CosQuadratic, ColumnKind::SinQuadratic}};
    fill_quadratic(z.entries, 0, beta);
    return z;
}

DesignMatrix build_full(double alpha, double beta, std::size_t n) {
    const double freq[] = {alpha};
    const double rate[] = {beta};
    return build_multi(freq, rate, n);
}

DesignMatrix build_multi(std::span<const double> frequencies, std::span<const double> rates, std::size_t n) {
    check_rows(n);
    const auto cols = static_cast<Eigen::Index>(2 * (frequencies.size() + rates.size()));
    DesignMatrix z{Eigen::MatrixXd(static_cast<Eigen::Index>(n), cols), {}};
    z.column_kinds.reserve(static_cast<std::size_t>(cols));
    Eigen::Index col = 0;
    for (double alpha : frequencies) {
        fill_linear(z.entries, col, alpha);
        z.column_kinds.insert(z.column_kinds.end(), {ColumnKind::CosLinear, ColumnKind::SinLinear});
        col += 2;
    }
    for (double beta : rates) {
        fill_quadratic(z.entries, col, beta);
        z.column_kinds.insert(z.column_kinds.end(), {ColumnKind::CosQuadratic, ColumnKind::SinQuadratic});
        col += 2;
    }
    return z;
}

Eigen::VectorXd profile_linear(const SignalSeries& y, const DesignMatrix& z) {
    if (static_cast<Eigen::Index>(y.size()) != z.rows()) {
        throw InvalidInput("signal length does not match design rows");
    }
    if (z.cols() == 0) return Eigen::VectorXd(0);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(z.entries);
    const auto& r = qr.matrixR();
    const Eigen::Index m = z.cols();
    if (z.rows() < m) {
        throw DegenerateDesign("fewer samples than linear parameters");
    }
    // Column pivoting orders |R_ii| decreasingly; their ratio squared estimates cond(Z^T Z).
    const double largest = std::abs(r(0, 0));
    const double smallest = std::abs(r(m - 1, m - 1));
    if (largest == 0.0 || smallest == 0.0 || (largest / smallest) * (largest / smallest) > kDegenerateCondition) {
        throw DegenerateDesign("design matrix is singular to working precision");
    }
    return qr.solve(as_vector(y));
}

Eigen::VectorXd profile_residual(const SignalSeries& y, const DesignMatrix& z) {
    if (z.cols() == 0) return as_vector(y);
    const Eigen::VectorXd mu = profile_linear(y, z);
    return as_vector(y) - z.entries * mu;
}

double projection_rss(const SignalSeries& y, const DesignMatrix& z) {
    return profile_residual(y, z).squaredNorm();
}

double criterion_R(const SignalSeries& y, double alpha, double beta) {
    return projection_rss(y, build_full(alpha, beta, y.size()));
}

double criterion_R1(const SignalSeries& y, double alpha) { return projection_rss(y, build_sinusoid(alpha, y.size())); }

double criterion_R2(const SignalSeries& y, double beta) { return projection_rss(y, build_chirp(beta, y.size())); }

double full_criterion_Q(const SignalSeries& y, const MultiParams& params) {
    const auto fitted = evaluate(params, y.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y.samples[i] - fitted[i];
        sum += e * e;
    }
    return sum;
}

} // namespace chirplike
