#include "chirplike/asymptotics.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "chirplike/errors.hpp"
#include "chirplike/optimize.hpp"

namespace chirplike {

double c_constant(const NoiseSpec& spec) {
    double c = 0.0;
    for (const auto& coef : spec.coefficients) c += coef.value * coef.value;
    return c;
}

Eigen::Matrix3d sigma_block_sin(double a, double b) {
    const double power = a * a + b * b;
    if (!(power > 0.0)) throw InvalidInput("sinusoid block requires A^2 + B^2 > 0");
    Eigen::Matrix3d s;
    s << 0.5, 0.0, b / 4.0,
         0.0, 0.5, -a / 4.0,
         b / 4.0, -a / 4.0, power / 6.0;
    return s;
}

Eigen::Matrix3d sigma_block_chirp(double c, double d) {
    const double power = c * c + d * d;
    if (!(power > 0.0)) throw InvalidInput("chirp block requires C^2 + D^2 > 0");
    Eigen::Matrix3d s;
    s << 0.5, 0.0, d / 6.0,
         0.0, 0.5, -c / 6.0,
         d / 6.0, -c / 6.0, power / 10.0;
    return s;
}

Eigen::Matrix3d invert_block(const Eigen::Matrix3d& sigma) {
    Eigen::LLT<Eigen::Matrix3d> llt(sigma);
    if (llt.info() != Eigen::Success) throw NumericalFailure("covariance block is not positive definite");
    const Eigen::Matrix3d inverse = llt.solve(Eigen::Matrix3d::Identity());
    return 0.5 * (inverse + inverse.transpose());
}

namespace {

ComponentAsymptotics component(const Eigen::Matrix3d& sigma, double scale, double rate_power, double n) {
    ComponentAsymptotics out;
    out.limit_covariance = scale * invert_block(sigma);
    // D = diag(n^-1/2, n^-1/2, n^-rate_power): variance = limit * D_ii^2.
    const double amp_factor = 1.0 / n;
    const double rate_factor = std::pow(n, -2.0 * rate_power);
    out.variance = {out.limit_covariance(0, 0) * amp_factor, out.limit_covariance(1, 1) * amp_factor,
                    out.limit_covariance(2, 2) * rate_factor};
    for (std::size_t i = 0; i < 3; ++i) out.standard_error[i] = std::sqrt(out.variance[i]);
    return out;
}

} // namespace

AsymReport asym_variances(const MultiParams& params, double sigma2, double c, std::size_t n) {
    if (n < 1) throw InvalidInput("sample count must be at least 1");
    if (!(sigma2 >= 0.0) || !(c >= 0.0)) throw InvalidInput("noise variance and c must be non-negative");
    AsymReport report;
    report.c = c;
    report.sigma2 = sigma2;
    report.n = n;
    const double scale = sigma2 * c;
    const double nn = static_cast<double>(n);
    for (const auto& s : params.sinusoids) {
        report.sinusoids.push_back(component(sigma_block_sin(s.a, s.b), scale, 1.5, nn));
    }
    for (const auto& ch : params.chirps) {
        report.chirps.push_back(component(sigma_block_chirp(ch.c, ch.d), scale, 2.5, nn));
    }
    return report;
}

std::vector<double> AsymReport::variances() const {
    std::vector<double> out;
    for (const auto* family : {&sinusoids, &chirps}) {
        for (const auto& comp : *family) out.insert(out.end(), comp.variance.begin(), comp.variance.end());
    }
    return out;
}

std::vector<double> AsymReport::standard_errors() const {
    std::vector<double> out;
    for (const auto* family : {&sinusoids, &chirps}) {
        for (const auto& comp : *family) {
            out.insert(out.end(), comp.standard_error.begin(), comp.standard_error.end());
        }
    }
    return out;
}

Eigen::MatrixXd AsymReport::covariance() const {
    const auto blocks = static_cast<Eigen::Index>(sinusoids.size() + chirps.size());
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(3 * blocks, 3 * blocks);
    const double nn = static_cast<double>(n);
    Eigen::Index at = 0;
    for (const auto* family : {&sinusoids, &chirps}) {
        const double rate_power = family == &sinusoids ? 1.5 : 2.5;
        const Eigen::Vector3d d(std::pow(nn, -0.5), std::pow(nn, -0.5), std::pow(nn, -rate_power));
        for (const auto& comp : *family) {
            const Eigen::Matrix3d block = d.asDiagonal() * comp.limit_covariance * d.asDiagonal();
            cov.block<3, 3>(at, at) = 0.5 * (block + block.transpose());
            at += 3;
        }
    }
    return cov;
}

double estimate_noise_scale(const SignalSeries& residual) {
    const auto values = periodogram_I1_grid(residual);
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

} // namespace chirplike
