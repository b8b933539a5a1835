// Least-squares extraction of the small-t heat trace coefficients:
// sqrt(4 pi t) Tr e^{tL} is fitted against sum_n c_n t^n on a grid inside
// the asymptotic window, so c_n estimates the integrated trace of h_n.
#pragma once

#include "kdvheat/spectral_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kdvheat {

inline constexpr int kMaxFitOrder = 3;

struct FitReport {
    std::vector<double> coefficients;  // c_0 ... c_nmax
    double residual_norm = 0.0;
    double condition = 0.0;  // singular value ratio of the design matrix
};

inline std::vector<double> geometric_grid(double tmin, double tmax, int count) {
    if (!(tmin > 0) || !(tmax > tmin)) throw std::invalid_argument("geometric_grid: need 0 < tmin < tmax");
    if (count < 2) throw std::invalid_argument("geometric_grid: need at least 2 points");
    std::vector<double> grid(count);
    const double ratio = std::log(tmax / tmin) / (count - 1);
    for (int i = 0; i < count; ++i) grid[i] = tmin * std::exp(ratio * i);
    return grid;
}

inline FitReport fit_heat_coefficients(const SpectralOperator& op,
                                       const std::vector<double>& t_grid, int nmax) {
    if (nmax < 0 || nmax > kMaxFitOrder)
        throw std::invalid_argument("fit_heat_coefficients: nmax must be between 0 and " +
                                    std::to_string(kMaxFitOrder));
    const int rows = static_cast<int>(t_grid.size());
    const int cols = nmax + 1;
    if (rows < cols)
        throw std::invalid_argument("fit_heat_coefficients: need at least nmax+1 grid points");

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (int i = 0; i < rows; ++i) {
        const double t = t_grid[i];
        if (!(t > 0)) throw std::invalid_argument("fit_heat_coefficients: grid values must be > 0");
        double power = 1.0;
        for (int n = 0; n < cols; ++n) {
            design(i, n) = power;
            power *= t;
        }
        target(i) = std::sqrt(4.0 * M_PI * t) * op.heat_trace(t);
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd solution = svd.solve(target);

    FitReport report;
    report.coefficients.assign(solution.data(), solution.data() + cols);
    report.residual_norm = (design * solution - target).norm();
    const auto& sigma = svd.singularValues();
    report.condition = sigma(sigma.size() - 1) > 0
                           ? sigma(0) / sigma(sigma.size() - 1)
                           : std::numeric_limits<double>::infinity();
    return report;
}

}  // namespace kdvheat
