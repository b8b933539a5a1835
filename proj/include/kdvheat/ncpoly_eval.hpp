// Numerical evaluation of noncommutative polynomials on a grid potential:
// the letter U_k becomes the k-th spectral derivative of the samples, words
// multiply pointwise in order, and rational coefficients scale the result.
#pragma once

#include "kdvheat/grid_potential.hpp"
#include "kdvheat/ncpoly.hpp"
#include "kdvheat/spectral_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace kdvheat {

using MatrixField = std::vector<Eigen::MatrixXcd>;

namespace detail {

// Spectral derivative of a sample field, entry by entry: stack the r*r
// entries as columns of an N-row matrix and apply the differentiation
// matrix once.
inline MatrixField derivative_field(const MatrixField& samples, int rank,
                                    const Differentiator& diff, int order) {
    if (order == 0) return samples;
    const int n = static_cast<int>(samples.size());
    Eigen::MatrixXcd stacked(n, rank * rank);
    for (int m = 0; m < n; ++m)
        for (int a = 0; a < rank; ++a)
            for (int b = 0; b < rank; ++b) stacked(m, a * rank + b) = samples[m](a, b);
    stacked = diff.matrix(order).cast<std::complex<double>>() * stacked;
    MatrixField out(n, Eigen::MatrixXcd(rank, rank));
    for (int m = 0; m < n; ++m)
        for (int a = 0; a < rank; ++a)
            for (int b = 0; b < rank; ++b) out[m](a, b) = stacked(m, a * rank + b);
    return out;
}

inline MatrixField evaluate_on_samples(const NCPoly& p, const MatrixField& samples, int rank,
                                       const Differentiator& diff) {
    const int n = static_cast<int>(samples.size());
    std::map<int, MatrixField> letters;
    for (const auto& [w, c] : p.terms())
        for (int k : w)
            if (!letters.count(k)) letters.emplace(k, derivative_field(samples, rank, diff, k));

    MatrixField out(n, Eigen::MatrixXcd::Zero(rank, rank));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(rank, rank);
    for (const auto& [w, c] : p.terms()) {
        const double coeff = to_double(c);
        for (int m = 0; m < n; ++m) {
            Eigen::MatrixXcd product = id;
            for (int k : w) product *= letters.at(k)[m];
            out[m] += coeff * product;
        }
    }
    return out;
}

}  // namespace detail

inline MatrixField evaluate_on_grid(const NCPoly& p, const GridPotential& u,
                                    const Differentiator& diff) {
    if (diff.num_points() != u.num_points() || diff.length() != u.length())
        throw std::invalid_argument("evaluate_on_grid: differentiator grid does not match potential");
    return detail::evaluate_on_samples(p, u.samples(), u.rank(), diff);
}

inline MatrixField evaluate_on_grid(const NCPoly& p, const GridPotential& u) {
    return evaluate_on_grid(p, u, Differentiator(u.num_points(), u.length()));
}

// Uniform-grid quadrature of the pointwise fiber trace; spectrally exact
// for smooth periodic integrands. Fields arising from hermitian potentials
// must integrate to a real number.
inline double integrate_trace(const MatrixField& field, double length) {
    if (field.empty()) return 0.0;
    std::complex<double> total = 0.0;
    for (const auto& m : field) total += m.trace();
    total *= length / static_cast<double>(field.size());
    if (std::abs(total.imag()) > 1e-12)
        throw std::runtime_error("integrate_trace: imaginary residue " +
                                 std::to_string(total.imag()) + " exceeds 1e-12");
    return total.real();
}

}  // namespace kdvheat
