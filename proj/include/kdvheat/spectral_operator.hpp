// Fourier collocation discretization of L = d^2/dx^2 + U on the periodic
// grid, as a dense hermitian matrix with a cached eigendecomposition.
#pragma once

#include "kdvheat/grid_potential.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kdvheat {

// Wavenumber attached to DFT bin m: 0, 1, ..., N/2, -(N/2-1), ..., -1.
// The Nyquist bin appears once; its sign never matters below because odd
// derivative orders zero it out.
inline int wavenumber_of_bin(int m, int num_points) {
    return m <= num_points / 2 ? m : m - num_points;
}

// Dense real differentiation matrix of the given order: conjugate the
// diagonal Fourier symbol (i k 2pi/length)^order by the DFT. The result of
// the conjugation is real up to rounding; the imaginary residue is dropped.
inline Eigen::MatrixXd fourier_derivative_matrix(int num_points, double length, int order) {
    if (num_points < 2 || num_points % 2 != 0)
        throw std::invalid_argument("fourier_derivative_matrix: need an even number of points");
    if (!(length > 0)) throw std::invalid_argument("fourier_derivative_matrix: length must be > 0");
    if (order < 0) throw std::invalid_argument("fourier_derivative_matrix: order must be >= 0");

    const int n = num_points;
    const double scale = 2.0 * M_PI / length;
    Eigen::VectorXcd symbol(n);
    for (int m = 0; m < n; ++m) {
        const int k = wavenumber_of_bin(m, n);
        if (order % 2 != 0 && std::abs(k) == n / 2) {
            // the Nyquist mode has no well-defined odd derivative on the grid
            symbol(m) = 0.0;
            continue;
        }
        symbol(m) = std::pow(std::complex<double>(0.0, k * scale), order);
    }

    Eigen::MatrixXcd synthesis(n, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m) {
            const double angle = 2.0 * M_PI * j * m / n;
            synthesis(j, m) = std::complex<double>(std::cos(angle), std::sin(angle));
        }
    const Eigen::MatrixXcd full =
        synthesis * symbol.asDiagonal() * synthesis.adjoint() / static_cast<double>(n);
    return full.real();
}

// Per-order cache of differentiation matrices for one grid shape.
class Differentiator {
  public:
    Differentiator(int num_points, double length) : num_points_(num_points), length_(length) {}

    int num_points() const { return num_points_; }
    double length() const { return length_; }

    const Eigen::MatrixXd& matrix(int order) const {
        auto it = cache_.find(order);
        if (it == cache_.end())
            it = cache_.emplace(order, fourier_derivative_matrix(num_points_, length_, order)).first;
        return it->second;
    }

  private:
    int num_points_;
    double length_;
    mutable std::map<int, Eigen::MatrixXd> cache_;
};

class SpectralOperator {
  public:
    explicit SpectralOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols())
            throw std::invalid_argument("spectral operator: matrix must be square");
        if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol)
            throw std::invalid_argument("spectral operator: assembled matrix is not hermitian");
    }

    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    const Eigen::VectorXd& eigenvalues() const {
        if (!eigenvalues_) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_,
                                                                   Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("spectral operator: eigendecomposition failed");
            eigenvalues_ = solver.eigenvalues();
        }
        return *eigenvalues_;
    }

    // Tr e^{tL}; the spectrum of L = d^2 + U is bounded above, so the sum
    // converges fast for t > 0.
    double heat_trace(double t) const {
        if (!(t > 0)) throw std::invalid_argument("heat_trace: t must be > 0");
        const Eigen::VectorXd& lambda = eigenvalues();
        double total = 0.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) total += std::exp(t * lambda(i));
        return total;
    }

  private:
    Eigen::MatrixXcd matrix_;
    mutable std::optional<Eigen::VectorXd> eigenvalues_;
};

// L = d^2 + U with the kinetic part acting per fiber component and U as a
// block-diagonal pointwise multiplier. Index layout: grid point major,
// fiber component minor.
inline SpectralOperator assemble_operator(const GridPotential& u) {
    const int n = u.num_points();
    const int r = u.rank();
    const Eigen::MatrixXd d2 = fourier_derivative_matrix(n, u.length(), 2);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n * r, n * r);
    for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2)
            for (int a = 0; a < r; ++a) op(m1 * r + a, m2 * r + a) = d2(m1, m2);
    for (int m = 0; m < n; ++m) op.block(m * r, m * r, r, r) += u.samples()[m];
    return SpectralOperator(std::move(op));
}

}  // namespace kdvheat
