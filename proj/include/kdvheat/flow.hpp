// Fixed-step RK4 integration of the hierarchy flows dU/dt = d_x G_n[U] on
// a periodic grid, with hermiticity and aliasing diagnostics. No adaptive
// stepping: runs must be reproducible.
#pragma once

#include "kdvheat/grid_potential.hpp"
#include "kdvheat/hierarchy.hpp"
#include "kdvheat/ncpoly_eval.hpp"
#include "kdvheat/spectral_operator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kdvheat {

inline constexpr double kStabilitySafety = 0.1;
inline constexpr double kTailEnergyTol = 1e-6;

struct FlowState {
    GridPotential potential;
    double time = 0.0;
};

// dt cap for the level-n flow: the stiffest term of d_x G_n is the
// (2n-1)-st derivative, so the explicit step must stay below dx^(2n-1).
inline double stability_bound(int level, double spacing) {
    return kStabilitySafety * std::pow(spacing, 2 * level - 1);
}

inline double integral_of_trace(const GridPotential& u) {
    double total = 0.0;
    for (const auto& s : u.samples()) total += s.trace().real();
    return total * u.spacing();
}

inline double integral_of_trace_square(const GridPotential& u) {
    double total = 0.0;
    for (const auto& s : u.samples()) total += (s * s).trace().real();
    return total * u.spacing();
}

class FlowIntegrator {
  public:
    FlowIntegrator(int level, const GridPotential& shape)
        : level_(level),
          rank_(shape.rank()),
          num_points_(shape.num_points()),
          length_(shape.length()),
          g_(g_operator_route(level)),
          diff_(shape.num_points(), shape.length()),
          dft_(shape.num_points(), shape.num_points()) {
        for (int m = 0; m < num_points_; ++m)
            for (int j = 0; j < num_points_; ++j) {
                const double angle = -2.0 * M_PI * m * j / num_points_;
                dft_(m, j) = std::complex<double>(std::cos(angle), std::sin(angle));
            }
    }

    int level() const { return level_; }
    double max_step() const { return stability_bound(level_, length_ / num_points_); }
    double last_hermiticity_correction() const { return last_correction_; }
    double cumulative_hermiticity_correction() const { return cumulative_correction_; }

    FlowState step(const FlowState& state, double dt) const {
        const GridPotential& u = state.potential;
        if (u.rank() != rank_ || u.num_points() != num_points_ || u.length() != length_)
            throw std::invalid_argument("flow step: potential does not match integrator grid");
        if (!(dt > 0)) throw std::invalid_argument("flow step: dt must be > 0");
        if (dt > max_step())
            throw std::invalid_argument("flow step: dt = " + std::to_string(dt) +
                                        " exceeds the stability bound " +
                                        std::to_string(max_step()));

        const MatrixField& u0 = u.samples();
        const MatrixField k1 = rhs(u0);
        const MatrixField k2 = rhs(shifted(u0, k1, dt / 2));
        const MatrixField k3 = rhs(shifted(u0, k2, dt / 2));
        const MatrixField k4 = rhs(shifted(u0, k3, dt));

        MatrixField next = u0;
        for (int m = 0; m < num_points_; ++m)
            next[m] += (dt / 6.0) * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);

        const double tail = tail_energy_fraction(next);
        if (tail > kTailEnergyTol)
            throw std::runtime_error("flow step rejected: spectral tail fraction " +
                                     std::to_string(tail) +
                                     " signals aliasing blow-up (refine the grid or stop earlier)");

        double correction = 0.0;
        for (auto& m : next) {
            const Eigen::MatrixXcd skew = (m - m.adjoint()) / 2.0;
            correction = std::max(correction, skew.cwiseAbs().maxCoeff());
            m = (m + m.adjoint().eval()) / 2.0;
        }
        last_correction_ = correction;
        cumulative_correction_ += correction;

        return FlowState{GridPotential(rank_, length_, std::move(next)), state.time + dt};
    }

  private:
    MatrixField rhs(const MatrixField& samples) const {
        return detail::derivative_field(detail::evaluate_on_samples(g_, samples, rank_, diff_),
                                        rank_, diff_, 1);
    }

    MatrixField shifted(const MatrixField& base, const MatrixField& direction, double scale) const {
        MatrixField out = base;
        for (int m = 0; m < num_points_; ++m) out[m] += scale * direction[m];
        return out;
    }

    // Fraction of spectral energy in bins beyond |k| > N/3, summed over the
    // fiber entries.
    double tail_energy_fraction(const MatrixField& samples) const {
        Eigen::MatrixXcd stacked(num_points_, rank_ * rank_);
        for (int m = 0; m < num_points_; ++m)
            for (int a = 0; a < rank_; ++a)
                for (int b = 0; b < rank_; ++b) stacked(m, a * rank_ + b) = samples[m](a, b);
        const Eigen::MatrixXcd spectrum = dft_ * stacked;
        double total = 0.0;
        double tail = 0.0;
        for (int m = 0; m < num_points_; ++m) {
            const double bin = spectrum.row(m).squaredNorm();
            total += bin;
            if (std::abs(wavenumber_of_bin(m, num_points_)) > num_points_ / 3) tail += bin;
        }
        return total > 0 ? tail / total : 0.0;
    }

    int level_;
    int rank_;
    int num_points_;
    double length_;
    NCPoly g_;
    Differentiator diff_;
    Eigen::MatrixXcd dft_;
    mutable double last_correction_ = 0.0;
    mutable double cumulative_correction_ = 0.0;
};

}  // namespace kdvheat
