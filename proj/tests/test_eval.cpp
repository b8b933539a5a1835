#include "kdvheat/hierarchy.hpp"
#include "kdvheat/ncpoly_eval.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace kdvheat;

namespace {

const double kLength = 2.0 * M_PI;

PotentialSpec noncommuting_spec() {
    PotentialSpec spec;
    spec.rank = 2;
    spec.length = kLength;
    spec.modes.push_back({0, 0, 0, {0.3, 0.0}});
    spec.modes.push_back({0, 0, 1, {0.2, 0.0}});
    spec.modes.push_back({0, 0, -1, {0.2, 0.0}});
    spec.modes.push_back({0, 1, 1, {0.15, 0.1}});
    spec.modes.push_back({0, 1, -2, {0.05, -0.08}});
    spec.modes.push_back({1, 1, 0, {-0.1, 0.0}});
    spec.modes.push_back({1, 1, 2, {0.12, 0.0}});
    spec.modes.push_back({1, 1, -2, {0.12, 0.0}});
    return spec;
}

}  // namespace

TEST_CASE("evaluating the bare letter returns the samples") {
    const GridPotential u = synthesize(noncommuting_spec(), 32);
    const MatrixField field = evaluate_on_grid(NCPoly::variable(0), u);
    for (int m = 0; m < u.num_points(); ++m)
        CHECK((field[m] - u.samples()[m]).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("derivative letters vanish on constant potentials") {
    Eigen::MatrixXcd value(2, 2);
    value << 0.4, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, -0.2), -0.3;
    const GridPotential u(2, kLength, std::vector<Eigen::MatrixXcd>(16, value));
    const MatrixField field = evaluate_on_grid(NCPoly::variable(1), u);
    for (const auto& m : field) CHECK(m.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("word order matters and reversal transposes products") {
    const GridPotential u = synthesize(noncommuting_spec(), 32);
    const MatrixField forward = evaluate_on_grid(NCPoly::monomial({0, 2}), u);
    const MatrixField backward = evaluate_on_grid(NCPoly::monomial({2, 0}), u);
    double max_asym = 0.0;
    for (int m = 0; m < u.num_points(); ++m) {
        // for hermitian factors, reversing the product conjugate-transposes it
        CHECK((backward[m] - forward[m].adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        max_asym = std::max(max_asym, (forward[m] - backward[m]).cwiseAbs().maxCoeff());
    }
    CHECK(max_asym > 1e-3);  // genuinely noncommuting sample data
}

TEST_CASE("integration") {
    // constant c I integrates to length * r * c
    const double c = 0.25;
    const MatrixField constant(16, c * Eigen::MatrixXcd::Identity(2, 2));
    CHECK(integrate_trace(constant, kLength) == Catch::Approx(kLength * 2 * c).epsilon(1e-14));

    // total derivatives integrate to zero
    const GridPotential u = synthesize(noncommuting_spec(), 64);
    const MatrixField u1 = evaluate_on_grid(NCPoly::variable(1), u);
    CHECK(std::abs(integrate_trace(u1, kLength)) < 1e-10);

    // commutators are traceless pointwise
    NCPoly commutator = NCPoly::monomial({0, 2});
    commutator -= NCPoly::monomial({2, 0});
    CHECK(std::abs(integrate_trace(evaluate_on_grid(commutator, u), kLength)) < 1e-12);

    // a field with a genuinely imaginary trace is rejected
    MatrixField crooked(16, std::complex<double>(0.0, 1.0) * Eigen::MatrixXcd::Identity(2, 2));
    CHECK_THROWS_AS(integrate_trace(crooked, kLength), std::runtime_error);
}

TEST_CASE("first heat coefficient integrates to the mean trace") {
    const PotentialSpec spec = noncommuting_spec();
    const GridPotential u = synthesize(spec, 64);
    // directly from the mode list: only k = 0 diagonal modes survive
    double mean_trace = 0.0;
    for (const auto& mode : spec.modes)
        if (mode.wavenumber == 0 && mode.row == mode.col) mean_trace += mode.amplitude.real();
    const double integral =
        integrate_trace(evaluate_on_grid(schrodinger_heat_coefficient(1), u), kLength);
    CHECK(integral == Catch::Approx(kLength * mean_trace).epsilon(1e-12));
}

TEST_CASE("grid shape mismatches are rejected") {
    const GridPotential u = synthesize(noncommuting_spec(), 32);
    const Differentiator wrong(64, kLength);
    CHECK_THROWS_AS(evaluate_on_grid(NCPoly::variable(0), u, wrong), std::invalid_argument);
}
