#include "kdvheat/flatheat.hpp"
#include "kdvheat/hierarchy.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kdvheat;

TEST_CASE("distance powers expand with multinomial coefficients") {
    // (y_1^2 + y_2^2)^2 = y_1^4 + 2 y_1^2 y_2^2 + y_2^4
    const MultiJet j22 = distance_squared_power(2, 2);
    MultiJet expected(2);
    expected.add_term({4, 0}, {}, 1);
    expected.add_term({2, 2}, {}, 2);
    expected.add_term({0, 4}, {}, 1);
    CHECK(j22 == expected);

    MultiJet j01(1);
    j01.add_term({0}, {}, 1);
    CHECK(distance_squared_power(0, 1) == j01);
}

TEST_CASE("one application of the full operator") {
    // on the identity jet only the C branch acts: D(1) = -C
    {
        MultiJet one(1);
        one.add_term({0}, {}, 1);
        MultiJet expected(1);
        expected.add_term({0}, {c_letter(1)}, -1);
        CHECK(apply_laplace_type(one) == expected);
    }
    // D(y^2) = -(2 + 2 y B_1 + y^2 C) in dimension 1
    {
        MultiJet y2(1);
        y2.add_term({2}, {}, 1);
        MultiJet expected(1);
        expected.add_term({0}, {}, -2);
        expected.add_term({1}, {b_letter(1, 1)}, -2);
        expected.add_term({2}, {c_letter(1)}, -1);
        CHECK(apply_laplace_type(y2, true) == expected);

        MultiJet without_b(1);
        without_b.add_term({0}, {}, -2);
        without_b.add_term({2}, {c_letter(1)}, -1);
        CHECK(apply_laplace_type(y2, false) == without_b);
    }
    // letters pick up derivative indices axis by axis
    {
        MultiJet jet(2);
        jet.add_term({0, 0}, {c_letter(2)}, 1);
        const MultiJet out = partial_derivative(jet, 1);
        MultiJet expected(2);
        expected.add_term({0, 0}, {MultiLetter{2, {0, 1}}}, 1);
        CHECK(out == expected);
    }
}

TEST_CASE("lowest invariant is the identity") {
    for (int dim : {1, 2, 3})
        for (bool with_b : {false, true}) {
            const EndoPoly a0 = heat_endomorphism(0, dim, with_b);
            CHECK(a0 == EndoPoly::identity(dim));
        }
}

TEST_CASE("first invariant without first-order terms is C") {
    for (int dim : {1, 2}) {
        EndoPoly expected(dim);
        expected.add_term({c_letter(dim)}, 1);
        CHECK(heat_endomorphism(1, dim, false) == expected);
    }
}

TEST_CASE("first invariant with first-order terms") {
    // dimension 1: C - (1/2) B_1' - (1/4) B_1^2, the standard form after
    // absorbing B into a connection
    EndoPoly expected(1);
    expected.add_term({c_letter(1)}, 1);
    expected.add_term({MultiLetter{0, {1}}}, Rational(-1, 2));
    expected.add_term({b_letter(1, 1), b_letter(1, 1)}, Rational(-1, 4));
    CHECK(heat_endomorphism(1, 1, true) == expected);
}

TEST_CASE("dimension-one reduction reproduces the hierarchy coefficients") {
    for (int n = 0; n <= 3; ++n) {
        const EndoPoly an = heat_endomorphism(n, 1, false);
        CHECK(as_potential_polynomial(an) == schrodinger_heat_coefficient(n));
    }
    // and back
    const NCPoly h2 = schrodinger_heat_coefficient(2);
    CHECK(as_potential_polynomial(from_potential_polynomial(h2)) == h2);
}

TEST_CASE("invariants are weight homogeneous") {
    for (int n = 0; n <= 2; ++n)
        for (int dim : {1, 2})
            CHECK(is_homogeneous(heat_endomorphism(n, dim, true), 2 * n));
    CHECK(is_homogeneous(heat_endomorphism(3, 1, true), 6));
}

TEST_CASE("terms without first-order letters match the dropped-B run") {
    for (int n = 1; n <= 2; ++n)
        for (int dim : {1, 2})
            CHECK(without_b_letters(heat_endomorphism(n, dim, true)) ==
                  heat_endomorphism(n, dim, false));
}

TEST_CASE("trace canonicalizes cyclic rotations") {
    const MultiWord w{b_letter(1, 2), c_letter(2), b_letter(2, 2)};
    const MultiWord rotated{c_letter(2), b_letter(2, 2), b_letter(1, 2)};
    CHECK(minimal_rotation(w) == minimal_rotation(rotated));

    EndoPoly a(2), b(2);
    a.add_term(w, Rational(1, 3));
    b.add_term(rotated, Rational(1, 3));
    CHECK(trace(a) == trace(b));

    // distinct cyclic classes stay distinct
    EndoPoly c(2);
    c.add_term({b_letter(2, 2), c_letter(2), b_letter(1, 2)}, Rational(1, 3));
    CHECK(!(trace(a) == trace(c)));
}

TEST_CASE("traced invariant matches the reduced form in dimension 1") {
    const TracePoly traced = heat_invariant_trace(2, 1, false);
    TracePoly expected(1);
    expected.add_term({MultiLetter{1, {2}}}, Rational(1, 6));
    expected.add_term({c_letter(1), c_letter(1)}, Rational(1, 2));
    CHECK(traced == expected);
}

TEST_CASE("level cap for higher dimensions") {
    CHECK_THROWS_AS(heat_endomorphism(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(heat_endomorphism(-1, 1), std::invalid_argument);
    CHECK_THROWS_AS(heat_endomorphism(1, 0), std::invalid_argument);
}

TEST_CASE("endomorphism json round trip") {
    const EndoPoly a1 = heat_endomorphism(1, 2, true);
    CHECK(endopoly_from_json(to_json(a1)) == a1);
    const TracePoly t2 = heat_invariant_trace(2, 2, true);
    CHECK(tracepoly_from_json(to_json(t2)) == t2);

    CHECK_THROWS_AS(endopoly_from_json(nlohmann::json{{"terms", nlohmann::json::array()}}),
                    std::invalid_argument);
    const nlohmann::json bad_letter = {
        {"prefactor", {{"four_pi_pow", 1}}},
        {"terms",
         nlohmann::json::array(
             {{{"coeff", "1/1"},
               {"word", nlohmann::json::array({{{"sym", "Q"}, {"alpha", {0}}}})}}})}};
    CHECK_THROWS_AS(endopoly_from_json(bad_letter), std::invalid_argument);
}

TEST_CASE("emission") {
    const EndoPoly a1 = heat_endomorphism(1, 1, true);
    CHECK(to_text(a1) == "(4pi)^-1/2 * (-1/2 B1^(1) + C - 1/4 B1^2)");
    CHECK(to_latex(a1) ==
          "(4\\pi)^{-1/2}\\left(-\\frac{1}{2}B_{1}^{(1)}+C-\\frac{1}{4}B_{1}^{2}\\right)");

    const TracePoly a0 = heat_invariant_trace(0, 2);
    CHECK(to_text(a0) == "(4pi)^-1 * (r)");
    CHECK(to_latex(a0) == "(4\\pi)^{-1}\\left(r\\right)");
}
