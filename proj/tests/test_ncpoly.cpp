#include "kdvheat/ncpoly.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace kdvheat;

namespace {

NCPoly random_poly(std::mt19937& rng, int max_terms = 5, int max_len = 3, int max_letter = 4) {
    std::uniform_int_distribution<int> term_count(1, max_terms);
    std::uniform_int_distribution<int> word_len(0, max_len);
    std::uniform_int_distribution<int> letter(0, max_letter);
    std::uniform_int_distribution<int> numer(-6, 6);
    std::uniform_int_distribution<int> denom(1, 4);
    NCPoly p;
    const int terms = term_count(rng);
    for (int i = 0; i < terms; ++i) {
        Word w(word_len(rng));
        for (int& k : w) k = letter(rng);
        p.add_term(std::move(w), Rational(numer(rng), denom(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("term bookkeeping") {
    NCPoly p;
    p.add_term({0, 1}, Rational(2, 3));
    p.add_term({0, 1}, Rational(1, 3));
    CHECK(p.coefficient({0, 1}) == 1);
    p.add_term({0, 1}, -1);
    CHECK(p.is_zero());

    const NCPoly u0 = NCPoly::variable(0);
    const NCPoly u1 = NCPoly::variable(1);
    CHECK(!(u0 * u1 == u1 * u0));
    CHECK((u0 * u1).coefficient({0, 1}) == 1);
    CHECK((u0 + u0) == 2 * u0);
    CHECK((u0 - u0).is_zero());
    CHECK(NCPoly::one().coefficient({}) == 1);
}

TEST_CASE("word ordering is by length then weight then letters") {
    NCPoly p;
    p.add_term({4}, 1);      // weight 6
    p.add_term({0, 0}, 1);   // weight 4
    p.add_term({1}, 1);      // weight 3
    std::vector<Word> order;
    for (const auto& [w, c] : p.terms()) order.push_back(w);
    CHECK(order == std::vector<Word>{{1}, {4}, {0, 0}});
}

TEST_CASE("derivative satisfies the product rule") {
    const NCPoly u0 = NCPoly::variable(0);
    CHECK(derivative(u0) == NCPoly::variable(1));
    CHECK(derivative(u0 * u0) == NCPoly::variable(1) * u0 + u0 * NCPoly::variable(1));
    CHECK(derivative(NCPoly::one()).is_zero());

    std::mt19937 rng(7321);
    for (int trial = 0; trial < 50; ++trial) {
        const NCPoly a = random_poly(rng);
        const NCPoly b = random_poly(rng);
        CHECK(derivative(a * b) == derivative(a) * b + a * derivative(b));
    }
}

TEST_CASE("reversal is an involution and an anti-homomorphism") {
    std::mt19937 rng(9151);
    for (int trial = 0; trial < 50; ++trial) {
        const NCPoly a = random_poly(rng);
        const NCPoly b = random_poly(rng);
        CHECK(reversed(reversed(a)) == a);
        CHECK(reversed(a * b) == reversed(b) * reversed(a));
    }
}

TEST_CASE("abelianization commutes with the derivative") {
    std::mt19937 rng(4411);
    for (int trial = 0; trial < 50; ++trial) {
        const NCPoly p = random_poly(rng);
        CHECK(abelianized(derivative(p)) == abelianized(derivative(abelianized(p))));
    }
}

TEST_CASE("homogeneity detection") {
    NCPoly p;
    p.add_term({2}, 1);
    p.add_term({0, 0}, 3);
    CHECK(is_homogeneous(p, 4));
    CHECK(!is_homogeneous(p, 6));
    p.add_term({1}, 1);
    CHECK(!is_homogeneous(p, 4));
}

TEST_CASE("first difference pinpoints the offending word") {
    NCPoly a;
    a.add_term({2}, 1);
    a.add_term({0, 0}, 3);
    NCPoly b = a;
    CHECK(!first_difference(a, b).has_value());
    b.add_term({0, 0}, 1);
    const auto diff = first_difference(a, b);
    REQUIRE(diff.has_value());
    CHECK(diff->word == Word{0, 0});
    CHECK(diff->left == 3);
    CHECK(diff->right == 4);

    NCPoly c;  // term present on one side only
    const auto diff2 = first_difference(a, c);
    REQUIRE(diff2.has_value());
    CHECK(diff2->right == 0);
}

TEST_CASE("json round trip") {
    std::mt19937 rng(1893);
    for (int trial = 0; trial < 40; ++trial) {
        const NCPoly p = random_poly(rng);
        CHECK(ncpoly_from_json(to_json(p)) == p);
    }
    CHECK_THROWS_AS(ncpoly_from_json(nlohmann::json{{"not", "an array"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ncpoly_from_json(nlohmann::json::array({{{"coeff", "1/2"}}})),
                    std::invalid_argument);
}

TEST_CASE("text and latex emission") {
    NCPoly g2;
    g2.add_term({2}, 1);
    g2.add_term({0, 0}, 3);
    CHECK(to_text(g2) == "U2 + 3 U0^2");
    CHECK(to_latex(g2) == "U_{2}+3U_{0}^{2}");

    NCPoly h2;
    h2.add_term({2}, Rational(1, 6));
    h2.add_term({0, 0}, Rational(1, 2));
    CHECK(to_text(h2) == "1/6 U2 + 1/2 U0^2");
    CHECK(to_latex(h2) == "\\frac{1}{6}U_{2}+\\frac{1}{2}U_{0}^{2}");

    NCPoly signs;
    signs.add_term({1}, -1);
    signs.add_term({0, 1}, Rational(-2, 3));
    CHECK(to_text(signs) == "-U1 - 2/3 U0 U1");
    CHECK(to_text(NCPoly::zero()) == "0");
    CHECK(to_text(NCPoly::one()) == "1");
    CHECK(to_latex(NCPoly::one() * Rational(-1, 2)) == "-\\frac{1}{2}");
}
