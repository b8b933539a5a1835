// Exact arbitrary-precision rational arithmetic and the half-integer
// binomial coefficients used throughout the hierarchy and heat-invariant
// formulas. No floating point enters any computation in this header.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace kdvheat {

using BigInt = boost::multiprecision::cpp_int;

// Always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (int m = 2; m <= n; ++m) r *= m;
    return r;
}

// Integer binomial; zero when bot is out of range, so dominance
// constraints expressed through vanishing binomials need no special care.
inline BigInt binomial(long long top, long long bot) {
    if (bot < 0 || bot > top) return 0;
    if (bot > top - bot) bot = top - bot;
    BigInt r = 1;
    for (long long m = 1; m <= bot; ++m) {
        r *= top - bot + m;
        r /= m;
    }
    return r;
}

// binom(top + dim/2, bot + dim/2) as the exact telescoping product
//   (bot + dim/2 + 1)(bot + dim/2 + 2) ... (top + dim/2) / (top - bot)!
// For even dim this coincides with the integer binomial coefficient.
inline Rational half_integer_binomial(int top, int bot, int dim) {
    if (dim < 1) throw std::invalid_argument("half_integer_binomial: dim must be positive");
    if (top < 0 || bot < 0 || top < bot)
        throw std::invalid_argument("half_integer_binomial: requires top >= bot >= 0");
    BigInt num = 1;
    for (int m = bot + 1; m <= top; ++m) num *= 2 * m + dim;
    BigInt den = factorial(top - bot);
    den <<= (top - bot);  // each factor carried a /2
    return Rational(num, den);
}

inline BigInt power_of(BigInt base, int exp) {
    BigInt r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

// Serialized form is always "<num>/<den>", including unit denominators,
// so the emitted records re-parse bit-exactly.
inline std::string rational_to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational rational_from_string(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("nonpositive denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational \"" + text + "\"");
    }
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace kdvheat
