// The matrix KdV hierarchy polynomials G_n[U] by two independent routes:
// repeated application of L = d^2 + U to monomials (operator route), and a
// closed combinatorial sum over compositions weighted by chain counts
// (closed route). Also the heat coefficients h_n of the Schrodinger
// operator and the flow right-hand sides d/dx G_n.
#pragma once

#include "kdvheat/jet1d.hpp"
#include "kdvheat/ncpoly.hpp"

#include <stdexcept>
#include <vector>

namespace kdvheat {

inline constexpr int kDefaultMaxLevel = 8;

using Composition = std::vector<int>;

// Top of the chain l_0 <= l_1 <= ... <= l_{p-1}:
//   Bounded: l_{p-1} <= j+n-p (the form validated against the operator route)
//   Pinned:  l_{p-1}  = j+n-p (kept only as a documented negative witness)
enum class ChainBound { Bounded, Pinned };

namespace detail {

inline void check_level(int n, int max_level) {
    if (n < 1) throw std::invalid_argument("hierarchy: level must be >= 1");
    if (n > max_level)
        throw std::invalid_argument("hierarchy: level exceeds the configured maximum of " +
                                    std::to_string(max_level));
}

// All ordered tuples of `parts` nonnegative integers summing to `total`.
inline void enumerate_compositions(int total, int parts, Composition& prefix,
                                   std::vector<Composition>& out) {
    if (parts == 1) {
        prefix.push_back(total);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        prefix.push_back(first);
        enumerate_compositions(total - first, parts - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace detail

inline std::vector<Composition> compositions(int total, int parts) {
    std::vector<Composition> out;
    if (total < 0 || parts < 1) return out;
    Composition prefix;
    detail::enumerate_compositions(total, parts, prefix, out);
    return out;
}

// Number of weighted chains attached to a composition (k_1,...,k_p) at
// level n and summation index j:
//   sum over 0 <= l_0 <= ... <= l_{p-1} <= j+n-p of
//   binom(2l_0, k_1) binom(2l_1 - k_1, k_2) ... binom(2l_{p-1} - k_1 - ... - k_{p-1}, k_p).
// Out-of-range chains vanish through the binomials.
inline BigInt chain_coefficient(const Composition& parts, int j, int n,
                                ChainBound bound = ChainBound::Bounded) {
    const int p = static_cast<int>(parts.size());
    if (p < 1) throw std::invalid_argument("chain_coefficient: empty composition");
    int total = 0;
    for (int k : parts) {
        if (k < 0) throw std::invalid_argument("chain_coefficient: negative part");
        total += k;
    }
    if (total != 2 * (n - p))
        throw std::invalid_argument("chain_coefficient: parts must sum to 2(n - p)");
    if (p > j + n)
        throw std::invalid_argument("chain_coefficient: composition longer than j + n");

    const int top = j + n - p;
    BigInt sum = 0;
    // chain[i] = l_i; iterate nondecreasing chains bounded by `top`.
    std::vector<int> chain(p, 0);
    while (true) {
        if (bound == ChainBound::Bounded || chain[p - 1] == top) {
            BigInt product = 1;
            int consumed = 0;
            for (int i = 0; i < p && product != 0; ++i) {
                product *= binomial(2 * chain[i] - consumed, parts[i]);
                consumed += parts[i];
            }
            sum += product;
        }
        int pos = p - 1;
        while (pos >= 0 && chain[pos] == top) --pos;
        if (pos < 0) break;
        const int next = chain[pos] + 1;
        for (int i = pos; i < p; ++i) chain[i] = next;
    }
    return sum;
}

namespace detail {

// Shared outer sum of both routes:
//   G_n = (2n)!/(2 n!) * sum_{j=0}^{n} binom(n+1/2, j+1/2) (-1)^j / (4^j j! (j+n)!) P_nj
// with P_nj supplied either by the operator engine or by the closed sum.
template <typename PTerm>
NCPoly assemble_g(int n, PTerm&& p_term) {
    NCPoly g;
    for (int j = 0; j <= n; ++j) {
        Rational factor = half_integer_binomial(n, j, 1);
        factor /= power_of(4, j) * factorial(j) * factorial(j + n);
        if (j % 2 != 0) factor = -factor;
        g += factor * p_term(j);
    }
    g *= Rational(factorial(2 * n), 2 * factorial(n));
    return g;
}

}  // namespace detail

// Operator route.
inline NCPoly g_operator_route(int n, int max_level = kDefaultMaxLevel) {
    detail::check_level(n, max_level);
    return detail::assemble_g(n, [n](int j) { return schrodinger_power_moment(n, j); });
}

// Closed combinatorial route. P_nj = (2j)! sum_p sum_k chain_coefficient * word(k),
// with p ascending and compositions in lexicographic order.
inline NCPoly g_closed_route(int n, ChainBound bound = ChainBound::Bounded,
                             int max_level = kDefaultMaxLevel) {
    detail::check_level(n, max_level);
    return detail::assemble_g(n, [n, bound](int j) {
        NCPoly p_nj;
        for (int p = 1; p <= j + n && p <= n; ++p) {
            for (const Composition& k : compositions(2 * (n - p), p)) {
                const BigInt count = chain_coefficient(k, j, n, bound);
                if (count != 0) p_nj.add_term(k, Rational(count));
            }
        }
        p_nj *= Rational(factorial(2 * j));
        return p_nj;
    });
}

// Heat expansion coefficient h_n of the Schrodinger operator:
// h_n = (2 n!/(2n)!) G_n for n >= 1, with h_0 the identity.
inline NCPoly schrodinger_heat_coefficient(int n, int max_level = kDefaultMaxLevel) {
    if (n < 0) throw std::invalid_argument("schrodinger_heat_coefficient: n must be >= 0");
    if (n == 0) return NCPoly::one();
    NCPoly g = g_operator_route(n, max_level);
    g *= Rational(2 * factorial(n), factorial(2 * n));
    return g;
}

// Right-hand side of the n-th flow, dU/dt = d/dx G_n[U].
inline NCPoly flow_rhs(int n, int max_level = kDefaultMaxLevel) {
    return derivative(g_operator_route(n, max_level));
}

}  // namespace kdvheat
