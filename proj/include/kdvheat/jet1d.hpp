// Univariate operator calculus: polynomial-in-x states with noncommutative
// word coefficients, acted on by powers of L = d^2/dx^2 + U(x).
#pragma once

#include "kdvheat/ncpoly.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace kdvheat {

// One term is c * x^a * U_{k1}(x)...U_{kp}(x).
class Jet1D {
  public:
    using Key = std::pair<int, Word>;  // (x exponent, word)

    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (a.first != b.first) return a.first < b.first;
            return WordLess{}(a.second, b.second);
        }
    };

    using TermMap = std::map<Key, Rational, KeyLess>;

    Jet1D() = default;

    static Jet1D one() { return monomial_x(0); }

    static Jet1D monomial_x(int exponent) {
        if (exponent < 0) throw std::invalid_argument("jet: negative x exponent");
        Jet1D j;
        j.add_term(exponent, Word{}, 1);
        return j;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int exponent, Word w, Rational c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(Key{exponent, std::move(w)}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Jet1D& operator+=(const Jet1D& other) {
        for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
        return *this;
    }

    bool operator==(const Jet1D& other) const { return terms_ == other.terms_; }

    // Terms whose x power exceeds the bound cannot reach x^0 under the
    // remaining operator applications and may be dropped.
    void prune_above(int max_exponent) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.first > max_exponent) it = terms_.erase(it);
            else ++it;
        }
    }

    // Restriction to x = 0 with the letters read off as U_k.
    NCPoly constant_term() const {
        NCPoly p;
        for (const auto& [key, c] : terms_)
            if (key.first == 0) p.add_term(key.second, c);
        return p;
    }

  private:
    TermMap terms_;
};

// Total x-derivative: power rule on the x exponent plus Leibniz over letters.
inline Jet1D derivative(const Jet1D& j) {
    Jet1D r;
    for (const auto& [key, c] : j.terms()) {
        const auto& [exponent, w] = key;
        if (exponent > 0) r.add_term(exponent - 1, w, c * exponent);
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
            Word d = w;
            ++d[pos];
            r.add_term(exponent, std::move(d), c);
        }
    }
    return r;
}

// One application of L: second derivative plus left multiplication by U.
inline Jet1D apply_schrodinger(const Jet1D& j) {
    Jet1D r = derivative(derivative(j));
    for (const auto& [key, c] : j.terms()) {
        Word w;
        w.reserve(key.second.size() + 1);
        w.push_back(0);
        w.insert(w.end(), key.second.begin(), key.second.end());
        r.add_term(key.first, std::move(w), c);
    }
    return r;
}

// Constant term of L^(j+n) applied to x^(2j): the building block of the
// operator route through the hierarchy. Homogeneous of weight 2n.
inline NCPoly schrodinger_power_moment(int n, int j) {
    if (n < 1) throw std::invalid_argument("schrodinger_power_moment: n must be >= 1");
    if (j < 0) throw std::invalid_argument("schrodinger_power_moment: j must be >= 0");
    const int applications = j + n;
    Jet1D jet = Jet1D::monomial_x(2 * j);
    for (int step = 0; step < applications; ++step) {
        jet = apply_schrodinger(jet);
        jet.prune_above(2 * (applications - step - 1));
    }
    return jet.constant_term();
}

}  // namespace kdvheat
