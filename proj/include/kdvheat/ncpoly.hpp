// Polynomials in the noncommuting variables U_0, U_1, U_2, ... with exact
// rational coefficients. Multiplication is word concatenation; terms are
// kept in the canonical (degree, weight, lex) order so that every emitter
// is deterministic. Zero coefficients are pruned eagerly, making equality
// structural.
#pragma once

#include "kdvheat/rational.hpp"
#include "kdvheat/word.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

namespace kdvheat {

class NCPoly {
  public:
    using TermMap = std::map<Word, Rational, WordLess>;

    NCPoly() = default;

    static NCPoly zero() { return NCPoly{}; }

    // The identity monomial (empty word).
    static NCPoly one() { return monomial(Word{}); }

    // The single letter U_k.
    static NCPoly variable(int k) { return monomial(Word{k}); }

    static NCPoly monomial(Word w, Rational c = 1) {
        NCPoly p;
        p.add_term(std::move(w), std::move(c));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(const Word& w) const {
        const auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Word w, Rational c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    NCPoly& operator+=(const NCPoly& other) {
        for (const auto& [w, c] : other.terms_) add_term(w, c);
        return *this;
    }

    NCPoly& operator-=(const NCPoly& other) {
        for (const auto& [w, c] : other.terms_) add_term(w, -c);
        return *this;
    }

    NCPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [w, c] : terms_) c *= s;
        }
        return *this;
    }

    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(NCPoly a, const Rational& s) { return a *= s; }
    friend NCPoly operator*(const Rational& s, NCPoly a) { return a *= s; }

    // Noncommutative product: bilinear extension of word concatenation.
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
        NCPoly r;
        for (const auto& [wa, ca] : a.terms_) {
            for (const auto& [wb, cb] : b.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add_term(std::move(w), ca * cb);
            }
        }
        return r;
    }

    bool operator==(const NCPoly& other) const { return terms_ == other.terms_; }

  private:
    TermMap terms_;
};

// Formal x-derivative: Leibniz over the letters of each word, U_k -> U_{k+1}.
inline NCPoly derivative(const NCPoly& p) {
    NCPoly r;
    for (const auto& [w, c] : p.terms()) {
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
            Word d = w;
            ++d[pos];
            r.add_term(std::move(d), c);
        }
    }
    return r;
}

// Transposition anti-automorphism: reverses the letters of every word.
inline NCPoly reversed(const NCPoly& p) {
    NCPoly r;
    for (const auto& [w, c] : p.terms()) {
        Word rev(w.rbegin(), w.rend());
        r.add_term(std::move(rev), c);
    }
    return r;
}

// Scalar (rank 1) reduction: all letters commute, words sort ascending.
inline NCPoly abelianized(const NCPoly& p) {
    NCPoly r;
    for (const auto& [w, c] : p.terms()) {
        Word sorted = w;
        std::sort(sorted.begin(), sorted.end());
        r.add_term(std::move(sorted), c);
    }
    return r;
}

inline bool is_homogeneous(const NCPoly& p, int weight) {
    for (const auto& [w, c] : p.terms())
        if (word_weight(w) != weight) return false;
    return true;
}

struct TermDifference {
    Word word;
    Rational left, right;
};

// First term (in canonical order) on which two polynomials disagree.
inline std::optional<TermDifference> first_difference(const NCPoly& a, const NCPoly& b) {
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const WordLess less;
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && less(ia->first, ib->first))) {
            return TermDifference{ia->first, ia->second, 0};
        }
        if (ia == a.terms().end() || less(ib->first, ia->first)) {
            return TermDifference{ib->first, 0, ib->second};
        }
        if (ia->second != ib->second) {
            return TermDifference{ia->first, ia->second, ib->second};
        }
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

// --- serialization ---------------------------------------------------------

inline nlohmann::json to_json(const NCPoly& p) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& [w, c] : p.terms()) {
        records.push_back({{"coeff", rational_to_string(c)}, {"word", w}});
    }
    return records;
}

inline NCPoly ncpoly_from_json(const nlohmann::json& records) {
    if (!records.is_array())
        throw std::invalid_argument("ncpoly: expected a JSON array of term records");
    NCPoly p;
    for (const auto& rec : records) {
        if (!rec.contains("coeff") || !rec.contains("word"))
            throw std::invalid_argument("ncpoly: term record missing \"coeff\" or \"word\"");
        p.add_term(rec.at("word").get<Word>(),
                   rational_from_string(rec.at("coeff").get<std::string>()));
    }
    return p;
}

// --- emission --------------------------------------------------------------

namespace detail {

// Runs of equal letters collapse to powers in both human-readable formats.
template <typename Emit>
void emit_word_factors(const Word& w, Emit&& emit) {
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t run = 1;
        while (i + run < w.size() && w[i + run] == w[i]) ++run;
        emit(w[i], static_cast<int>(run));
        i += run;
    }
}

inline std::string latex_coeff(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    const std::string sign = q < 0 ? "-" : "";
    return sign + "\\frac{" + BigInt(abs(numerator(q))).str() + "}{" + denominator(q).str() + "}";
}

inline std::string text_coeff(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace detail

inline std::string to_latex(const NCPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        const Rational mag = abs(c);
        if (!first) out << (c < 0 ? "-" : "+");
        else if (c < 0) out << "-";
        first = false;
        if (mag != 1 || w.empty()) out << detail::latex_coeff(mag);
        detail::emit_word_factors(w, [&out](int k, int pow) {
            out << "U_{" << k << "}";
            if (pow > 1) out << "^{" << pow << "}";
        });
    }
    return out.str();
}

inline std::string to_text(const NCPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        const Rational mag = abs(c);
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        first = false;
        bool need_space = false;
        if (mag != 1 || w.empty()) {
            out << detail::text_coeff(mag);
            need_space = true;
        }
        detail::emit_word_factors(w, [&](int k, int pow) {
            if (need_space) out << " ";
            out << "U" << k;
            if (pow > 1) out << "^" << pow;
            need_space = true;
        });
    }
    return out.str();
}

}  // namespace kdvheat
