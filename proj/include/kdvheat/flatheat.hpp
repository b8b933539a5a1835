// Heat kernel endomorphisms A_n and traces a_n for flat-space Laplace type
// operators D = -(sum_i d_i^2 + sum_k B_k d_k + C) in dimension d, with
// formal noncommuting matrix symbols B_k, C and their partial derivatives.
// The overall (4 pi)^{-d/2} prefactor stays formal; every stored
// coefficient is an exact rational.
#pragma once

#include "kdvheat/ncpoly.hpp"
#include "kdvheat/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kdvheat {

using MultiIndex = std::vector<int>;

inline int multi_index_order(const MultiIndex& alpha) {
    return std::accumulate(alpha.begin(), alpha.end(), 0);
}

// A symbol B_1..B_d or C together with a derivative multi-index. The
// symbol is encoded as 0..d-1 for B_1..B_d and d for C, so the natural
// integer order places C after every B.
struct MultiLetter {
    int sym = 0;
    MultiIndex alpha;

    int dim() const { return static_cast<int>(alpha.size()); }
    bool is_c() const { return sym == dim(); }

    // B letters carry first-order, C zeroth-order symbols.
    int weight() const { return (is_c() ? 2 : 1) + multi_index_order(alpha); }

    auto operator<=>(const MultiLetter&) const = default;
};

inline MultiLetter b_letter(int k, int dim) {
    if (k < 1 || k > dim) throw std::invalid_argument("b_letter: index out of range");
    return MultiLetter{k - 1, MultiIndex(dim, 0)};
}

inline MultiLetter c_letter(int dim) { return MultiLetter{dim, MultiIndex(dim, 0)}; }

using MultiWord = std::vector<MultiLetter>;

inline int multi_word_weight(const MultiWord& w) {
    int total = 0;
    for (const auto& letter : w) total += letter.weight();
    return total;
}

struct MultiWordLess {
    bool operator()(const MultiWord& a, const MultiWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        const int wa = multi_word_weight(a);
        const int wb = multi_word_weight(b);
        if (wa != wb) return wa < wb;
        return a < b;
    }
};

// Lexicographically minimal rotation; the canonical representative of a
// word under the cyclic invariance of the trace.
inline MultiWord minimal_rotation(const MultiWord& w) {
    if (w.size() < 2) return w;
    MultiWord best = w;
    MultiWord candidate = w;
    for (std::size_t shift = 1; shift < w.size(); ++shift) {
        std::rotate(candidate.begin(), candidate.begin() + 1, candidate.end());
        if (candidate < best) best = candidate;
    }
    return best;
}

namespace detail {

template <typename Derived>
class MultiWordPoly {
  public:
    using TermMap = std::map<MultiWord, Rational, MultiWordLess>;

    explicit MultiWordPoly(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    }

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const MultiWord& w) const {
        const auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(MultiWord w, Rational c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Derived& operator+=(const Derived& other) {
        require_same_dim(other);
        for (const auto& [w, c] : other.terms()) add_term(w, c);
        return static_cast<Derived&>(*this);
    }

    Derived& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [w, c] : terms_) c *= s;
        }
        return static_cast<Derived&>(*this);
    }

    bool operator==(const MultiWordPoly& other) const {
        return dim_ == other.dim_ && terms_ == other.terms_;
    }

  protected:
    void require_same_dim(const MultiWordPoly& other) const {
        if (dim_ != other.dim_)
            throw std::invalid_argument("dimension mismatch between polynomials");
    }

  private:
    int dim_;
    TermMap terms_;
};

}  // namespace detail

// Endomorphism-valued polynomial; the identity word is the identity
// endomorphism and the formal prefactor (4 pi)^{-dim/2} is implied.
class EndoPoly : public detail::MultiWordPoly<EndoPoly> {
  public:
    using MultiWordPoly::MultiWordPoly;
    static EndoPoly identity(int dim) {
        EndoPoly e(dim);
        e.add_term(MultiWord{}, 1);
        return e;
    }
};

// Fiber-traced polynomial: every stored word is the minimal rotation of
// its cyclic class; the empty word stands for the formal rank symbol r.
class TracePoly : public detail::MultiWordPoly<TracePoly> {
  public:
    using MultiWordPoly::MultiWordPoly;
};

inline TracePoly trace(const EndoPoly& endo) {
    TracePoly t(endo.dim());
    for (const auto& [w, c] : endo.terms()) t.add_term(minimal_rotation(w), c);
    return t;
}

template <typename Poly>
bool is_homogeneous(const Poly& p, int weight) {
    for (const auto& [w, c] : p.terms())
        if (multi_word_weight(w) != weight) return false;
    return true;
}

// Terms free of B letters; with nonzero B these are exactly the terms the
// with_B = false fast path produces.
inline EndoPoly without_b_letters(const EndoPoly& endo) {
    EndoPoly out(endo.dim());
    for (const auto& [w, c] : endo.terms()) {
        const bool has_b = std::any_of(w.begin(), w.end(),
                                       [](const MultiLetter& l) { return !l.is_c(); });
        if (!has_b) out.add_term(w, c);
    }
    return out;
}

// --- the jet the operator powers act on ------------------------------------

class MultiJet {
  public:
    using Key = std::pair<MultiIndex, MultiWord>;  // (y powers, word)

    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (a.first != b.first) return a.first < b.first;
            return MultiWordLess{}(a.second, b.second);
        }
    };

    using TermMap = std::map<Key, Rational, KeyLess>;

    explicit MultiJet(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("jet dimension must be >= 1");
    }

    int dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }

    void add_term(MultiIndex beta, MultiWord w, Rational c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(Key{std::move(beta), std::move(w)}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const MultiJet& other) const {
        return dim_ == other.dim_ && terms_ == other.terms_;
    }

    void prune_above(int max_order) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (multi_index_order(it->first.first) > max_order) it = terms_.erase(it);
            else ++it;
        }
    }

    // Restriction to y = 0.
    EndoPoly constant_part() const {
        EndoPoly e(dim_);
        for (const auto& [key, c] : terms_)
            if (multi_index_order(key.first) == 0) e.add_term(key.second, c);
        return e;
    }

  private:
    int dim_;
    TermMap terms_;
};

// Partial derivative along one axis: power rule on the y exponents plus
// Leibniz over the letters.
inline MultiJet partial_derivative(const MultiJet& m, int axis) {
    if (axis < 0 || axis >= m.dim())
        throw std::invalid_argument("partial_derivative: axis out of range");
    MultiJet r(m.dim());
    for (const auto& [key, c] : m.terms()) {
        const auto& [beta, w] = key;
        if (beta[axis] > 0) {
            MultiIndex lowered = beta;
            --lowered[axis];
            r.add_term(std::move(lowered), w, c * beta[axis]);
        }
        for (std::size_t pos = 0; pos < w.size(); ++pos) {
            MultiWord d = w;
            ++d[pos].alpha[axis];
            r.add_term(beta, std::move(d), c);
        }
    }
    return r;
}

namespace detail {

inline MultiJet left_multiply(const MultiJet& m, const MultiLetter& letter) {
    MultiJet r(m.dim());
    for (const auto& [key, c] : m.terms()) {
        MultiWord w;
        w.reserve(key.second.size() + 1);
        w.push_back(letter);
        w.insert(w.end(), key.second.begin(), key.second.end());
        r.add_term(key.first, std::move(w), c);
    }
    return r;
}

inline void accumulate(MultiJet& dest, const MultiJet& src, const Rational& scale) {
    for (const auto& [key, c] : src.terms()) dest.add_term(key.first, key.second, c * scale);
}

}  // namespace detail

// One application of D = -(sum_i d_i^2 + sum_k B_k d_k + C). The with_b
// fast path skips the B branches entirely.
inline MultiJet apply_laplace_type(const MultiJet& m, bool with_b = true) {
    const int dim = m.dim();
    MultiJet r(dim);
    for (int i = 0; i < dim; ++i) {
        const MultiJet first = partial_derivative(m, i);
        detail::accumulate(r, partial_derivative(first, i), -1);
        if (with_b) detail::accumulate(r, detail::left_multiply(first, b_letter(i + 1, dim)), -1);
    }
    detail::accumulate(r, detail::left_multiply(m, c_letter(dim)), -1);
    return r;
}

// (sum_i y_i^2)^j expanded with exact multinomial coefficients.
inline MultiJet distance_squared_power(int j, int dim) {
    if (j < 0) throw std::invalid_argument("distance_squared_power: j must be >= 0");
    MultiJet jet(dim);
    MultiIndex split(dim, 0);
    // enumerate all ways to distribute j among the dim axes
    const BigInt j_fact = factorial(j);
    const std::function<void(int, int)> recurse = [&](int axis, int remaining) {
        if (axis == dim - 1) {
            split[axis] = remaining;
            BigInt denom = 1;
            MultiIndex beta(dim);
            for (int i = 0; i < dim; ++i) {
                denom *= factorial(split[i]);
                beta[i] = 2 * split[i];
            }
            jet.add_term(std::move(beta), MultiWord{}, Rational(j_fact / denom));
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            split[axis] = take;
            recurse(axis + 1, remaining - take);
        }
    };
    recurse(0, j);
    return jet;
}

inline constexpr int kDefaultMaxHeatLevelDim1 = 8;
inline constexpr int kDefaultMaxHeatLevelHighDim = 3;

// A_n(x, D) for the flat metric, evaluated at the origin:
//   A_n = (4 pi)^{-d/2} (-1)^n sum_{j=0}^{3n}
//         binom(3n + d/2, j + d/2) / (4^j j! (j+n)!) D^{j+n}(rho^{2j} I)|_{y=0}.
// Term growth is steep for d >= 2, so levels above 3 require allow_deep.
inline EndoPoly heat_endomorphism(int n, int dim, bool with_b = true, bool allow_deep = false) {
    if (n < 0) throw std::invalid_argument("heat_endomorphism: n must be >= 0");
    if (dim < 1) throw std::invalid_argument("heat_endomorphism: dim must be >= 1");
    const int cap = dim >= 2 ? kDefaultMaxHeatLevelHighDim : kDefaultMaxHeatLevelDim1;
    if (!allow_deep && n > cap)
        throw std::invalid_argument("heat_endomorphism: level " + std::to_string(n) +
                                    " exceeds the default cap for dimension " +
                                    std::to_string(dim) + " (pass allow_deep to override)");

    EndoPoly result(dim);
    for (int j = 0; j <= 3 * n; ++j) {
        MultiJet jet = distance_squared_power(j, dim);
        const int applications = j + n;
        for (int step = 0; step < applications; ++step) {
            jet = apply_laplace_type(jet, with_b);
            jet.prune_above(2 * (applications - step - 1));
        }
        Rational factor = half_integer_binomial(3 * n, j, dim);
        factor /= power_of(4, j) * factorial(j) * factorial(j + n);
        EndoPoly contribution = jet.constant_part();
        contribution *= factor;
        result += contribution;
    }
    if (n % 2 != 0) result *= Rational(-1);
    return result;
}

inline TracePoly heat_invariant_trace(int n, int dim, bool with_b = true,
                                      bool allow_deep = false) {
    return trace(heat_endomorphism(n, dim, with_b, allow_deep));
}

// --- dimension-one reduction ----------------------------------------------

// For dim = 1 and no B letters the symbols C^{(a)} are the derivatives of
// the Schrodinger potential; the words transcribe directly.
inline NCPoly as_potential_polynomial(const EndoPoly& endo) {
    if (endo.dim() != 1)
        throw std::invalid_argument("as_potential_polynomial: requires dimension 1");
    NCPoly p;
    for (const auto& [w, c] : endo.terms()) {
        Word letters;
        letters.reserve(w.size());
        for (const auto& letter : w) {
            if (!letter.is_c())
                throw std::invalid_argument("as_potential_polynomial: B letters present");
            letters.push_back(letter.alpha[0]);
        }
        p.add_term(std::move(letters), c);
    }
    return p;
}

inline EndoPoly from_potential_polynomial(const NCPoly& p) {
    EndoPoly e(1);
    for (const auto& [w, c] : p.terms()) {
        MultiWord word;
        word.reserve(w.size());
        for (int k : w) word.push_back(MultiLetter{1, MultiIndex{k}});
        e.add_term(std::move(word), c);
    }
    return e;
}

// --- serialization ---------------------------------------------------------

namespace detail {

inline nlohmann::json letter_to_json(const MultiLetter& letter) {
    const std::string sym = letter.is_c() ? "C" : "B" + std::to_string(letter.sym + 1);
    return {{"sym", sym}, {"alpha", letter.alpha}};
}

inline MultiLetter letter_from_json(const nlohmann::json& rec) {
    if (!rec.contains("sym") || !rec.contains("alpha"))
        throw std::invalid_argument("letter record missing \"sym\" or \"alpha\"");
    const auto alpha = rec.at("alpha").get<MultiIndex>();
    const int dim = static_cast<int>(alpha.size());
    const auto sym = rec.at("sym").get<std::string>();
    if (sym == "C") return MultiLetter{dim, alpha};
    if (sym.size() >= 2 && sym[0] == 'B') {
        const int k = std::stoi(sym.substr(1));
        if (k >= 1 && k <= dim) return MultiLetter{k - 1, alpha};
    }
    throw std::invalid_argument("unknown letter symbol \"" + sym + "\"");
}

template <typename Poly>
nlohmann::json multiword_poly_to_json(const Poly& p) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& [w, c] : p.terms()) {
        nlohmann::json word = nlohmann::json::array();
        for (const auto& letter : w) word.push_back(letter_to_json(letter));
        records.push_back({{"coeff", rational_to_string(c)}, {"word", std::move(word)}});
    }
    return {{"prefactor", {{"four_pi_pow", p.dim()}}}, {"terms", std::move(records)}};
}

template <typename Poly>
Poly multiword_poly_from_json(const nlohmann::json& j) {
    if (!j.contains("prefactor") || !j.at("prefactor").contains("four_pi_pow"))
        throw std::invalid_argument("missing prefactor record");
    Poly p(j.at("prefactor").at("four_pi_pow").get<int>());
    for (const auto& rec : j.at("terms")) {
        MultiWord w;
        for (const auto& letter : rec.at("word")) w.push_back(letter_from_json(letter));
        p.add_term(std::move(w), rational_from_string(rec.at("coeff").get<std::string>()));
    }
    return p;
}

}  // namespace detail

inline nlohmann::json to_json(const EndoPoly& p) { return detail::multiword_poly_to_json(p); }
inline nlohmann::json to_json(const TracePoly& p) { return detail::multiword_poly_to_json(p); }

inline EndoPoly endopoly_from_json(const nlohmann::json& j) {
    return detail::multiword_poly_from_json<EndoPoly>(j);
}

inline TracePoly tracepoly_from_json(const nlohmann::json& j) {
    return detail::multiword_poly_from_json<TracePoly>(j);
}

// --- emission --------------------------------------------------------------

namespace detail {

inline std::string alpha_superscript(const MultiIndex& alpha, bool latex) {
    if (multi_index_order(alpha) == 0) return "";
    std::ostringstream out;
    out << (latex ? "^{(" : "^(");
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) out << ",";
        out << alpha[i];
    }
    out << (latex ? ")}" : ")");
    return out.str();
}

inline std::string letter_text(const MultiLetter& letter, bool latex) {
    std::string name;
    if (letter.is_c()) name = "C";
    else if (latex) name = "B_{" + std::to_string(letter.sym + 1) + "}";
    else name = "B" + std::to_string(letter.sym + 1);
    return name + alpha_superscript(letter.alpha, latex);
}

inline std::string prefactor_latex(int dim) {
    if (dim % 2 == 0) {
        const int halved = dim / 2;
        return halved == 1 ? "(4\\pi)^{-1}" : "(4\\pi)^{-" + std::to_string(halved) + "}";
    }
    return "(4\\pi)^{-" + std::to_string(dim) + "/2}";
}

inline std::string prefactor_text(int dim) {
    return dim % 2 == 0 ? "(4pi)^-" + std::to_string(dim / 2)
                        : "(4pi)^-" + std::to_string(dim) + "/2";
}

template <typename Poly>
std::string emit_multiword_poly(const Poly& p, bool latex, bool traced) {
    std::ostringstream out;
    out << (latex ? prefactor_latex(p.dim()) : prefactor_text(p.dim()));
    if (p.is_zero()) {
        out << (latex ? "\\cdot 0" : " * 0");
        return out.str();
    }
    out << (latex ? "\\left(" : " * (");
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        const Rational mag = abs(c);
        if (!first) out << (c < 0 ? (latex ? "-" : " - ") : (latex ? "+" : " + "));
        else if (c < 0) out << "-";
        first = false;
        const bool identity = w.empty();
        if (mag != 1 || (identity && !traced)) out << (latex ? latex_coeff(mag) : text_coeff(mag));
        if (identity) {
            if (traced) {
                if (mag != 1) out << (latex ? "" : " ");
                out << "r";
            }
        } else {
            if (!latex && (mag != 1)) out << " ";
            if (traced) out << (latex ? "\\operatorname{tr}(" : "tr(");
            std::size_t i = 0;
            while (i < w.size()) {
                std::size_t run = 1;
                while (i + run < w.size() && w[i + run] == w[i]) ++run;
                if (!latex && i > 0) out << " ";
                out << letter_text(w[i], latex);
                if (run > 1) out << (latex ? "^{" + std::to_string(run) + "}" : "^" + std::to_string(run));
                i += run;
            }
            if (traced) out << ")";
        }
    }
    out << (latex ? "\\right)" : ")");
    return out.str();
}

}  // namespace detail

inline std::string to_latex(const EndoPoly& p) { return detail::emit_multiword_poly(p, true, false); }
inline std::string to_text(const EndoPoly& p) { return detail::emit_multiword_poly(p, false, false); }
inline std::string to_latex(const TracePoly& p) { return detail::emit_multiword_poly(p, true, true); }
inline std::string to_text(const TracePoly& p) { return detail::emit_multiword_poly(p, false, true); }

}  // namespace kdvheat
