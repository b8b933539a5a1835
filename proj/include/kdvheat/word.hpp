// Words are ordered products U_{k1}...U_{kp} of formal derivative symbols,
// encoded by their derivative orders. The empty word is the identity.
#pragma once

#include <numeric>
#include <vector>

namespace kdvheat {

using Word = std::vector<int>;

// Grading under which the hierarchy polynomials are homogeneous:
// a letter k weighs k + 2.
inline int word_weight(const Word& w) {
    return std::accumulate(w.begin(), w.end(), 0) + 2 * static_cast<int>(w.size());
}

// Canonical term order: degree, then weight, then lexicographic letters.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        const int wa = word_weight(a);
        const int wb = word_weight(b);
        if (wa != wb) return wa < wb;
        return a < b;
    }
};

}  // namespace kdvheat
