#ifndef BBGKY_TESTS_HELPERS_HPP
#define BBGKY_TESTS_HELPERS_HPP

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "bbgky/canonical.hpp"
#include "bbgky/term.hpp"

//shorthand builders shared by the test suites
namespace tb {

inline bbgky::Index ix(const char* label) { return bbgky::Index::single(label); }

inline bbgky::Index fam(char letter, std::vector<std::string> excluded = {}) {
    return bbgky::Index::family(letter, std::move(excluded));
}

inline std::vector<bbgky::Index> ixs(std::initializer_list<const char*> labels) {
    std::vector<bbgky::Index> out;
    for (const char* l : labels) out.push_back(ix(l));
    return out;
}

inline bbgky::MatrixFactor rho(std::initializer_list<const char*> labels, bool deriv = false) {
    return bbgky::MatrixFactor::density(ixs(labels), deriv);
}

inline bbgky::MatrixFactor g(std::initializer_list<const char*> labels, bool deriv = false) {
    return bbgky::MatrixFactor::correlation(ixs(labels), deriv);
}

//overloads for factors that mix singles with family indices
inline bbgky::MatrixFactor rho(std::vector<bbgky::Index> indices, bool deriv = false) {
    return bbgky::MatrixFactor::density(std::move(indices), deriv);
}

inline bbgky::MatrixFactor g(std::vector<bbgky::Index> indices, bool deriv = false) {
    return bbgky::MatrixFactor::correlation(std::move(indices), deriv);
}

inline bbgky::Term P(std::vector<bbgky::MatrixFactor> fs) {
    return bbgky::Term::product(std::move(fs));
}

inline bbgky::InteractionOp V(bbgky::Index a, bbgky::Index b) {
    return bbgky::InteractionOp{bbgky::PairedIndex(std::move(a), std::move(b))};
}

//multiset equality of signed sums, after canonicalizing the expectation
inline bool same_multiset(const std::vector<bbgky::SignedTerm>& got,
                          std::vector<bbgky::SignedTerm> want) {
    if (got.size() != want.size()) return false;
    for (auto& w : want) w.term = bbgky::canonicalize(w.term);
    for (const auto& gt : got) {
        auto it = std::find_if(want.begin(), want.end(), [&](const bbgky::SignedTerm& w) {
            return w.sign == gt.sign && bbgky::terms_equal(w.term, gt.term);
        });
        if (it == want.end()) return false;
        want.erase(it);
    }
    return want.empty();
}

}  // namespace tb

#endif
