#ifndef BBGKY_CLUSTER_HPP
#define BBGKY_CLUSTER_HPP

#include <vector>

#include "bbgky/term.hpp"

namespace bbgky {

//How a reduced density matrix decomposes into correlation clusters.
//  paper:   product of singles, plus one correlation over every subset of
//           2..n-1 indices times the complementary singles, plus the full
//           correlation (at most one g per term)
//  ursell:  full set-partition expansion (singleton blocks are densities,
//           larger blocks correlations); exact at every order
enum class ExpansionMode { paper, ursell };

//terms the n-index density splits into; the full correlation always comes
//last, which take_derivative relies on
std::vector<Term> cluster_expand(const std::vector<Index>& indices, ExpansionMode mode);

//replace a commutator's single density argument by its cluster expansion;
//family indices must have been eliminated by tracing first
std::vector<SignedTerm> expand_commutator(const SignedTerm& term, ExpansionMode mode);

size_t cluster_term_count(size_t n, ExpansionMode mode);

}  // namespace bbgky

#endif
