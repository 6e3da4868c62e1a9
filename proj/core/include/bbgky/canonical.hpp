#ifndef BBGKY_CANONICAL_HPP
#define BBGKY_CANONICAL_HPP

#include <vector>

#include "bbgky/term.hpp"

namespace bbgky {

//Normal form:
//  * nested zero/one absorbed ([V, 1] = 0, empty products = 1, ...)
//  * product factors sorted densities-first, then by index list
//  * factors of a commutator argument that touch neither operator index are
//    hoisted out into a mixed term (they commute with V and pass the trace)
//Idempotent; operator pair order is left alone (it is declaration order).
Term canonicalize(const Term& t);

//structural total order on canonical terms; drives the deterministic layout
//of every derived equation
int compare(const Term& a, const Term& b);

//equality modulo canonical ordering; families match only on identical letter
//and exclusion set (no renaming)
bool terms_equal(const Term& a, const Term& b);

//replace one family summation: the binder at the operator (or trace) slot
//becomes the given single and every bound occurrence of the letter follows
Term substitute_bound(const Term& t, char letter, const Index& single);

//split every family sum whose letter matches a pivot and which does not
//already exclude it:  sum_F X  ->  X|_{F:=F1} + sum_{F/F1} X
std::vector<SignedTerm> refine_family_sums(const std::vector<SignedTerm>& terms,
                                           const std::vector<Index>& pivots);

//Leibniz derivative of a plain product: one output per factor, with exactly
//that factor deriv-flagged
std::vector<Term> take_derivative(const Term& product);

//canonicalize, cancel +X/-X pairs, sort; the workhorse behind equation rhs
std::vector<SignedTerm> normalize_sum(std::vector<SignedTerm> terms);

}  // namespace bbgky

#endif
