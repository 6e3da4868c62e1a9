#ifndef BBGKY_TRACE_HPP
#define BBGKY_TRACE_HPP

#include <vector>

#include "bbgky/term.hpp"

namespace bbgky {

//set of subsystems to trace over: ordinal singles and families (optionally
//with exclusions).  Entries must not overlap each other.
class TraceSet {
 public:
  TraceSet() = default;
  explicit TraceSet(std::vector<Index> indices);

  const std::vector<Index>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }

  //entry covering a single (or bound) index, nullptr when untraced
  const Index* entry_covering(const Index& single) const;
  const Index* family_entry(char letter) const;
  bool covers(const Index& single) const { return entry_covering(single) != nullptr; }

 private:
  std::vector<Index> indices_;
};

//partial trace of one matrix factor.
//  density:      traced indices drop out; nothing left means identity
//  correlation:  tracing any own index kills the factor (zero)
//Tracing a density over an index it does not contain is a domain error.
Term trace_matrix(const MatrixFactor& factor, const TraceSet& s);

//distributes a trace over a product; each factor sees exactly the entries
//that touch it, and every entry must touch some factor
Term trace_product(const Term& product, const TraceSet& s);

//trace of [V_uv, M]: family operator sums split at the trace set's excluded
//members first, then per elementary commutator
//  neither u nor v traced   ->  [V_uv, Tr M]
//  exactly one traced       ->  traced commutator, the traced index stays in M
//  both traced              ->  zero (cyclic trace annihilation)
std::vector<SignedTerm> trace_commutator(const SignedTerm& comm, const TraceSet& s);

}  // namespace bbgky

#endif
