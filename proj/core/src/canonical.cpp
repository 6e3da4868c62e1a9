#include "bbgky/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace bbgky {

namespace {

bool factor_touches_op(const MatrixFactor& f, const InteractionOp& op) {
  for (const auto& i : f.indices())
    if (may_overlap(i, op.pair.first) || may_overlap(i, op.pair.second)) return true;
  return false;
}

std::vector<MatrixFactor> sorted_factors(std::vector<MatrixFactor> fs) {
  std::stable_sort(fs.begin(), fs.end(), [](const MatrixFactor& a, const MatrixFactor& b) {
    return compare(a, b) < 0;
  });
  return fs;
}

//rebuild a commutator after hoisting the factors that touch neither operator
//index; those commute with V and pass any trace over the operator pair
Term canonical_comm(const InteractionOp& op, std::optional<Side> traced, Term arg) {
  if (arg.is_zero()) return Term::zero();
  if (arg.is_one()) return Term::zero();  //[V, 1] = 0
  std::vector<MatrixFactor> inside;
  std::vector<MatrixFactor> outside;
  for (const auto& f : arg.factors())
    (factor_touches_op(f, op) ? inside : outside).push_back(f);
  if (inside.empty()) return Term::zero();  //argument commutes with V outright
  Term core = traced ? Term::trcomm(op, *traced, Term::product(sorted_factors(std::move(inside))))
                     : Term::comm(op, Term::product(sorted_factors(std::move(inside))));
  if (outside.empty()) return core;
  return Term::mixed(sorted_factors(std::move(outside)), std::move(core));
}

}  // namespace

Term canonicalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::zero:
    case Term::Kind::one:
      return t;
    case Term::Kind::product:
      return Term::product(sorted_factors(t.factors()));
    case Term::Kind::comm:
      return canonical_comm(t.op(), std::nullopt, canonicalize(t.arg()));
    case Term::Kind::trcomm:
      return canonical_comm(t.op(), t.traced_side(), canonicalize(t.arg()));
    case Term::Kind::mixed: {
      Term tail = canonicalize(t.tail());
      if (tail.is_zero()) return Term::zero();
      std::vector<MatrixFactor> fs = t.factors();
      if (tail.kind() == Term::Kind::mixed) {
        //the tail may have hoisted more factors; fold them into ours
        for (const auto& f : tail.factors()) fs.push_back(f);
        tail = tail.tail();
      }
      return Term::mixed(sorted_factors(std::move(fs)), std::move(tail));
    }
  }
  throw StructuralError("unreachable term kind");
}

namespace {

int kind_rank(Term::Kind k) {
  switch (k) {
    case Term::Kind::zero: return 0;
    case Term::Kind::one: return 1;
    case Term::Kind::product: return 2;
    case Term::Kind::comm: return 3;
    case Term::Kind::trcomm: return 4;
    case Term::Kind::mixed: return 5;
  }
  return 6;
}

int compare_factor_lists(const std::vector<MatrixFactor>& a,
                         const std::vector<MatrixFactor>& b) {
  for (size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (int c = compare(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace

int compare(const Term& a, const Term& b) {
  if (kind_rank(a.kind()) != kind_rank(b.kind()))
    return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::zero:
    case Term::Kind::one:
      return 0;
    case Term::Kind::product:
      return compare_factor_lists(a.factors(), b.factors());
    case Term::Kind::comm: {
      if (int c = compare(a.op().pair, b.op().pair)) return c;
      return compare(a.arg(), b.arg());
    }
    case Term::Kind::trcomm: {
      if (int c = compare(a.op().pair, b.op().pair)) return c;
      if (a.traced_side() != b.traced_side())
        return a.traced_side() == Side::first ? -1 : 1;
      return compare(a.arg(), b.arg());
    }
    case Term::Kind::mixed: {
      if (int c = compare(a.tail(), b.tail())) return c;
      return compare_factor_lists(a.factors(), b.factors());
    }
  }
  throw StructuralError("unreachable term kind");
}

bool terms_equal(const Term& a, const Term& b) {
  return compare(canonicalize(a), canonicalize(b)) == 0;
}

namespace {

MatrixFactor substitute_factor(const MatrixFactor& f, char letter, const Index& single) {
  bool hit = false;
  std::vector<Index> idx;
  idx.reserve(f.indices().size());
  for (const auto& i : f.indices()) {
    if (i.is_bound() && i.letter() == letter) {
      idx.push_back(single);
      hit = true;
    } else {
      idx.push_back(i);
    }
  }
  if (!hit) return f;
  return f.kind() == MatrixFactor::Kind::density
             ? MatrixFactor::density(std::move(idx), f.deriv())
             : MatrixFactor::correlation(std::move(idx), f.deriv());
}

Index substitute_op_index(const Index& i, char letter, const Index& single) {
  if (!i.is_family() || i.letter() != letter) return i;
  if (i.excludes(single.label()))
    throw StructuralError("substituting '" + single.label() +
                          "' into a sum that excludes it");
  return single;
}

}  // namespace

Term substitute_bound(const Term& t, char letter, const Index& single) {
  if (!single.is_single() || single.ordinal() == 0)
    throw StructuralError("substitution target must be an ordinal single");
  switch (t.kind()) {
    case Term::Kind::zero:
    case Term::Kind::one:
      return t;
    case Term::Kind::product: {
      std::vector<MatrixFactor> fs;
      fs.reserve(t.factors().size());
      for (const auto& f : t.factors()) fs.push_back(substitute_factor(f, letter, single));
      return Term::product(std::move(fs));
    }
    case Term::Kind::comm: {
      InteractionOp op{PairedIndex(substitute_op_index(t.op().pair.first, letter, single),
                                   substitute_op_index(t.op().pair.second, letter, single))};
      return Term::comm(std::move(op), substitute_bound(t.arg(), letter, single));
    }
    case Term::Kind::trcomm: {
      InteractionOp op{PairedIndex(substitute_op_index(t.op().pair.first, letter, single),
                                   substitute_op_index(t.op().pair.second, letter, single))};
      return Term::trcomm(std::move(op), t.traced_side(),
                          substitute_bound(t.arg(), letter, single));
    }
    case Term::Kind::mixed:
      return Term::mixed(t.factors(), substitute_bound(t.tail(), letter, single));
  }
  throw StructuralError("unreachable term kind");
}

namespace {

void expand_refinements(const Term& t, const std::vector<Index>& pivots,
                        std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::comm:
    case Term::Kind::trcomm: {
      const auto& pair = t.op().pair;
      for (const Index* oi : {&pair.first, &pair.second}) {
        if (!oi->is_family()) continue;
        for (const auto& p : pivots) {
          if (p.letter() != oi->letter() || oi->excludes(p.label())) continue;
          //sum_F X -> X|_{F:=p} + sum_{F/p} X, then keep splitting both halves
          expand_refinements(substitute_bound(t, oi->letter(), p), pivots, out);
          Index resid = oi->with_excluded({p.label()});
          InteractionOp op{PairedIndex(oi == &pair.first ? resid : pair.first,
                                       oi == &pair.first ? pair.second : resid)};
          Term rest = t.kind() == Term::Kind::comm
                          ? Term::comm(std::move(op), t.arg())
                          : Term::trcomm(std::move(op), t.traced_side(), t.arg());
          expand_refinements(rest, pivots, out);
          return;
        }
      }
      out.push_back(t);
      return;
    }
    case Term::Kind::mixed: {
      std::vector<Term> tails;
      expand_refinements(t.tail(), pivots, tails);
      for (auto& tl : tails) out.push_back(Term::mixed(t.factors(), std::move(tl)));
      return;
    }
    default:
      out.push_back(t);
      return;
  }
}

}  // namespace

std::vector<SignedTerm> refine_family_sums(const std::vector<SignedTerm>& terms,
                                           const std::vector<Index>& pivots) {
  std::vector<Index> ps = pivots;
  for (const auto& p : ps)
    if (!p.is_single() || p.ordinal() == 0)
      throw DomainError("refinement pivots must be ordinal singles");
  std::sort(ps.begin(), ps.end(), [](const Index& a, const Index& b) { return a < b; });
  std::vector<SignedTerm> out;
  for (const auto& st : terms) {
    std::vector<Term> parts;
    expand_refinements(st.term, ps, parts);
    for (auto& p : parts) {
      Term c = canonicalize(p);
      if (!c.is_zero()) out.emplace_back(st.sign, std::move(c));
    }
  }
  return out;
}

std::vector<Term> take_derivative(const Term& product) {
  if (product.is_zero() || product.is_one()) return {};
  if (product.kind() != Term::Kind::product)
    throw DomainError("take_derivative wants a plain matrix product");
  const auto& fs = product.factors();
  for (const auto& f : fs)
    if (f.deriv()) throw DomainError("take_derivative input already carries a derivative");
  std::vector<Term> out;
  out.reserve(fs.size());
  for (size_t k = 0; k < fs.size(); ++k) {
    std::vector<MatrixFactor> copy = fs;
    copy[k] = copy[k].with_deriv(true);
    out.push_back(Term::product(std::move(copy)));
  }
  return out;
}

std::vector<SignedTerm> normalize_sum(std::vector<SignedTerm> terms) {
  struct Cmp {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
  };
  std::map<Term, int, Cmp> net;
  for (auto& st : terms) {
    Term c = canonicalize(st.term);
    if (c.is_zero()) continue;
    net[std::move(c)] += st.sign;
  }
  std::vector<SignedTerm> out;
  for (const auto& [term, count] : net) {
    int sign = count < 0 ? -1 : 1;
    for (int i = 0; i < std::abs(count); ++i) out.emplace_back(sign, term);
  }
  return out;
}

}  // namespace bbgky
