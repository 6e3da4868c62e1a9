#include "bbgky/trace.hpp"

#include <algorithm>

#include "bbgky/canonical.hpp"

namespace bbgky {

TraceSet::TraceSet(std::vector<Index> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end(),
            [](const Index& a, const Index& b) { return compare(a, b) < 0; });
  for (size_t i = 0; i < indices_.size(); ++i) {
    const Index& a = indices_[i];
    if (a.is_single() && a.ordinal() == 0)
      throw DomainError("trace set entry '" + a.label() + "' must carry an ordinal");
    for (size_t j = i + 1; j < indices_.size(); ++j)
      if (may_overlap(a, indices_[j]))
        throw DomainError("overlapping trace set entries '" + a.label() + "' and '" +
                          indices_[j].label() + "'");
  }
}

const Index* TraceSet::entry_covering(const Index& single) const {
  for (const auto& e : indices_) {
    if (e.is_single()) {
      if (single.is_single() && e == single) return &e;
    } else if (e.letter() == single.letter() && single.is_single()) {
      if (single.is_bound() || !e.excludes(single.label())) return &e;
    }
  }
  return nullptr;
}

const Index* TraceSet::family_entry(char letter) const {
  for (const auto& e : indices_)
    if (e.is_family() && e.letter() == letter) return &e;
  return nullptr;
}

namespace {

bool entry_touches_factor(const Index& entry, const MatrixFactor& f) {
  for (const auto& i : f.indices())
    if (may_overlap(entry, i)) return true;
  return false;
}

}  // namespace

Term trace_matrix(const MatrixFactor& factor, const TraceSet& s) {
  if (factor.deriv()) throw DomainError("cannot trace a derivative factor");
  if (factor.kind() == MatrixFactor::Kind::correlation) {
    for (const auto& e : s.indices())
      for (const auto& i : factor.indices())
        if (may_overlap(e, i)) return Term::zero();
    return Term::factor(factor);
  }
  std::vector<bool> used(s.indices().size(), false);
  std::vector<Index> rest;
  for (const auto& i : factor.indices()) {
    if (i.is_single()) {
      bool traced = false;
      for (size_t k = 0; k < s.indices().size(); ++k) {
        if (may_overlap(s.indices()[k], i)) {
          traced = true;
          used[k] = true;
          break;
        }
      }
      if (!traced) rest.push_back(i);
      continue;
    }
    //family index: a family entry takes out everything but its exclusions,
    //single entries peel individual members off
    Index fam = i;
    bool replaced = false;
    for (size_t k = 0; k < s.indices().size(); ++k) {
      const Index& e = s.indices()[k];
      if (e.letter() != i.letter()) continue;
      if (e.is_family()) {
        for (const auto& x : fam.excluded())
          if (!e.excludes(x))
            throw DomainError("trace set covers member '" + x +
                              "' absent from the density");
        for (const auto& x : e.excluded())
          if (!fam.excludes(x)) rest.push_back(Index::single(x));
        used[k] = true;
        replaced = true;
      } else {
        if (fam.excludes(e.label()))
          throw DomainError("tracing member '" + e.label() +
                            "' absent from the density");
        fam = fam.with_excluded({e.label()});
        used[k] = true;
      }
    }
    if (!replaced) rest.push_back(fam);
  }
  for (size_t k = 0; k < s.indices().size(); ++k)
    if (!used[k])
      throw DomainError("trace index '" + s.indices()[k].label() +
                        "' not contained in the density");
  if (rest.empty()) return Term::one();
  return Term::factor(MatrixFactor::density(std::move(rest)));
}

Term trace_product(const Term& product, const TraceSet& s) {
  if (product.is_zero()) return Term::zero();
  if (product.is_one()) {
    if (!s.empty()) throw DomainError("tracing the identity over a nonempty set");
    return Term::one();
  }
  if (product.kind() != Term::Kind::product)
    throw DomainError("trace_product wants a plain matrix product");
  std::vector<bool> touched(s.indices().size(), false);
  std::vector<MatrixFactor> out;
  for (const auto& f : product.factors()) {
    std::vector<Index> local;
    for (size_t k = 0; k < s.indices().size(); ++k) {
      if (entry_touches_factor(s.indices()[k], f)) {
        local.push_back(s.indices()[k]);
        touched[k] = true;
      }
    }
    Term traced = trace_matrix(f, TraceSet(std::move(local)));
    if (traced.is_zero()) return Term::zero();
    if (traced.is_one()) continue;
    for (const auto& tf : traced.factors()) out.push_back(tf);
  }
  for (size_t k = 0; k < s.indices().size(); ++k)
    if (!touched[k])
      throw DomainError("trace index '" + s.indices()[k].label() +
                        "' not contained in the product");
  return Term::product(std::move(out));
}

namespace {

//replace a factor's family index of the given letter by the trace entry's
//excluded members plus the bare letter itself; this is the matrix that rides
//inside sum_G Tr_G [V, ...]
MatrixFactor retain_bound_member(const MatrixFactor& f, const Index& entry) {
  std::vector<Index> idx;
  bool hit = false;
  for (const auto& i : f.indices()) {
    if (i.is_family() && i.letter() == entry.letter()) {
      hit = true;
      for (const auto& x : i.excluded())
        if (!entry.excludes(x))
          throw DomainError("trace set covers member '" + x +
                            "' absent from the density");
      for (const auto& x : entry.excluded())
        if (!i.excludes(x)) idx.push_back(Index::single(x));
      idx.push_back(Index::single(std::string(1, entry.letter())));
    } else {
      idx.push_back(i);
    }
  }
  if (!hit)
    throw DomainError(std::string("no family index '") + entry.letter() +
                      "' to keep a bound member of");
  return f.kind() == MatrixFactor::Kind::density
             ? MatrixFactor::density(std::move(idx), f.deriv())
             : MatrixFactor::correlation(std::move(idx), f.deriv());
}

struct OpVariant {
  Index first;
  Index second;
};

//linearity: peel the trace set's excluded members (and stray single entries)
//off family operator sums so each variant classifies cleanly
void split_position(std::vector<OpVariant>& variants, bool first_pos, const TraceSet& s) {
  std::vector<OpVariant> out;
  for (const auto& v : variants) {
    const Index& oi = first_pos ? v.first : v.second;
    if (!oi.is_family()) {
      out.push_back(v);
      continue;
    }
    std::vector<std::string> split_points;
    if (const Index* fe = s.family_entry(oi.letter())) {
      for (const auto& x : fe->excluded())
        if (!oi.excludes(x)) split_points.push_back(x);
    }
    for (const auto& e : s.indices())
      if (e.is_single() && e.letter() == oi.letter() && !oi.excludes(e.label()))
        split_points.push_back(e.label());
    std::sort(split_points.begin(), split_points.end(),
              [](const auto& a, const auto& b) { return compare_labels(a, b) < 0; });
    for (const auto& p : split_points) {
      OpVariant w = v;
      (first_pos ? w.first : w.second) = Index::single(p);
      out.push_back(w);
    }
    OpVariant rest = v;
    (first_pos ? rest.first : rest.second) = oi.with_excluded(split_points);
    out.push_back(rest);
  }
  variants = std::move(out);
}

bool op_index_traced(const Index& oi, const TraceSet& s) {
  if (oi.is_family()) return s.family_entry(oi.letter()) != nullptr;
  return s.covers(oi);
}

//trace set minus the traced operator index' own entry
TraceSet drop_entry(const TraceSet& s, const Index& entry) {
  std::vector<Index> rest;
  for (const auto& e : s.indices())
    if (!(e == entry)) rest.push_back(e);
  return TraceSet(std::move(rest));
}

TraceSet narrow_entry(const TraceSet& s, const Index& entry, const Index& traced_single) {
  std::vector<Index> rest;
  for (const auto& e : s.indices()) {
    if (e == entry) {
      if (e.is_single()) continue;  //drop it, the member stays inside
      rest.push_back(e.with_excluded({traced_single.label()}));
    } else {
      rest.push_back(e);
    }
  }
  return TraceSet(std::move(rest));
}

}  // namespace

std::vector<SignedTerm> trace_commutator(const SignedTerm& comm, const TraceSet& s) {
  if (comm.term.kind() != Term::Kind::comm)
    throw DomainError("trace_commutator wants a commutator term");
  const Term& arg = comm.term.arg();
  std::vector<OpVariant> variants{{comm.term.op().pair.first, comm.term.op().pair.second}};
  split_position(variants, true, s);
  split_position(variants, false, s);

  std::vector<SignedTerm> out;
  for (const auto& v : variants) {
    bool first_in = op_index_traced(v.first, s);
    bool second_in = op_index_traced(v.second, s);
    if (first_in && second_in) continue;  //Tr_uv [V_uv, X] = 0
    InteractionOp op{PairedIndex(v.first, v.second)};
    Term result = Term::zero();
    if (!first_in && !second_in) {
      result = Term::comm(op, trace_product(arg, s));
    } else {
      const Index& t = first_in ? v.first : v.second;
      Side side = first_in ? Side::first : Side::second;
      if (t.is_family()) {
        const Index* fe = s.family_entry(t.letter());
        std::vector<MatrixFactor> kept;
        for (const auto& f : arg.factors())
          kept.push_back(f.covers_letter(t.letter()) ? retain_bound_member(f, *fe) : f);
        Term rewritten = Term::product(std::move(kept));
        result = Term::trcomm(op, side, trace_product(rewritten, drop_entry(s, *fe)));
      } else {
        const Index* e = s.entry_covering(t);
        result = Term::trcomm(op, side, trace_product(arg, narrow_entry(s, *e, t)));
      }
    }
    Term c = canonicalize(result);
    if (!c.is_zero()) out.emplace_back(comm.sign, std::move(c));
  }
  return out;
}

}  // namespace bbgky
