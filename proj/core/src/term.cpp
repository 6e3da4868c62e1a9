#include "bbgky/term.hpp"

#include <algorithm>
#include <optional>

namespace bbgky {

namespace {

void check_factor_indices(const std::vector<Index>& indices) {
  for (size_t i = 0; i < indices.size(); ++i) {
    for (size_t j = i + 1; j < indices.size(); ++j) {
      const Index& a = indices[i];
      const Index& b = indices[j];
      if (a == b)
        throw StructuralError("duplicate index '" + a.label() + "' in matrix factor");
      if (a.letter() != b.letter()) continue;
      //two ordinals of one family are distinct subsystems, and an ordinal next
      //to a bound member is fine too (the enclosing sum excludes the ordinal);
      //a family stub clashing with an uncovered member is double counting
      bool a_plain = a.is_single() && a.ordinal() > 0;
      bool b_plain = b.is_single() && b.ordinal() > 0;
      if (a.is_single() && b.is_single() && (a_plain || b_plain)) continue;
      if ((a.is_family() && b_plain && a.excludes(b.label())) ||
          (b.is_family() && a_plain && b.excludes(a.label())))
        continue;
      throw StructuralError("overlapping indices '" + a.label() + "' and '" +
                            b.label() + "' in matrix factor");
    }
  }
}

}  // namespace

MatrixFactor MatrixFactor::density(std::vector<Index> indices, bool deriv) {
  if (indices.empty())
    throw StructuralError("density matrix needs at least one index");
  std::sort(indices.begin(), indices.end(),
            [](const Index& a, const Index& b) { return compare(a, b) < 0; });
  check_factor_indices(indices);
  MatrixFactor f;
  f.kind_ = Kind::density;
  f.deriv_ = deriv;
  f.indices_ = std::move(indices);
  return f;
}

MatrixFactor MatrixFactor::correlation(std::vector<Index> indices, bool deriv) {
  if (indices.size() < 2)
    throw StructuralError("correlation matrix needs at least two indices");
  for (const auto& i : indices)
    if (i.is_family())
      throw StructuralError("correlation matrix cannot carry a family index");
  std::sort(indices.begin(), indices.end(),
            [](const Index& a, const Index& b) { return compare(a, b) < 0; });
  check_factor_indices(indices);
  MatrixFactor f;
  f.kind_ = Kind::correlation;
  f.deriv_ = deriv;
  f.indices_ = std::move(indices);
  return f;
}

MatrixFactor MatrixFactor::with_deriv(bool deriv) const {
  MatrixFactor f = *this;
  f.deriv_ = deriv;
  return f;
}

bool MatrixFactor::covers_letter(char letter) const {
  for (const auto& i : indices_)
    if (i.letter() == letter) return true;
  return false;
}

bool operator==(const MatrixFactor& a, const MatrixFactor& b) {
  return a.kind() == b.kind() && a.deriv() == b.deriv() && a.indices() == b.indices();
}

int compare(const MatrixFactor& a, const MatrixFactor& b) {
  if (a.kind() != b.kind())
    return a.kind() == MatrixFactor::Kind::density ? -1 : 1;
  const auto& ia = a.indices();
  const auto& ib = b.indices();
  for (size_t i = 0; i < std::min(ia.size(), ib.size()); ++i)
    if (int c = compare(ia[i], ib[i])) return c;
  if (ia.size() != ib.size()) return ia.size() < ib.size() ? -1 : 1;
  if (a.deriv() != b.deriv()) return a.deriv() ? 1 : -1;
  return 0;
}

struct Term::Node {
  Kind kind;
  std::vector<MatrixFactor> factors;
  std::optional<InteractionOp> op;
  Side traced = Side::first;
  std::optional<Term> arg;
  std::optional<Term> tail;
};

namespace {

std::vector<char> bound_letters_of(const std::vector<MatrixFactor>& factors) {
  std::vector<char> out;
  for (const auto& f : factors)
    for (const auto& i : f.indices())
      if (i.is_bound()) out.push_back(i.letter());
  return out;
}

void check_arg_binders(const Term& arg, const InteractionOp& op) {
  if (arg.kind() != Term::Kind::product && arg.kind() != Term::Kind::one &&
      arg.kind() != Term::Kind::zero)
    throw StructuralError("commutator argument must be a matrix product");
  if (arg.kind() != Term::Kind::product) return;
  for (char l : bound_letters_of(arg.factors())) {
    bool ok = (op.pair.first.is_family() && op.pair.first.letter() == l) ||
              (op.pair.second.is_family() && op.pair.second.letter() == l);
    if (!ok)
      throw StructuralError(std::string("bound letter '") + l +
                            "' has no matching sum on the operator");
  }
}

void check_exact_duplicates(const std::vector<MatrixFactor>& factors) {
  for (size_t i = 0; i < factors.size(); ++i)
    for (size_t j = i + 1; j < factors.size(); ++j)
      for (const auto& a : factors[i].indices())
        for (const auto& b : factors[j].indices())
          if (a == b)
            throw StructuralError("index '" + a.label() +
                                  "' appears in two factors of one product");
}

}  // namespace

Term Term::zero() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::zero;
  return Term(std::move(n));
}

Term Term::one() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::one;
  return Term(std::move(n));
}

Term Term::product(std::vector<MatrixFactor> factors) {
  if (factors.empty()) return one();
  check_exact_duplicates(factors);
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->factors = std::move(factors);
  return Term(std::move(n));
}

Term Term::factor(MatrixFactor f) { return product({std::move(f)}); }

Term Term::comm(InteractionOp op, Term arg) {
  check_arg_binders(arg, op);
  auto n = std::make_shared<Node>();
  n->kind = Kind::comm;
  n->op = std::move(op);
  n->arg = std::move(arg);
  return Term(std::move(n));
}

Term Term::trcomm(InteractionOp op, Side traced, Term arg) {
  check_arg_binders(arg, op);
  auto n = std::make_shared<Node>();
  n->kind = Kind::trcomm;
  n->op = std::move(op);
  n->traced = traced;
  n->arg = std::move(arg);
  return Term(std::move(n));
}

Term Term::mixed(std::vector<MatrixFactor> factors, Term tail) {
  if (tail.kind() != Kind::comm && tail.kind() != Kind::trcomm)
    throw StructuralError("mixed term tail must be a commutator");
  if (factors.empty()) return tail;
  check_exact_duplicates(factors);
  if (!bound_letters_of(factors).empty())
    throw StructuralError("bound letter outside its commutator sum");
  //outer factors must live on subsystems the tail does not keep
  std::vector<Index> kept;
  if (tail.kind() == Kind::trcomm) {
    kept = surviving_indices(tail);
  } else if (tail.arg().kind() == Kind::product) {
    for (const auto& f : tail.arg().factors())
      for (const auto& i : f.indices()) kept.push_back(i);
  }
  for (const auto& f : factors)
    for (const auto& fi : f.indices())
      for (const auto& k : kept)
        if (fi == k)
          throw StructuralError("outer factor index '" + fi.label() +
                                "' collides with the commutator result");
  auto n = std::make_shared<Node>();
  n->kind = Kind::mixed;
  n->factors = std::move(factors);
  n->tail = std::move(tail);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }

const std::vector<MatrixFactor>& Term::factors() const {
  if (kind() != Kind::product && kind() != Kind::mixed)
    throw StructuralError("factors() on a non-product term");
  return node_->factors;
}

const InteractionOp& Term::op() const {
  if (!node_->op) throw StructuralError("op() on a non-commutator term");
  return *node_->op;
}

Side Term::traced_side() const {
  if (kind() != Kind::trcomm) throw StructuralError("traced_side() on a non-traced term");
  return node_->traced;
}

const Index& Term::trace_index() const {
  const auto& o = op();
  return traced_side() == Side::first ? o.pair.first : o.pair.second;
}

const Index& Term::partner_index() const {
  const auto& o = op();
  return traced_side() == Side::first ? o.pair.second : o.pair.first;
}

const Term& Term::arg() const {
  if (!node_->arg) throw StructuralError("arg() on a non-commutator term");
  return *node_->arg;
}

const Term& Term::tail() const {
  if (!node_->tail) throw StructuralError("tail() on a non-mixed term");
  return *node_->tail;
}

SignedTerm::SignedTerm(int s, Term t) : sign(s), term(std::move(t)) {
  if (s != 1 && s != -1) throw StructuralError("term sign must be +1 or -1");
}

std::vector<Index> factor_support(const MatrixFactor& f) { return f.indices(); }

bool supports_disjoint(const std::vector<MatrixFactor>& factors) {
  for (size_t i = 0; i < factors.size(); ++i)
    for (size_t j = i + 1; j < factors.size(); ++j)
      for (const auto& a : factors[i].indices())
        for (const auto& b : factors[j].indices())
          if (may_overlap(a, b)) return false;
  return true;
}

std::vector<Index> surviving_indices(const Term& t) {
  if (t.kind() != Term::Kind::trcomm)
    throw StructuralError("surviving_indices() wants a traced commutator");
  std::vector<Index> out;
  if (t.arg().kind() != Term::Kind::product) return out;
  const Index& tr = t.trace_index();
  for (const auto& f : t.arg().factors()) {
    for (const auto& i : f.indices()) {
      if (tr.is_family()) {
        if (i.is_bound() && i.letter() == tr.letter()) continue;
      } else {
        if (i == tr) continue;
      }
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace bbgky
