#ifndef BBGKY_TERM_HPP
#define BBGKY_TERM_HPP

#include <memory>
#include <vector>

#include "bbgky/index.hpp"

namespace bbgky {

//reduced density matrix (rho) or correlation matrix (g).  Indices are kept
//sorted; the deriv flag marks the factor as sitting under i*hbar*d/dt.
class MatrixFactor {
 public:
  enum class Kind { density, correlation };

  static MatrixFactor density(std::vector<Index> indices, bool deriv = false);
  static MatrixFactor correlation(std::vector<Index> indices, bool deriv = false);

  Kind kind() const { return kind_; }
  bool deriv() const { return deriv_; }
  const std::vector<Index>& indices() const { return indices_; }

  MatrixFactor with_deriv(bool deriv) const;
  bool covers_letter(char letter) const;

 private:
  MatrixFactor() = default;
  Kind kind_ = Kind::density;
  bool deriv_ = false;
  std::vector<Index> indices_;
};

bool operator==(const MatrixFactor& a, const MatrixFactor& b);
inline bool operator!=(const MatrixFactor& a, const MatrixFactor& b) { return !(a == b); }
int compare(const MatrixFactor& a, const MatrixFactor& b);

enum class Side { first, second };

//Expression node.  The grammar is deliberately small:
//  zero | one
//  product:  f1 * f2 * ...                 disjoint matrix factors
//  comm:     [V_uv, product]               op indices may be family sums
//  trcomm:   sum_u Tr_u [V_uv, product]    one op index traced (and, for a
//            family, bound inside the argument as its bare letter)
//  mixed:    f1 * ... * (comm|trcomm)      factors multiplying a commutator
//Terms are immutable; copies share structure.
class Term {
 public:
  enum class Kind { zero, one, product, comm, trcomm, mixed };

  static Term zero();
  static Term one();
  static Term product(std::vector<MatrixFactor> factors);
  static Term factor(MatrixFactor f);
  static Term comm(InteractionOp op, Term arg);
  static Term trcomm(InteractionOp op, Side traced, Term arg);
  static Term mixed(std::vector<MatrixFactor> factors, Term tail);

  Kind kind() const;
  bool is_zero() const { return kind() == Kind::zero; }
  bool is_one() const { return kind() == Kind::one; }

  const std::vector<MatrixFactor>& factors() const;  //product and mixed
  const InteractionOp& op() const;                   //comm and trcomm
  Side traced_side() const;                          //trcomm
  const Index& trace_index() const;                  //trcomm
  const Index& partner_index() const;                //trcomm
  const Term& arg() const;                           //comm and trcomm
  const Term& tail() const;                          //mixed

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct SignedTerm {
  int sign;  //+1 or -1; the hierarchy never produces other coefficients
  Term term;

  SignedTerm(int s, Term t);
};

//lhs is the deriv-flagged target factor; rhs a signed sum
struct Equation {
  MatrixFactor lhs;
  std::vector<SignedTerm> rhs;
};

//index sets touched by a term or factor, bound letters included as singles
std::vector<Index> factor_support(const MatrixFactor& f);
bool supports_disjoint(const std::vector<MatrixFactor>& factors);

//indices of a trcomm argument that survive the trace
std::vector<Index> surviving_indices(const Term& trcomm);

}  // namespace bbgky

#endif
