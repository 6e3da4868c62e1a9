#ifndef BBGKY_RENDER_HPP
#define BBGKY_RENDER_HPP

#include <string>

#include "bbgky/term.hpp"

namespace bbgky {

//Plain-text forms, e.g.
//  rho_A1{F}        density over A1 and the whole family F
//  sum_{F}/F1       family summation binder minus member F1
//  i hbar d/dt g_A1F1
//  rho_A1 * g_A2F1
//  sum_{F} V_A1F
//  [ V_A1B1, g_A1B1 ]                    commutator
//  sum_{F} Tr_F [V_A1F, g_A1F]           traced commutator
//Multiple exclusions concatenate: sum_{F}/F1F2.
std::string display(const Index& ix);
std::string display(const PairedIndex& pair);
std::string display(const InteractionOp& op);
std::string display(const MatrixFactor& f);
std::string display(const Term& t);
std::string display(const SignedTerm& st);
std::string display(const Equation& eq);

//LaTeX forms: \sum_{F/F1}, Tr_{F} [ V_{A1F} , \rho_{A1}\rho_{F} ] for traced
//commutators, \left[ V_{A1F1} , ... \right] for plain ones; the derivative
//prefix is i\hbar\frac{\partial}{\partial t} for densities and
//i\hbar\frac{d}{dt} for correlations; empty right side renders as "= 0".
std::string to_latex(const Index& ix);
std::string to_latex(const MatrixFactor& f);
std::string to_latex(const Term& t);
std::string to_latex(const Equation& eq);

}  // namespace bbgky

#endif
