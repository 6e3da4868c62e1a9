#ifndef BBGKY_JSON_IO_HPP
#define BBGKY_JSON_IO_HPP

#include <string>
#include <string_view>

#include "bbgky/term.hpp"

namespace bbgky {

//JSON encoding of IR values, kind-tagged so every node round-trips:
//  index     {"kind":"single","label":"A1"}
//            {"kind":"family","letter":"F","excluded":["F1"]}
//  matrix    {"kind":"density","deriv":false,"indices":[...]}
//  term      {"kind":"comm","op":{"first":...,"second":...},"arg":...}
//            {"kind":"trcomm",...,"traced":"first"|"second"}
//            {"kind":"mixed","factors":[...],"tail":...}
//  equation  {"lhs":...,"rhs":[{"sign":1,"term":...},...]}
//indent < 0 writes compact single-line output.
std::string term_to_json(const Term& t, int indent = -1);
std::string equation_to_json(const Equation& eq, int indent = -1);

Term term_from_json(std::string_view text);
Equation equation_from_json(std::string_view text);

}  // namespace bbgky

#endif
