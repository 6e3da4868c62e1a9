#ifndef BBGKY_PARSE_HPP
#define BBGKY_PARSE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bbgky/system.hpp"

namespace bbgky {

struct ParsedSpec {
    SystemSpec system;
    std::vector<std::vector<Index>> targets;
};

//Line-oriented system description:
//  family F          declare an unbounded family
//  single A1         declare an individually named subsystem
//  interact A F      pairwise interaction; tokens are family letters or
//                    single labels, written order is kept
//  derive A1 F1      request the equation of motion for this index set
//Comments run from '#' to end of line. Names must be declared before use.
//All errors are ParseError carrying file, line and column.
ParsedSpec parse_spec(std::string_view text, const std::string& filename = "<input>");

ParsedSpec parse_spec_file(const std::string& path);

//writes a spec back out in the same grammar; parse(render_spec(p)) == p
std::string render_spec(const ParsedSpec& parsed);

}  // namespace bbgky

#endif
