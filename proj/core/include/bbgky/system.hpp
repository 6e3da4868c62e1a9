#ifndef BBGKY_SYSTEM_HPP
#define BBGKY_SYSTEM_HPP

#include <vector>

#include "bbgky/term.hpp"
#include "bbgky/trace.hpp"

namespace bbgky {

//A declared ensemble of subsystems: family letters stand for identical
//exchangeable members, singles for individually distinguished subsystems,
//and interactions for pairwise coupling between letters.
struct SystemSpec {
    std::vector<char> families;
    std::vector<Index> singles;
    std::vector<PairedIndex> interactions;
};

//Checks the declaration is usable: valid letters, no letter declared both
//ways, interactions only between declared letters and never within one,
//no repeated pair. Throws SpecError.
void validate_system(const SystemSpec& spec);

//A derivation target must name distinct ordinal singles over declared
//letters; for a non-family letter the ordinal must match the declaration.
void validate_target(const SystemSpec& spec, const std::vector<Index>& target);

//density over every declared subsystem, families as whole-family indices
MatrixFactor full_density(const SystemSpec& spec);

//equation of motion of the full density: one commutator per interaction
Equation build_master_equation(const SystemSpec& spec);

//everything outside the target: leftover singles plus each family with the
//target's members of that letter excluded
TraceSet trace_set_for(const SystemSpec& spec, const std::vector<Index>& target);

}  // namespace bbgky

#endif
