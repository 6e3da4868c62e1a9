#include "bbgky/system.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "bbgky/errors.hpp"

namespace bbgky {

namespace {

bool family_letter(const SystemSpec& spec, char c) {
    return std::find(spec.families.begin(), spec.families.end(), c) != spec.families.end();
}

}  // namespace

void validate_system(const SystemSpec& spec) {
    std::set<char> fam;
    for (char c : spec.families) {
        if (c < 'A' || c > 'Z') {
            throw SpecError(std::string("family letter '") + c + "' is not an uppercase letter");
        }
        if (!fam.insert(c).second) {
            throw SpecError(std::string("family '") + c + "' declared twice");
        }
    }
    std::set<std::string> single_labels;
    for (const auto& ix : spec.singles) {
        if (!ix.is_single() || ix.is_bound()) {
            throw SpecError("declared subsystem '" + ix.label() + "' must carry an ordinal");
        }
        if (fam.count(ix.letter())) {
            throw SpecError(std::string("letter '") + ix.letter() +
                            "' declared both as a family and as subsystem '" + ix.label() + "'");
        }
        if (!single_labels.insert(ix.label()).second) {
            throw SpecError("subsystem '" + ix.label() + "' declared twice");
        }
    }
    std::set<std::pair<std::string, std::string>> seen_pairs;
    for (const auto& pi : spec.interactions) {
        for (const Index* ix : {&pi.first, &pi.second}) {
            if (ix->is_family()) {
                if (!ix->excluded().empty()) {
                    throw SpecError("interaction index '" + ix->label() +
                                    "' may not exclude members at declaration");
                }
                if (!fam.count(ix->letter())) {
                    throw SpecError(std::string("interaction names undeclared family '") +
                                    ix->letter() + "'");
                }
            } else {
                if (ix->is_bound() || !single_labels.count(ix->label())) {
                    throw SpecError("interaction names undeclared subsystem '" + ix->label() + "'");
                }
            }
        }
        std::pair<std::string, std::string> key{pi.first.label(), pi.second.label()};
        if (key.second < key.first) std::swap(key.first, key.second);
        if (!seen_pairs.insert(key).second) {
            throw SpecError("interaction between '" + pi.first.label() + "' and '" +
                            pi.second.label() + "' declared twice");
        }
    }
}

void validate_target(const SystemSpec& spec, const std::vector<Index>& target) {
    if (target.empty()) {
        throw SpecError("derivation target is empty");
    }
    std::set<std::string> seen;
    for (const auto& ix : target) {
        if (!ix.is_single() || ix.is_bound()) {
            throw SpecError("target index '" + ix.label() + "' must be a subsystem with an ordinal");
        }
        if (!seen.insert(ix.label()).second) {
            throw SpecError("target index '" + ix.label() + "' repeated");
        }
        if (family_letter(spec, ix.letter())) continue;
        bool declared = std::any_of(spec.singles.begin(), spec.singles.end(),
                                    [&](const Index& s) { return s.label() == ix.label(); });
        if (!declared) {
            throw SpecError("target index '" + ix.label() + "' is not a declared subsystem");
        }
    }
}

MatrixFactor full_density(const SystemSpec& spec) {
    std::vector<Index> indices = spec.singles;
    for (char c : spec.families) indices.push_back(Index::family(c));
    return MatrixFactor::density(std::move(indices));
}

Equation build_master_equation(const SystemSpec& spec) {
    validate_system(spec);
    MatrixFactor rho = full_density(spec);
    Equation eq{rho.with_deriv(true), {}};
    for (const auto& pi : spec.interactions) {
        eq.rhs.push_back({+1, Term::comm(InteractionOp{pi}, Term::factor(rho))});
    }
    return eq;
}

TraceSet trace_set_for(const SystemSpec& spec, const std::vector<Index>& target) {
    validate_target(spec, target);
    std::vector<Index> entries;
    for (const auto& s : spec.singles) {
        bool kept = std::any_of(target.begin(), target.end(),
                                [&](const Index& t) { return t.label() == s.label(); });
        if (!kept) entries.push_back(s);
    }
    for (char c : spec.families) {
        std::vector<std::string> excl;
        for (const auto& t : target) {
            if (t.letter() == c) excl.push_back(t.label());
        }
        entries.push_back(Index::family(c, std::move(excl)));
    }
    return TraceSet(std::move(entries));
}

}  // namespace bbgky
