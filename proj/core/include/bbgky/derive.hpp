#ifndef BBGKY_DERIVE_HPP
#define BBGKY_DERIVE_HPP

#include <map>
#include <string>
#include <vector>

#include "bbgky/cluster.hpp"
#include "bbgky/system.hpp"

namespace bbgky {

//Cache of finished equations of motion, one per target set. Results for a
//target are independent of which outer derivation asked for them, so the
//cache is keyed only by expansion mode and the sorted index labels.
class DerivationMemo {
public:
    explicit DerivationMemo(ExpansionMode mode) : mode_(mode) {}

    ExpansionMode mode() const { return mode_; }

    const Equation* find(const std::vector<Index>& target) const;
    void store(const std::vector<Index>& target, Equation eq);
    size_t size() const { return map_.size(); }

    static std::string key(const std::vector<Index>& target);

private:
    ExpansionMode mode_;
    std::map<std::string, Equation> map_;
};

//Equation of motion for the reduced density (one index) or correlation
//matrix (several) over the target subsystems. Recursively derives and
//subtracts the lower-order equations the product rule brings in; the memo
//carries shared sub-results across a batch of targets.
Equation derive(const SystemSpec& spec, std::vector<Index> target, DerivationMemo& memo);

//rhs minus the sub-equation's rhs times a spectator multiplier, with family
//sums split around the pivot members so matching terms cancel
std::vector<SignedTerm> subtract_scaled(std::vector<SignedTerm> rhs, const Equation& sub,
                                        const std::vector<MatrixFactor>& multiplier,
                                        const std::vector<Index>& pivots);

}  // namespace bbgky

#endif
