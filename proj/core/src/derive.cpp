#include "bbgky/derive.hpp"

#include <algorithm>
#include <utility>

#include "bbgky/canonical.hpp"
#include "bbgky/errors.hpp"
#include "bbgky/trace.hpp"

namespace bbgky {

namespace {

std::vector<Index> sorted_target(std::vector<Index> target) {
    std::sort(target.begin(), target.end(),
              [](const Index& a, const Index& b) { return compare(a, b) < 0; });
    return target;
}

//pull the derivative-marked factor out of a product-rule term
std::pair<MatrixFactor, std::vector<MatrixFactor>> split_deriv(const Term& t) {
    if (t.kind() != Term::Kind::product) {
        throw StructuralError("product-rule term is not a product");
    }
    const MatrixFactor* marked = nullptr;
    std::vector<MatrixFactor> rest;
    for (const auto& f : t.factors()) {
        if (f.deriv()) {
            if (marked) throw StructuralError("product-rule term carries two derivatives");
            marked = &f;
        } else {
            rest.push_back(f);
        }
    }
    if (!marked) throw StructuralError("product-rule term carries no derivative");
    return {marked->with_deriv(false), std::move(rest)};
}

}  // namespace

const Equation* DerivationMemo::find(const std::vector<Index>& target) const {
    auto it = map_.find(key(target));
    return it == map_.end() ? nullptr : &it->second;
}

void DerivationMemo::store(const std::vector<Index>& target, Equation eq) {
    map_.insert_or_assign(key(target), std::move(eq));
}

std::string DerivationMemo::key(const std::vector<Index>& target) {
    std::vector<Index> s = sorted_target(target);
    std::string k;
    for (const auto& ix : s) {
        if (!k.empty()) k += ',';
        k += ix.label();
    }
    return k;
}

std::vector<SignedTerm> subtract_scaled(std::vector<SignedTerm> rhs, const Equation& sub,
                                        const std::vector<MatrixFactor>& multiplier,
                                        const std::vector<Index>& pivots) {
    for (const auto& st : sub.rhs) {
        Term wrapped = st.term;
        if (!multiplier.empty()) {
            switch (st.term.kind()) {
                case Term::Kind::zero:
                    continue;
                case Term::Kind::one:
                    wrapped = Term::product(multiplier);
                    break;
                case Term::Kind::product: {
                    auto fs = st.term.factors();
                    fs.insert(fs.end(), multiplier.begin(), multiplier.end());
                    wrapped = Term::product(std::move(fs));
                    break;
                }
                case Term::Kind::comm:
                case Term::Kind::trcomm:
                    wrapped = Term::mixed(multiplier, st.term);
                    break;
                case Term::Kind::mixed: {
                    auto fs = st.term.factors();
                    fs.insert(fs.end(), multiplier.begin(), multiplier.end());
                    wrapped = Term::mixed(std::move(fs), st.term.tail());
                    break;
                }
            }
        }
        auto refined = refine_family_sums({{-st.sign, std::move(wrapped)}}, pivots);
        rhs.insert(rhs.end(), std::make_move_iterator(refined.begin()),
                   std::make_move_iterator(refined.end()));
    }
    return normalize_sum(std::move(rhs));
}

Equation derive(const SystemSpec& spec, std::vector<Index> target, DerivationMemo& memo) {
    validate_target(spec, target);
    target = sorted_target(std::move(target));
    if (const Equation* hit = memo.find(target)) return *hit;

    TraceSet ts = trace_set_for(spec, target);
    Equation master = build_master_equation(spec);

    std::vector<SignedTerm> rhs;
    for (const auto& st : master.rhs) {
        for (const auto& traced : trace_commutator(st, ts)) {
            for (auto& expanded : expand_commutator(traced, memo.mode())) {
                rhs.push_back(std::move(expanded));
            }
        }
    }
    rhs = refine_family_sums(std::move(rhs), target);
    rhs = normalize_sum(std::move(rhs));

    MatrixFactor lhs = (target.size() == 1 ? MatrixFactor::density(target)
                                           : MatrixFactor::correlation(target))
                           .with_deriv(true);

    //product rule over the target's own expansion; the final element is the
    //derivative of the full correlation, which stays on the left
    std::vector<Term> derivs;
    for (const auto& piece : cluster_expand(target, memo.mode())) {
        for (auto& d : take_derivative(piece)) derivs.push_back(std::move(d));
    }
    if (derivs.empty() || !terms_equal(derivs.back(), Term::factor(lhs))) {
        throw StructuralError("product rule lost track of the target derivative");
    }

    for (size_t k = 0; k + 1 < derivs.size(); ++k) {
        auto [dfac, rest] = split_deriv(derivs[k]);
        Equation sub = derive(spec, dfac.indices(), memo);
        if (compare(sub.lhs, dfac.with_deriv(true)) != 0) {
            throw StructuralError("sub-derivation returned a mismatched left side");
        }
        rhs = subtract_scaled(std::move(rhs), sub, rest, target);
    }

    Equation eq{std::move(lhs), std::move(rhs)};
    memo.store(target, eq);
    return eq;
}

}  // namespace bbgky
