#include <doctest.h>

#include "bbgky/canonical.hpp"
#include "bbgky/render.hpp"
#include "helpers.hpp"

using namespace bbgky;
using tb::fam;
using tb::g;
using tb::ix;
using tb::rho;
using tb::P;
using tb::same_multiset;
using tb::V;

TEST_SUITE("canonical") {

TEST_CASE("zero and one absorb structurally") {
    CHECK(canonicalize(Term::comm(V(ix("A1"), ix("F1")), Term::one())).is_zero());
    CHECK(canonicalize(Term::comm(V(ix("A1"), ix("F1")), Term::zero())).is_zero());
    CHECK(canonicalize(Term::zero()).is_zero());
    CHECK(canonicalize(Term::one()).is_one());
}

TEST_CASE("a commutator disjoint from its argument vanishes") {
    Term t = Term::comm(V(ix("A1"), ix("F1")), P({rho({"B1"})}));
    CHECK(canonicalize(t).is_zero());
}

TEST_CASE("product factors sort densities before correlations") {
    Term t = P({g({"A1", "F1"}), rho({"F2"})});
    Term c = canonicalize(t);
    CHECK(c.factors()[0].kind() == MatrixFactor::Kind::density);
    CHECK(c.factors()[1].kind() == MatrixFactor::Kind::correlation);
}

TEST_CASE("untouched factors hoist out of a commutator") {
    Term t = Term::comm(V(ix("A1"), ix("F1")), P({rho({"A1"}), rho({"F1"}), rho({"B1"})}));
    Term c = canonicalize(t);
    REQUIRE(c.kind() == Term::Kind::mixed);
    CHECK(c.factors().size() == 1);
    CHECK(c.factors()[0] == rho({"B1"}));
    CHECK(c.tail().kind() == Term::Kind::comm);
    CHECK(c.tail().arg().factors().size() == 2);
}

TEST_CASE("hoisting respects the binder exclusions") {
    //inside sum_{F/F1}, rho_F1 commutes with V_A1F and slides out of the trace
    Term t = Term::trcomm(V(ix("A1"), fam('F', {"F1"})), Side::second,
                          P({rho({"A1"}), rho({"F1"}), rho({"F"})}));
    Term c = canonicalize(t);
    REQUIRE(c.kind() == Term::Kind::mixed);
    CHECK(c.factors()[0] == rho({"F1"}));

    //with an unrestricted sum the bound F may hit F1, nothing hoists
    Term u = Term::trcomm(V(ix("A1"), fam('F')), Side::second,
                          P({rho({"A1"}), rho({"F1"}), rho({"F"})}));
    CHECK(canonicalize(u).kind() == Term::Kind::trcomm);
}

TEST_CASE("canonicalize is idempotent") {
    std::vector<Term> samples = {
        P({g({"A1", "F1"}), rho({"F2"})}),
        Term::comm(V(ix("A1"), ix("F1")), P({rho({"A1"}), rho({"F1"}), rho({"B1"})})),
        Term::trcomm(V(ix("A1"), fam('F', {"F1"})), Side::second,
                     P({rho({"A1"}), rho({"F1"}), rho({"F"})})),
        Term::mixed({rho({"F1"})},
                    Term::trcomm(V(ix("A1"), ix("F1")), Side::second,
                                 P({rho({"A1"}), rho({"F1"})}))),
    };
    for (const auto& t : samples) {
        Term once = canonicalize(t);
        Term twice = canonicalize(once);
        CHECK(terms_equal(once, twice));
        CHECK(compare(once, twice) == 0);
    }
}

TEST_CASE("terms_equal distinguishes exclusion sets") {
    Term a = Term::trcomm(V(ix("A1"), fam('F')), Side::second, P({g({"A1", "F"})}));
    Term b = Term::trcomm(V(ix("A1"), fam('F', {"F1"})), Side::second, P({g({"A1", "F"})}));
    CHECK_FALSE(terms_equal(a, b));
    CHECK(terms_equal(a, canonicalize(a)));
    CHECK(compare(a, b) != 0);
}

TEST_CASE("substitute_bound instantiates one family member") {
    Term t = Term::trcomm(V(ix("A1"), fam('F')), Side::second, P({rho({"A1"}), rho({"F"})}));
    Term s = substitute_bound(t, 'F', ix("F2"));
    CHECK(s.kind() == Term::Kind::trcomm);
    CHECK(s.op().pair.second.label() == "F2");
    CHECK(s.arg().factors()[1] == rho({"F2"}));

    //substituting an excluded member is a structural mistake
    Term u = Term::trcomm(V(ix("A1"), fam('F', {"F1"})), Side::second,
                          P({rho({"A1"}), rho({"F"})}));
    CHECK_THROWS_AS(substitute_bound(u, 'F', ix("F1")), StructuralError);
    //letters that do not appear pass through untouched
    CHECK(terms_equal(substitute_bound(t, 'B', ix("B1")), t));
}

TEST_CASE("refine_family_sums splits at the pivot") {
    Term t = Term::trcomm(V(ix("A1"), fam('F')), Side::second, P({rho({"A1"}), rho({"F"})}));
    auto refined = refine_family_sums({SignedTerm(1, t)}, {ix("F1")});
    REQUIRE(refined.size() == 2);

    Term inst = Term::trcomm(V(ix("A1"), ix("F1")), Side::second,
                             P({rho({"A1"}), rho({"F1"})}));
    Term rest = Term::trcomm(V(ix("A1"), fam('F', {"F1"})), Side::second,
                             P({rho({"A1"}), rho({"F"})}));
    CHECK(same_multiset(refined, {SignedTerm(1, inst), SignedTerm(1, rest)}));
}

TEST_CASE("refinement skips foreign letters and settled exclusions") {
    Term t = Term::trcomm(V(ix("A1"), fam('F', {"F1"})), Side::second,
                          P({rho({"A1"}), rho({"F"})}));
    auto by_letter = refine_family_sums({SignedTerm(1, t)}, {ix("B1")});
    REQUIRE(by_letter.size() == 1);
    CHECK(terms_equal(by_letter[0].term, canonicalize(t)));

    auto settled = refine_family_sums({SignedTerm(1, t)}, {ix("F1")});
    REQUIRE(settled.size() == 1);
    CHECK(terms_equal(settled[0].term, canonicalize(t)));
}

TEST_CASE("take_derivative is the product rule") {
    Term t = P({rho({"A1"}), rho({"F1"}), g({"A2", "F2"})});
    auto terms = take_derivative(t);
    REQUIRE(terms.size() == 3);
    for (size_t k = 0; k < terms.size(); ++k) {
        size_t flagged = 0;
        for (const auto& f : terms[k].factors()) flagged += f.deriv() ? 1 : 0;
        CHECK(flagged == 1);
        CHECK(terms[k].factors()[k].deriv());
    }
}

TEST_CASE("normalize_sum cancels opposite pairs and orders the rest") {
    Term a = Term::comm(V(ix("A1"), ix("F1")), P({rho({"A1"}), rho({"F1"})}));
    Term b = Term::comm(V(ix("A1"), ix("F1")), P({g({"A1", "F1"})}));
    auto out = normalize_sum({SignedTerm(1, a), SignedTerm(1, b), SignedTerm(-1, a)});
    REQUIRE(out.size() == 1);
    CHECK(terms_equal(out[0].term, canonicalize(b)));

    auto all_gone = normalize_sum({SignedTerm(1, a), SignedTerm(-1, a)});
    CHECK(all_gone.empty());

    //zeros drop silently
    auto with_zero = normalize_sum({SignedTerm(1, Term::zero()), SignedTerm(1, b)});
    CHECK(with_zero.size() == 1);
}

}  // TEST_SUITE
