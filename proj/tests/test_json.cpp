#include <doctest.h>

#include <string>

#include "bbgky/json_io.hpp"
#include "bbgky/render.hpp"
#include "helpers.hpp"

using namespace bbgky;
using tb::fam;
using tb::g;
using tb::ix;
using tb::rho;

namespace {

Term sample_mixed() {
    return Term::mixed({rho({"F1"})},
                       Term::trcomm(tb::V(ix("A1"), ix("F1")), Side::second,
                                    Term::factor(g({"A1", "F1"}))));
}

Term roundtrip(const Term& t) { return term_from_json(term_to_json(t)); }

}  // namespace

TEST_SUITE("json") {

TEST_CASE("terms of every kind survive a round trip") {
    for (const Term& t : {
             Term::zero(),
             Term::one(),
             Term::product({rho({"A1"}), g({"A2", "F1"})}),
             Term::factor(MatrixFactor::density({ix("A1"), fam('F', {"F1"})})),
             Term::factor(rho({"A1"}, true)),
             Term::comm(tb::V(ix("A1"), ix("B1")), Term::factor(g({"A1", "B1"}))),
             Term::trcomm(tb::V(fam('A', {"A1"}), ix("F1")), Side::first,
                          Term::factor(rho({"F1", "A"}))),
             sample_mixed(),
         }) {
        CAPTURE(display(t));
        CHECK(terms_equal(roundtrip(t), t));
    }
}

TEST_CASE("derivative markers survive nested round trips") {
    Term t = Term::product({rho({"A1"}, true), g({"A2", "F1"})});
    Term back = roundtrip(t);
    CHECK(back.factors()[0].deriv());
    CHECK_FALSE(back.factors()[1].deriv());
}

TEST_CASE("equations round trip with signs") {
    Equation eq{g({"A1", "F1"}, true),
                {{+1, Term::comm(tb::V(ix("A1"), ix("F1")), Term::factor(g({"A1", "F1"})))},
                 {-1, sample_mixed()}}};
    Equation back = equation_from_json(equation_to_json(eq));
    CHECK(back.lhs == eq.lhs);
    REQUIRE(back.rhs.size() == 2);
    CHECK(back.rhs[0].sign == 1);
    CHECK(back.rhs[1].sign == -1);
    CHECK(terms_equal(back.rhs[0].term, eq.rhs[0].term));
    CHECK(terms_equal(back.rhs[1].term, eq.rhs[1].term));
}

TEST_CASE("indented output parses the same as compact output") {
    Term t = sample_mixed();
    std::string compact = term_to_json(t);
    std::string pretty = term_to_json(t, 2);
    CHECK(compact != pretty);
    CHECK(pretty.find('\n') != std::string::npos);
    CHECK(terms_equal(term_from_json(pretty), t));
}

TEST_CASE("malformed input reports a json error") {
    auto message_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return std::string(e.what());
        }
        return std::string();
    };

    CHECK(message_of([] { term_from_json("{"); }).rfind("json: ", 0) == 0);
    CHECK(message_of([] { term_from_json(R"({"kind":"spiral"})"); }).rfind("json: ", 0) == 0);
    CHECK(message_of([] { term_from_json(R"({"factors":[]})"); }).rfind("json: ", 0) == 0);
    CHECK(message_of([] {
              term_from_json(R"({"kind":"trcomm","traced":"third","op":{},"arg":{}})");
          }).rfind("json: ", 0) == 0);
    CHECK(message_of([] { equation_from_json(R"({"rhs":[]})"); }).rfind("json: ", 0) == 0);
    CHECK(message_of([] {
              equation_from_json(
                  R"({"lhs":{"kind":"density","indices":[{"kind":"single","label":"A1"}]},)"
                  R"("rhs":[{"sign":2,"term":{"kind":"one"}}]})");
          }) != "");
}

TEST_CASE("structural rules still apply to decoded input") {
    //duplicate index inside one factor
    CHECK_THROWS_AS(term_from_json(R"({"kind":"product","factors":[{"kind":"density",)"
                                   R"("indices":[{"kind":"single","label":"A1"},)"
                                   R"({"kind":"single","label":"A1"}]}]})"),
                    StructuralError);
    //single-index correlation
    CHECK_THROWS_AS(term_from_json(R"({"kind":"product","factors":[{"kind":"correlation",)"
                                   R"("indices":[{"kind":"single","label":"A1"}]}]})"),
                    StructuralError);
}

}  // TEST_SUITE
