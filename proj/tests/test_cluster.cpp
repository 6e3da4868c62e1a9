#include <doctest.h>

#include <set>
#include <string>

#include "bbgky/cluster.hpp"
#include "bbgky/render.hpp"
#include "helpers.hpp"

using namespace bbgky;
using tb::fam;
using tb::ix;
using tb::ixs;
using tb::rho;
using tb::P;
using tb::V;

namespace {

std::vector<Index> chain(size_t n) {
    std::vector<Index> out;
    for (size_t k = 1; k <= n; ++k) out.push_back(Index::single("F" + std::to_string(k)));
    return out;
}

}  // namespace

TEST_SUITE("cluster") {

TEST_CASE("term counts per order and mode") {
    CHECK(cluster_term_count(1, ExpansionMode::paper) == 1);
    CHECK(cluster_term_count(2, ExpansionMode::paper) == 2);
    CHECK(cluster_term_count(3, ExpansionMode::paper) == 5);
    CHECK(cluster_term_count(4, ExpansionMode::paper) == 12);
    CHECK(cluster_term_count(5, ExpansionMode::paper) == 27);
    CHECK(cluster_term_count(6, ExpansionMode::paper) == 58);

    CHECK(cluster_term_count(2, ExpansionMode::ursell) == 2);
    CHECK(cluster_term_count(3, ExpansionMode::ursell) == 5);
    CHECK(cluster_term_count(4, ExpansionMode::ursell) == 15);
    CHECK(cluster_term_count(5, ExpansionMode::ursell) == 52);
    CHECK(cluster_term_count(6, ExpansionMode::ursell) == 203);
}

TEST_CASE("expansion sizes agree with the counts") {
    for (size_t n = 1; n <= 6; ++n) {
        for (ExpansionMode m : {ExpansionMode::paper, ExpansionMode::ursell}) {
            CHECK(cluster_expand(chain(n), m).size() == cluster_term_count(n, m));
        }
    }
}

TEST_CASE("expansions start with the product state and end with the full correlation") {
    for (size_t n = 2; n <= 5; ++n) {
        for (ExpansionMode m : {ExpansionMode::paper, ExpansionMode::ursell}) {
            auto terms = cluster_expand(chain(n), m);
            REQUIRE(terms.front().kind() == Term::Kind::product);
            CHECK(terms.front().factors().size() == n);
            for (const auto& f : terms.front().factors())
                CHECK(f.kind() == MatrixFactor::Kind::density);

            REQUIRE(terms.back().kind() == Term::Kind::product);
            REQUIRE(terms.back().factors().size() == 1);
            const auto& full = terms.back().factors()[0];
            CHECK(full.kind() == MatrixFactor::Kind::correlation);
            CHECK(full.indices().size() == n);
        }
    }
}

TEST_CASE("expansion terms are distinct") {
    for (ExpansionMode m : {ExpansionMode::paper, ExpansionMode::ursell}) {
        auto terms = cluster_expand(chain(4), m);
        std::set<std::string> seen;
        for (const auto& t : terms) seen.insert(display(t));
        CHECK(seen.size() == terms.size());
    }
}

TEST_CASE("the modes differ exactly in the multi-correlation partitions") {
    auto paper = cluster_expand(chain(4), ExpansionMode::paper);
    auto ursell = cluster_expand(chain(4), ExpansionMode::ursell);
    size_t multi = 0;
    for (const auto& t : ursell) {
        size_t gs = 0;
        for (const auto& f : t.factors())
            if (f.kind() == MatrixFactor::Kind::correlation) ++gs;
        if (gs > 1) ++multi;
    }
    CHECK(multi == 3);  //three ways to pair four subsystems
    CHECK(ursell.size() - paper.size() == multi);
    for (const auto& t : paper) {
        size_t gs = 0;
        for (const auto& f : t.factors())
            if (f.kind() == MatrixFactor::Kind::correlation) ++gs;
        CHECK(gs <= 1);
    }
}

TEST_CASE("order one is just the density") {
    auto terms = cluster_expand({ix("A1")}, ExpansionMode::paper);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].factors()[0] == rho({"A1"}));
}

TEST_CASE("bad index sets are rejected") {
    CHECK_THROWS_AS(cluster_expand({}, ExpansionMode::paper), DomainError);
    CHECK_THROWS_AS(cluster_expand({ix("A1"), ix("A1")}, ExpansionMode::paper), DomainError);
    CHECK_THROWS_AS(cluster_expand({fam('F')}, ExpansionMode::paper), DomainError);
    CHECK_THROWS_AS(cluster_term_count(0, ExpansionMode::paper), DomainError);
}

TEST_CASE("expand_commutator distributes over the pieces and drops zeros") {
    SignedTerm st{1, Term::trcomm(V(ix("A1"), fam('F')), Side::second,
                                  P({MatrixFactor::density({ix("A1"), ix("F")})}))};
    auto out = expand_commutator(st, ExpansionMode::paper);
    REQUIRE(out.size() == 2);
    for (const auto& t : out) {
        CHECK(t.sign == 1);
        CHECK(t.term.kind() == Term::Kind::trcomm);
    }

    CHECK_THROWS_AS(expand_commutator(SignedTerm(1, P({rho({"A1"})})), ExpansionMode::paper),
                    DomainError);
}

}  // TEST_SUITE
