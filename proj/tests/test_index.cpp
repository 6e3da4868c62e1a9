#include <doctest.h>

#include "bbgky/index.hpp"
#include "helpers.hpp"

using namespace bbgky;
using tb::fam;
using tb::ix;

TEST_SUITE("index") {

TEST_CASE("labels split into letter and optional ordinal") {
    CHECK(split_label("A12") == std::pair<char, int>('A', 12));
    CHECK(split_label("F1") == std::pair<char, int>('F', 1));
    CHECK(split_label("F") == std::pair<char, int>('F', 0));
    CHECK_THROWS_AS(split_label(""), StructuralError);
    CHECK_THROWS_AS(split_label("a1"), StructuralError);
    CHECK_THROWS_AS(split_label("AB"), StructuralError);
    CHECK_THROWS_AS(split_label("A0"), StructuralError);
    CHECK_THROWS_AS(split_label("1A"), StructuralError);
}

TEST_CASE("single and family construction") {
    Index a = ix("A1");
    CHECK(a.is_single());
    CHECK(a.letter() == 'A');
    CHECK(a.ordinal() == 1);
    CHECK(a.label() == "A1");
    CHECK_FALSE(a.is_bound());

    Index b = ix("F");
    CHECK(b.is_bound());
    CHECK(b.label() == "F");

    Index f = fam('F', {"F1"});
    CHECK(f.is_family());
    CHECK(f.label() == "F");
    CHECK(f.excludes("F1"));
    CHECK_FALSE(f.excludes("F2"));

    CHECK_THROWS_AS(Index::family('f'), StructuralError);
    CHECK_THROWS_AS(Index::family('F', {"A1"}), StructuralError);
    CHECK_THROWS_AS(Index::family('F', {"F"}), StructuralError);
    CHECK_THROWS_AS(Index::family('F', {"F1", "F1"}), StructuralError);
}

TEST_CASE("with_excluded accumulates and stays sorted") {
    Index f = fam('F', {"F2"}).with_excluded({"F1"});
    CHECK(f.excluded() == std::vector<std::string>{"F1", "F2"});
    CHECK_THROWS_AS(ix("F1").with_excluded({"F2"}), StructuralError);
}

TEST_CASE("ordering puts ordinal singles before bound letters and families") {
    CHECK(compare(ix("F1"), ix("F2")) < 0);
    CHECK(compare(ix("F2"), ix("F10")) < 0);  //numeric, not lexicographic
    CHECK(compare(ix("F10"), ix("A")) < 0);
    CHECK(compare(ix("A"), fam('A')) < 0);
    CHECK(compare(ix("A1"), ix("B1")) < 0);
    CHECK(compare(fam('A'), fam('B')) < 0);
    CHECK(compare(fam('F'), fam('F', {"F1"})) != 0);
    CHECK(compare(ix("A1"), ix("A1")) == 0);
}

TEST_CASE("compare_labels is the numeric-aware label order") {
    CHECK(compare_labels("F2", "F10") < 0);
    CHECK(compare_labels("A1", "F1") < 0);
    CHECK(compare_labels("F1", "F1") == 0);
}

TEST_CASE("overlap is letter-wise and exclusion-aware") {
    CHECK(may_overlap(ix("A1"), ix("A1")));
    CHECK_FALSE(may_overlap(ix("A1"), ix("A2")));
    CHECK_FALSE(may_overlap(ix("A1"), ix("B1")));
    CHECK(may_overlap(ix("A1"), ix("A")));       //bound member can be any
    CHECK(may_overlap(ix("A1"), fam('A')));      //family covers A1
    CHECK_FALSE(may_overlap(ix("A1"), fam('A', {"A1"})));
    CHECK(may_overlap(ix("A2"), fam('A', {"A1"})));
    CHECK(may_overlap(ix("F"), fam('F', {"F1"})));
    CHECK(may_overlap(fam('F'), fam('F', {"F1"})));
    CHECK_FALSE(may_overlap(fam('A'), fam('B')));
}

TEST_CASE("interaction pairs keep order and need two letters") {
    PairedIndex p(ix("A1"), fam('F'));
    CHECK(p.first.label() == "A1");
    CHECK(p.second.is_family());
    CHECK_THROWS_AS(PairedIndex(ix("F1"), fam('F')), StructuralError);
    CHECK_THROWS_AS(PairedIndex(ix("A1"), ix("A2")), StructuralError);

    CHECK(PairedIndex(ix("A1"), ix("F1")) == PairedIndex(ix("A1"), ix("F1")));
    CHECK_FALSE(PairedIndex(ix("A1"), ix("F1")) == PairedIndex(ix("F1"), ix("A1")));
}

}  // TEST_SUITE
