#include <doctest.h>

#include <complex>
#include <numeric>
#include <vector>

#include "bbgky/derive.hpp"
#include "bbgky/oracle.hpp"
#include "helpers.hpp"

using namespace bbgky;
using tb::fam;
using tb::g;
using tb::ix;
using tb::rho;
using tb::P;

namespace {

using C = std::complex<double>;

SystemSpec emitter_field() {
    SystemSpec s;
    s.singles = {ix("A1")};
    s.families = {'F'};
    s.interactions.push_back(PairedIndex(ix("A1"), fam('F')));
    return s;
}

long dim_on(const ConcreteSystem& sys, const std::vector<int>& sites) {
    long d = 1;
    for (int s : sites) d *= sys.dim_of(s);
    return d;
}

std::vector<int> all_sites(const ConcreteSystem& sys) {
    std::vector<int> all(static_cast<size_t>(sys.site_count()));
    std::iota(all.begin(), all.end(), 0);
    return all;
}

Mat sum_on(const ConcreteSystem& sys, const std::vector<SignedTerm>& sum,
           const std::vector<int>& support, ExpansionMode mode) {
    Mat acc = Mat::Zero(dim_on(sys, support), dim_on(sys, support));
    for (const auto& st : sum) {
        Evaluated e = evaluate_term(sys, st.term, mode);
        acc += double(st.sign) * promote_to(sys, e.value, e.support, support);
    }
    return acc;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("the concrete state is a density matrix evolving under the couplings") {
    ConcreteSystem sys(emitter_field(), {});
    CHECK(sys.site_count() == 4);  //A1 plus three family members
    CHECK(sys.dimension() == 16);
    CHECK(sys.site_labels() == std::vector<std::string>{"A1", "F1", "F2", "F3"});

    const Mat& r = sys.state();
    CHECK((r - r.adjoint()).norm() <= 1e-12);
    CHECK(std::abs(r.trace() - C(1.0, 0.0)) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(r);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);

    const Mat& v = sys.total_interaction();
    CHECK((v - v.adjoint()).norm() <= 1e-12);
    Mat comm = v * r - r * v;
    CHECK((sys.state_deriv() + C(0.0, 1.0) * comm).norm() <= 1e-12);
    CHECK(std::abs(sys.state_deriv().trace()) <= 1e-12);
}

TEST_CASE("construction is reproducible per seed") {
    OracleConfig cfg;
    cfg.seed = 11;
    ConcreteSystem a(emitter_field(), cfg);
    ConcreteSystem b(emitter_field(), cfg);
    CHECK((a.state() - b.state()).norm() == 0.0);
    CHECK((a.total_interaction() - b.total_interaction()).norm() == 0.0);

    cfg.seed = 12;
    ConcreteSystem c(emitter_field(), cfg);
    CHECK((a.state() - c.state()).norm() > 1e-3);
}

TEST_CASE("reduced blocks agree with a direct partial trace") {
    ConcreteSystem sys(emitter_field(), {});
    auto all = all_sites(sys);

    const auto& full = sys.reduced(all);
    CHECK((full.value - sys.state()).norm() <= 1e-12);

    const auto& pair = sys.reduced({0, 2});
    Mat direct = partial_trace(sys, sys.state(), all, {1, 3});
    CHECK(pair.support == std::vector<int>{0, 2});
    CHECK((pair.value - direct).norm() <= 1e-12);
    CHECK(std::abs(pair.value.trace() - C(1.0, 0.0)) <= 1e-12);

    //the derivative of the block is the trace of the full derivative
    Mat ddirect = partial_trace(sys, sys.state_deriv(), all, {1, 3});
    CHECK((pair.deriv - ddirect).norm() <= 1e-12);
}

TEST_CASE("correlation blocks vanish under any single-site trace") {
    OracleConfig cfg;
    cfg.members = 4;
    ConcreteSystem sys(emitter_field(), cfg);
    const std::vector<std::vector<int>> site_sets = {{0, 1}, {1, 2, 3}, {0, 1, 2, 4}};
    for (ExpansionMode mode : {ExpansionMode::paper, ExpansionMode::ursell}) {
        for (const std::vector<int>& sites : site_sets) {
            const auto& blk = sys.correlation(sites, mode);
            for (int s : sites) {
                Mat traced = partial_trace(sys, blk.value, sites, {s});
                CAPTURE(int(mode));
                CAPTURE(s);
                CHECK(traced.norm() <= 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(sys.correlation({1}, ExpansionMode::paper), DomainError);
}

TEST_CASE("both inversions agree below four sites and differ at four") {
    OracleConfig cfg;
    cfg.members = 4;
    ConcreteSystem sys(emitter_field(), cfg);
    const auto& p3 = sys.correlation({1, 2, 3}, ExpansionMode::paper);
    const auto& u3 = sys.correlation({1, 2, 3}, ExpansionMode::ursell);
    CHECK((p3.value - u3.value).norm() <= 1e-12);

    const auto& p4 = sys.correlation({0, 1, 2, 3}, ExpansionMode::paper);
    const auto& u4 = sys.correlation({0, 1, 2, 3}, ExpansionMode::ursell);
    CHECK((p4.value - u4.value).norm() > 1e-6);
}

TEST_CASE("summing an expansion recovers the reduced matrix") {
    SystemSpec s = emitter_field();
    for (unsigned seed = 1; seed <= 5; ++seed) {
        OracleConfig cfg;
        cfg.seed = seed;
        cfg.members = 4;
        ConcreteSystem sys(s, cfg);
        for (ExpansionMode mode : {ExpansionMode::paper, ExpansionMode::ursell}) {
            for (int n = 2; n <= 4; ++n) {
                std::vector<Index> indices;
                for (int k = 1; k <= n; ++k) indices.push_back(ix(("F" + std::to_string(k)).c_str()));
                Evaluated lhs = evaluate_factor(sys, MatrixFactor::density(indices), mode);
                std::vector<SignedTerm> sum;
                for (Term& t : cluster_expand(indices, mode)) sum.push_back({+1, std::move(t)});
                Mat total = sum_on(sys, sum, lhs.support, mode);
                CAPTURE(seed);
                CAPTURE(int(mode));
                CAPTURE(n);
                CHECK((total - lhs.value).norm() / lhs.value.norm() <= 1e-10);
            }
        }
    }
}

TEST_CASE("tracing a pair commutator over the pair gives zero") {
    ConcreteSystem sys(emitter_field(), {});
    const Mat& v = sys.pair_interaction(0, 0, 1);  //the A1 F1 instance
    const Mat& x = sys.reduced({0, 1}).value;
    Mat comm = v * x - x * v;
    Mat traced = partial_trace(sys, comm, {0, 1}, {0, 1});
    CHECK(traced.norm() <= 1e-12);

    //tracing only one side does not have to vanish
    Mat half = partial_trace(sys, comm, {0, 1}, {1});
    CHECK(half.norm() > 1e-6);
}

TEST_CASE("family sums evaluate as sums over the concrete members") {
    ConcreteSystem sys(emitter_field(), {});
    Term t = Term::trcomm(tb::V(ix("A1"), fam('F')), Side::second,
                          Term::factor(g({"A1", "F"})));
    Evaluated whole = evaluate_term(sys, t, ExpansionMode::paper);

    Mat acc = Mat::Zero(whole.value.rows(), whole.value.cols());
    for (int k = 1; k <= sys.members_of('F'); ++k) {
        Term piece = substitute_bound(t, 'F', ix(("F" + std::to_string(k)).c_str()));
        Evaluated e = evaluate_term(sys, piece, ExpansionMode::paper);
        acc += promote_to(sys, e.value, e.support, whole.support);
    }
    CHECK((whole.value - acc).norm() <= 1e-12);
}

TEST_CASE("canonicalization preserves numeric value") {
    ConcreteSystem sys(emitter_field(), {});
    //the loose density on F1 is hoisted out of the excluded sum when
    //canonicalized; the value on the common support must not move
    Term raw = Term::trcomm(tb::V(ix("A1"), fam('F', {"F1"})), Side::second,
                            P({rho({"A1"}), rho({"F1"}), rho({"F"})}));
    Term canon = canonicalize(raw);
    REQUIRE(canon.kind() == Term::Kind::mixed);

    Evaluated a = evaluate_term(sys, raw, ExpansionMode::paper);
    Evaluated b = evaluate_term(sys, canon, ExpansionMode::paper);
    auto support = support_union(a.support, b.support);
    Mat pa = promote_to(sys, a.value, a.support, support);
    Mat pb = promote_to(sys, b.value, b.support, support);
    CHECK((pa - pb).norm() <= 1e-12);
}

TEST_CASE("refining a family sum preserves numeric value") {
    ConcreteSystem sys(emitter_field(), {});
    std::vector<SignedTerm> sum = {
        {+1, Term::trcomm(tb::V(ix("A1"), fam('F')), Side::second,
                          P({rho({"A1"}), rho({"F"})}))}};
    std::vector<SignedTerm> refined = refine_family_sums(sum, {ix("F1")});
    CHECK(refined.size() == 2);

    std::vector<int> support = {0};
    Mat a = sum_on(sys, sum, support, ExpansionMode::paper);
    Mat b = sum_on(sys, refined, support, ExpansionMode::paper);
    CHECK((a - b).norm() <= 1e-12);
}

TEST_CASE("derived equations check out and mutations are caught") {
    SystemSpec s = emitter_field();
    DerivationMemo memo(ExpansionMode::paper);
    Equation eq = derive(s, {ix("A1"), ix("F1")}, memo);

    for (unsigned seed = 1; seed <= 3; ++seed) {
        OracleConfig cfg;
        cfg.seed = seed;
        ConcreteSystem sys(s, cfg);
        EquationCheck chk = check_equation(sys, eq, ExpansionMode::paper);
        CAPTURE(seed);
        CHECK(chk.residual <= 1e-10);
        REQUIRE(chk.terms.size() == eq.rhs.size());
        for (size_t k = 0; k < chk.terms.size(); ++k) {
            CAPTURE(k);
            CHECK(chk.drop_residual(k) > 1e-3);
            CHECK(chk.flip_residual(k) > 1e-3);
        }
    }
}

TEST_CASE("each expansion validates only against its own inversion") {
    SystemSpec s = emitter_field();
    std::vector<Index> target = {ix("A1"), ix("F1"), ix("F2")};

    DerivationMemo pm(ExpansionMode::paper);
    Equation peq = derive(s, target, pm);
    DerivationMemo um(ExpansionMode::ursell);
    Equation ueq = derive(s, target, um);

    OracleConfig cfg;
    cfg.members = 4;
    ConcreteSystem sys(s, cfg);
    CHECK(check_equation(sys, peq, ExpansionMode::paper).residual <= 1e-9);
    CHECK(check_equation(sys, ueq, ExpansionMode::ursell).residual <= 1e-9);
    //third order is where the two decompositions part ways: an equation built
    //on one cannot be validated against the other's correlation matrices
    CHECK(check_equation(sys, peq, ExpansionMode::ursell).residual > 1e-3);
}

TEST_CASE("oversized instantiations are refused up front") {
    SystemSpec s;
    s.families = {'F'};
    OracleConfig cfg;
    cfg.members = 15;
    CHECK_THROWS_AS(ConcreteSystem(s, cfg), DomainError);

    cfg.members = 0;
    CHECK_THROWS_AS(ConcreteSystem(s, cfg), DomainError);

    cfg.members = 3;
    cfg.dim = 1;
    CHECK_THROWS_AS(ConcreteSystem(s, cfg), DomainError);
}

TEST_CASE("per-letter sizing follows the requested targets") {
    SystemSpec s;
    s.families = {'B', 'F'};
    s.interactions.push_back(PairedIndex(fam('B'), fam('F')));
    std::vector<std::vector<Index>> targets = {{ix("F1"), ix("F2"), ix("F3")}};

    CHECK(recommended_members(s, targets) == 4);
    CHECK(recommended_members(s, targets, 6) == 6);
    CHECK(recommended_members(s, {}) == 3);

    OracleConfig base;
    base.members = 1;
    OracleConfig tuned = tuned_config(base, s, targets);
    CHECK(tuned.members_by.at('F') == 4);
    CHECK(tuned.members_by.at('B') == 1);

    //tuning never shrinks an explicit override
    base.members_by['F'] = 6;
    CHECK(tuned_config(base, s, targets).members_by.at('F') == 6);
}

}  // TEST_SUITE
