#include <doctest.h>

#include "generators.hpp"
#include "jastit/semantics.hpp"
#include "oracle.hpp"

using namespace jastit;

namespace {

Formula P(const char* s) { return parse_formula(s); }
Poly T(const char* s) { return parse_poly(s); }

// m0 < m1 < m3, m0 < m2; agent 0 separates the two histories at m0.
JstitModel sample() {
    const TemporalFrame t = gen::tree_frame({0, 0, 0, 1});
    std::vector<Partition> choice(t.size());
    for (MomentId m = 0; m < t.size(); ++m) {
        std::vector<HistoryId> all(t.through(m).begin(), t.through(m).end());
        choice[m] = {all};
    }
    choice[0] = {{0}, {1}};
    JstitModel m(JstitFrame(StitFrame(t, 1, choice)), Universe::of({P("x:p & E y")}));
    m.set_valuation("p", 0, 0);
    m.set_valuation("p", 1, 0);
    m.set_valuation("p", 3, 0);
    m.set_act(0, 0, {T("y")});
    m.set_act(1, 0, {T("y")});
    m.set_act(3, 0, {T("y")});
    return m;
}

}  // namespace

TEST_CASE("satisfaction clauses") {
    const JstitModel m = sample();
    const HistoryId h0 = 0, h1 = 1;
    CHECK(satisfies(m, {0, h0}, P("p")));
    CHECK(!satisfies(m, {0, h1}, P("p")));
    CHECK(satisfies(m, {0, h0}, P("[0] p")));
    CHECK(!satisfies(m, {0, h0}, P("Box p")));
    CHECK(satisfies(m, {0, h0}, P("Dia ~p")));
    CHECK(satisfies(m, {1, h0}, P("Box p")));
    CHECK(!satisfies(m, {0, h0}, P("K p")));
    CHECK(satisfies(m, {1, h0}, P("K p")));
    CHECK(satisfies(m, {1, h0}, P("x : p")));
    CHECK(!satisfies(m, {0, h0}, P("x : p")));
    CHECK(satisfies(m, {0, h0}, P("E y")));
    CHECK(!satisfies(m, {0, h1}, P("E y")));
    CHECK(satisfies(m, {0, h0}, P("true")));
    CHECK(!satisfies(m, {0, h0}, P("false")));
}

TEST_CASE("evaluation errors") {
    const JstitModel m = sample();
    CHECK_THROWS_AS(satisfies(m, {0, 0}, P("E z")), UniverseError);
    CHECK_THROWS_AS(satisfies(m, {0, 0}, P("z : p")), UniverseError);
    CHECK_THROWS_AS(satisfies(m, {2, 0}, P("p")), InputError);
    CHECK_THROWS_AS(satisfies(m, {0, 0}, P("[3] p")), InputError);
    // Formulas outside the universe are fine.
    CHECK(!satisfies(m, {0, 0}, P("x : q")));
}

TEST_CASE("validity reports the first failing pair") {
    const JstitModel m = sample();
    const auto v = valid_in_model(m, P("p"));
    CHECK(!v.holds);
    REQUIRE(v.failing);
    CHECK(v.failing->moment == 0);
    CHECK(v.failing->history == 1);
    CHECK(valid_in_model(m, P("p | ~p")).holds);
}

TEST_CASE("memoised evaluation agrees with the naive oracle") {
    gen::Rng rng(41);
    gen::FormulaSpec fs;
    for (int i = 0; i < 300; ++i) {
        const JstitFrame f = gen::random_frame(rng, {1, 6, 2, 0.2, 2, 2});
        std::vector<Formula> forms;
        for (int k = 0; k < 6; ++k) forms.push_back(gen::random_formula(rng, 4, fs));
        const JstitModel m = gen::random_model(rng, f, Universe::of(forms), {});
        Evaluator ev(m);
        for (const auto& g : forms)
            for (const auto& [mo, h] : f.temporal().pairs())
                REQUIRE(ev.holds({mo, h}, g) == oracle::satisfies(m, mo, h, g));
    }
}

TEST_CASE("bounded search") {
    SUBCASE("a satisfiable negation yields a validated model") {
        const Formula f = P("Box p -> K p");
        const auto cm = find_countermodel(f);
        REQUIRE(cm);
        CHECK(!has_errors(validate_model(cm->model)));
        CHECK(!satisfies(cm->model, cm->index, f));
    }
    SUBCASE("axioms have no counter-models") {
        CHECK(!find_countermodel(P("Box E x -> K Box E x")));
        CHECK(!find_countermodel(P("K p -> Box K Box p")));
        CHECK(!find_countermodel(P("Dia [0] p & Dia [1] q -> Dia ([0] p & [1] q)")));
    }
    SUBCASE("the definability target holds on finite trees") {
        SearchBounds b;
        b.max_moments = 3;
        CHECK(!find_countermodel(P("K(Box E x | ~Box E y) -> (E x | ~E y)"), b));
    }
    SUBCASE("agents stay within the community") {
        SearchBounds b;
        b.agents = 1;
        CHECK_THROWS_AS(find_countermodel(P("[1] p"), b), InputError);
    }
    SUBCASE("budget") {
        SearchBounds b;
        b.max_moments = 4;
        b.max_evaluations = 10;
        CHECK_THROWS_AS(find_countermodel(P("K(Box E x | ~Box E y) -> (E x | ~E y)"), b), ResourceError);
    }
    SUBCASE("evidence matters only in the richer mode") {
        SearchBounds b;
        b.max_moments = 2;
        CHECK(!find_countermodel(P("x : p -> x : p"), b));
        const Formula f = P("x : true");
        CHECK(!find_countermodel(f, b));
        b.evidence = EvidenceMode::EmptyOrEverything;
        const auto cm = find_countermodel(f, b);
        REQUIRE(cm);
        CHECK(!satisfies(cm->model, cm->index, f));
        CHECK(!has_errors(validate_model(cm->model)));
    }
}
