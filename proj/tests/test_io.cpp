#include <doctest.h>

#include "generators.hpp"
#include "jastit/io.hpp"
#include "jastit/semantics.hpp"

using namespace jastit;

namespace {

Formula P(const char* s) { return parse_formula(s); }

Json fork_doc() {
    return Json::parse(R"J({
        "moments": ["m0", "a", "b"],
        "order": [["m0", "a"], ["m0", "b"]],
        "agents": 2,
        "choice": {"m0,0": [["h0"], ["h1"]]},
        "dense": [["m0", "a"]]
    })J");
}

void same_model(const JstitModel& a, const JstitModel& b) {
    REQUIRE(a.temporal().size() == b.temporal().size());
    CHECK(a.frame().r() == b.frame().r());
    CHECK(a.frame().re() == b.frame().re());
    CHECK(a.frame().stit().choices() == b.frame().stit().choices());
    CHECK(a.temporal().dense() == b.temporal().dense());
    for (const auto& [m, h] : a.temporal().pairs()) CHECK(a.act(m, h) == b.act(m, h));
    for (MomentId m = 0; m < a.temporal().size(); ++m)
        for (const auto& p : a.universe().polys) CHECK(a.evidence(m, p) == b.evidence(m, p));
    CHECK(a.evidence_default() == b.evidence_default());
    CHECK(a.valuated_vars() == b.valuated_vars());
    for (const auto& v : a.valuated_vars()) CHECK(a.valuation_pairs(v) == b.valuation_pairs(v));
    CHECK(a.universe().polys == b.universe().polys);
    CHECK(a.universe().formulas == b.universe().formulas);
}

}  // namespace

TEST_CASE("frame documents") {
    const JstitFrame f = frame_from_json(fork_doc(), 1);
    CHECK(f.agents() == 2);
    CHECK(f.temporal().size() == 3);
    CHECK(f.temporal().is_dense(0, 1));
    CHECK(f.stit().choice(0, 0).size() == 2);
    CHECK(f.stit().choice(0, 1).size() == 1);
    CHECK(f.r() == f.temporal().order());
    CHECK(validate_frame(f).empty());
    const Json back = frame_to_json(f);
    const JstitFrame g = frame_from_json(back, 1);
    CHECK(g.stit().choices() == f.stit().choices());
    CHECK(canonical(frame_to_json(g)) == canonical(back));
}

TEST_CASE("agents default from the caller") {
    Json doc = fork_doc();
    doc.erase("agents");
    doc.erase("choice");
    CHECK(frame_from_json(doc, 3).agents() == 3);
}

TEST_CASE("malformed frame documents") {
    auto bad = [](const char* text) { return Json::parse(text); };
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"order": []})J"), 1), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": []})J"), 1), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": ["a", "a"]})J"), 1), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": ["a"], "order": [["a", "z"]]})J"), 1), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": ["a"], "order": [["a"]]})J"), 1), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": ["a"], "agents": 0})J"), 1), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": ["a"], "choice": {"a,5": [["h0"]]}})J"), 2), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J({"moments": ["a"], "choice": {"a,0": [["h7"]]}})J"), 2), InputError);
    CHECK_THROWS_AS(frame_from_json(bad(R"J([1, 2])J"), 1), InputError);
}

TEST_CASE("model documents") {
    Json doc = fork_doc();
    doc["act"] = {{"m0/h0", {"y"}}, {"a/h0", {"x", "y"}}};
    doc["evidence"] = {{"m0/x", Json::array({"p"})}, {"a/x", "*"}};
    doc["evidence_default"] = "*";
    doc["valuation"] = Json::parse(R"J({"p": [["a", "h0"]]})J");
    const JstitModel m = model_from_json(doc, 2);
    CHECK(m.act(1, 0).size() == 2);
    CHECK(m.evidence(0, Poly::var("x")).contains(P("p")));
    CHECK(!m.evidence(0, Poly::var("x")).contains(P("q")));
    CHECK(m.evidence(1, Poly::var("x")).is_everything());
    CHECK(m.valuation("p", 1, 0));
    CHECK(m.universe().has(Poly::var("x")));
    CHECK(m.universe().has(P("p")));
    same_model(m, model_from_json(model_to_json(m), 2));

    Json no_default = doc;
    no_default.erase("evidence_default");
    CHECK(!model_from_json(no_default, 2).evidence_default().is_everything());

    Json bad = doc;
    bad["act"] = {{"b/h0", {"y"}}};
    CHECK_THROWS_AS(model_from_json(bad, 2), InputError);
    bad = doc;
    bad["act"] = {{"m0h0", {"y"}}};
    CHECK_THROWS_AS(model_from_json(bad, 2), InputError);
    bad = doc;
    bad["evidence"] = {{"m0/x", 3}};
    CHECK_THROWS_AS(model_from_json(bad, 2), InputError);
    bad = doc;
    bad["act"] = {{"m0/h0", {"x +"}}};
    CHECK_THROWS_AS(model_from_json(bad, 2), Error);
}

TEST_CASE("random models survive a round trip") {
    gen::Rng rng(71);
    gen::FormulaSpec fs;
    for (int i = 0; i < 60; ++i) {
        const JstitFrame f = gen::random_frame(rng, {1, 6, 2, 0.3, 2, 2});
        std::vector<Formula> forms;
        for (int k = 0; k < 3; ++k) forms.push_back(gen::random_formula(rng, 3, fs));
        const JstitModel m = gen::random_model(rng, f, Universe::of(forms), {});
        const Json j = model_to_json(m);
        const JstitModel back = model_from_json(Json::parse(canonical(j)), 1);
        same_model(m, back);
        CHECK(canonical(model_to_json(back)) == canonical(j));
        for (const auto& g : forms) CHECK(valid_in_model(m, g).holds == valid_in_model(back, g).holds);
    }
}

TEST_CASE("proof documents") {
    const Json doc = Json::parse(R"J({"lines": [
        {"formula": "K(Box E x | ~Box E y) -> (Box E x | ~Box E y)", "just": {"kind": "axiom", "scheme": "A7"}},
        {"formula": "K(Box E x | ~Box E y) -> (E x | ~E y)", "just": {"kind": "rd", "premise": 0}}
    ]})J");
    const Proof p = proof_from_json(doc);
    REQUIRE(p.lines.size() == 2);
    CHECK(p.lines[0].just.scheme == Scheme::A7);
    CHECK(p.lines[1].just.kind == Justification::Kind::RD);
    CHECK(verify_proof(p, {}).accepted);

    const Json mp = Json::parse(R"J({"lines": [
        {"formula": "p", "just": {"kind": "mp", "premises": [0]}}]})J");
    CHECK_THROWS_AS(proof_from_json(mp), InputError);
    const Json kind = Json::parse(R"J({"lines": [{"formula": "p", "just": {"kind": "guess"}}]})J");
    CHECK_THROWS_AS(proof_from_json(kind), InputError);
}

TEST_CASE("constant specification documents") {
    const auto a = cs_from_json(Json::parse(R"J(["c : (p -> p)"])J"));
    const auto b = cs_from_json(Json::parse(R"J({"cs": ["c : (p -> p)"]})J"));
    CHECK(a.entries() == b.entries());
    CHECK_THROWS_AS(cs_from_json(Json::parse(R"J({"cs": 3})J")), InputError);
    CHECK_THROWS_AS(cs_from_json(Json::parse(R"J(["x : p"])J")), InputError);
}

TEST_CASE("history labels") {
    const JstitFrame f = frame_from_json(fork_doc(), 1);
    CHECK(parse_history(f.temporal(), "h1") == 1);
    CHECK(parse_history(f.temporal(), "0") == 0);
    CHECK_THROWS_AS(parse_history(f.temporal(), "h9"), InputError);
    CHECK_THROWS_AS(parse_history(f.temporal(), "hx"), InputError);
    CHECK(history_label(4) == "h4");
}

TEST_CASE("files") {
    CHECK_THROWS_AS(load_json("/nonexistent/file.json"), InputError);
    const Json j = load_json(std::string(JASTIT_TEST_DATA) + "/fork_dense.json");
    CHECK(frame_from_json(j, 2).temporal().annotated());
}

TEST_CASE("diagnostics serialise with their witness") {
    Diagnostics ds{{Severity::Error, "partial-order", "msg", {{"m", "a"}, {"m1", "b"}}}};
    const Json j = diagnostics_to_json(ds);
    CHECK(j[0]["rule"] == "partial-order");
    CHECK(j[0]["severity"] == "error");
    CHECK(j[0]["witness"]["m1"] == "b");
}
