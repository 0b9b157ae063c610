#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "jastit/cli.hpp"
#include "jastit/io.hpp"

using namespace jastit;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const char* name) { return std::string(JASTIT_TEST_DATA) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
    const auto p = std::filesystem::temp_directory_path() / ("jastit_cli_" + name);
    std::ofstream(p) << body;
    return p.string();
}

const char* kModel = R"J({
    "moments": ["m0", "a", "b"],
    "order": [["m0", "a"], ["m0", "b"]],
    "agents": 2,
    "choice": {"m0,0": [["h0"], ["h1"]]},
    "valuation": {"p": [["a", "h0"], ["m0", "h0"]]},
    "evidence_default": "*"
})J";

const char* kProof = R"J({"lines": [
    {"formula": "K(Box E x | ~Box E y) -> (Box E x | ~Box E y)", "just": {"kind": "axiom", "scheme": "A7"}},
    {"formula": "K(Box E x | ~Box E y) -> (E x | ~E y)", "just": {"kind": "rd", "premise": 0}}
]})J";

}  // namespace

TEST_CASE("parse") {
    auto r = run_cli({"parse", "p & q"});
    CHECK(r.code == kExitOk);
    CHECK(!r.out.empty());
    r = run_cli({"parse", "--poly", "x * c1"});
    CHECK(r.code == kExitOk);
    r = run_cli({"parse", "p & "});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("syntax error") != std::string::npos);
}

TEST_CASE("check-frame") {
    auto r = run_cli({"check-frame", data("fork_dense.json")});
    CHECK(r.code == kExitOk);
    CHECK(Json::parse(r.out)["valid"] == true);

    const auto bad = temp_file("bad_frame.json", R"J({"moments": ["a", "b"], "order": [["a", "b"], ["b", "a"]]})J");
    r = run_cli({"check-frame", bad});
    CHECK(r.code == kExitProperty);
    CHECK(Json::parse(r.out)["valid"] == false);

    r = run_cli({"check-frame", "/nonexistent/frame.json"});
    CHECK(r.code == kExitInput);
}

TEST_CASE("classify") {
    auto r = run_cli({"classify", data("fork_dense.json")});
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["mixsucc"] == false);
    CHECK(j["regular"] == false);
    CHECK(j["annotated"] == true);
    CHECK(j.contains("mixsucc_witness"));
    CHECK(j["theta_sizes"].size() == 3);

    const auto bad = temp_file("bad_classify.json", R"J({"moments": ["a", "b"], "order": [["a", "b"], ["b", "a"]]})J");
    CHECK(run_cli({"classify", bad}).code == kExitInput);
    CHECK(run_cli({"classify", "--theta-cap", "1", data("fork_dense.json")}).code == kExitResource);
}

TEST_CASE("check-model and eval") {
    const auto model = temp_file("model.json", kModel);
    auto r = run_cli({"check-model", model});
    CHECK(r.code == kExitOk);
    CHECK(Json::parse(r.out)["valid"] == true);

    const auto cs = temp_file("cs.json", R"J(["c1 : (p -> p)"])J");
    CHECK(run_cli({"check-model", "--cs", cs, model}).code == kExitOk);

    r = run_cli({"eval", model, "--at", "a,h0", "--formula", "p"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "true\n");
    r = run_cli({"eval", model, "--at", "m0,h1", "--formula", "p"});
    CHECK(r.code == kExitProperty);
    CHECK(r.out == "false\n");
    CHECK(run_cli({"eval", model, "--at", "a,h1", "--formula", "p"}).code == kExitInput);
    CHECK(run_cli({"eval", model, "--at", "a", "--formula", "p"}).code == kExitInput);
    CHECK(run_cli({"eval", model, "--at", "a,h0", "--formula", "p &"}).code == kExitInput);
}

TEST_CASE("countermodel") {
    for (const char* kind : {"stit", "temporal", "jstit"}) {
        auto r = run_cli({"countermodel", "--kind", kind, data("fork_dense.json")});
        REQUIRE(r.code == kExitProperty);
        const Json j = Json::parse(r.out);
        CHECK(j["holds_at_index"] == false);
        CHECK(j["witness"].is_object());
        // The emitted model is a valid model document.
        const auto path = temp_file(std::string("cm_") + kind + ".json", r.out);
        CHECK(run_cli({"check-model", path}).code == kExitOk);
        const std::string at = j["index"][0].get<std::string>() + "," + j["index"][1].get<std::string>();
        CHECK(run_cli({"eval", path, "--at", at, "--formula", j["formula"].get<std::string>()}).code ==
              kExitProperty);
    }
    auto r = run_cli({"countermodel", "--kind", "stit", "--witness", "m0,a,h0,h1", data("fork_dense.json")});
    CHECK(r.code == kExitProperty);
    r = run_cli({"countermodel", "--kind", "stit", "--witness", "m0,b,h0,h1", data("fork_dense.json")});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("invalid witness") != std::string::npos);
    r = run_cli({"countermodel", "--kind", "stit", "--witness", "m0,a", data("fork_dense.json")});
    CHECK(r.code == kExitInput);
    r = run_cli({"countermodel", "--kind", "nonsense", data("fork_dense.json")});
    CHECK(r.code == kExitInput);

    // No witness on a plain fork.
    const auto plain = temp_file("plain.json", R"J({"moments": ["m0", "a", "b"], "order": [["m0", "a"], ["m0", "b"]]})J");
    CHECK(run_cli({"countermodel", "--kind", "stit", plain}).code == kExitOk);
    CHECK(run_cli({"countermodel", "--kind", "jstit", plain}).code == kExitOk);
}

TEST_CASE("verify-proof") {
    const auto proof = temp_file("proof.json", kProof);
    auto r = run_cli({"verify-proof", proof});
    CHECK(r.code == kExitOk);
    CHECK(Json::parse(r.out)["accepted"] == true);

    const auto broken = temp_file("broken.json", R"J({"lines": [{"formula": "p -> Box p", "just": {"kind": "axiom"}}]})J");
    r = run_cli({"verify-proof", broken});
    CHECK(r.code == kExitProperty);
    CHECK(Json::parse(r.out)["lines"][0]["ok"] == false);

    const auto nec = temp_file("nec.json", R"J({"lines": [
        {"formula": "p | ~p", "just": {"kind": "axiom"}},
        {"formula": "Box(p | ~p)", "just": {"kind": "nec", "premise": 0}}]})J");
    CHECK(run_cli({"verify-proof", nec}).code == kExitProperty);
    CHECK(run_cli({"verify-proof", "--box-nec", nec}).code == kExitOk);
}

TEST_CASE("search") {
    auto r = run_cli({"search", "--formula", "K p -> p", "--max-moments", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "none within bounds\n");
    r = run_cli({"search", "--formula", "Box p -> K p", "--max-moments", "3"});
    CHECK(r.code == kExitProperty);
    const auto path = temp_file("found.json", r.out);
    CHECK(run_cli({"check-model", path}).code == kExitOk);
    r = run_cli({"search", "--formula", "K(Box E x | ~Box E y) -> (E x | ~E y)", "--max-moments", "4", "--budget",
                 "10"});
    CHECK(r.code == kExitResource);
    CHECK(r.err.find("resource bound") != std::string::npos);
    CHECK(run_cli({"search", "--formula", "x : true", "--max-moments", "2", "--evidence", "empty-or-everything"})
              .code == kExitProperty);
}

TEST_CASE("flags") {
    CHECK(run_cli({}).code == kExitInput);
    CHECK(run_cli({"--bogus", "parse", "p"}).code == kExitInput);
    CHECK(run_cli({"frobnicate"}).code == kExitInput);
    CHECK(run_cli({"--ag", "0", "parse", "p"}).code == kExitInput);
    CHECK(run_cli({"--help"}).code == kExitOk);
    CHECK(run_cli({"--ag", "3", "parse", "[2] p"}).code == kExitOk);
}

TEST_CASE("the installed binary") {
    const std::string bin = JASTIT_BIN;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(bin + " parse 'p -> q'") == kExitOk);
    CHECK(status(bin + " parse 'p -> '") == kExitInput);
    CHECK(status(bin + " classify " + data("fork_dense.json")) == kExitOk);
    CHECK(status(bin + " countermodel --kind jstit " + data("fork_dense.json")) == kExitProperty);
    CHECK(status(bin + " search --formula 'K(Box E x | ~Box E y) -> (E x | ~E y)' --max-moments 4 --budget 5") ==
          kExitResource);

    FILE* pipe = popen((bin + " eval " + temp_file("bin_model.json", kModel) + " --at a,h0 --formula 'K p'").c_str(),
                       "r");
    REQUIRE(pipe);
    char buf[64] = {};
    const std::size_t n = std::fread(buf, 1, sizeof buf - 1, pipe);
    pclose(pipe);
    CHECK(std::string(buf, n) == "true\n");
}
