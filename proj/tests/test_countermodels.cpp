#include <doctest.h>

#include "generators.hpp"
#include "jastit/countermodels.hpp"
#include "oracle.hpp"

using namespace jastit;

namespace {

// m0 < m1 (dense), m0 < m2.
TemporalFrame dense_fork() { return gen::tree_frame({0, 0, 0}, {{0, 1}}); }

void check_built(const BuiltModel& b) {
    const auto fd = validate_frame(b.model.frame());
    CHECK(fd.empty());
    const auto md = validate_model(b.model);
    CHECK_MESSAGE(!has_errors(md), (md.empty() ? "" : md.front().rule + " " + md.front().message));
    CHECK(oracle::act_constraints_hold(b.model));
    CHECK(!satisfies(b.model, b.index, b.target));
    CHECK(!oracle::satisfies(b.model, b.index.moment, b.index.history, b.target));
}

// Act patterns for one polynomial that pass validation on their own.
std::vector<std::vector<std::uint8_t>> valid_patterns(const JstitFrame& f, const Poly& p) {
    const auto& mh = f.temporal().pairs();
    std::vector<std::vector<std::uint8_t>> out;
    for (std::uint32_t bits = 0; bits < (1U << mh.size()); ++bits) {
        JstitModel m(f, Universe::of({}, {p}));
        std::vector<std::uint8_t> pat(mh.size());
        for (std::size_t i = 0; i < mh.size(); ++i)
            if (bits >> i & 1U) {
                pat[i] = 1;
                m.set_act(mh[i].first, mh[i].second, {p});
            }
        if (!has_errors(validate_model(m))) out.push_back(pat);
    }
    return out;
}

// Whether some valid model on f falsifies the target (E = everything, no valuation needed).
bool target_falsifiable(const JstitFrame& f) {
    const Formula target = definability_target();
    const Poly x = Poly::var("x"), y = Poly::var("y");
    const auto px = valid_patterns(f, x), py = valid_patterns(f, y);
    const auto& mh = f.temporal().pairs();
    for (const auto& a : px)
        for (const auto& b : py) {
            JstitModel m(f, Universe::of({target}));
            for (std::size_t i = 0; i < mh.size(); ++i) {
                PolySet s;
                if (a[i]) s.insert(x);
                if (b[i]) s.insert(y);
                if (!s.empty()) m.set_act(mh[i].first, mh[i].second, s);
            }
            if (!valid_in_model(m, target).holds) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("the target formula") {
    CHECK(definability_target() == parse_formula("K(Box E x | ~Box E y) -> (E x | ~E y)"));
}

TEST_CASE("stit and temporal builders on the dense fork") {
    const TemporalFrame t = dense_fork();
    const auto w = is_mixsucc(t).witness;
    REQUIRE(w);
    const BuiltModel s = build_stit_countermodel(StitFrame(t, 2), *w);
    check_built(s);
    CHECK(s.provenance.find("density annotations") != std::string::npos);
    CHECK(s.index.moment == w->m0);
    CHECK(s.index.history == t.through(w->m1).front());
    const BuiltModel tm = build_temporal_countermodel(t, *w, 3);
    check_built(tm);
    CHECK(tm.model.frame().agents() == 3);
}

TEST_CASE("jstit builder on the dense fork") {
    const JstitFrame f{StitFrame(dense_fork(), 2)};
    const auto w = is_regular(f).witness;
    REQUIRE(w);
    check_built(build_jstit_countermodel(f, *w));
}

TEST_CASE("bad witnesses are rejected") {
    const TemporalFrame t = dense_fork();
    CHECK_THROWS_AS(check_witness(t, MixsuccWitness{0, 2, 0, 1}), WitnessError);  // Next(m0, m2)
    CHECK_THROWS_AS(check_witness(t, MixsuccWitness{1, 0, 0, 1}), WitnessError);
    CHECK_THROWS_AS(build_stit_countermodel(StitFrame(t, 1), MixsuccWitness{0, 1, 0, 0}), WitnessError);
    const JstitFrame f{StitFrame(t, 1)};
    CHECK_THROWS_AS(check_witness(f, RegWitness{0, 1, 0, 0}), WitnessError);
    CHECK_THROWS_AS(build_jstit_countermodel(f, RegWitness{0, 1, 0, mask_of(0) | mask_of(1)}), WitnessError);
    try {
        check_witness(t, MixsuccWitness{0, 2, 0, 1});
    } catch (const WitnessError& e) {
        CHECK(std::string(e.what()).rfind("invalid witness", 0) == 0);
    }
}

TEST_CASE("builders require valid frames") {
    const TemporalFrame bad(std::vector<std::string>{"a", "b"}, Relation::identity(2));
    CHECK_THROWS_AS(build_temporal_countermodel(bad, MixsuccWitness{0, 1, 0, 0}), InputError);
}

TEST_CASE("builders on random annotated frames") {
    gen::Rng rng(61);
    std::size_t stit = 0, jstit = 0;
    for (int i = 0; i < 400; ++i) {
        const JstitFrame f = gen::random_frame(rng, {3, 7, 2, 0.5, 2, 2});
        if (auto w = is_mixsucc(f.stit()).witness) {
            check_witness(f.temporal(), *w);
            check_built(build_stit_countermodel(f.stit(), *w));
            check_built(build_temporal_countermodel(f.temporal(), *w));
            ++stit;
        }
        if (auto w = is_regular(f).witness) {
            check_witness(f, *w);
            check_built(build_jstit_countermodel(f, *w));
            ++jstit;
        }
    }
    CHECK(stit > 20);
    CHECK(jstit > 20);
}

TEST_CASE("regularity decides the target on small frames") {
    // Regular: no valid model falsifies it. Irregular: the builder does.
    gen::Rng rng(67);
    std::size_t regular = 0, irregular = 0;
    for (std::size_t n = 2; n <= 5; ++n)
        gen::for_each_parents(n, [&](const std::vector<MomentId>& parents) {
            const TemporalFrame bare = gen::tree_frame(parents);
            for (const auto& dense : gen::all_subsets(gen::cover_pairs(bare), 3)) {
                const StitFrame c(gen::tree_frame(parents, dense), 1);
                for (int k = 0; k < 2; ++k) {
                    const JstitFrame f = gen::with_relations(c, rng, k, k);
                    if (f.temporal().pairs().size() > 10) continue;
                    const auto r = is_regular(f);
                    if (r.holds) {
                        CHECK(!target_falsifiable(f));
                        ++regular;
                    } else {
                        check_built(build_jstit_countermodel(f, *r.witness));
                        ++irregular;
                    }
                }
            }
        });
    CHECK(regular > 20);
    CHECK(irregular > 5);
}
