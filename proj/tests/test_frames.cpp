#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "jastit/frames.hpp"
#include "oracle.hpp"

using namespace jastit;

namespace {

TemporalFrame frame_from(std::size_t n, std::vector<std::pair<MomentId, MomentId>> order,
                         std::vector<std::pair<MomentId, MomentId>> dense = {}) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("m" + std::to_string(i));
    return TemporalFrame(names, Relation::from_pairs(n, order), std::move(dense));
}

// m0 < m1 < m3, m0 < m2: two histories, divided at m0.
TemporalFrame two_branches() { return gen::tree_frame({0, 0, 0, 1}); }

}  // namespace

TEST_CASE("histories are maximal chains") {
    gen::Rng rng(1);
    for (std::size_t n = 1; n <= 6; ++n)
        gen::for_each_parents(n, [&](const std::vector<MomentId>& parents) {
            const TemporalFrame t = gen::tree_frame(parents);
            const auto chains = oracle::maximal_chains(t.order());
            REQUIRE(chains.size() == t.histories().size());
            for (std::size_t k = 0; k < chains.size(); ++k) CHECK(t.history(k).moments == chains[k]);
            for (MomentId m = 0; m < n; ++m)
                for (HistoryId h = 0; h < chains.size(); ++h) {
                    const bool on = std::count(chains[h].begin(), chains[h].end(), m) != 0;
                    const auto th = t.through(m);
                    CHECK((std::find(th.begin(), th.end(), h) != th.end()) == on);
                }
        });
}

TEST_CASE("pairs enumerate MH by moment then history") {
    const TemporalFrame t = two_branches();
    const auto& mh = t.pairs();
    CHECK(mh.size() == 2 + 1 + 1 + 1);
    CHECK(std::is_sorted(mh.begin(), mh.end()));
    CHECK(!t.pair_index(2, 1 - *t.through(2).begin()).has_value());
}

TEST_CASE("Next agrees with its definition on unannotated frames") {
    for (std::size_t n = 1; n <= 6; ++n)
        gen::for_each_parents(n, [&](const std::vector<MomentId>& parents) {
            const TemporalFrame t = gen::tree_frame(parents);
            for (MomentId a = 0; a < n; ++a)
                for (MomentId b = 0; b < n; ++b) CHECK(t.next(a, b) == oracle::next_literal(t, a, b));
        });
}

TEST_CASE("dense annotations remove immediate successors") {
    const TemporalFrame t = gen::tree_frame({0, 0, 1}, {{0, 1}});
    CHECK(!t.next(0, 1));
    CHECK(t.next(1, 2));
    CHECK(t.is_dense(0, 1));
    CHECK(!t.is_dense(1, 2));
    CHECK(t.annotated());
    // Histories are unaffected.
    CHECK(t.histories().size() == 1);
}

TEST_CASE("undividedness") {
    const TemporalFrame t = gen::tree_frame({0, 0, 1, 1});  // m0 < m1 < {m2, m3}
    const auto h = t.through(2)[0], g = t.through(3)[0];
    CHECK(undivided_at(t, 0, h, g));
    CHECK(!undivided_at(t, 1, h, g));
    CHECK(undivided_classes(t, 0).size() == 1);
    CHECK(undivided_classes(t, 1).size() == 2);
    CHECK_THROWS_AS(undivided_at(t, 2, h, g), InputError);
}

TEST_CASE("frame validation reports each rule") {
    CHECK(validate_frame(two_branches()).empty());

    SUBCASE("historical connection") {
        auto ds = validate_frame(frame_from(2, {}));
        CHECK(has_rule(ds, "historical-connection"));
    }
    SUBCASE("partial order") {
        auto ds = validate_frame(frame_from(2, {{0, 1}, {1, 0}}));
        CHECK(has_rule(ds, "partial-order"));
    }
    SUBCASE("backward branching") {
        auto ds = validate_frame(frame_from(3, {{0, 2}, {1, 2}}));
        CHECK(has_rule(ds, "no-backward-branching"));
        auto it = std::find_if(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.rule == "no-backward-branching"; });
        REQUIRE(it != ds.end());
        CHECK(it->witness.size() == 3);
    }
    SUBCASE("density only on cover pairs") {
        auto ds = validate_frame(frame_from(3, {{0, 1}, {1, 2}}, {{0, 2}}));
        CHECK(has_rule(ds, "density-annotation"));
    }
    SUBCASE("choice partitions") {
        const TemporalFrame t = two_branches();
        std::vector<Partition> choice(t.size());
        for (MomentId m = 0; m < t.size(); ++m) {
            std::vector<HistoryId> all(t.through(m).begin(), t.through(m).end());
            choice[m] = {all};
        }
        choice[0] = {{0}};
        CHECK(has_rule(validate_frame(StitFrame(t, 1, choice)), "choice-partition"));
        choice[0] = {{0}, {1}};
        CHECK(validate_frame(StitFrame(t, 1, choice)).empty());
    }
    SUBCASE("no choice between undivided histories") {
        const TemporalFrame t = gen::tree_frame({0, 0, 1, 1});
        std::vector<Partition> choice(t.size());
        for (MomentId m = 0; m < t.size(); ++m) {
            std::vector<HistoryId> all(t.through(m).begin(), t.through(m).end());
            choice[m] = {all};
        }
        choice[0] = {{0}, {1}};
        CHECK(has_rule(validate_frame(StitFrame(t, 1, choice)), "no-choice-between-undivided"));
    }
    SUBCASE("independence of agents") {
        const TemporalFrame t = two_branches();
        std::vector<Partition> choice(t.size() * 2);
        for (MomentId m = 0; m < t.size(); ++m)
            for (int j = 0; j < 2; ++j) {
                std::vector<HistoryId> all(t.through(m).begin(), t.through(m).end());
                choice[m * 2 + j] = {all};
            }
        choice[0] = {{0}, {1}};
        choice[1] = {{0}, {1}};
        CHECK(has_rule(validate_frame(StitFrame(t, 2, choice)), "independence-of-agents"));
    }
    SUBCASE("epistemic relations") {
        const TemporalFrame t = two_branches();
        const StitFrame c(t, 1);
        Relation r = t.order();
        Relation re = t.order();
        CHECK(validate_frame(JstitFrame(c, r, re)).empty());
        Relation bad = Relation::identity(t.size());
        auto ds = validate_frame(JstitFrame(c, bad, re));
        CHECK(has_rule(ds, "future-always-matters"));
        Relation wide = Relation::total(t.size());
        CHECK(has_rule(validate_frame(JstitFrame(c, wide, re)), "r-subset-re"));
        Relation intransitive = t.order();
        intransitive.set(2, 1);
        intransitive.set(1, 0);
        CHECK(has_rule(validate_frame(JstitFrame(c, r, intransitive)), "re-preorder"));
        Relation irreflexive = Relation::total(t.size());
        irreflexive.set(3, 3, false);
        CHECK(has_rule(validate_frame(JstitFrame(c, irreflexive, Relation::total(t.size()))), "r-preorder"));
    }
}

TEST_CASE("unannotated finite frames are mixed-successor and regular") {
    gen::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const JstitFrame f = gen::random_frame(rng, {1, 7, 2, 0.0, 2, 2});
        CHECK(is_mixsucc(f.stit()).holds);
        CHECK(is_regular(f).holds);
    }
}

TEST_CASE("mixsucc witness on an annotated fork") {
    // m0 < m1 dense, m0 < m2: divided at m0, no successor below m1.
    const TemporalFrame t = gen::tree_frame({0, 0, 0}, {{0, 1}});
    const auto r = is_mixsucc(t);
    REQUIRE(!r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->m0 == 0);
    CHECK(r.witness->m1 == 1);
    CHECK(r.uses_annotations);
    CHECK(!oracle::mixsucc(t));
    // Dense above a non-branching moment is harmless.
    CHECK(is_mixsucc(gen::tree_frame({0, 0, 1, 1}, {{0, 1}})).holds);
}

TEST_CASE("classification matches the oracle on small annotated frames") {
    gen::Rng rng(11);
    for (std::size_t n = 1; n <= 4; ++n)
        gen::for_each_parents(n, [&](const std::vector<MomentId>& parents) {
            const TemporalFrame bare = gen::tree_frame(parents);
            for (const auto& dense : gen::all_subsets(gen::cover_pairs(bare), 2)) {
                const TemporalFrame t = gen::tree_frame(parents, dense);
                CHECK(is_mixsucc(t).holds == oracle::mixsucc(t));
                const StitFrame c(t, 1);
                for (int k = 0; k < 3; ++k) {
                    const JstitFrame f = gen::with_relations(c, rng, k, k);
                    const auto th = oracle::theta(f);
                    CHECK(th.segments_uniform);
                    for (MomentId m = 0; m < n; ++m) {
                        const auto lib = theta(f, m);
                        CHECK(std::set<MomentMask>(lib.begin(), lib.end()) == th.per_moment[m]);
                    }
                    CHECK(is_regular(f).holds == oracle::regular(f));
                }
            }
        });
}

TEST_CASE("theta members have strict predecessors") {
    gen::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const JstitFrame f = gen::random_frame(rng, {1, 7, 1, 0.3, 2, 3});
        for (MomentId m = 0; m < f.temporal().size(); ++m)
            for (MomentMask s : theta(f, m)) {
                CHECK(mask_has(s, m));
                for (MomentId x : mask_members(s)) {
                    bool pred = false;
                    for (MomentId y = 0; y < f.temporal().size(); ++y) pred |= f.temporal().lt(y, x);
                    CHECK(pred);
                }
            }
    }
}

TEST_CASE("closed sets and theta are consistent") {
    gen::Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        const JstitFrame f = gen::random_frame(rng, {2, 6, 1, 0.3, 1, 2});
        const auto all = closed_sets(f);
        for (MomentMask s : all) CHECK(is_closed_set(f, s));
        for (MomentId m = 0; m < f.temporal().size(); ++m) {
            std::vector<MomentMask> expect;
            for (MomentMask s : all)
                if (mask_has(s, m)) expect.push_back(s);
            CHECK(theta(f, m) == expect);
        }
    }
}

TEST_CASE("theta refuses frames above the cap") {
    std::vector<MomentId> parents(12, 0);
    for (std::size_t i = 1; i < parents.size(); ++i) parents[i] = i - 1;
    const JstitFrame f(StitFrame(gen::tree_frame(parents), 1));
    CHECK_THROWS_AS(theta(f, 0, ThetaOptions{8}), ResourceError);
    CHECK_NOTHROW(theta(f, 0, ThetaOptions{12}));
}

TEST_CASE("regularity witness on an annotated fork") {
    const TemporalFrame t = gen::tree_frame({0, 0, 0}, {{0, 1}});
    const JstitFrame f{StitFrame(t, 2)};
    const auto r = is_regular(f);
    REQUIRE(!r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->m0 == 0);
    CHECK(r.witness->m1 == 1);
    CHECK(!mask_has(r.witness->S, 0));
    CHECK(mask_has(r.witness->S, 1));
    CHECK(!oracle::regular(f));
}

TEST_CASE("unirelational frames") {
    const TemporalFrame t = two_branches();
    const StitFrame c(t, 1);
    CHECK(is_unirelational(JstitFrame(c)));
    Relation re = Relation::total(t.size());
    CHECK(!is_unirelational(JstitFrame(c, t.order(), re)));
    CHECK(is_unirelational(JstitFrame(c, re, re)));
}
