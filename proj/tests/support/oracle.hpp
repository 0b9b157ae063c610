#pragma once

// Brute-force reference implementations used as test oracles. They share
// only the data types with the library: histories, Next, Theta, the frame
// classes and satisfaction are recomputed from the definitions.
//
// Dense annotations are handled by materialising each annotated cover pair
// (a, b) as two sample moments a < v0 < v1 < b. Existence of a moment
// strictly between two moments of the same closed segment is decided
// symbolically, as is Next inside a segment. Sample moments inherit R_e and
// Act from b.

#include <set>
#include <vector>

#include "jastit/calculus.hpp"
#include "jastit/frames.hpp"
#include "jastit/models.hpp"
#include "jastit/semantics.hpp"

namespace oracle {

using namespace jastit;

/// Maximal chains by subset enumeration (n <= 16).
std::vector<std::vector<MomentId>> maximal_chains(const Relation& leq);

/// Next read off its definition, without annotations.
bool next_literal(const TemporalFrame& t, MomentId a, MomentId b);

/// Frame with each dense segment materialised.
struct Extended {
    std::size_t real = 0;                    // moments 0..real-1 are the frame's
    std::size_t size = 0;
    std::vector<std::uint8_t> leq;           // size x size
    std::vector<int> segment;                // -1 for real moments
    std::vector<std::pair<MomentId, MomentId>> segments;
    std::vector<MomentId> image;             // real moment standing in for each moment
    std::vector<std::vector<MomentId>> hist; // histories as ascending moment lists
    std::vector<std::uint8_t> re;            // pulled back R_e

    bool le(MomentId a, MomentId b) const { return leq[a * size + b] != 0; }
    bool lt(MomentId a, MomentId b) const { return a != b && le(a, b); }
    bool on(std::size_t h, MomentId m) const;
    bool same_segment(MomentId a, MomentId b) const;
    bool something_between(MomentId a, MomentId b) const;
    bool next(MomentId a, MomentId b) const;
    bool undivided(MomentId m, std::size_t h, std::size_t g) const;
};

Extended extend(const JstitFrame& f);

bool mixsucc(const TemporalFrame& t);

struct ThetaResult {
    std::vector<std::set<MomentMask>> per_moment;  // projected onto real moments
    bool segments_uniform = true;  // every closed set treats a segment like its upper end
};
ThetaResult theta(const JstitFrame& f);

bool regular(const JstitFrame& f);

/// Naive recursive evaluation, no memoisation.
bool satisfies(const JstitModel& model, MomentId m, HistoryId h, const Formula& f);

/// Constraints 7, 8, 9 and 11 checked literally on the materialised frame.
bool act_constraints_hold(const JstitModel& model);

/// Truth-table tautology check.
bool tautology(const Formula& f);

/// R_D by trying every ordering of the premise disjuncts against a
/// left-nested disjunction in the conclusion.
bool rd_by_orderings(const Formula& premise, const Formula& conclusion);

}  // namespace oracle
