#pragma once

// Falsifying models for K(Box E x | ~Box E y) -> (E x | ~E y) on frames that
// leave the mixed-successor or regular classes.

#include <string>

#include "jastit/frames.hpp"
#include "jastit/models.hpp"
#include "jastit/semantics.hpp"

namespace jastit {

/// K(Box E x | ~Box E y) -> (E x | ~E y)
Formula definability_target();

struct BuiltModel {
    JstitModel model;
    Index index;
    Formula target;
    /// Empty unless the witness depends on density annotations.
    std::string provenance;
};

/// Throws WitnessError naming the first failing conjunct.
void check_witness(const TemporalFrame& t, const MixsuccWitness& w);
void check_witness(const JstitFrame& f, const RegWitness& w);

/// R = R_e = the temporal order, E = everything, V empty; index (m0, h2) with
/// h2 the least history through m1.
BuiltModel build_stit_countermodel(const StitFrame& c, const MixsuccWitness& w);
/// As above over single-cell choice partitions for `agents` agents.
BuiltModel build_temporal_countermodel(const TemporalFrame& t, const MixsuccWitness& w, std::size_t agents = 2);
/// Keeps the frame's R and R_e; Act is read off the witness set S.
BuiltModel build_jstit_countermodel(const JstitFrame& f, const RegWitness& w);

}  // namespace jastit
