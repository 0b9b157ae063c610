#pragma once

// Finite temporal, stit and jstit frames.
//
// Moments are dense indices 0..n-1 with display names. The temporal order is
// stored as its reflexive-transitive closure. Histories (maximal chains) are
// computed once at construction and numbered by the lexicographic order of
// their sorted moment lists.
//
// Finite orders always provide immediate successors, so the successor-free
// stretches that separate mixed-successor frames from the rest cannot occur
// literally. A frame may therefore carry "dense" annotations on cover pairs
// (a, b): the pair stands for an open dense segment of virtual moments lying
// strictly between a and b on exactly the histories through b. Virtual
// moments are not materialised; the operations that depend on them (Next,
// the density clause of Theta, and the evidence-support constraint on
// models) read the annotation instead.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jastit/diagnostics.hpp"
#include "jastit/errors.hpp"
#include "jastit/syntax.hpp"

namespace jastit {

using MomentId = std::size_t;
using HistoryId = std::size_t;
using MomentMask = std::uint64_t;

class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

    static Relation identity(std::size_t n);
    static Relation total(std::size_t n);
    static Relation from_pairs(std::size_t n, std::span<const std::pair<MomentId, MomentId>> pairs);

    std::size_t size() const { return n_; }
    bool operator()(MomentId a, MomentId b) const { return bits_[a * n_ + b] != 0; }
    void set(MomentId a, MomentId b, bool value = true) { bits_[a * n_ + b] = value ? 1 : 0; }

    void close_reflexive_transitive();
    bool includes(const Relation& other) const;  ///< other is a subset of *this
    std::vector<std::pair<MomentId, MomentId>> pairs() const;

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

struct History {
    HistoryId id = 0;
    std::vector<MomentId> moments;     // ascending moment ids
    std::vector<std::uint8_t> member;  // indexed by moment
    bool contains(MomentId m) const { return member[m] != 0; }
};

class TemporalFrame {
public:
    TemporalFrame(std::vector<std::string> names, Relation order,
                  std::vector<std::pair<MomentId, MomentId>> dense = {});

    std::size_t size() const { return names_.size(); }
    const std::string& name(MomentId m) const { return names_.at(m); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<MomentId> find(std::string_view name) const;
    MomentId moment(std::string_view name) const;  ///< throws InputError

    const Relation& order() const { return order_; }
    bool leq(MomentId a, MomentId b) const { return order_(a, b); }
    bool lt(MomentId a, MomentId b) const { return a != b && order_(a, b); }
    bool is_partial_order() const { return antisymmetric_; }

    const std::vector<History>& histories() const { return histories_; }
    const History& history(HistoryId h) const { return histories_.at(h); }
    std::span<const HistoryId> through(MomentId m) const { return through_.at(m); }
    bool on(HistoryId h, MomentId m) const { return histories_.at(h).contains(m); }

    const std::vector<std::pair<MomentId, MomentId>>& dense() const { return dense_; }
    bool is_dense(MomentId a, MomentId b) const;
    bool annotated() const { return !dense_.empty(); }

    bool next(MomentId a, MomentId b) const { return next_[a * size() + b] != 0; }

    /// MH(F): all (moment, history) pairs, ordered by moment then history.
    const std::vector<std::pair<MomentId, HistoryId>>& pairs() const { return pairs_; }
    std::optional<std::size_t> pair_index(MomentId m, HistoryId h) const;

private:
    std::vector<std::string> names_;
    Relation order_;
    std::vector<std::pair<MomentId, MomentId>> dense_;
    bool antisymmetric_ = true;
    std::vector<History> histories_;
    std::vector<std::vector<HistoryId>> through_;
    std::vector<std::uint8_t> next_;
    std::vector<std::pair<MomentId, HistoryId>> pairs_;
    std::vector<std::size_t> pair_lookup_;  // m * |Hist| + h -> index + 1, 0 if absent
};

using Partition = std::vector<std::vector<HistoryId>>;

class StitFrame {
public:
    /// Every agent gets the single-cell partition {H_m} at every moment.
    StitFrame(TemporalFrame temporal, std::size_t agents);
    /// `choice[m * agents + j]` is Choice^m_j.
    StitFrame(TemporalFrame temporal, std::size_t agents, std::vector<Partition> choice);

    const TemporalFrame& temporal() const { return temporal_; }
    std::size_t agents() const { return agents_; }
    const Partition& choice(MomentId m, Agent j) const;
    /// Index of the cell of Choice^m_j holding h, if any.
    std::optional<std::size_t> cell_of(MomentId m, Agent j, HistoryId h) const;
    const std::vector<Partition>& choices() const { return choice_; }

private:
    TemporalFrame temporal_;
    std::size_t agents_;
    std::vector<Partition> choice_;
};

class JstitFrame {
public:
    /// R = R_e = the temporal order.
    explicit JstitFrame(StitFrame stit);
    JstitFrame(StitFrame stit, Relation r, Relation re);

    const StitFrame& stit() const { return stit_; }
    const TemporalFrame& temporal() const { return stit_.temporal(); }
    std::size_t agents() const { return stit_.agents(); }
    const Relation& r() const { return r_; }
    const Relation& re() const { return re_; }

private:
    StitFrame stit_;
    Relation r_;
    Relation re_;
};

// ---------------------------------------------------------------------------
// Histories, Next, undividedness

const std::vector<History>& histories(const TemporalFrame& t);
bool next(const TemporalFrame& t, MomentId m, MomentId m2);

/// h ≈_m g. Throws InputError unless both histories pass through m.
bool undivided_at(const TemporalFrame& t, MomentId m, HistoryId h, HistoryId g);

/// H_m split into ≈_m classes, each sorted, classes ordered by least member.
std::vector<std::vector<HistoryId>> undivided_classes(const TemporalFrame& t, MomentId m);

// ---------------------------------------------------------------------------
// Validation

Diagnostics validate_frame(const TemporalFrame& t);
Diagnostics validate_frame(const StitFrame& c);
Diagnostics validate_frame(const JstitFrame& f);

// ---------------------------------------------------------------------------
// Classification

/// Mixed-successor violation: divided h0, h1 at m0, m0 < m1, and no Next(m0, m)
/// for m below m1.
struct MixsuccWitness {
    MomentId m0 = 0;
    MomentId m1 = 0;
    HistoryId h0 = 0;
    HistoryId h1 = 0;
};

/// Regularity violation: the antecedent of the regularity condition holds at
/// (m0, m1) with history h_prime and moment set S, and m1 has no moment below
/// it that immediately succeeds m0.
struct RegWitness {
    MomentId m0 = 0;
    MomentId m1 = 0;
    HistoryId h_prime = 0;
    MomentMask S = 0;
};

struct MixsuccResult {
    bool holds = true;
    std::optional<MixsuccWitness> witness;
    bool uses_annotations = false;
};

struct RegularResult {
    bool holds = true;
    std::optional<RegWitness> witness;
    bool uses_annotations = false;
};

struct ThetaOptions {
    std::size_t max_moments = 16;
};

MixsuccResult is_mixsucc(const TemporalFrame& t);
inline MixsuccResult is_mixsucc(const StitFrame& c) { return is_mixsucc(c.temporal()); }

/// Members of Theta_m in ascending mask order. Throws ResourceError when the
/// frame exceeds `opts.max_moments`.
std::vector<MomentMask> theta(const JstitFrame& f, MomentId m, const ThetaOptions& opts = {});

/// All S satisfying the closure conditions of Theta (everything except
/// "m in S"); Theta_m is the subfamily containing m.
std::vector<MomentMask> closed_sets(const JstitFrame& f, const ThetaOptions& opts = {});

/// Checks the closure conditions for one candidate set.
bool is_closed_set(const JstitFrame& f, MomentMask s);

RegularResult is_regular(const JstitFrame& f, const ThetaOptions& opts = {});

bool is_unirelational(const JstitFrame& f);

inline bool mask_has(MomentMask s, MomentId m) { return ((s >> m) & 1U) != 0; }
inline MomentMask mask_of(MomentId m) { return MomentMask{1} << m; }
std::vector<MomentId> mask_members(MomentMask s);

}  // namespace jastit
