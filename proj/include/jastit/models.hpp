#pragma once

// Finite jstit models over a declared universe.
//
// The admissible evidence function is total over an infinite formula space in
// the intended semantics. Here each E(m, t) is either the Everything sentinel
// or a finite subset of the universe's formulas; (m, t) pairs without an
// explicit entry take the model's default evidence set. Closure conditions on
// evidence are only checked for composite polynomials inside the universe.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jastit/diagnostics.hpp"
#include "jastit/frames.hpp"
#include "jastit/syntax.hpp"

namespace jastit {

struct Universe {
    std::set<Poly> polys;
    std::set<Formula> formulas;
    std::set<std::string> prop_vars;

    /// Adds f with all subformulas, their polynomials and propositional variables.
    void add(const Formula& f);
    /// Adds p with all subterms.
    void add(const Poly& p);
    bool has(const Poly& p) const { return polys.count(p) != 0; }
    bool has(const Formula& f) const { return formulas.count(f) != 0; }

    static Universe of(const std::vector<Formula>& fs, const std::vector<Poly>& ps = {});
};

class EvidenceSet {
public:
    EvidenceSet() = default;  // finite, empty
    static EvidenceSet everything();
    static EvidenceSet finite(std::set<Formula> formulas);

    bool is_everything() const { return everything_; }
    bool contains(const Formula& f) const { return everything_ || formulas_.count(f) != 0; }
    bool subset_of(const EvidenceSet& other) const;
    /// Members of a finite set; empty for Everything.
    const std::set<Formula>& formulas() const { return formulas_; }

    friend bool operator==(const EvidenceSet&, const EvidenceSet&) = default;

private:
    bool everything_ = false;
    std::set<Formula> formulas_;
};

using PolySet = std::set<Poly>;

class JstitModel {
public:
    /// Act empty everywhere, evidence Everything everywhere, valuation empty.
    JstitModel(JstitFrame frame, Universe universe);

    const JstitFrame& frame() const { return frame_; }
    const TemporalFrame& temporal() const { return frame_.temporal(); }
    const Universe& universe() const { return universe_; }

    const PolySet& act(MomentId m, HistoryId h) const;
    void set_act(MomentId m, HistoryId h, PolySet polys);

    const EvidenceSet& evidence(MomentId m, const Poly& t) const;
    void set_evidence(MomentId m, const Poly& t, EvidenceSet e);
    const EvidenceSet& evidence_default() const { return evidence_default_; }
    void set_evidence_default(EvidenceSet e) { evidence_default_ = std::move(e); }
    const std::map<std::pair<MomentId, Poly>, EvidenceSet>& evidence_entries() const {
        return evidence_;
    }

    bool valuation(const std::string& p, MomentId m, HistoryId h) const;
    void set_valuation(const std::string& p, MomentId m, HistoryId h, bool value = true);
    /// Pairs (m, h) where p is true, in MH order.
    std::vector<std::pair<MomentId, HistoryId>> valuation_pairs(const std::string& p) const;
    std::vector<std::string> valuated_vars() const;

private:
    std::size_t index_of(MomentId m, HistoryId h) const;

    JstitFrame frame_;
    Universe universe_;
    std::vector<PolySet> act_;
    std::map<std::pair<MomentId, Poly>, EvidenceSet> evidence_;
    EvidenceSet evidence_default_ = EvidenceSet::everything();
    std::map<std::string, std::vector<std::uint8_t>> valuation_;
};

/// Act_m: the polynomials presented at m on every history through m.
PolySet act_settled(const JstitModel& model, MomentId m);

// ---------------------------------------------------------------------------
// Constant specifications

struct CsEntry {
    std::vector<std::string> chain;  // c_n first, c_1 last
    Formula axiom;

    /// c_n : ... : c_1 : A
    Formula formula() const;
    friend auto operator<=>(const CsEntry&, const CsEntry&) = default;
    friend bool operator==(const CsEntry&, const CsEntry&) = default;
};

class ConstantSpecification {
public:
    ConstantSpecification() = default;

    /// Splits each formula into its leading constant chain and core formula,
    /// then completes the set downwards. Throws InputError on formulas that
    /// do not start with a proof constant.
    static ConstantSpecification from_formulas(const std::vector<Formula>& fs);

    /// Adds an entry; any missing shorter chain is added too and reported.
    void add(CsEntry entry);
    const std::set<CsEntry>& entries() const { return entries_; }
    bool contains(const Formula& f) const;
    bool empty() const { return entries_.empty(); }
    /// Warnings for the entries added by downward completion.
    const Diagnostics& completions() const { return completions_; }

private:
    std::set<CsEntry> entries_;
    Diagnostics completions_;
};

/// Splits c_n : ... : c_1 : A into its constant chain and A, peeling every
/// leading constant.
std::optional<CsEntry> split_cs_formula(const Formula& f);

// ---------------------------------------------------------------------------
// Validation

/// Constraints 5, 6a-c, 7, 8, 9 and 11 plus universe conformance; CS-normality
/// when `cs` is given.
Diagnostics validate_model(const JstitModel& model, const ConstantSpecification* cs = nullptr);

/// Cross-check: m < m', h through m', t in Act(m, h) implies t in Act_m'.
Diagnostics derived_property_check(const JstitModel& model);

}  // namespace jastit
