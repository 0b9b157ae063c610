#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jastit/models.hpp"
#include "jastit/syntax.hpp"

namespace jastit {

enum class Scheme { A0, A1, A2, A3, A4, A5, A6, A7, A8, A9 };

std::string scheme_name(Scheme s);
/// Accepts "A0".."A9"; throws InputError otherwise.
Scheme parse_scheme(std::string_view name);

struct AxiomMatch {
    Scheme scheme;
    std::string detail;  // which member of a scheme family, e.g. "T for K"
};

struct AxiomOptions {
    /// Replace the tautology oracle for A0 by a fixed ten-scheme basis.
    bool strict_a0 = false;
    /// When set, agents at or above this bound never match.
    std::optional<std::size_t> agents;
};

/// First matching scheme in the order A2, A3, A4, A5, A6, A8, A9, A1, A7, A0.
std::optional<AxiomMatch> match_axiom(const Formula& f, const AxiomOptions& opts = {});
/// Whether f instantiates the given scheme (the family member is reported).
std::optional<AxiomMatch> match_scheme(const Formula& f, Scheme s, const AxiomOptions& opts = {});

/// Classical tautology over the Boolean skeleton; maximal non-Boolean
/// subformulas are treated as atoms. Throws ResourceError above 24 atoms.
bool is_tautology(const Formula& f);

/// From KA -> (~Box E t1 | ... | Box E s1 | ...) infer KA -> (~E t1 | ... | E s1 | ...).
/// Disjuncts are compared as multisets under any bracketing.
bool match_rd(const Formula& premise, const Formula& conclusion);

// ---------------------------------------------------------------------------
// Proofs

struct Justification {
    enum class Kind { Axiom, MP, KNec, Nec, RD, RCS };
    Kind kind = Kind::Axiom;
    std::optional<Scheme> scheme;  // Axiom: optional claimed scheme
    std::size_t first = 0;         // MP: line of A; KNec, Nec, RD: premise line
    std::size_t second = 0;        // MP: line of A -> B
};

struct ProofLine {
    Formula formula;
    Justification just;
};

struct Proof {
    std::vector<ProofLine> lines;
};

struct ProofOptions {
    /// Enables "from A infer Box A" and "from A infer [j]A".
    bool box_necessitation = false;
    AxiomOptions axioms;
};

struct LineVerdict {
    bool ok = false;
    std::string message;
    std::optional<AxiomMatch> axiom;
};

struct Verdict {
    bool accepted = true;
    std::vector<LineVerdict> lines;
};

/// Line indices are 0-based; premises must precede the line citing them.
Verdict verify_proof(const Proof& p, const ConstantSpecification& cs, const ProofOptions& opts = {});

/// Every core formula must be an axiom instance; downward completions are
/// reported as warnings.
Diagnostics check_cs(const ConstantSpecification& cs, const AxiomOptions& opts = {});

}  // namespace jastit
