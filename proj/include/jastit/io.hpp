#pragma once

// JSON documents for frames, models, proofs and constant specifications.
//
// Frame:  {"moments": [names], "order": [[a, b], ...], "agents": n,
//          "choice": {"m,j": [[history ids], ...]}, "r": [[a, b], ...],
//          "re": [[a, b], ...], "dense": [[a, b], ...]}
// The order is closed reflexively and transitively on load; "r" and "re" are
// taken literally and default to the order. Missing choice entries are the
// single-cell partition.
//
// Model:  frame fields plus {"act": {"m/h": [polys]},
//          "evidence": {"m/t": "*" | [formulas]}, "evidence_default": "*" | [formulas],
//          "valuation": {"p": [["m", "h"], ...]},
//          "universe": {"polynomials": [...], "formulas": [...], "prop_vars": [...]}}
// Histories are written "h<k>" (a bare index is accepted on input). An absent
// "evidence_default" means the empty set.
//
// Proof:  {"lines": [{"formula": "...", "just": {"kind": "axiom", "scheme": "A9"}}, ...],
//          "cs": ["c : A", ...]}
// with kinds axiom, mp ("premises": [i, j], line j being line i -> this line),
// knec / nec / rd ("premise": i) and rcs.

#include <string>

#include <json.hpp>

#include "jastit/calculus.hpp"
#include "jastit/countermodels.hpp"
#include "jastit/models.hpp"

namespace jastit {

using Json = nlohmann::json;

/// Reads and parses a JSON file; throws InputError.
Json load_json(const std::string& path);

JstitFrame frame_from_json(const Json& doc, std::size_t default_agents);
JstitModel model_from_json(const Json& doc, std::size_t default_agents);
Proof proof_from_json(const Json& doc);
/// Accepts an array of formula strings or an object with a "cs" array.
ConstantSpecification cs_from_json(const Json& doc);

Json frame_to_json(const JstitFrame& f);
Json model_to_json(const JstitModel& m);
Json diagnostics_to_json(const Diagnostics& ds);

/// "h3" or "3".
HistoryId parse_history(const TemporalFrame& t, const std::string& text);
std::string history_label(HistoryId h);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& j);

}  // namespace jastit
