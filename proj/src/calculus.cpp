#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>

#include "jastit/calculus.hpp"

namespace jastit {

std::string scheme_name(Scheme s) { return "A" + std::to_string(static_cast<int>(s)); }

Scheme parse_scheme(std::string_view name) {
    if (name.size() == 2 && (name[0] == 'A' || name[0] == 'a') && name[1] >= '0' && name[1] <= '9')
        return static_cast<Scheme>(name[1] - '0');
    throw InputError("unknown axiom scheme '" + std::string(name) + "'");
}

namespace {

// Scheme patterns are ordinary formulas in which every propositional
// variable, proof variable and agent index is a metavariable.
struct Bindings {
    std::map<std::string, Formula> formulas;
    std::map<std::string, Poly> polys;
    std::map<Agent, Agent> agents;
};

bool match_poly(const Poly& pat, const Poly& p, Bindings& b) {
    switch (pat.kind()) {
        case Poly::Kind::Var: {
            auto [it, fresh] = b.polys.try_emplace(pat.name(), p);
            return fresh || it->second == p;
        }
        case Poly::Kind::Const: return p == pat;
        case Poly::Kind::Check: return p.kind() == Poly::Kind::Check && match_poly(pat.arg(), p.arg(), b);
        default:
            return p.kind() == pat.kind() && match_poly(pat.left(), p.left(), b) &&
                   match_poly(pat.right(), p.right(), b);
    }
}

bool match_formula(const Formula& pat, const Formula& f, Bindings& b) {
    if (pat.kind() == Formula::Kind::Atom) {
        auto [it, fresh] = b.formulas.try_emplace(pat.name(), f);
        return fresh || it->second == f;
    }
    if (pat.kind() != f.kind()) return false;
    switch (pat.kind()) {
        case Formula::Kind::And:
            return match_formula(pat.left(), f.left(), b) && match_formula(pat.right(), f.right(), b);
        case Formula::Kind::Not:
        case Formula::Kind::Box:
        case Formula::Kind::Knows: return match_formula(pat.arg(), f.arg(), b);
        case Formula::Kind::Cstit: {
            auto [it, fresh] = b.agents.try_emplace(pat.agent(), f.agent());
            return (fresh || it->second == f.agent()) && match_formula(pat.arg(), f.arg(), b);
        }
        case Formula::Kind::Proves:
            return match_poly(pat.term(), f.term(), b) && match_formula(pat.arg(), f.arg(), b);
        case Formula::Kind::Announced: return match_poly(pat.term(), f.term(), b);
        default: return false;
    }
}

struct Pattern {
    Formula shape;
    std::string detail;
};

const std::vector<Pattern>& patterns_for(Scheme s) {
    static const std::map<Scheme, std::vector<Pattern>> table = [] {
        auto p = [](const char* text, const char* detail) { return Pattern{parse_formula(text), detail}; };
        std::map<Scheme, std::vector<Pattern>> t;
        t[Scheme::A1] = {
            p("Box(A -> B) -> (Box A -> Box B)", "K for Box"),
            p("Box A -> A", "T for Box"),
            p("~Box A -> Box ~Box A", "5 for Box"),
            p("[0](A -> B) -> ([0]A -> [0]B)", "K for [j]"),
            p("[0]A -> A", "T for [j]"),
            p("~[0]A -> [0]~[0]A", "5 for [j]"),
        };
        t[Scheme::A2] = {p("Box A -> [0]A", "Box A -> [j]A")};
        t[Scheme::A4] = {p("s:(A -> B) -> (t:A -> (s*t):B)", "application")};
        t[Scheme::A5] = {p("t:A -> (!t:(t:A) & K A)", "positive introspection and knowledge")};
        t[Scheme::A6] = {p("(s:A | t:A) -> (s+t):A", "sum")};
        t[Scheme::A7] = {
            p("K(A -> B) -> (K A -> K B)", "K for K"),
            p("K A -> A", "T for K"),
            p("K A -> K K A", "4 for K"),
        };
        t[Scheme::A8] = {p("K A -> Box K Box A", "KA -> Box K Box A")};
        t[Scheme::A9] = {p("Box E t -> K Box E t", "Box Et -> K Box Et")};
        t[Scheme::A0] = {
            p("A -> (B -> A)", "basis 1"),
            p("(A -> B) -> ((A -> (B -> C)) -> (A -> C))", "basis 2"),
            p("A -> (B -> A & B)", "basis 3"),
            p("A & B -> A", "basis 4a"),
            p("A & B -> B", "basis 4b"),
            p("A -> A | B", "basis 5a"),
            p("B -> A | B", "basis 5b"),
            p("(A -> C) -> ((B -> C) -> (A | B -> C))", "basis 6"),
            p("(A -> B) -> ((A -> ~B) -> ~A)", "basis 7"),
            p("~~A -> A", "basis 8"),
        };
        return t;
    }();
    static const std::vector<Pattern> none;
    auto it = table.find(s);
    return it == table.end() ? none : it->second;
}

bool agents_in_range(const Bindings& b, const AxiomOptions& opts) {
    if (!opts.agents) return true;
    for (const auto& [_, j] : b.agents)
        if (j < 0 || static_cast<std::size_t>(j) >= *opts.agents) return false;
    return true;
}

std::optional<AxiomMatch> match_patterns(const Formula& f, Scheme s, const AxiomOptions& opts) {
    for (const auto& pat : patterns_for(s)) {
        Bindings b;
        if (match_formula(pat.shape, f, b) && agents_in_range(b, opts)) return AxiomMatch{s, pat.detail};
    }
    return std::nullopt;
}

// (Dia[j1]A1 & ... & Dia[jn]An) -> Dia([j1]A1 & ... & [jn]An), agents pairwise distinct.
std::optional<AxiomMatch> match_a3(const Formula& f, const AxiomOptions& opts) {
    BinaryView imp{f, f};
    if (!as_implication(f, imp)) return std::nullopt;
    Formula inner = f;
    if (!as_diamond(imp.right, inner)) return std::nullopt;
    const auto lhs = flatten_conjunction(imp.left);
    const auto rhs = flatten_conjunction(inner);
    if (lhs.size() != rhs.size()) return std::nullopt;
    std::vector<Agent> seen;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        Formula stit = lhs[i];
        if (!as_diamond(lhs[i], stit) || stit.kind() != Formula::Kind::Cstit || !(stit == rhs[i]))
            return std::nullopt;
        if (std::find(seen.begin(), seen.end(), stit.agent()) != seen.end()) return std::nullopt;
        if (opts.agents && (stit.agent() < 0 || static_cast<std::size_t>(stit.agent()) >= *opts.agents))
            return std::nullopt;
        seen.push_back(stit.agent());
    }
    return AxiomMatch{Scheme::A3, std::to_string(lhs.size()) + " agent(s)"};
}

// Boolean skeleton evaluation over an assignment to the maximal non-Boolean parts.
bool eval_skeleton(const Formula& f, const std::unordered_map<Formula, std::size_t>& atoms, std::uint32_t v) {
    switch (f.kind()) {
        case Formula::Kind::And: return eval_skeleton(f.left(), atoms, v) && eval_skeleton(f.right(), atoms, v);
        case Formula::Kind::Not: return !eval_skeleton(f.arg(), atoms, v);
        default: return ((v >> atoms.at(f)) & 1U) != 0;
    }
}

void collect_atoms(const Formula& f, std::unordered_map<Formula, std::size_t>& atoms) {
    switch (f.kind()) {
        case Formula::Kind::And:
            collect_atoms(f.left(), atoms);
            collect_atoms(f.right(), atoms);
            break;
        case Formula::Kind::Not: collect_atoms(f.arg(), atoms); break;
        default: atoms.try_emplace(f, atoms.size()); break;
    }
}

}  // namespace

bool is_tautology(const Formula& f) {
    std::unordered_map<Formula, std::size_t> atoms;
    collect_atoms(f, atoms);
    if (atoms.size() > 24) throw ResourceError("tautology check over more than 24 atoms");
    const std::uint32_t rows = std::uint32_t{1} << atoms.size();
    for (std::uint32_t v = 0; v < rows; ++v)
        if (!eval_skeleton(f, atoms, v)) return false;
    return true;
}

std::optional<AxiomMatch> match_scheme(const Formula& f, Scheme s, const AxiomOptions& opts) {
    switch (s) {
        case Scheme::A3: return match_a3(f, opts);
        case Scheme::A0:
            if (opts.strict_a0) return match_patterns(f, s, opts);
            if (is_tautology(f)) return AxiomMatch{Scheme::A0, "tautology"};
            return std::nullopt;
        default: return match_patterns(f, s, opts);
    }
}

std::optional<AxiomMatch> match_axiom(const Formula& f, const AxiomOptions& opts) {
    static constexpr Scheme order[] = {Scheme::A2, Scheme::A3, Scheme::A4, Scheme::A5, Scheme::A6,
                                       Scheme::A8, Scheme::A9, Scheme::A1, Scheme::A7, Scheme::A0};
    for (Scheme s : order)
        if (auto m = match_scheme(f, s, opts)) return m;
    return std::nullopt;
}

bool match_rd(const Formula& premise, const Formula& conclusion) {
    BinaryView p{premise, premise};
    BinaryView c{conclusion, conclusion};
    if (!as_implication(premise, p) || !as_implication(conclusion, c)) return false;
    if (p.left.kind() != Formula::Kind::Knows || !(p.left == c.left)) return false;

    // Strip the boxes: ~Box E t becomes ~E t, Box E s becomes E s.
    std::vector<Formula> stripped;
    for (const auto& d : flatten_disjunction(p.right)) {
        if (d.kind() == Formula::Kind::Box && d.arg().kind() == Formula::Kind::Announced) {
            stripped.push_back(d.arg());
        } else if (d.kind() == Formula::Kind::Not && d.arg().kind() == Formula::Kind::Box &&
                   d.arg().arg().kind() == Formula::Kind::Announced) {
            stripped.push_back(Formula::neg(d.arg().arg()));
        } else {
            return false;
        }
    }
    std::vector<Formula> target = flatten_disjunction(c.right);
    if (stripped.empty() || stripped.size() != target.size()) return false;
    std::sort(stripped.begin(), stripped.end());
    std::sort(target.begin(), target.end());
    return stripped == target;
}

Verdict verify_proof(const Proof& proof, const ConstantSpecification& cs, const ProofOptions& opts) {
    Verdict verdict;
    for (std::size_t k = 0; k < proof.lines.size(); ++k) {
        const ProofLine& line = proof.lines[k];
        LineVerdict lv;
        auto premise_ok = [&](std::size_t i) {
            if (i >= k) {
                lv.message = "premise index " + std::to_string(i) + " does not precede line " + std::to_string(k);
                return false;
            }
            return true;
        };
        const Formula& own = line.formula;
        switch (line.just.kind) {
            case Justification::Kind::Axiom: {
                auto m = line.just.scheme ? match_scheme(own, *line.just.scheme, opts.axioms)
                                          : match_axiom(own, opts.axioms);
                if (m) {
                    lv.ok = true;
                    lv.axiom = m;
                    lv.message = "axiom " + scheme_name(m->scheme) + " (" + m->detail + ")";
                } else if (line.just.scheme) {
                    auto other = match_axiom(own, opts.axioms);
                    lv.message = "not an instance of " + scheme_name(*line.just.scheme) +
                                 (other ? "; it is an instance of " + scheme_name(other->scheme) : "");
                } else {
                    lv.message = "not an axiom instance";
                }
                break;
            }
            case Justification::Kind::MP: {
                const std::size_t i = line.just.first;
                const std::size_t j = line.just.second;
                if (!premise_ok(i) || !premise_ok(j)) break;
                if (proof.lines[j].formula == implies(proof.lines[i].formula, own)) {
                    lv.ok = true;
                    lv.message = "modus ponens from " + std::to_string(i) + " and " + std::to_string(j);
                } else {
                    lv.message = "line " + std::to_string(j) + " is not line " + std::to_string(i) +
                                 " -> this line";
                }
                break;
            }
            case Justification::Kind::KNec: {
                const std::size_t i = line.just.first;
                if (!premise_ok(i)) break;
                if (own == Formula::knows(proof.lines[i].formula)) {
                    lv.ok = true;
                    lv.message = "K-necessitation of " + std::to_string(i);
                } else {
                    lv.message = "this line is not K applied to line " + std::to_string(i);
                }
                break;
            }
            case Justification::Kind::Nec: {
                const std::size_t i = line.just.first;
                if (!opts.box_necessitation) {
                    lv.message = "Box/[j]-necessitation is not a rule of the calculus (enable it explicitly)";
                    break;
                }
                if (!premise_ok(i)) break;
                const Formula& a = proof.lines[i].formula;
                const bool boxed = own.kind() == Formula::Kind::Box && own.arg() == a;
                const bool stit = own.kind() == Formula::Kind::Cstit && own.arg() == a &&
                                  (!opts.axioms.agents || (own.agent() >= 0 &&
                                                           static_cast<std::size_t>(own.agent()) < *opts.axioms.agents));
                if (boxed || stit) {
                    lv.ok = true;
                    lv.message = "necessitation of " + std::to_string(i);
                } else {
                    lv.message = "this line is not Box or [j] applied to line " + std::to_string(i);
                }
                break;
            }
            case Justification::Kind::RD: {
                const std::size_t i = line.just.first;
                if (!premise_ok(i)) break;
                if (match_rd(proof.lines[i].formula, own)) {
                    lv.ok = true;
                    lv.message = "R_D from " + std::to_string(i);
                } else {
                    lv.message = "line " + std::to_string(i) + " and this line do not form an R_D step";
                }
                break;
            }
            case Justification::Kind::RCS:
                if (cs.contains(own)) {
                    lv.ok = true;
                    lv.message = "constant specification";
                } else {
                    lv.message = "not in the constant specification";
                }
                break;
        }
        verdict.accepted = verdict.accepted && lv.ok;
        verdict.lines.push_back(std::move(lv));
    }
    return verdict;
}

Diagnostics check_cs(const ConstantSpecification& cs, const AxiomOptions& opts) {
    Diagnostics out = cs.completions();
    for (const auto& e : cs.entries())
        if (!match_axiom(e.axiom, opts))
            out.push_back({Severity::Error, "cs-axiom-instance", "entry core is not an axiom instance",
                           {{"entry", render(e.formula())}, {"A", render(e.axiom)}}});
    return out;
}

}  // namespace jastit
