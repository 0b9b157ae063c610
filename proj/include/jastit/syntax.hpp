#pragma once

// Proof polynomials and JA-STIT formulas.
//
// Both are immutable trees with shared structure. Equality and ordering are
// structural, so values can be used directly as keys of ordered containers.
// The formula core has exactly eight constructors; implication, disjunction,
// equivalence, the diamond and the constants are produced by the sugar
// builders below and never appear as separate node kinds.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "jastit/errors.hpp"

namespace jastit {

using Agent = int;

class Poly {
public:
    enum class Kind : std::uint8_t { Var, Const, Sum, App, Check };

    static Poly var(std::string name);
    static Poly constant(std::string name);
    static Poly sum(Poly left, Poly right);
    static Poly app(Poly left, Poly right);
    static Poly check(Poly arg);

    /// Variable or constant depending on the leading letter ('c' or 'd' mark
    /// constants).
    static Poly named(std::string name);
    static bool is_constant_name(std::string_view name);

    Kind kind() const;
    bool is_atomic() const { return kind() == Kind::Var || kind() == Kind::Const; }
    const std::string& name() const;
    const Poly& left() const;
    const Poly& right() const;
    const Poly& arg() const { return left(); }
    std::size_t size() const;
    std::size_t hash() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

private:
    struct Node;
    explicit Poly(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

class Formula {
public:
    enum class Kind : std::uint8_t { Atom, And, Not, Cstit, Box, Proves, Knows, Announced };

    static Formula atom(std::string name);
    static Formula conj(Formula left, Formula right);
    static Formula neg(Formula arg);
    static Formula cstit(Agent agent, Formula arg);
    static Formula box(Formula arg);
    static Formula proves(Poly term, Formula arg);
    static Formula knows(Formula arg);
    static Formula announced(Poly term);

    Kind kind() const;
    const std::string& name() const;
    Agent agent() const;
    const Formula& left() const;
    const Formula& right() const;
    const Formula& arg() const { return left(); }
    const Poly& term() const;
    std::size_t size() const;
    std::size_t hash() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Sugar. Each builder returns a core formula.
Formula implies(Formula a, Formula b);           // ~(a & ~b)
Formula disj(Formula a, Formula b);              // ~(~a & ~b)
Formula iff(Formula a, Formula b);               // (a -> b) & (b -> a)
Formula dia(Formula a);                          // ~Box ~a
Formula falsum();                                // bot & ~bot
Formula verum();                                 // ~(bot & ~bot)
Formula conj_all(const std::vector<Formula>& parts);  // left-nested; parts nonempty
Formula disj_all(const std::vector<Formula>& parts);  // left-nested; parts nonempty

// Views that recognise the sugar shapes on core formulas.
struct BinaryView {
    Formula left;
    Formula right;
};
bool as_implication(const Formula& f, BinaryView& out);
bool as_disjunction(const Formula& f, BinaryView& out);
bool as_diamond(const Formula& f, Formula& inner);

/// Flattens nested disjunctions (any bracketing) into their disjuncts.
std::vector<Formula> flatten_disjunction(const Formula& f);
/// Flattens nested conjunctions (any bracketing) into their conjuncts.
std::vector<Formula> flatten_conjunction(const Formula& f);

// Concrete syntax.
//
//   formula  := iff
//   iff      := imp ('<->' imp)?
//   imp      := or ('->' imp)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := ('~' | '[' int ']' | 'Box' | 'Dia' | 'K') unary
//             | poly ':' unary
//             | primary
//   primary  := ident | 'E' poly | 'true' | 'false' | '(' formula ')'
//   poly     := prod ('+' prod)*
//   prod     := check ('*' check)*
//   check    := '!' check | ident | '(' poly ')'
//
// Unicode spellings (∧ ∨ ¬ → ↔ □ ◇ × ⊤ ⊥) are accepted alongside ASCII.
Formula parse_formula(std::string_view text);
Poly parse_poly(std::string_view text);

std::string render(const Formula& f);
std::string render(const Poly& p);

/// Constructor-level dump, e.g. "And(PropVar(p), Not(PropVar(q)))".
std::string dump_ast(const Formula& f);
std::string dump_ast(const Poly& p);

/// Post-order, first occurrence wins, f itself last.
std::vector<Formula> subformulas(const Formula& f);
/// Every polynomial under Proves/Announced with all of its subterms, post-order.
std::vector<Poly> subpolynomials(const Formula& f);
std::vector<Poly> subpolynomials(const Poly& p);
std::vector<std::string> prop_vars(const Formula& f);

/// Highest agent index mentioned, or -1.
Agent max_agent(const Formula& f);

}  // namespace jastit

template <>
struct std::hash<jastit::Poly> {
    std::size_t operator()(const jastit::Poly& p) const noexcept { return p.hash(); }
};
template <>
struct std::hash<jastit::Formula> {
    std::size_t operator()(const jastit::Formula& f) const noexcept { return f.hash(); }
};
