#include "jastit/syntax.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace jastit {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

struct Poly::Node {
    Kind kind;
    std::string name;
    std::vector<Poly> kids;
    std::size_t hash = 0;
    std::size_t size = 1;
};

namespace {

template <typename NodeT, typename KidsT>
void seal(NodeT& n, const KidsT& kids, std::size_t tag) {
    n.hash = mix(std::hash<std::string>{}(n.name), tag);
    n.size = 1;
    for (const auto& k : kids) {
        n.hash = mix(n.hash, k.hash());
        n.size += k.size();
    }
}

}  // namespace

Poly Poly::var(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    seal(*n, n->kids, static_cast<std::size_t>(n->kind));
    return Poly(std::move(n));
}

Poly Poly::constant(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->name = std::move(name);
    seal(*n, n->kids, static_cast<std::size_t>(n->kind));
    return Poly(std::move(n));
}

Poly Poly::sum(Poly left, Poly right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->kids = {std::move(left), std::move(right)};
    seal(*n, n->kids, static_cast<std::size_t>(n->kind));
    return Poly(std::move(n));
}

Poly Poly::app(Poly left, Poly right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::App;
    n->kids = {std::move(left), std::move(right)};
    seal(*n, n->kids, static_cast<std::size_t>(n->kind));
    return Poly(std::move(n));
}

Poly Poly::check(Poly arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Check;
    n->kids = {std::move(arg)};
    seal(*n, n->kids, static_cast<std::size_t>(n->kind));
    return Poly(std::move(n));
}

bool Poly::is_constant_name(std::string_view name) {
    return !name.empty() && (name.front() == 'c' || name.front() == 'd');
}

Poly Poly::named(std::string name) {
    return is_constant_name(name) ? constant(std::move(name)) : var(std::move(name));
}

Poly::Kind Poly::kind() const { return node_->kind; }
const std::string& Poly::name() const { return node_->name; }
const Poly& Poly::left() const { return node_->kids.at(0); }
const Poly& Poly::right() const { return node_->kids.at(1); }
std::size_t Poly::size() const { return node_->size; }
std::size_t Poly::hash() const { return node_->hash; }

bool operator==(const Poly& a, const Poly& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
    if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
    for (std::size_t i = 0; i < a.node_->kids.size(); ++i) {
        if (auto c = a.node_->kids[i] <=> b.node_->kids[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
    Kind kind;
    std::string name;
    Agent agent = 0;
    std::vector<Formula> kids;
    std::vector<Poly> terms;
    std::size_t hash = 0;
    std::size_t size = 1;
};

namespace {

template <typename NodeT>
void seal_formula(NodeT& n) {
    seal(n, n.kids, static_cast<std::size_t>(n.kind) + 16);
    n.hash = mix(n.hash, static_cast<std::size_t>(n.agent));
    for (const auto& t : n.terms) {
        n.hash = mix(n.hash, t.hash());
        n.size += t.size();
    }
}

}  // namespace

Formula Formula::atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->name = std::move(name);
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::conj(Formula left, Formula right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->kids = {std::move(left), std::move(right)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::neg(Formula arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->kids = {std::move(arg)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::cstit(Agent agent, Formula arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cstit;
    n->agent = agent;
    n->kids = {std::move(arg)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::box(Formula arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Box;
    n->kids = {std::move(arg)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::proves(Poly term, Formula arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Proves;
    n->kids = {std::move(arg)};
    n->terms = {std::move(term)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::knows(Formula arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Knows;
    n->kids = {std::move(arg)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula Formula::announced(Poly term) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Announced;
    n->terms = {std::move(term)};
    seal_formula(*n);
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
Agent Formula::agent() const { return node_->agent; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const Poly& Formula::term() const { return node_->terms.at(0); }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
    if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
    if (auto c = a.node_->agent <=> b.node_->agent; c != 0) return c;
    for (std::size_t i = 0; i < a.node_->terms.size(); ++i) {
        if (auto c = a.node_->terms[i] <=> b.node_->terms[i]; c != 0) return c;
    }
    for (std::size_t i = 0; i < a.node_->kids.size(); ++i) {
        if (auto c = a.node_->kids[i] <=> b.node_->kids[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Sugar

Formula implies(Formula a, Formula b) {
    return Formula::neg(Formula::conj(std::move(a), Formula::neg(std::move(b))));
}

Formula disj(Formula a, Formula b) {
    return Formula::neg(Formula::conj(Formula::neg(std::move(a)), Formula::neg(std::move(b))));
}

Formula iff(Formula a, Formula b) { return Formula::conj(implies(a, b), implies(b, a)); }

Formula dia(Formula a) { return Formula::neg(Formula::box(Formula::neg(std::move(a)))); }

Formula falsum() {
    auto bot = Formula::atom("bot");
    return Formula::conj(bot, Formula::neg(bot));
}

Formula verum() { return Formula::neg(falsum()); }

Formula conj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) throw InputError("conj_all: empty conjunction");
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
    return acc;
}

Formula disj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) throw InputError("disj_all: empty disjunction");
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

bool as_implication(const Formula& f, BinaryView& out) {
    if (f.kind() != Formula::Kind::Not) return false;
    const Formula& inner = f.arg();
    if (inner.kind() != Formula::Kind::And) return false;
    if (inner.right().kind() != Formula::Kind::Not) return false;
    out = BinaryView{inner.left(), inner.right().arg()};
    return true;
}

bool as_disjunction(const Formula& f, BinaryView& out) {
    if (f.kind() != Formula::Kind::Not) return false;
    const Formula& inner = f.arg();
    if (inner.kind() != Formula::Kind::And) return false;
    if (inner.left().kind() != Formula::Kind::Not || inner.right().kind() != Formula::Kind::Not) {
        return false;
    }
    out = BinaryView{inner.left().arg(), inner.right().arg()};
    return true;
}

bool as_diamond(const Formula& f, Formula& inner) {
    if (f.kind() != Formula::Kind::Not) return false;
    if (f.arg().kind() != Formula::Kind::Box) return false;
    if (f.arg().arg().kind() != Formula::Kind::Not) return false;
    inner = f.arg().arg().arg();
    return true;
}

std::vector<Formula> flatten_disjunction(const Formula& f) {
    std::vector<Formula> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        BinaryView v{g, g};
        if (as_disjunction(g, v)) {
            go(v.left);
            go(v.right);
        } else {
            out.push_back(g);
        }
    };
    go(f);
    return out;
}

std::vector<Formula> flatten_conjunction(const Formula& f) {
    std::vector<Formula> out;
    std::function<void(const Formula&)> go = [&](const Formula& g) {
        if (g.kind() == Formula::Kind::And) {
            go(g.left());
            go(g.right());
        } else {
            out.push_back(g);
        }
    };
    go(f);
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

enum PolyPrec { kSumPrec = 1, kAppPrec = 2, kCheckPrec = 3, kAtomPrec = 4 };

int poly_prec(const Poly& p) {
    switch (p.kind()) {
        case Poly::Kind::Sum: return kSumPrec;
        case Poly::Kind::App: return kAppPrec;
        case Poly::Kind::Check: return kCheckPrec;
        default: return kAtomPrec;
    }
}

void render_poly(std::ostream& os, const Poly& p, int min_prec) {
    const bool paren = poly_prec(p) < min_prec;
    if (paren) os << '(';
    switch (p.kind()) {
        case Poly::Kind::Var:
        case Poly::Kind::Const: os << p.name(); break;
        case Poly::Kind::Sum:
            render_poly(os, p.left(), kSumPrec);
            os << " + ";
            render_poly(os, p.right(), kAppPrec);
            break;
        case Poly::Kind::App:
            render_poly(os, p.left(), kAppPrec);
            os << " * ";
            render_poly(os, p.right(), kCheckPrec);
            break;
        case Poly::Kind::Check:
            os << '!';
            render_poly(os, p.arg(), kCheckPrec);
            break;
    }
    if (paren) os << ')';
}

// Formula levels, loosest first.
enum FormPrec { kImpPrec = 0, kOrPrec = 1, kAndPrec = 2, kUnaryPrec = 3, kPrimaryPrec = 4 };

int formula_prec(const Formula& f) {
    BinaryView v{f, f};
    if (as_disjunction(f, v)) return kOrPrec;
    if (as_implication(f, v)) return kImpPrec;
    switch (f.kind()) {
        case Formula::Kind::Atom:
        case Formula::Kind::Announced: return kPrimaryPrec;
        case Formula::Kind::And: return kAndPrec;
        default: return kUnaryPrec;
    }
}

void render_formula(std::ostream& os, const Formula& f, int min_prec) {
    const bool paren = formula_prec(f) < min_prec;
    if (paren) os << '(';
    BinaryView v{f, f};
    Formula inner = f;
    if (as_disjunction(f, v)) {
        render_formula(os, v.left, kOrPrec);
        os << " | ";
        render_formula(os, v.right, kAndPrec);
    } else if (as_implication(f, v)) {
        render_formula(os, v.left, kOrPrec);
        os << " -> ";
        render_formula(os, v.right, kImpPrec);
    } else if (as_diamond(f, inner)) {
        os << "Dia ";
        render_formula(os, inner, kUnaryPrec);
    } else {
        switch (f.kind()) {
            case Formula::Kind::Atom: os << f.name(); break;
            case Formula::Kind::And:
                render_formula(os, f.left(), kAndPrec);
                os << " & ";
                render_formula(os, f.right(), kUnaryPrec);
                break;
            case Formula::Kind::Not:
                os << '~';
                render_formula(os, f.arg(), kUnaryPrec);
                break;
            case Formula::Kind::Cstit:
                os << '[' << f.agent() << "] ";
                render_formula(os, f.arg(), kUnaryPrec);
                break;
            case Formula::Kind::Box:
                os << "Box ";
                render_formula(os, f.arg(), kUnaryPrec);
                break;
            case Formula::Kind::Knows:
                os << "K ";
                render_formula(os, f.arg(), kUnaryPrec);
                break;
            case Formula::Kind::Proves:
                render_poly(os, f.term(), kCheckPrec);
                os << " : ";
                render_formula(os, f.arg(), kUnaryPrec);
                break;
            case Formula::Kind::Announced:
                os << "E ";
                render_poly(os, f.term(), kCheckPrec);
                break;
        }
    }
    if (paren) os << ')';
}

void dump_poly(std::ostream& os, const Poly& p) {
    switch (p.kind()) {
        case Poly::Kind::Var: os << "ProofVar(" << p.name() << ')'; break;
        case Poly::Kind::Const: os << "ProofConst(" << p.name() << ')'; break;
        case Poly::Kind::Sum:
            os << "Sum(";
            dump_poly(os, p.left());
            os << ", ";
            dump_poly(os, p.right());
            os << ')';
            break;
        case Poly::Kind::App:
            os << "App(";
            dump_poly(os, p.left());
            os << ", ";
            dump_poly(os, p.right());
            os << ')';
            break;
        case Poly::Kind::Check:
            os << "Check(";
            dump_poly(os, p.arg());
            os << ')';
            break;
    }
}

void dump_formula(std::ostream& os, const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Atom: os << "PropVar(" << f.name() << ')'; break;
        case Formula::Kind::And:
            os << "And(";
            dump_formula(os, f.left());
            os << ", ";
            dump_formula(os, f.right());
            os << ')';
            break;
        case Formula::Kind::Not:
            os << "Not(";
            dump_formula(os, f.arg());
            os << ')';
            break;
        case Formula::Kind::Cstit:
            os << "Cstit(" << f.agent() << ", ";
            dump_formula(os, f.arg());
            os << ')';
            break;
        case Formula::Kind::Box:
            os << "Box(";
            dump_formula(os, f.arg());
            os << ')';
            break;
        case Formula::Kind::Knows:
            os << "Knows(";
            dump_formula(os, f.arg());
            os << ')';
            break;
        case Formula::Kind::Proves:
            os << "Proves(";
            dump_poly(os, f.term());
            os << ", ";
            dump_formula(os, f.arg());
            os << ')';
            break;
        case Formula::Kind::Announced:
            os << "Announced(";
            dump_poly(os, f.term());
            os << ')';
            break;
    }
}

}  // namespace

std::string render(const Formula& f) {
    std::ostringstream os;
    render_formula(os, f, kImpPrec);
    return os.str();
}

std::string render(const Poly& p) {
    std::ostringstream os;
    render_poly(os, p, kSumPrec);
    return os.str();
}

std::string dump_ast(const Formula& f) {
    std::ostringstream os;
    dump_formula(os, f);
    return os.str();
}

std::string dump_ast(const Poly& p) {
    std::ostringstream os;
    dump_poly(os, p);
    return os.str();
}

// ---------------------------------------------------------------------------
// Subterms

namespace {

void collect_polys(const Poly& p, std::vector<Poly>& out, std::set<Poly>& seen) {
    if (seen.count(p)) return;
    if (!p.is_atomic()) {
        collect_polys(p.left(), out, seen);
        if (p.kind() != Poly::Kind::Check) collect_polys(p.right(), out, seen);
    }
    if (seen.insert(p).second) out.push_back(p);
}

void collect_formulas(const Formula& f, std::vector<Formula>& out, std::set<Formula>& seen) {
    if (seen.count(f)) return;
    switch (f.kind()) {
        case Formula::Kind::Atom:
        case Formula::Kind::Announced: break;
        case Formula::Kind::And:
            collect_formulas(f.left(), out, seen);
            collect_formulas(f.right(), out, seen);
            break;
        default: collect_formulas(f.arg(), out, seen); break;
    }
    if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    std::set<Formula> seen;
    collect_formulas(f, out, seen);
    return out;
}

std::vector<Poly> subpolynomials(const Poly& p) {
    std::vector<Poly> out;
    std::set<Poly> seen;
    collect_polys(p, out, seen);
    return out;
}

std::vector<Poly> subpolynomials(const Formula& f) {
    std::vector<Poly> out;
    std::set<Poly> seen;
    for (const auto& g : subformulas(f)) {
        if (g.kind() == Formula::Kind::Proves || g.kind() == Formula::Kind::Announced) {
            collect_polys(g.term(), out, seen);
        }
    }
    return out;
}

std::vector<std::string> prop_vars(const Formula& f) {
    std::vector<std::string> out;
    for (const auto& g : subformulas(f)) {
        if (g.kind() == Formula::Kind::Atom) out.push_back(g.name());
    }
    return out;
}

Agent max_agent(const Formula& f) {
    Agent best = -1;
    for (const auto& g : subformulas(f)) {
        if (g.kind() == Formula::Kind::Cstit) best = std::max(best, g.agent());
    }
    return best;
}

}  // namespace jastit
