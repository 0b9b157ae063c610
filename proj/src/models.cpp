#include <algorithm>
#include <string>

#include "jastit/models.hpp"

namespace jastit {

// ---------------------------------------------------------------------------
// Universe and evidence sets

void Universe::add(const Formula& f) {
    for (const auto& g : subformulas(f)) formulas.insert(g);
    for (const auto& p : subpolynomials(f)) polys.insert(p);
    for (const auto& v : jastit::prop_vars(f)) prop_vars.insert(v);
}

void Universe::add(const Poly& p) {
    for (const auto& q : subpolynomials(p)) polys.insert(q);
}

Universe Universe::of(const std::vector<Formula>& fs, const std::vector<Poly>& ps) {
    Universe u;
    for (const auto& f : fs) u.add(f);
    for (const auto& p : ps) u.add(p);
    return u;
}

EvidenceSet EvidenceSet::everything() {
    EvidenceSet e;
    e.everything_ = true;
    return e;
}

EvidenceSet EvidenceSet::finite(std::set<Formula> formulas) {
    EvidenceSet e;
    e.formulas_ = std::move(formulas);
    return e;
}

bool EvidenceSet::subset_of(const EvidenceSet& other) const {
    if (other.everything_) return true;
    if (everything_) return false;
    return std::includes(other.formulas_.begin(), other.formulas_.end(), formulas_.begin(),
                         formulas_.end());
}

// ---------------------------------------------------------------------------
// JstitModel

JstitModel::JstitModel(JstitFrame frame, Universe universe)
    : frame_(std::move(frame)), universe_(std::move(universe)) {
    act_.resize(temporal().pairs().size());
}

std::size_t JstitModel::index_of(MomentId m, HistoryId h) const {
    auto idx = temporal().pair_index(m, h);
    if (!idx)
        throw InputError("history h" + std::to_string(h) + " does not pass through moment " +
                         (m < temporal().size() ? temporal().name(m) : std::to_string(m)));
    return *idx;
}

const PolySet& JstitModel::act(MomentId m, HistoryId h) const { return act_[index_of(m, h)]; }

void JstitModel::set_act(MomentId m, HistoryId h, PolySet polys) {
    act_[index_of(m, h)] = std::move(polys);
}

const EvidenceSet& JstitModel::evidence(MomentId m, const Poly& t) const {
    auto it = evidence_.find({m, t});
    return it == evidence_.end() ? evidence_default_ : it->second;
}

void JstitModel::set_evidence(MomentId m, const Poly& t, EvidenceSet e) {
    if (m >= temporal().size()) throw InputError("evidence entry for unknown moment");
    evidence_[{m, t}] = std::move(e);
}

bool JstitModel::valuation(const std::string& p, MomentId m, HistoryId h) const {
    auto it = valuation_.find(p);
    if (it == valuation_.end()) return false;
    return it->second[index_of(m, h)] != 0;
}

void JstitModel::set_valuation(const std::string& p, MomentId m, HistoryId h, bool value) {
    auto& bits = valuation_[p];
    if (bits.empty()) bits.assign(act_.size(), 0);
    bits[index_of(m, h)] = value ? 1 : 0;
}

std::vector<std::pair<MomentId, HistoryId>> JstitModel::valuation_pairs(const std::string& p) const {
    std::vector<std::pair<MomentId, HistoryId>> out;
    auto it = valuation_.find(p);
    if (it == valuation_.end()) return out;
    const auto& pairs = temporal().pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (it->second[i]) out.push_back(pairs[i]);
    return out;
}

std::vector<std::string> JstitModel::valuated_vars() const {
    std::vector<std::string> out;
    for (const auto& [name, bits] : valuation_)
        if (std::find(bits.begin(), bits.end(), 1) != bits.end()) out.push_back(name);
    return out;
}

PolySet act_settled(const JstitModel& model, MomentId m) {
    const auto hs = model.temporal().through(m);
    if (hs.empty()) return {};
    PolySet acc = model.act(m, hs.front());
    for (std::size_t i = 1; i < hs.size() && !acc.empty(); ++i) {
        const PolySet& other = model.act(m, hs[i]);
        PolySet kept;
        std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                              std::inserter(kept, kept.end()));
        acc = std::move(kept);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Constant specifications

Formula CsEntry::formula() const {
    Formula f = axiom;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) f = Formula::proves(Poly::constant(*it), f);
    return f;
}

std::optional<CsEntry> split_cs_formula(const Formula& f) {
    CsEntry e{{}, f};
    while (e.axiom.kind() == Formula::Kind::Proves && e.axiom.term().kind() == Poly::Kind::Const) {
        e.chain.push_back(e.axiom.term().name());
        e.axiom = e.axiom.arg();
    }
    if (e.chain.empty()) return std::nullopt;
    return e;
}

ConstantSpecification ConstantSpecification::from_formulas(const std::vector<Formula>& fs) {
    ConstantSpecification cs;
    for (const auto& f : fs) {
        auto e = split_cs_formula(f);
        if (!e) throw InputError("constant specification entry must start with a proof constant: " + render(f));
        cs.add(std::move(*e));
    }
    return cs;
}

void ConstantSpecification::add(CsEntry entry) {
    for (std::size_t drop = 1; drop < entry.chain.size(); ++drop) {
        CsEntry shorter{{entry.chain.begin() + static_cast<std::ptrdiff_t>(drop), entry.chain.end()},
                        entry.axiom};
        if (entries_.insert(shorter).second) {
            completions_.push_back({Severity::Warning, "cs-downward-closure",
                                    "missing entry added by downward completion",
                                    {{"entry", render(shorter.formula())}}});
        }
    }
    // An explicitly supplied entry supersedes an earlier completion warning.
    const std::string text = render(entry.formula());
    std::erase_if(completions_, [&](const Diagnostic& d) { return d.witness.front().second == text; });
    entries_.insert(std::move(entry));
}

bool ConstantSpecification::contains(const Formula& f) const {
    auto e = split_cs_formula(f);
    return e && entries_.count(*e) != 0;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string poly_list(const PolySet& ps) {
    std::string s = "{";
    bool first = true;
    for (const auto& p : ps) {
        if (!first) s += ", ";
        s += render(p);
        first = false;
    }
    return s + "}";
}

struct Checker {
    const JstitModel& model;
    const TemporalFrame& t;
    Diagnostics out;

    explicit Checker(const JstitModel& m) : model(m), t(m.temporal()) {}

    std::string mname(MomentId m) const { return t.name(m); }
    static std::string hname(HistoryId h) { return "h" + std::to_string(h); }

    void error(std::string rule, std::string msg, std::vector<std::pair<std::string, std::string>> w) {
        out.push_back({Severity::Error, std::move(rule), std::move(msg), std::move(w)});
    }

    // Polynomials on which E may differ between moments.
    std::set<Poly> evidence_polys() const {
        std::set<Poly> ps = model.universe().polys;
        for (const auto& [key, _] : model.evidence_entries()) ps.insert(key.second);
        return ps;
    }

    void universe_conformance() {
        for (const auto& [m, h] : t.pairs())
            for (const auto& p : model.act(m, h))
                if (!model.universe().has(p))
                    error("act-universe", "Act holds a polynomial outside the universe",
                          {{"m", mname(m)}, {"h", hname(h)}, {"t", render(p)}});
        for (const auto& [key, e] : model.evidence_entries())
            for (const auto& f : e.formulas())
                if (!model.universe().has(f))
                    error("evidence-universe", "evidence set holds a formula outside the universe",
                          {{"m", mname(key.first)}, {"t", render(key.second)}, {"A", render(f)}});
        for (const auto& f : model.evidence_default().formulas())
            if (!model.universe().has(f))
                error("evidence-universe", "default evidence set holds a formula outside the universe",
                      {{"A", render(f)}});
    }

    void monotonicity_of_evidence() {
        const auto ps = evidence_polys();
        for (MomentId a = 0; a < t.size(); ++a)
            for (MomentId b = 0; b < t.size(); ++b) {
                if (a == b || !model.frame().re()(a, b)) continue;
                for (const auto& p : ps) {
                    const EvidenceSet& ea = model.evidence(a, p);
                    const EvidenceSet& eb = model.evidence(b, p);
                    if (ea.subset_of(eb)) continue;
                    std::string missing = "everything";
                    if (!ea.is_everything())
                        for (const auto& f : ea.formulas())
                            if (!eb.contains(f)) {
                                missing = render(f);
                                break;
                            }
                    error("monotonicity-of-evidence", "E(m,t) is not included in E(m',t) although R_e(m,m')",
                          {{"m", mname(a)}, {"m1", mname(b)}, {"t", render(p)}, {"A", missing}});
                }
            }
    }

    void evidence_closure() {
        const Universe& u = model.universe();
        std::size_t skipped = 0;
        std::vector<std::string> examples;
        auto note_skip = [&](const Poly& p) {
            if (u.has(p)) return;
            ++skipped;
            if (examples.size() < 3) examples.push_back(render(p));
        };
        for (const auto& s : u.polys) {
            note_skip(Poly::check(s));
            for (const auto& r : u.polys) {
                note_skip(Poly::app(s, r));
                note_skip(Poly::sum(s, r));
            }
        }
        if (skipped > 0) {
            std::string list;
            for (const auto& e : examples) list += (list.empty() ? "" : ", ") + e;
            out.push_back({Severity::Warning, "evidence-closure-skipped",
                           "evidence closure is checked only for composites inside the universe; " +
                               std::to_string(skipped) + " one-step composites were skipped",
                           {{"examples", list}}});
        }

        for (MomentId m = 0; m < t.size(); ++m)
            for (const auto& c : u.polys) {
                const EvidenceSet& ec = model.evidence(m, c);
                if (ec.is_everything()) continue;
                auto w = [&](std::vector<std::pair<std::string, std::string>> extra) {
                    extra.insert(extra.begin(), {"m", mname(m)});
                    extra.insert(extra.begin() + 1, {"t", render(c)});
                    return extra;
                };
                switch (c.kind()) {
                    case Poly::Kind::App: {
                        const EvidenceSet& es = model.evidence(m, c.left());
                        const EvidenceSet& et = model.evidence(m, c.right());
                        if (es.is_everything() && (et.is_everything() || !et.formulas().empty())) {
                            error("evidence-closure-application",
                                  "E(m,s) is everything and E(m,t) is nonempty, so E(m,s*t) must be everything",
                                  w({}));
                            break;
                        }
                        for (const auto& f : es.formulas()) {
                            BinaryView imp{f, f};
                            if (!as_implication(f, imp) || !et.contains(imp.left)) continue;
                            if (!ec.contains(imp.right))
                                error("evidence-closure-application", "A -> B in E(m,s), A in E(m,t), B not in E(m,s*t)",
                                      w({{"A", render(imp.left)}, {"B", render(imp.right)}}));
                        }
                        break;
                    }
                    case Poly::Kind::Sum: {
                        for (const Poly& part : {c.left(), c.right()}) {
                            const EvidenceSet& ep = model.evidence(m, part);
                            if (ep.subset_of(ec)) continue;
                            std::string missing = "everything";
                            for (const auto& f : ep.formulas())
                                if (!ec.contains(f)) {
                                    missing = render(f);
                                    break;
                                }
                            error("evidence-closure-sum", "E(m,s) or E(m,t) is not included in E(m,s+t)",
                                  w({{"summand", render(part)}, {"A", missing}}));
                        }
                        break;
                    }
                    case Poly::Kind::Check: {
                        const EvidenceSet& ea = model.evidence(m, c.arg());
                        if (ea.is_everything()) {
                            error("evidence-closure-check",
                                  "E(m,t) is everything, so E(m,!t) must be everything", w({}));
                            break;
                        }
                        for (const auto& f : ea.formulas()) {
                            const Formula target = Formula::proves(c.arg(), f);
                            if (!ec.contains(target))
                                error("evidence-closure-check", "A in E(m,t) but t:A not in E(m,!t)",
                                      w({{"A", render(f)}}));
                        }
                        break;
                    }
                    default: break;
                }
            }
    }

    void expansion_of_presented_proofs() {
        for (MomentId m = 0; m < t.size(); ++m)
            for (MomentId m1 = 0; m1 < t.size(); ++m1) {
                if (!t.lt(m1, m)) continue;
                for (HistoryId h : t.through(m)) {
                    const PolySet& lo = model.act(m1, h);
                    const PolySet& hi = model.act(m, h);
                    for (const auto& p : lo)
                        if (!hi.count(p))
                            error("expansion-of-presented-proofs", "Act(m',h) is not included in Act(m,h) for m' < m",
                                  {{"m'", mname(m1)}, {"m", mname(m)}, {"h", hname(h)}, {"t", render(p)}});
                }
            }
    }

    void no_new_proofs_guaranteed(const std::vector<PolySet>& settled) {
        for (MomentId m = 0; m < t.size(); ++m) {
            if (settled[m].empty()) continue;
            PolySet support;
            for (MomentId m1 = 0; m1 < t.size(); ++m1) {
                if (!t.lt(m1, m)) continue;
                for (HistoryId h : t.through(m)) {
                    const PolySet& a = model.act(m1, h);
                    support.insert(a.begin(), a.end());
                }
            }
            // A dense segment below m contributes the settled presentations of its upper end.
            for (const auto& [a, b] : t.dense())
                if (t.leq(b, m)) support.insert(settled[b].begin(), settled[b].end());
            for (const auto& p : settled[m])
                if (!support.count(p))
                    error("no-new-proofs-guaranteed",
                          "a settled presentation at m has no earlier presentation on any history through m",
                          {{"m", mname(m)}, {"t", render(p)}});
        }
    }

    void presenting_divides() {
        for (MomentId m = 0; m < t.size(); ++m) {
            const auto hs = t.through(m);
            for (std::size_t i = 0; i < hs.size(); ++i)
                for (std::size_t k = i + 1; k < hs.size(); ++k)
                    if (undivided_at(t, m, hs[i], hs[k]) && model.act(m, hs[i]) != model.act(m, hs[k]))
                        error("presenting-new-proof-divides", "undivided histories carry different Act values",
                              {{"m", mname(m)},
                               {"h", hname(hs[i])},
                               {"h1", hname(hs[k])},
                               {"Act(m,h)", poly_list(model.act(m, hs[i]))},
                               {"Act(m,h1)", poly_list(model.act(m, hs[k]))}});
        }
    }

    void epistemic_transparency(const std::vector<PolySet>& settled) {
        for (MomentId a = 0; a < t.size(); ++a)
            for (MomentId b = 0; b < t.size(); ++b) {
                if (a == b || !model.frame().re()(a, b)) continue;
                for (const auto& p : settled[a])
                    if (!settled[b].count(p))
                        error("epistemic-transparency", "Act_m is not included in Act_m' although R_e(m,m')",
                              {{"m", mname(a)}, {"m1", mname(b)}, {"t", render(p)}});
            }
    }

    void cs_normality(const ConstantSpecification& cs) {
        for (const auto& e : cs.entries()) {
            const Poly c = Poly::constant(e.chain.front());
            CsEntry rest{{e.chain.begin() + 1, e.chain.end()}, e.axiom};
            const Formula body = rest.formula();
            for (MomentId m = 0; m < t.size(); ++m)
                if (!model.evidence(m, c).contains(body))
                    error("cs-normality", "c:A is in the constant specification but A is not in E(m,c)",
                          {{"m", mname(m)}, {"c", render(c)}, {"A", render(body)}});
        }
    }
};

}  // namespace

Diagnostics validate_model(const JstitModel& model, const ConstantSpecification* cs) {
    Checker ck(model);
    std::vector<PolySet> settled;
    for (MomentId m = 0; m < ck.t.size(); ++m) settled.push_back(act_settled(model, m));
    ck.universe_conformance();
    ck.monotonicity_of_evidence();
    ck.evidence_closure();
    ck.expansion_of_presented_proofs();
    ck.no_new_proofs_guaranteed(settled);
    ck.presenting_divides();
    ck.epistemic_transparency(settled);
    if (cs) ck.cs_normality(*cs);
    return std::move(ck.out);
}

Diagnostics derived_property_check(const JstitModel& model) {
    const TemporalFrame& t = model.temporal();
    Diagnostics out;
    std::vector<PolySet> settled;
    for (MomentId m = 0; m < t.size(); ++m) settled.push_back(act_settled(model, m));
    for (MomentId m = 0; m < t.size(); ++m)
        for (MomentId m1 = 0; m1 < t.size(); ++m1) {
            if (!t.lt(m, m1)) continue;
            for (HistoryId h : t.through(m1))
                for (const auto& p : model.act(m, h))
                    if (!settled[m1].count(p))
                        out.push_back({Severity::Error, "settled-after-presentation",
                                       "t in Act(m,h) with h through a later m', yet t not in Act_m'",
                                       {{"m", t.name(m)}, {"m1", t.name(m1)}, {"h", "h" + std::to_string(h)},
                                        {"t", render(p)}}});
        }
    return out;
}

}  // namespace jastit
