#include <fstream>
#include <sstream>
#include <string>

#include "jastit/io.hpp"

namespace jastit {

namespace {

const Json& require(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return doc.at(key);
}

std::string as_string(const Json& j, const char* what) {
    if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

std::size_t as_index(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw InputError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

std::vector<std::pair<MomentId, MomentId>> read_pairs(const TemporalFrame* t,
                                                      const std::vector<std::string>& names, const Json& arr,
                                                      const char* what) {
    if (!arr.is_array()) throw InputError(std::string(what) + " must be an array of pairs");
    auto lookup = [&](const Json& j) -> MomentId {
        const std::string name = as_string(j, "moment name");
        if (t) return t->moment(name);
        for (MomentId m = 0; m < names.size(); ++m)
            if (names[m] == name) return m;
        throw InputError("unknown moment '" + name + "'");
    };
    std::vector<std::pair<MomentId, MomentId>> out;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2) throw InputError(std::string(what) + " entries must be [a, b] pairs");
        out.emplace_back(lookup(p[0]), lookup(p[1]));
    }
    return out;
}

Json pairs_to_json(const TemporalFrame& t, const Relation& r) {
    Json arr = Json::array();
    for (const auto& [a, b] : r.pairs()) arr.push_back({t.name(a), t.name(b)});
    return arr;
}

std::pair<std::string, std::string> split_key(const std::string& key, char sep) {
    const auto pos = key.rfind(sep);
    if (pos == std::string::npos) throw InputError("malformed key '" + key + "'");
    return {key.substr(0, pos), key.substr(pos + 1)};
}

Formula formula_of(const Json& j) { return parse_formula(as_string(j, "formula")); }

EvidenceSet evidence_of(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "*") return EvidenceSet::everything();
    if (!j.is_array()) throw InputError("evidence value must be \"*\" or an array of formulas");
    std::set<Formula> fs;
    for (const auto& f : j) fs.insert(formula_of(f));
    return EvidenceSet::finite(std::move(fs));
}

Json evidence_to_json(const EvidenceSet& e) {
    if (e.is_everything()) return "*";
    Json arr = Json::array();
    for (const auto& f : e.formulas()) arr.push_back(render(f));
    return arr;
}

}  // namespace

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::exception& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

HistoryId parse_history(const TemporalFrame& t, const std::string& text) {
    std::string digits = text;
    if (!digits.empty() && digits.front() == 'h') digits.erase(0, 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("malformed history '" + text + "'");
    const HistoryId h = std::stoul(digits);
    if (h >= t.histories().size()) throw InputError("unknown history '" + text + "'");
    return h;
}

std::string history_label(HistoryId h) { return "h" + std::to_string(h); }

JstitFrame frame_from_json(const Json& doc, std::size_t default_agents) {
    try {
        const Json& ms = require(doc, "moments");
        if (!ms.is_array() || ms.empty()) throw InputError("'moments' must be a nonempty array");
        std::vector<std::string> names;
        for (const auto& m : ms) {
            names.push_back(as_string(m, "moment name"));
            for (std::size_t i = 0; i + 1 < names.size(); ++i)
                if (names[i] == names.back()) throw InputError("duplicate moment '" + names.back() + "'");
        }
        const std::size_t n = names.size();
        const auto order_pairs = doc.contains("order") ? read_pairs(nullptr, names, doc.at("order"), "'order'")
                                                       : std::vector<std::pair<MomentId, MomentId>>{};
        Relation order = Relation::from_pairs(n, order_pairs);
        const auto dense = doc.contains("dense") ? read_pairs(nullptr, names, doc.at("dense"), "'dense'")
                                                 : std::vector<std::pair<MomentId, MomentId>>{};
        TemporalFrame t(names, std::move(order), dense);

        const std::size_t agents = doc.contains("agents") ? as_index(doc.at("agents"), "'agents'") : default_agents;
        if (agents == 0) throw InputError("'agents' must be positive");

        StitFrame trivial(t, agents);
        std::vector<Partition> choice = trivial.choices();
        if (doc.contains("choice")) {
            const Json& ch = doc.at("choice");
            if (!ch.is_object()) throw InputError("'choice' must be an object");
            for (const auto& [key, cells] : ch.items()) {
                const auto [mname, jtext] = split_key(key, ',');
                const MomentId m = t.moment(mname);
                std::size_t j = 0;
                try {
                    j = std::stoul(jtext);
                } catch (const std::exception&) {
                    throw InputError("malformed agent in choice key '" + key + "'");
                }
                if (j >= agents) throw InputError("choice key '" + key + "' names an agent outside the community");
                if (!cells.is_array()) throw InputError("choice cells must be arrays");
                Partition p;
                for (const auto& cell : cells) {
                    if (!cell.is_array()) throw InputError("choice cells must be arrays");
                    std::vector<HistoryId> hs;
                    for (const auto& h : cell)
                        hs.push_back(h.is_string() ? parse_history(t, h.get<std::string>())
                                                   : as_index(h, "history index"));
                    p.push_back(std::move(hs));
                }
                choice[m * agents + j] = std::move(p);
            }
        }
        StitFrame stit(t, agents, std::move(choice));
        Relation r = t.order();
        Relation re = t.order();
        if (doc.contains("r")) r = Relation::from_pairs(n, read_pairs(&t, names, doc.at("r"), "'r'"));
        if (doc.contains("re")) re = Relation::from_pairs(n, read_pairs(&t, names, doc.at("re"), "'re'"));
        return JstitFrame(std::move(stit), std::move(r), std::move(re));
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed frame document: ") + e.what());
    }
}

JstitModel model_from_json(const Json& doc, std::size_t default_agents) {
    JstitFrame frame = frame_from_json(doc, default_agents);
    const TemporalFrame& t = frame.temporal();
    try {
        Universe u;
        std::vector<std::tuple<MomentId, HistoryId, PolySet>> acts;
        std::vector<std::tuple<MomentId, Poly, EvidenceSet>> evidence;
        std::optional<EvidenceSet> dflt;
        std::vector<std::tuple<std::string, MomentId, HistoryId>> vals;

        if (doc.contains("act")) {
            const Json& a = doc.at("act");
            if (!a.is_object()) throw InputError("'act' must be an object");
            for (const auto& [key, polys] : a.items()) {
                const auto [mname, htext] = split_key(key, '/');
                const MomentId m = t.moment(mname);
                const HistoryId h = parse_history(t, htext);
                if (!t.on(h, m)) throw InputError("act key '" + key + "': history does not pass through moment");
                if (!polys.is_array()) throw InputError("act values must be arrays of polynomials");
                PolySet ps;
                for (const auto& p : polys) ps.insert(parse_poly(as_string(p, "polynomial")));
                for (const auto& p : ps) u.add(p);
                acts.emplace_back(m, h, std::move(ps));
            }
        }
        if (doc.contains("evidence")) {
            const Json& e = doc.at("evidence");
            if (!e.is_object()) throw InputError("'evidence' must be an object");
            for (const auto& [key, value] : e.items()) {
                const auto [mname, ptext] = split_key(key, '/');
                const MomentId m = t.moment(mname);
                const Poly p = parse_poly(ptext);
                EvidenceSet es = evidence_of(value);
                u.add(p);
                for (const auto& f : es.formulas()) u.add(f);
                evidence.emplace_back(m, p, std::move(es));
            }
        }
        if (doc.contains("evidence_default")) {
            dflt = evidence_of(doc.at("evidence_default"));
            for (const auto& f : dflt->formulas()) u.add(f);
        }
        if (doc.contains("valuation")) {
            const Json& v = doc.at("valuation");
            if (!v.is_object()) throw InputError("'valuation' must be an object");
            for (const auto& [var, pairs] : v.items()) {
                u.prop_vars.insert(var);
                if (!pairs.is_array()) throw InputError("valuation values must be arrays of [moment, history]");
                for (const auto& pr : pairs) {
                    if (!pr.is_array() || pr.size() != 2)
                        throw InputError("valuation entries must be [moment, history] pairs");
                    const MomentId m = t.moment(as_string(pr[0], "moment name"));
                    const HistoryId h = pr[1].is_string() ? parse_history(t, pr[1].get<std::string>())
                                                          : as_index(pr[1], "history index");
                    if (!t.on(h, m)) throw InputError("valuation pair: history does not pass through moment");
                    vals.emplace_back(var, m, h);
                }
            }
        }
        if (doc.contains("universe")) {
            const Json& uj = doc.at("universe");
            if (!uj.is_object()) throw InputError("'universe' must be an object");
            Universe declared;
            if (uj.contains("polynomials"))
                for (const auto& p : uj.at("polynomials")) declared.add(parse_poly(as_string(p, "polynomial")));
            if (uj.contains("formulas"))
                for (const auto& f : uj.at("formulas")) declared.add(formula_of(f));
            if (uj.contains("prop_vars"))
                for (const auto& v : uj.at("prop_vars")) declared.prop_vars.insert(as_string(v, "variable"));
            u = std::move(declared);
        }

        JstitModel model(std::move(frame), std::move(u));
        model.set_evidence_default(dflt ? *dflt : EvidenceSet{});
        for (auto& [m, h, ps] : acts) model.set_act(m, h, std::move(ps));
        for (auto& [m, p, es] : evidence) model.set_evidence(m, p, std::move(es));
        for (const auto& [var, m, h] : vals) model.set_valuation(var, m, h);
        return model;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed model document: ") + e.what());
    }
}

Proof proof_from_json(const Json& doc) {
    try {
        Proof proof;
        const Json& lines = require(doc, "lines");
        if (!lines.is_array()) throw InputError("'lines' must be an array");
        for (const auto& line : lines) {
            ProofLine pl{formula_of(require(line, "formula")), {}};
            const Json& just = require(line, "just");
            const std::string kind = as_string(require(just, "kind"), "justification kind");
            if (kind == "axiom") {
                pl.just.kind = Justification::Kind::Axiom;
                if (just.contains("scheme")) pl.just.scheme = parse_scheme(as_string(just.at("scheme"), "scheme"));
            } else if (kind == "mp") {
                pl.just.kind = Justification::Kind::MP;
                const Json& ps = require(just, "premises");
                if (!ps.is_array() || ps.size() != 2) throw InputError("mp needs two premises");
                pl.just.first = as_index(ps[0], "premise");
                pl.just.second = as_index(ps[1], "premise");
            } else if (kind == "knec" || kind == "nec" || kind == "rd") {
                pl.just.kind = kind == "knec" ? Justification::Kind::KNec
                               : kind == "nec" ? Justification::Kind::Nec
                                               : Justification::Kind::RD;
                pl.just.first = as_index(require(just, "premise"), "premise");
            } else if (kind == "rcs") {
                pl.just.kind = Justification::Kind::RCS;
            } else {
                throw InputError("unknown justification kind '" + kind + "'");
            }
            proof.lines.push_back(std::move(pl));
        }
        return proof;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed proof document: ") + e.what());
    }
}

ConstantSpecification cs_from_json(const Json& doc) {
    const Json* arr = &doc;
    if (doc.is_object()) arr = doc.contains("cs") ? &doc.at("cs") : nullptr;
    if (!arr) return {};
    if (!arr->is_array()) throw InputError("constant specification must be an array of formulas");
    std::vector<Formula> fs;
    for (const auto& f : *arr) fs.push_back(formula_of(f));
    return ConstantSpecification::from_formulas(fs);
}

Json frame_to_json(const JstitFrame& f) {
    const TemporalFrame& t = f.temporal();
    Json doc;
    doc["moments"] = t.names();
    doc["order"] = pairs_to_json(t, t.order());
    doc["agents"] = f.agents();
    Json choice = Json::object();
    for (MomentId m = 0; m < t.size(); ++m)
        for (std::size_t j = 0; j < f.agents(); ++j) choice[t.name(m) + "," + std::to_string(j)] = f.stit().choice(m, static_cast<Agent>(j));
    doc["choice"] = choice;
    doc["r"] = pairs_to_json(t, f.r());
    doc["re"] = pairs_to_json(t, f.re());
    if (t.annotated()) {
        Json dense = Json::array();
        for (const auto& [a, b] : t.dense()) dense.push_back({t.name(a), t.name(b)});
        doc["dense"] = dense;
    }
    return doc;
}

Json model_to_json(const JstitModel& model) {
    const TemporalFrame& t = model.temporal();
    Json doc = frame_to_json(model.frame());
    Json act = Json::object();
    for (const auto& [m, h] : t.pairs()) {
        const PolySet& ps = model.act(m, h);
        if (ps.empty()) continue;
        Json arr = Json::array();
        for (const auto& p : ps) arr.push_back(render(p));
        act[t.name(m) + "/" + history_label(h)] = arr;
    }
    doc["act"] = act;
    Json ev = Json::object();
    for (const auto& [key, e] : model.evidence_entries()) ev[t.name(key.first) + "/" + render(key.second)] = evidence_to_json(e);
    doc["evidence"] = ev;
    doc["evidence_default"] = evidence_to_json(model.evidence_default());
    Json val = Json::object();
    for (const auto& var : model.valuated_vars()) {
        Json arr = Json::array();
        for (const auto& [m, h] : model.valuation_pairs(var)) arr.push_back({t.name(m), history_label(h)});
        val[var] = arr;
    }
    doc["valuation"] = val;
    Json u;
    u["polynomials"] = Json::array();
    for (const auto& p : model.universe().polys) u["polynomials"].push_back(render(p));
    u["formulas"] = Json::array();
    for (const auto& f : model.universe().formulas) u["formulas"].push_back(render(f));
    u["prop_vars"] = model.universe().prop_vars;
    doc["universe"] = u;
    return doc;
}

Json diagnostics_to_json(const Diagnostics& ds) {
    Json arr = Json::array();
    for (const auto& d : ds) {
        Json w = Json::object();
        for (const auto& [k, v] : d.witness) w[k] = v;
        arr.push_back({{"severity", d.severity == Severity::Error ? "error" : "warning"},
                       {"rule", d.rule},
                       {"message", d.message},
                       {"witness", w}});
    }
    return arr;
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace jastit
