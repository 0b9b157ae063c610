#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "jastit/calculus.hpp"
#include "jastit/cli.hpp"
#include "jastit/countermodels.hpp"
#include "jastit/io.hpp"
#include "jastit/semantics.hpp"

namespace jastit {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Json mask_to_json(const TemporalFrame& t, MomentMask s) {
    Json arr = Json::array();
    for (MomentId m : mask_members(s)) arr.push_back(t.name(m));
    return arr;
}

Json witness_json(const TemporalFrame& t, const MixsuccWitness& w) {
    return {{"kind", "mixsucc"},
            {"m0", t.name(w.m0)},
            {"m1", t.name(w.m1)},
            {"h0", history_label(w.h0)},
            {"h1", history_label(w.h1)}};
}

Json witness_json(const TemporalFrame& t, const RegWitness& w) {
    return {{"kind", "reg"},
            {"m0", t.name(w.m0)},
            {"m1", t.name(w.m1)},
            {"h_prime", history_label(w.h_prime)},
            {"S", mask_to_json(t, w.S)}};
}

MixsuccWitness parse_mixsucc_witness(const TemporalFrame& t, const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw InputError("a mixsucc witness is 'm0,m1,h0,h1'");
    return {t.moment(parts[0]), t.moment(parts[1]), parse_history(t, parts[2]), parse_history(t, parts[3])};
}

RegWitness parse_reg_witness(const TemporalFrame& t, const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw InputError("a reg witness is 'm0,m1,h,S' with S written 'a+b+...'");
    RegWitness w{t.moment(parts[0]), t.moment(parts[1]), parse_history(t, parts[2]), 0};
    if (t.size() > 63) throw InputError("frame too large for moment sets");
    for (const auto& name : split(parts[3], '+'))
        if (!name.empty()) w.S |= mask_of(t.moment(name));
    return w;
}

Index parse_index(const TemporalFrame& t, const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw InputError("an index is 'moment,history', e.g. m0,h2");
    const Index at{t.moment(parts[0]), parse_history(t, parts[1])};
    if (!t.on(at.history, at.moment)) throw InputError("history " + parts[1] + " does not pass through " + parts[0]);
    return at;
}

int finish_diagnostics(std::ostream& out, const Diagnostics& ds) {
    Json doc;
    doc["valid"] = !has_errors(ds);
    doc["diagnostics"] = diagnostics_to_json(ds);
    out << canonical(doc);
    return has_errors(ds) ? kExitProperty : kExitOk;
}

void require_valid_frame(const JstitFrame& f) {
    for (const auto& d : validate_frame(f))
        if (d.severity == Severity::Error) throw InputError("frame is not valid: " + d.rule + ": " + d.message);
}

Json built_json(const BuiltModel& b, const Json& witness) {
    const TemporalFrame& t = b.model.temporal();
    Json doc = model_to_json(b.model);
    doc["witness"] = witness;
    doc["formula"] = render(b.target);
    doc["index"] = {t.name(b.index.moment), history_label(b.index.history)};
    doc["holds_at_index"] = satisfies(b.model, b.index, b.target);
    if (!b.provenance.empty()) doc["provenance"] = b.provenance;
    return doc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"jastit: finite models, frames and proofs for the stit logic of justification announcements",
                 "jastit"};
    app.require_subcommand(1);
    std::size_t agents = 2;
    app.add_option("--ag", agents, "number of agents (default 2)")->check(CLI::PositiveNumber);

    std::function<int()> action;

    std::string text;
    bool as_poly = false;
    auto* parse_cmd = app.add_subcommand("parse", "print the core syntax tree of a formula");
    parse_cmd->add_option("text", text, "formula")->required();
    parse_cmd->add_flag("--poly", as_poly, "parse a polynomial instead");
    parse_cmd->callback([&] {
        action = [&] {
            out << (as_poly ? dump_ast(parse_poly(text)) : dump_ast(parse_formula(text))) << "\n";
            return kExitOk;
        };
    });

    std::string file;
    auto* check_frame = app.add_subcommand("check-frame", "validate a frame document");
    check_frame->add_option("file", file)->required();
    check_frame->callback([&] {
        action = [&] { return finish_diagnostics(out, validate_frame(frame_from_json(load_json(file), agents))); };
    });

    std::size_t theta_cap = ThetaOptions{}.max_moments;
    auto* classify = app.add_subcommand("classify", "mixsucc, regularity, unirelationality and Theta sizes");
    classify->add_option("file", file)->required();
    classify->add_option("--theta-cap", theta_cap, "largest frame for Theta enumeration");
    classify->callback([&] {
        action = [&] {
            const JstitFrame f = frame_from_json(load_json(file), agents);
            require_valid_frame(f);
            const TemporalFrame& t = f.temporal();
            const ThetaOptions opts{theta_cap};
            Json doc;
            const auto mix = is_mixsucc(t);
            doc["mixsucc"] = mix.holds;
            if (mix.witness) doc["mixsucc_witness"] = witness_json(t, *mix.witness);
            const auto reg = is_regular(f, opts);
            doc["regular"] = reg.holds;
            if (reg.witness) doc["regular_witness"] = witness_json(t, *reg.witness);
            doc["unirelational"] = is_unirelational(f);
            Json sizes = Json::object();
            const auto closed = closed_sets(f, opts);
            for (MomentId m = 0; m < t.size(); ++m)
                sizes[t.name(m)] = std::count_if(closed.begin(), closed.end(),
                                                 [&](MomentMask s) { return mask_has(s, m); });
            doc["theta_sizes"] = sizes;
            doc["annotated"] = t.annotated();
            out << canonical(doc);
            return kExitOk;
        };
    });

    std::string cs_file;
    auto* check_model = app.add_subcommand("check-model", "validate a model document");
    check_model->add_option("file", file)->required();
    check_model->add_option("--cs", cs_file, "constant specification (JSON array of formulas)");
    check_model->callback([&] {
        action = [&] {
            const JstitModel m = model_from_json(load_json(file), agents);
            Diagnostics ds = validate_frame(m.frame());
            std::optional<ConstantSpecification> cs;
            if (!cs_file.empty()) {
                cs = cs_from_json(load_json(cs_file));
                for (auto& d : check_cs(*cs, AxiomOptions{false, m.frame().agents()})) ds.push_back(std::move(d));
            }
            if (!has_errors(ds)) {
                for (auto& d : validate_model(m, cs ? &*cs : nullptr)) ds.push_back(std::move(d));
            }
            if (!has_errors(ds)) {
                for (auto& d : derived_property_check(m)) ds.push_back(std::move(d));
            }
            return finish_diagnostics(out, ds);
        };
    });

    std::string at;
    std::string formula;
    auto* eval = app.add_subcommand("eval", "evaluate a formula at a moment-history pair");
    eval->add_option("file", file)->required();
    eval->add_option("--at", at, "moment,history")->required();
    eval->add_option("--formula", formula)->required();
    eval->callback([&] {
        action = [&] {
            const JstitModel m = model_from_json(load_json(file), agents);
            const Formula f = parse_formula(formula);
            const bool holds = satisfies(m, parse_index(m.temporal(), at), f);
            out << (holds ? "true" : "false") << "\n";
            return holds ? kExitOk : kExitProperty;
        };
    });

    std::string kind = "stit";
    std::string witness = "auto";
    auto* cm = app.add_subcommand("countermodel", "build the falsifying model for a frame and witness");
    cm->add_option("file", file)->required();
    cm->add_option("--kind", kind, "stit | temporal | jstit")->check(CLI::IsMember({"stit", "temporal", "jstit"}));
    cm->add_option("--witness", witness, "'m0,m1,h0,h1' (stit, temporal), 'm0,m1,h,a+b' (jstit) or 'auto'");
    cm->add_option("--theta-cap", theta_cap, "largest frame for Theta enumeration");
    cm->callback([&] {
        action = [&] {
            const JstitFrame f = frame_from_json(load_json(file), agents);
            require_valid_frame(f);
            const TemporalFrame& t = f.temporal();
            if (kind == "jstit") {
                RegWitness w;
                if (witness == "auto") {
                    const auto reg = is_regular(f, ThetaOptions{theta_cap});
                    if (reg.holds) {
                        out << canonical(Json{{"regular", true}, {"message", "frame is regular; no witness exists"}});
                        return kExitOk;
                    }
                    w = *reg.witness;
                } else {
                    w = parse_reg_witness(t, witness);
                }
                out << canonical(built_json(build_jstit_countermodel(f, w), witness_json(t, w)));
                return kExitProperty;
            }
            MixsuccWitness w;
            if (witness == "auto") {
                const auto mix = is_mixsucc(t);
                if (mix.holds) {
                    out << canonical(Json{{"mixsucc", true}, {"message", "frame is mixsucc; no witness exists"}});
                    return kExitOk;
                }
                w = *mix.witness;
            } else {
                w = parse_mixsucc_witness(t, witness);
            }
            const BuiltModel b = kind == "stit" ? build_stit_countermodel(f.stit(), w)
                                                : build_temporal_countermodel(t, w, f.agents());
            out << canonical(built_json(b, witness_json(t, w)));
            return kExitProperty;
        };
    });

    bool box_nec = false;
    bool strict = false;
    auto* verify = app.add_subcommand("verify-proof", "check a Hilbert proof line by line");
    verify->add_option("file", file)->required();
    verify->add_option("--cs", cs_file, "constant specification overriding the document's 'cs'");
    verify->add_flag("--box-nec", box_nec, "allow necessitation for Box and [j]");
    verify->add_flag("--strict-a0", strict, "match A0 against a fixed propositional basis");
    verify->callback([&] {
        action = [&] {
            const Json doc = load_json(file);
            const Proof proof = proof_from_json(doc);
            const ConstantSpecification cs = cs_file.empty() ? cs_from_json(doc) : cs_from_json(load_json(cs_file));
            ProofOptions opts;
            opts.box_necessitation = box_nec;
            opts.axioms = AxiomOptions{strict, agents};
            const Verdict v = verify_proof(proof, cs, opts);
            Json lines = Json::array();
            for (std::size_t i = 0; i < v.lines.size(); ++i)
                lines.push_back({{"line", i},
                                 {"formula", render(proof.lines[i].formula)},
                                 {"ok", v.lines[i].ok},
                                 {"message", v.lines[i].message}});
            out << canonical(Json{{"accepted", v.accepted}, {"lines", lines}});
            return v.accepted ? kExitOk : kExitProperty;
        };
    });

    SearchBounds bounds;
    std::string evidence = "everything";
    auto* search = app.add_subcommand("search", "bounded counter-model search");
    search->add_option("--formula", formula)->required();
    search->add_option("--max-moments", bounds.max_moments)->required();
    search->add_option("--max-histories", bounds.max_histories);
    search->add_option("--evidence", evidence, "everything | empty-or-everything")
        ->check(CLI::IsMember({"everything", "empty-or-everything"}));
    search->add_option("--budget", bounds.max_evaluations, "candidate models to evaluate before giving up");
    search->callback([&] {
        action = [&] {
            bounds.agents = agents;
            bounds.evidence = evidence == "everything" ? EvidenceMode::Everything : EvidenceMode::EmptyOrEverything;
            const Formula f = parse_formula(formula);
            auto found = find_countermodel(f, bounds);
            if (!found) {
                out << "none within bounds\n";
                return kExitOk;
            }
            const TemporalFrame& t = found->model.temporal();
            Json doc = model_to_json(found->model);
            doc["formula"] = render(f);
            doc["index"] = {t.name(found->index.moment), history_label(found->index.history)};
            out << canonical(doc);
            return kExitProperty;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    try {
        return action ? action() : kExitInput;
    } catch (const ResourceError& e) {
        err << "resource bound exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace jastit
