#include <string>

#include "jastit/countermodels.hpp"

namespace jastit {

Formula definability_target() {
    static const Formula target = parse_formula("K(Box E x | ~Box E y) -> (E x | ~E y)");
    return target;
}

namespace {

[[noreturn]] void reject(const std::string& what) { throw WitnessError("invalid witness: " + what); }

void require_valid(const Diagnostics& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) throw InputError("frame is not valid: " + d.rule + ": " + d.message);
}

void check_ranges(const TemporalFrame& t, MomentId m0, MomentId m1) {
    if (m0 >= t.size() || m1 >= t.size()) reject("moment out of range");
}

// m0 < m1 and no m <= m1 with Next(m0, m).
void check_no_successor(const TemporalFrame& t, MomentId m0, MomentId m1) {
    if (!t.lt(m0, m1)) reject("m0 < m1 fails (" + t.name(m0) + ", " + t.name(m1) + ")");
    for (MomentId m = 0; m < t.size(); ++m)
        if (t.leq(m, m1) && t.next(m0, m))
            reject("Next(m0, " + t.name(m) + ") holds although " + t.name(m) + " <= m1");
}

std::string provenance_of(const TemporalFrame& t) {
    if (!t.annotated()) return {};
    std::string s = "witness relies on density annotations:";
    for (const auto& [a, b] : t.dense()) s += " (" + t.name(a) + "," + t.name(b) + ")";
    return s;
}

HistoryId least_history(const TemporalFrame& t, MomentId m1) { return t.through(m1).front(); }

Universe target_universe() { return Universe::of({definability_target()}); }

}  // namespace

void check_witness(const TemporalFrame& t, const MixsuccWitness& w) {
    check_ranges(t, w.m0, w.m1);
    const std::size_t hn = t.histories().size();
    if (w.h0 >= hn || w.h1 >= hn) reject("history out of range");
    if (!t.on(w.h0, w.m0) || !t.on(w.h1, w.m0)) reject("h0 and h1 must pass through m0");
    if (undivided_at(t, w.m0, w.h0, w.h1)) reject("h0 and h1 are undivided at m0");
    check_no_successor(t, w.m0, w.m1);
}

void check_witness(const JstitFrame& f, const RegWitness& w) {
    const TemporalFrame& t = f.temporal();
    check_ranges(t, w.m0, w.m1);
    if (w.h_prime >= t.histories().size() || !t.on(w.h_prime, w.m0)) reject("h' must pass through m0");
    if (t.size() < 64 && (w.S >> t.size()) != 0) reject("S mentions moments outside the frame");
    check_no_successor(t, w.m0, w.m1);
    if (mask_has(w.S, w.m0)) reject("m0 is in S");
    if (!is_closed_set(f, w.S)) reject("S violates a closure condition of Theta");
    for (MomentId m = 0; m < t.size(); ++m)
        if (t.lt(w.m0, m) && t.leq(m, w.m1) && !mask_has(w.S, m))
            reject("S is not in Theta_" + t.name(m) + " (moment missing)");
    for (HistoryId g : t.through(w.m1))
        if (undivided_at(t, w.m0, g, w.h_prime)) reject("h" + std::to_string(g) + " through m1 is undivided from h' at m0");
    for (MomentId m : t.history(w.h_prime).moments)
        if (t.next(w.m0, m) && mask_has(w.S, m)) reject("Next(m0, " + t.name(m) + ") on h' lands in S");
}

BuiltModel build_stit_countermodel(const StitFrame& c, const MixsuccWitness& w) {
    require_valid(validate_frame(c));
    const TemporalFrame& t = c.temporal();
    check_witness(t, w);
    JstitModel model(JstitFrame(c), target_universe());
    const HistoryId h2 = least_history(t, w.m1);
    const Poly x = Poly::var("x");
    const Poly y = Poly::var("y");
    for (const auto& [m, h] : t.pairs()) {
        const bool near_h2 = t.leq(w.m0, m) && undivided_at(t, w.m0, h, h2);
        if (m == w.m0 && near_h2) model.set_act(m, h, {y});
        else if (m != w.m0 && near_h2) model.set_act(m, h, {x, y});
    }
    return {std::move(model), Index{w.m0, h2}, definability_target(), provenance_of(t)};
}

BuiltModel build_temporal_countermodel(const TemporalFrame& t, const MixsuccWitness& w, std::size_t agents) {
    return build_stit_countermodel(StitFrame(t, agents), w);
}

BuiltModel build_jstit_countermodel(const JstitFrame& f, const RegWitness& w) {
    require_valid(validate_frame(f));
    const TemporalFrame& t = f.temporal();
    check_witness(f, w);
    JstitModel model(f, target_universe());
    const HistoryId h2 = least_history(t, w.m1);
    const Poly x = Poly::var("x");
    const Poly y = Poly::var("y");
    for (const auto& [m, h] : t.pairs()) {
        if (m == w.m0 && undivided_at(t, w.m0, h, h2)) {
            model.set_act(m, h, {y});
            continue;
        }
        bool full = mask_has(w.S, m);
        for (MomentId m2 : t.history(h).moments)
            full = full || (mask_has(w.S, m2) && t.next(m, m2));
        if (full) model.set_act(m, h, {x, y});
    }
    return {std::move(model), Index{w.m0, h2}, definability_target(), provenance_of(t)};
}

}  // namespace jastit
