#include <string>

#include "jastit/frames.hpp"

namespace jastit {

namespace {

// Per-moment masks that turn the closure conditions into bit tests.
struct ClosureTables {
    std::vector<MomentMask> re_succ;                  // condition 2
    std::vector<std::vector<MomentMask>> next_on;     // condition 3, one mask per history through m
    std::vector<bool> gapless_below;                  // condition 4 antecedent, minus membership
    std::vector<MomentMask> support_below;            // condition 4 witnesses
};

ClosureTables tables_for(const JstitFrame& f) {
    const TemporalFrame& t = f.temporal();
    const std::size_t n = t.size();
    ClosureTables tb;
    tb.re_succ.assign(n, 0);
    tb.next_on.assign(n, {});
    tb.gapless_below.assign(n, false);
    tb.support_below.assign(n, 0);
    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = 0; b < n; ++b)
            if (f.re()(a, b)) tb.re_succ[a] |= mask_of(b);

    for (MomentId m = 0; m < n; ++m) {
        for (HistoryId h : t.through(m)) {
            MomentMask nx = 0;
            for (MomentId m2 : t.history(h).moments)
                if (t.next(m, m2)) nx |= mask_of(m2);
            tb.next_on[m].push_back(nx);
        }

        // Every m2 below m has something strictly between, where a dense
        // segment counts as "something".
        bool gapless = true;
        for (MomentId m2 = 0; m2 < n && gapless; ++m2) {
            if (!t.lt(m2, m)) continue;
            bool between = false;
            for (MomentId m3 = 0; m3 < n && !between; ++m3)
                between = t.lt(m2, m3) && t.lt(m3, m);
            for (const auto& [a, b] : t.dense())
                if (!between && t.leq(m2, a) && t.leq(b, m)) between = true;
            gapless = between;
        }
        tb.gapless_below[m] = gapless;

        // A moment of a dense segment is in S exactly when its upper end is.
        MomentMask support = 0;
        for (MomentId m4 = 0; m4 < n; ++m4)
            if (t.lt(m4, m)) support |= mask_of(m4);
        for (const auto& [a, b] : t.dense())
            if (t.leq(b, m)) support |= mask_of(b);
        tb.support_below[m] = support;
    }
    return tb;
}

bool closed_under(const ClosureTables& tb, std::size_t n, MomentMask s) {
    for (MomentId m = 0; m < n; ++m) {
        if (mask_has(s, m)) {
            if ((tb.re_succ[m] & ~s) != 0) return false;
            if (tb.gapless_below[m] && (tb.support_below[m] & s) == 0) return false;
        } else {
            bool forced = !tb.next_on[m].empty();
            for (MomentMask nx : tb.next_on[m])
                if ((nx & s) == 0) {
                    forced = false;
                    break;
                }
            if (forced) return false;
        }
    }
    return true;
}

void check_size(const JstitFrame& f, const ThetaOptions& opts) {
    const std::size_t n = f.temporal().size();
    if (n > opts.max_moments || n > 63)
        throw ResourceError("Theta enumeration over " + std::to_string(n) +
                            " moments exceeds the bound of " + std::to_string(opts.max_moments));
}

}  // namespace

bool is_closed_set(const JstitFrame& f, MomentMask s) {
    const std::size_t n = f.temporal().size();
    if (n < 64 && (s >> n) != 0) return false;
    return closed_under(tables_for(f), n, s);
}

std::vector<MomentMask> closed_sets(const JstitFrame& f, const ThetaOptions& opts) {
    check_size(f, opts);
    const std::size_t n = f.temporal().size();
    const ClosureTables tb = tables_for(f);
    std::vector<MomentMask> out;
    const MomentMask limit = MomentMask{1} << n;
    for (MomentMask s = 0; s < limit; ++s)
        if (closed_under(tb, n, s)) out.push_back(s);
    return out;
}

std::vector<MomentMask> theta(const JstitFrame& f, MomentId m, const ThetaOptions& opts) {
    if (m >= f.temporal().size()) throw InputError("theta: moment out of range");
    std::vector<MomentMask> out;
    for (MomentMask s : closed_sets(f, opts))
        if (mask_has(s, m)) out.push_back(s);
    return out;
}

RegularResult is_regular(const JstitFrame& f, const ThetaOptions& opts) {
    const TemporalFrame& t = f.temporal();
    const std::size_t n = t.size();
    RegularResult result;
    result.uses_annotations = t.annotated();
    const std::vector<MomentMask> closed = closed_sets(f, opts);

    for (MomentId m = 0; m < n; ++m)
        for (MomentId m1 = 0; m1 < n; ++m1) {
            if (!t.lt(m, m1)) continue;
            bool consequent = false;
            for (MomentId m2 = 0; m2 < n && !consequent; ++m2)
                consequent = t.leq(m2, m1) && t.next(m, m2);
            if (consequent) continue;

            MomentMask required = 0;  // S must be in Theta_m0 for m < m0 <= m1
            for (MomentId m0 = 0; m0 < n; ++m0)
                if (t.lt(m, m0) && t.leq(m0, m1)) required |= mask_of(m0);

            std::vector<HistoryId> candidates;
            for (HistoryId h : t.through(m)) {
                bool separated = true;
                for (HistoryId g : t.through(m1))
                    if (undivided_at(t, m, h, g)) {
                        separated = false;
                        break;
                    }
                if (separated) candidates.push_back(h);
            }
            if (candidates.empty()) continue;

            for (MomentMask s : closed) {
                if (mask_has(s, m) || (s & required) != required) continue;
                for (HistoryId h : candidates) {
                    bool avoids = true;
                    for (MomentId m2 : t.history(h).moments)
                        if (t.next(m, m2) && mask_has(s, m2)) avoids = false;
                    if (avoids) {
                        result.holds = false;
                        result.witness = RegWitness{m, m1, h, s};
                        return result;
                    }
                }
            }
        }
    return result;
}

}  // namespace jastit
