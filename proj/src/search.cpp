#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "jastit/semantics.hpp"

namespace jastit {

namespace {

// Shapes of the formula that decide which frame components can be fixed.
struct Needs {
    std::set<Agent> agents;  // agents under [j]
    bool knows = false;
    bool proves = false;
    std::vector<Poly> announced;
};

Needs needs_of(const Formula& f) {
    Needs n;
    std::set<Poly> seen;
    for (const auto& g : subformulas(f)) {
        switch (g.kind()) {
            case Formula::Kind::Cstit: n.agents.insert(g.agent()); break;
            case Formula::Kind::Knows: n.knows = true; break;
            case Formula::Kind::Proves: n.proves = true; break;
            case Formula::Kind::Announced:
                if (seen.insert(g.term()).second) n.announced.push_back(g.term());
                break;
            default: break;
        }
    }
    return n;
}

// Rooted trees as parent arrays with nondecreasing parents (a breadth-first
// labelling exists for every rooted tree).
void for_each_tree(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> parent(n, 0);
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == n) {
            visit(parent);
            return;
        }
        const std::size_t lo = i <= 1 ? 0 : parent[i - 1];
        for (std::size_t p = lo; p < i; ++p) {
            parent[i] = p;
            go(i + 1);
        }
    };
    if (n == 1) visit(parent);
    else go(1);
}

// Set partitions of {0..k-1} as restricted growth strings.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> a(k, 0);
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t blocks) {
        if (i == k) {
            out.push_back(a);
            return;
        }
        for (std::size_t b = 0; b <= blocks && b < k; ++b) {
            a[i] = b;
            go(i + 1, std::max(blocks, b + 1));
        }
    };
    if (k == 0) out.push_back({});
    else go(0, 0);
    return out;
}

/// Preorders containing `base`, in ascending order of their extra-pair masks.
std::vector<Relation> preorders_above(const Relation& base) {
    const std::size_t n = base.size();
    std::vector<std::pair<MomentId, MomentId>> free;
    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = 0; b < n; ++b)
            if (!base(a, b)) free.emplace_back(a, b);
    if (free.size() > 20) throw ResourceError("too many candidate epistemic relations");
    std::vector<Relation> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        Relation r = base;
        for (std::size_t i = 0; i < free.size(); ++i)
            if ((mask >> i) & 1U) r.set(free[i].first, free[i].second);
        Relation closed = r;
        closed.close_reflexive_transitive();
        if (closed == r) out.push_back(std::move(r));
    }
    return out;
}

struct Budget {
    std::uint64_t used = 0;
    std::uint64_t limit;
    void spend() {
        if (++used > limit)
            throw ResourceError("counter-model search exceeded " + std::to_string(limit) +
                                " candidate evaluations");
    }
};

class Search {
public:
    Search(const Formula& f, const SearchBounds& b)
        : f_(f), bounds_(b), needs_(needs_of(f)), universe_(Universe::of({f})), budget_{0, b.max_evaluations} {
        for (const auto& v : prop_vars(f)) vars_.push_back(v);
        for (Agent j : needs_.agents)
            if (j < 0 || static_cast<std::size_t>(j) >= bounds_.agents)
                throw InputError("formula mentions agent " + std::to_string(j) + " but the community has " +
                                 std::to_string(bounds_.agents) + " agents");
    }

    std::optional<Countermodel> run() {
        for (std::size_t n = 1; n <= bounds_.max_moments; ++n) {
            if (n > 63) throw ResourceError("frame size beyond the supported range");
            std::optional<Countermodel> found;
            for_each_tree(n, [&](const std::vector<std::size_t>& parent) {
                if (!found) found = try_tree(parent);
            });
            if (found) return found;
        }
        return std::nullopt;
    }

private:
    std::optional<Countermodel> try_tree(const std::vector<std::size_t>& parent) {
        const std::size_t n = parent.size();
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("m" + std::to_string(i));
        Relation order = Relation::identity(n);
        for (std::size_t i = 1; i < n; ++i) order.set(parent[i], i);
        TemporalFrame t(std::move(names), std::move(order));
        if (t.histories().size() > bounds_.max_histories) return std::nullopt;

        for (const auto& choice : choice_tables(t)) {
            StitFrame stit(t, bounds_.agents, choice);
            const std::vector<Relation> rs =
                needs_.knows ? preorders_above(t.order()) : std::vector<Relation>{t.order()};
            for (const auto& r : rs) {
                const std::vector<Relation> res = needs_.proves ? preorders_above(r) : std::vector<Relation>{r};
                for (const auto& re : res) {
                    JstitFrame frame(stit, r, re);
                    if (auto cm = try_frame(frame)) return cm;
                }
            }
        }
        return std::nullopt;
    }

    // Choice tables: agents not under [j] keep the single-cell partition.
    std::vector<std::vector<Partition>> choice_tables(const TemporalFrame& t) {
        const std::size_t n = t.size();
        const std::size_t ag = bounds_.agents;
        std::vector<std::vector<Partition>> trivial_cells(n);
        std::vector<std::vector<std::vector<Partition>>> per_moment(n);  // options: one Partition per agent
        for (MomentId m = 0; m < n; ++m) {
            const auto classes = undivided_classes(t, m);
            std::vector<HistoryId> all(t.through(m).begin(), t.through(m).end());
            std::vector<Partition> options;
            for (const auto& rgs : set_partitions(classes.size())) {
                Partition p;
                for (std::size_t c = 0; c < classes.size(); ++c) {
                    if (rgs[c] >= p.size()) p.resize(rgs[c] + 1);
                    p[rgs[c]].insert(p[rgs[c]].end(), classes[c].begin(), classes[c].end());
                }
                for (auto& cell : p) std::sort(cell.begin(), cell.end());
                options.push_back(std::move(p));
            }
            std::vector<Partition> base(ag, Partition{all});
            std::vector<std::vector<Partition>> tuples;
            std::vector<Agent> active(needs_.agents.begin(), needs_.agents.end());
            std::function<void(std::size_t, std::vector<Partition>&)> go = [&](std::size_t i,
                                                                              std::vector<Partition>& cur) {
                if (i == active.size()) {
                    if (independent(cur)) tuples.push_back(cur);
                    return;
                }
                for (const auto& opt : options) {
                    cur[static_cast<std::size_t>(active[i])] = opt;
                    go(i + 1, cur);
                }
            };
            go(0, base);
            per_moment[m] = std::move(tuples);
        }
        std::vector<std::vector<Partition>> out;
        std::vector<Partition> cur(n * ag);
        std::function<void(MomentId)> go = [&](MomentId m) {
            if (m == n) {
                out.push_back(cur);
                return;
            }
            for (const auto& tuple : per_moment[m]) {
                for (std::size_t j = 0; j < ag; ++j) cur[m * ag + j] = tuple[j];
                go(m + 1);
            }
        };
        go(0);
        return out;
    }

    static bool independent(const std::vector<Partition>& parts) {
        std::vector<std::size_t> pick(parts.size(), 0);
        std::function<bool(std::size_t, const std::vector<HistoryId>&)> go =
            [&](std::size_t j, const std::vector<HistoryId>& common) {
                if (common.empty()) return false;
                if (j == parts.size()) return true;
                for (const auto& cell : parts[j]) {
                    std::vector<HistoryId> next_common;
                    std::set_intersection(common.begin(), common.end(), cell.begin(), cell.end(),
                                          std::back_inserter(next_common));
                    if (!go(j + 1, next_common)) return false;
                }
                return true;
            };
        std::vector<HistoryId> all;
        for (const auto& cell : parts.front()) all.insert(all.end(), cell.begin(), cell.end());
        std::sort(all.begin(), all.end());
        return go(0, all);
    }

    // Presentation patterns of a single polynomial: the MH pairs where it is
    // on the whiteboard. Every Act constraint is per polynomial, so Act is a
    // free combination of valid patterns.
    std::vector<std::vector<std::uint8_t>> presentation_patterns(const JstitFrame& f) {
        const TemporalFrame& t = f.temporal();
        const auto& pairs = t.pairs();
        std::vector<std::vector<std::size_t>> units;  // pair indices of each (m, undivided class)
        for (MomentId m = 0; m < t.size(); ++m)
            for (const auto& cls : undivided_classes(t, m)) {
                std::vector<std::size_t> u;
                for (HistoryId h : cls) u.push_back(*t.pair_index(m, h));
                units.push_back(std::move(u));
            }
        if (units.size() > 20) throw ResourceError("too many presentation patterns to enumerate");
        std::vector<std::vector<std::uint8_t>> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << units.size()); ++mask) {
            std::vector<std::uint8_t> on(pairs.size(), 0);
            for (std::size_t u = 0; u < units.size(); ++u)
                if ((mask >> u) & 1U)
                    for (std::size_t i : units[u]) on[i] = 1;
            if (valid_pattern(f, on)) out.push_back(std::move(on));
        }
        return out;
    }

    static bool valid_pattern(const JstitFrame& f, const std::vector<std::uint8_t>& on) {
        const TemporalFrame& t = f.temporal();
        auto at = [&](MomentId m, HistoryId h) { return on[*t.pair_index(m, h)] != 0; };
        std::vector<bool> settled(t.size(), true);
        for (MomentId m = 0; m < t.size(); ++m)
            for (HistoryId h : t.through(m)) settled[m] = settled[m] && at(m, h);
        for (MomentId m = 0; m < t.size(); ++m) {
            for (MomentId m1 = 0; m1 < t.size(); ++m1) {
                if (!t.lt(m1, m)) continue;
                for (HistoryId h : t.through(m))
                    if (at(m1, h) && !at(m, h)) return false;
            }
            if (settled[m]) {
                bool supported = false;
                for (MomentId m1 = 0; m1 < t.size() && !supported; ++m1) {
                    if (!t.lt(m1, m)) continue;
                    for (HistoryId h : t.through(m)) supported = supported || at(m1, h);
                }
                if (!supported) return false;
            }
            for (MomentId m1 = 0; m1 < t.size(); ++m1)
                if (f.re()(m, m1) && settled[m] && !settled[m1]) return false;
        }
        return true;
    }

    // Per-polynomial evidence choices; only Everything when the mode says so.
    std::vector<std::vector<bool>> evidence_choices() {
        std::vector<Poly> ps(universe_.polys.begin(), universe_.polys.end());
        if (bounds_.evidence == EvidenceMode::Everything) return {std::vector<bool>(ps.size(), true)};
        std::vector<std::vector<bool>> out;
        if (ps.size() > 20) throw ResourceError("too many polynomials for evidence enumeration");
        auto pos = [&](const Poly& p) {
            return static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), p) - ps.begin());
        };
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
            std::vector<bool> all(ps.size());
            for (std::size_t i = 0; i < ps.size(); ++i) all[i] = (mask >> i) & 1U;
            bool ok = true;
            for (std::size_t i = 0; i < ps.size() && ok; ++i) {
                const Poly& p = ps[i];
                switch (p.kind()) {
                    case Poly::Kind::App:
                        ok = all[i] || !(all[pos(p.left())] && all[pos(p.right())]);
                        break;
                    case Poly::Kind::Sum:
                        ok = all[i] || !(all[pos(p.left())] || all[pos(p.right())]);
                        break;
                    case Poly::Kind::Check: ok = all[i] || !all[pos(p.arg())]; break;
                    default: break;
                }
            }
            if (ok) out.push_back(std::move(all));
        }
        return out;
    }

    std::optional<Countermodel> try_frame(const JstitFrame& frame) {
        const TemporalFrame& t = frame.temporal();
        const auto& pairs = t.pairs();
        const auto patterns = needs_.announced.empty() ? std::vector<std::vector<std::uint8_t>>{}
                                                       : presentation_patterns(frame);
        const auto evidence = evidence_choices();
        std::vector<Poly> ps(universe_.polys.begin(), universe_.polys.end());

        std::vector<std::size_t> pick(needs_.announced.size(), 0);
        for (;;) {
            for (const auto& ev : evidence) {
                JstitModel model(frame, universe_);
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    PolySet act;
                    for (std::size_t k = 0; k < needs_.announced.size(); ++k)
                        if (patterns[pick[k]][i]) act.insert(needs_.announced[k]);
                    model.set_act(pairs[i].first, pairs[i].second, std::move(act));
                }
                if (bounds_.evidence != EvidenceMode::Everything) {
                    model.set_evidence_default(EvidenceSet{});
                    for (std::size_t i = 0; i < ps.size(); ++i)
                        if (ev[i])
                            for (MomentId m = 0; m < t.size(); ++m)
                                model.set_evidence(m, ps[i], EvidenceSet::everything());
                }
                if (auto cm = try_valuations(std::move(model))) return cm;
            }
            // Next combination of presentation patterns.
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == patterns.size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
        return std::nullopt;
    }

    std::optional<Countermodel> try_valuations(JstitModel model) {
        const auto& pairs = model.temporal().pairs();
        const std::size_t bits = pairs.size() * vars_.size();
        if (bits > 40) throw ResourceError("valuation space too large to enumerate");
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            budget_.spend();
            for (std::size_t v = 0; v < vars_.size(); ++v)
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    model.set_valuation(vars_[v], pairs[i].first, pairs[i].second,
                                        (mask >> (v * pairs.size() + i)) & 1U);
            const Validity res = valid_in_model(model, f_);
            if (!res.holds) return Countermodel{std::move(model), *res.failing};
        }
        return std::nullopt;
    }

    Formula f_;
    SearchBounds bounds_;
    Needs needs_;
    Universe universe_;
    std::vector<std::string> vars_;
    Budget budget_;
};

}  // namespace

std::optional<Countermodel> find_countermodel(const Formula& f, const SearchBounds& bounds) {
    return Search(f, bounds).run();
}

}  // namespace jastit
