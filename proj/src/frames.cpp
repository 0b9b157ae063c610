#include <algorithm>
#include <functional>
#include <string>

#include "jastit/frames.hpp"

namespace jastit {

// ---------------------------------------------------------------------------
// Relation

Relation Relation::identity(std::size_t n) {
    Relation r(n);
    for (MomentId i = 0; i < n; ++i) r.set(i, i);
    return r;
}

Relation Relation::total(std::size_t n) {
    Relation r(n);
    for (MomentId i = 0; i < n; ++i)
        for (MomentId j = 0; j < n; ++j) r.set(i, j);
    return r;
}

Relation Relation::from_pairs(std::size_t n, std::span<const std::pair<MomentId, MomentId>> pairs) {
    Relation r(n);
    for (const auto& [a, b] : pairs) {
        if (a >= n || b >= n) throw InputError("relation pair out of range");
        r.set(a, b);
    }
    return r;
}

void Relation::close_reflexive_transitive() {
    for (MomentId i = 0; i < n_; ++i) set(i, i);
    for (MomentId k = 0; k < n_; ++k)
        for (MomentId i = 0; i < n_; ++i) {
            if (!(*this)(i, k)) continue;
            for (MomentId j = 0; j < n_; ++j)
                if ((*this)(k, j)) set(i, j);
        }
}

bool Relation::includes(const Relation& other) const {
    if (other.n_ != n_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (other.bits_[i] && !bits_[i]) return false;
    return true;
}

std::vector<std::pair<MomentId, MomentId>> Relation::pairs() const {
    std::vector<std::pair<MomentId, MomentId>> out;
    for (MomentId i = 0; i < n_; ++i)
        for (MomentId j = 0; j < n_; ++j)
            if ((*this)(i, j)) out.emplace_back(i, j);
    return out;
}

// ---------------------------------------------------------------------------
// TemporalFrame

TemporalFrame::TemporalFrame(std::vector<std::string> names, Relation order,
                             std::vector<std::pair<MomentId, MomentId>> dense)
    : names_(std::move(names)), order_(std::move(order)), dense_(std::move(dense)) {
    const std::size_t n = names_.size();
    if (order_.size() != n) throw InputError("order relation size does not match moment count");
    for (const auto& [a, b] : dense_) {
        if (a >= n || b >= n) throw InputError("density annotation out of range");
    }
    std::sort(dense_.begin(), dense_.end());
    dense_.erase(std::unique(dense_.begin(), dense_.end()), dense_.end());
    order_.close_reflexive_transitive();

    for (MomentId a = 0; a < n && antisymmetric_; ++a)
        for (MomentId b = a + 1; b < n; ++b)
            if (order_(a, b) && order_(b, a)) {
                antisymmetric_ = false;
                break;
            }

    through_.assign(n, {});
    next_.assign(n * n, 0);
    if (!antisymmetric_) return;

    // Maximal chains of a finite poset are exactly the cover-paths from a
    // minimal to a maximal element.
    auto covers = [&](MomentId a, MomentId b) {
        if (!lt(a, b)) return false;
        for (MomentId c = 0; c < n; ++c)
            if (lt(a, c) && lt(c, b)) return false;
        return true;
    };
    std::vector<std::vector<MomentId>> up(n);
    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = 0; b < n; ++b)
            if (covers(a, b)) up[a].push_back(b);

    std::vector<std::vector<MomentId>> chains;
    std::vector<MomentId> path;
    std::function<void(MomentId)> walk = [&](MomentId m) {
        path.push_back(m);
        if (up[m].empty()) {
            auto chain = path;
            std::sort(chain.begin(), chain.end());
            chains.push_back(std::move(chain));
        }
        for (MomentId b : up[m]) walk(b);
        path.pop_back();
    };
    for (MomentId m = 0; m < n; ++m) {
        bool minimal = true;
        for (MomentId p = 0; p < n; ++p)
            if (lt(p, m)) minimal = false;
        if (minimal) walk(m);
    }
    std::sort(chains.begin(), chains.end());
    chains.erase(std::unique(chains.begin(), chains.end()), chains.end());

    for (HistoryId id = 0; id < chains.size(); ++id) {
        History h;
        h.id = id;
        h.moments = chains[id];
        h.member.assign(n, 0);
        for (MomentId m : h.moments) {
            h.member[m] = 1;
            through_[m].push_back(id);
        }
        histories_.push_back(std::move(h));
    }

    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = 0; b < n; ++b) {
            if (!lt(a, b) || is_dense(a, b)) continue;
            bool immediate = true;
            for (MomentId c = 0; c < n && immediate; ++c)
                if (lt(c, b) && !leq(c, a)) immediate = false;
            next_[a * n + b] = immediate ? 1 : 0;
        }

    const std::size_t hn = histories_.size();
    pair_lookup_.assign(n * hn, 0);
    for (MomentId m = 0; m < n; ++m)
        for (HistoryId h : through_[m]) {
            pairs_.emplace_back(m, h);
            pair_lookup_[m * hn + h] = pairs_.size();
        }
}

std::optional<MomentId> TemporalFrame::find(std::string_view name) const {
    for (MomentId m = 0; m < names_.size(); ++m)
        if (names_[m] == name) return m;
    return std::nullopt;
}

MomentId TemporalFrame::moment(std::string_view name) const {
    if (auto m = find(name)) return *m;
    throw InputError("unknown moment '" + std::string(name) + "'");
}

bool TemporalFrame::is_dense(MomentId a, MomentId b) const {
    return std::binary_search(dense_.begin(), dense_.end(), std::make_pair(a, b));
}

std::optional<std::size_t> TemporalFrame::pair_index(MomentId m, HistoryId h) const {
    const std::size_t hn = histories_.size();
    if (m >= size() || h >= hn) return std::nullopt;
    const std::size_t v = pair_lookup_[m * hn + h];
    if (v == 0) return std::nullopt;
    return v - 1;
}

// ---------------------------------------------------------------------------
// StitFrame / JstitFrame

StitFrame::StitFrame(TemporalFrame temporal, std::size_t agents)
    : temporal_(std::move(temporal)), agents_(agents) {
    if (agents_ == 0) throw InputError("the agent community must be nonempty");
    const std::size_t n = temporal_.size();
    choice_.resize(n * agents_);
    for (MomentId m = 0; m < n; ++m) {
        std::vector<HistoryId> all(temporal_.through(m).begin(), temporal_.through(m).end());
        for (std::size_t j = 0; j < agents_; ++j) {
            if (!all.empty()) choice_[m * agents_ + j] = {all};
        }
    }
}

StitFrame::StitFrame(TemporalFrame temporal, std::size_t agents, std::vector<Partition> choice)
    : temporal_(std::move(temporal)), agents_(agents), choice_(std::move(choice)) {
    if (agents_ == 0) throw InputError("the agent community must be nonempty");
    if (choice_.size() != temporal_.size() * agents_)
        throw InputError("choice table size does not match moments x agents");
    for (auto& part : choice_) {
        for (auto& cell : part) std::sort(cell.begin(), cell.end());
    }
}

const Partition& StitFrame::choice(MomentId m, Agent j) const {
    if (j < 0 || static_cast<std::size_t>(j) >= agents_) throw InputError("agent out of range");
    return choice_.at(m * agents_ + static_cast<std::size_t>(j));
}

std::optional<std::size_t> StitFrame::cell_of(MomentId m, Agent j, HistoryId h) const {
    const auto& part = choice(m, j);
    for (std::size_t c = 0; c < part.size(); ++c)
        if (std::binary_search(part[c].begin(), part[c].end(), h)) return c;
    return std::nullopt;
}

JstitFrame::JstitFrame(StitFrame stit)
    : stit_(std::move(stit)), r_(stit_.temporal().order()), re_(stit_.temporal().order()) {}

JstitFrame::JstitFrame(StitFrame stit, Relation r, Relation re)
    : stit_(std::move(stit)), r_(std::move(r)), re_(std::move(re)) {
    if (r_.size() != stit_.temporal().size() || re_.size() != stit_.temporal().size())
        throw InputError("epistemic relation size does not match moment count");
}

// ---------------------------------------------------------------------------
// Histories, Next, undividedness

const std::vector<History>& histories(const TemporalFrame& t) { return t.histories(); }

bool next(const TemporalFrame& t, MomentId m, MomentId m2) { return t.next(m, m2); }

bool undivided_at(const TemporalFrame& t, MomentId m, HistoryId h, HistoryId g) {
    if (m >= t.size() || h >= t.histories().size() || g >= t.histories().size() || !t.on(h, m) ||
        !t.on(g, m)) {
        throw InputError("undivided_at: histories must both pass through the moment");
    }
    for (MomentId later = 0; later < t.size(); ++later)
        if (t.lt(m, later) && t.on(h, later) && t.on(g, later)) return true;
    return false;
}

std::vector<std::vector<HistoryId>> undivided_classes(const TemporalFrame& t, MomentId m) {
    std::vector<std::vector<HistoryId>> classes;
    for (HistoryId h : t.through(m)) {
        bool placed = false;
        for (auto& cls : classes) {
            if (undivided_at(t, m, cls.front(), h)) {
                cls.push_back(h);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({h});
    }
    return classes;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string hist_name(HistoryId h) { return "h" + std::to_string(h); }

Diagnostic violation(std::string rule, std::string message,
                     std::vector<std::pair<std::string, std::string>> witness) {
    return Diagnostic{Severity::Error, std::move(rule), std::move(message), std::move(witness)};
}

void validate_temporal_into(const TemporalFrame& t, Diagnostics& out) {
    const std::size_t n = t.size();
    if (n == 0) {
        out.push_back(violation("nonempty-tree", "the frame has no moments", {}));
        return;
    }
    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = a + 1; b < n; ++b)
            if (t.leq(a, b) && t.leq(b, a))
                out.push_back(violation("partial-order", "order is not antisymmetric",
                                        {{"m", t.name(a)}, {"m1", t.name(b)}}));

    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = a + 1; b < n; ++b) {
            bool joined = false;
            for (MomentId c = 0; c < n && !joined; ++c)
                joined = t.leq(c, a) && t.leq(c, b);
            if (!joined)
                out.push_back(violation("historical-connection",
                                        "no common lower bound for the two moments",
                                        {{"m", t.name(a)}, {"m1", t.name(b)}}));
        }

    for (MomentId m = 0; m < n; ++m)
        for (MomentId a = 0; a < n; ++a)
            for (MomentId b = a + 1; b < n; ++b)
                if (t.leq(a, m) && t.leq(b, m) && !t.leq(a, b) && !t.leq(b, a))
                    out.push_back(violation("no-backward-branching",
                                            "two incomparable moments lie below a common moment",
                                            {{"m", t.name(m)}, {"m1", t.name(a)}, {"m2", t.name(b)}}));

    for (const auto& [a, b] : t.dense()) {
        bool cover = t.lt(a, b);
        for (MomentId c = 0; c < n && cover; ++c)
            if (t.lt(a, c) && t.lt(c, b)) cover = false;
        if (!cover)
            out.push_back(violation("density-annotation",
                                    "dense annotations must sit on immediate cover pairs",
                                    {{"m", t.name(a)}, {"m1", t.name(b)}}));
    }
}

void validate_choice_into(const StitFrame& c, Diagnostics& out) {
    const TemporalFrame& t = c.temporal();
    if (!t.is_partial_order()) return;
    for (MomentId m = 0; m < t.size(); ++m) {
        const std::vector<HistoryId> hm(t.through(m).begin(), t.through(m).end());
        for (std::size_t j = 0; j < c.agents(); ++j) {
            const Agent agent = static_cast<Agent>(j);
            const Partition& part = c.choice(m, agent);
            std::vector<HistoryId> seen;
            bool ok = true;
            for (const auto& cell : part) {
                if (cell.empty()) ok = false;
                for (HistoryId h : cell) {
                    if (!std::binary_search(hm.begin(), hm.end(), h)) ok = false;
                    seen.push_back(h);
                }
            }
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) ok = false;
            if (seen != hm) ok = false;
            if (!ok) {
                out.push_back(violation("choice-partition", "Choice^m_j is not a partition of H_m",
                                        {{"m", t.name(m)}, {"j", std::to_string(j)}}));
                continue;
            }
            for (std::size_t x = 0; x < hm.size(); ++x)
                for (std::size_t y = x + 1; y < hm.size(); ++y)
                    if (undivided_at(t, m, hm[x], hm[y]) &&
                        c.cell_of(m, agent, hm[x]) != c.cell_of(m, agent, hm[y]))
                        out.push_back(violation("no-choice-between-undivided",
                                                "undivided histories fall into different cells",
                                                {{"m", t.name(m)},
                                                 {"j", std::to_string(j)},
                                                 {"h", hist_name(hm[x])},
                                                 {"h1", hist_name(hm[y])}}));
        }

        // Independence: every selection of one cell per agent intersects.
        bool partitions_ok = true;
        for (std::size_t j = 0; j < c.agents(); ++j)
            if (c.choice(m, static_cast<Agent>(j)).empty() && !hm.empty()) partitions_ok = false;
        if (!partitions_ok || hm.empty()) continue;
        std::vector<std::size_t> pick(c.agents(), 0);
        std::function<void(std::size_t, std::vector<HistoryId>)> select =
            [&](std::size_t j, std::vector<HistoryId> common) {
                if (common.empty()) {
                    std::vector<std::pair<std::string, std::string>> w{{"m", t.name(m)}};
                    for (std::size_t k = 0; k < j; ++k)
                        w.emplace_back("cell[" + std::to_string(k) + "]", std::to_string(pick[k]));
                    out.push_back(violation("independence-of-agents",
                                            "a selection of choice cells has empty intersection",
                                            std::move(w)));
                    return;
                }
                if (j == c.agents()) return;
                const Partition& part = c.choice(m, static_cast<Agent>(j));
                for (std::size_t k = 0; k < part.size(); ++k) {
                    pick[j] = k;
                    std::vector<HistoryId> next_common;
                    std::set_intersection(common.begin(), common.end(), part[k].begin(),
                                          part[k].end(), std::back_inserter(next_common));
                    select(j + 1, std::move(next_common));
                }
            };
        select(0, hm);
    }
}

}  // namespace

Diagnostics validate_frame(const TemporalFrame& t) {
    Diagnostics out;
    validate_temporal_into(t, out);
    return out;
}

Diagnostics validate_frame(const StitFrame& c) {
    Diagnostics out;
    validate_temporal_into(c.temporal(), out);
    validate_choice_into(c, out);
    return out;
}

Diagnostics validate_frame(const JstitFrame& f) {
    Diagnostics out = validate_frame(f.stit());
    const TemporalFrame& t = f.temporal();
    const std::size_t n = t.size();
    auto check_preorder = [&](const Relation& rel, const std::string& rule, const std::string& label) {
        for (MomentId a = 0; a < n; ++a)
            if (!rel(a, a))
                out.push_back(violation(rule, label + " is not reflexive", {{"m", t.name(a)}}));
        for (MomentId a = 0; a < n; ++a)
            for (MomentId b = 0; b < n; ++b) {
                if (!rel(a, b)) continue;
                for (MomentId c = 0; c < n; ++c)
                    if (rel(b, c) && !rel(a, c))
                        out.push_back(violation(rule, label + " is not transitive",
                                                {{"m", t.name(a)}, {"m1", t.name(b)}, {"m2", t.name(c)}}));
            }
    };
    check_preorder(f.r(), "r-preorder", "R");
    check_preorder(f.re(), "re-preorder", "R_e");
    for (MomentId a = 0; a < n; ++a)
        for (MomentId b = 0; b < n; ++b) {
            if (f.r()(a, b) && !f.re()(a, b))
                out.push_back(violation("r-subset-re", "R is not included in R_e",
                                        {{"m", t.name(a)}, {"m1", t.name(b)}}));
            if (t.leq(a, b) && !f.r()(a, b))
                out.push_back(violation("future-always-matters", "the temporal order is not included in R",
                                        {{"m", t.name(a)}, {"m1", t.name(b)}}));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Classification

MixsuccResult is_mixsucc(const TemporalFrame& t) {
    MixsuccResult result;
    result.uses_annotations = t.annotated();
    const std::size_t n = t.size();
    for (MomentId m = 0; m < n; ++m)
        for (MomentId m1 = 0; m1 < n; ++m1) {
            if (!t.lt(m, m1)) continue;
            bool has_next = false;
            for (MomentId m2 = 0; m2 < n && !has_next; ++m2)
                has_next = t.leq(m2, m1) && t.next(m, m2);
            if (has_next) continue;
            const auto hm = t.through(m);
            for (std::size_t a = 0; a < hm.size(); ++a)
                for (std::size_t b = a + 1; b < hm.size(); ++b)
                    if (!undivided_at(t, m, hm[a], hm[b])) {
                        result.holds = false;
                        result.witness = MixsuccWitness{m, m1, hm[a], hm[b]};
                        return result;
                    }
        }
    return result;
}

bool is_unirelational(const JstitFrame& f) { return f.r().includes(f.re()); }

std::vector<MomentId> mask_members(MomentMask s) {
    std::vector<MomentId> out;
    for (MomentId m = 0; m < 64; ++m)
        if (mask_has(s, m)) out.push_back(m);
    return out;
}

}  // namespace jastit
