#include <string>

#include "jastit/semantics.hpp"

namespace jastit {

const std::vector<std::uint8_t>& Evaluator::truth(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    auto v = compute(f);
    return memo_.emplace(f, std::move(v)).first->second;
}

bool Evaluator::holds(const Index& at, const Formula& f) {
    auto idx = model_.temporal().pair_index(at.moment, at.history);
    if (!idx) throw InputError("not a moment-history pair: (" + std::to_string(at.moment) + ", h" +
                               std::to_string(at.history) + ")");
    return truth(f)[*idx] != 0;
}

std::vector<std::uint8_t> Evaluator::compute(const Formula& f) {
    const TemporalFrame& t = model_.temporal();
    const auto& pairs = t.pairs();
    std::vector<std::uint8_t> out(pairs.size(), 0);

    // Truth of an h-independent clause is decided per moment, then spread.
    auto per_moment = [&](auto&& decide) {
        for (MomentId m = 0; m < t.size(); ++m) {
            const std::uint8_t v = decide(m) ? 1 : 0;
            for (HistoryId h : t.through(m)) out[*t.pair_index(m, h)] = v;
        }
    };
    auto everywhere_at = [&](const std::vector<std::uint8_t>& a, MomentId m) {
        for (HistoryId h : t.through(m))
            if (!a[*t.pair_index(m, h)]) return false;
        return true;
    };

    switch (f.kind()) {
        case Formula::Kind::Atom:
            for (std::size_t i = 0; i < pairs.size(); ++i)
                out[i] = model_.valuation(f.name(), pairs[i].first, pairs[i].second) ? 1 : 0;
            break;
        case Formula::Kind::And: {
            const auto& l = truth(f.left());
            const auto& r = truth(f.right());
            for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = l[i] & r[i];
            break;
        }
        case Formula::Kind::Not: {
            const auto& a = truth(f.arg());
            for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = a[i] ? 0 : 1;
            break;
        }
        case Formula::Kind::Cstit: {
            if (f.agent() < 0 || static_cast<std::size_t>(f.agent()) >= model_.frame().agents())
                throw InputError("agent " + std::to_string(f.agent()) + " is outside the community");
            const auto& a = truth(f.arg());
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto [m, h] = pairs[i];
                const auto& part = model_.frame().stit().choice(m, f.agent());
                const auto cell = model_.frame().stit().cell_of(m, f.agent(), h);
                bool all = true;
                if (cell)
                    for (HistoryId g : part[*cell]) all = all && a[*t.pair_index(m, g)];
                out[i] = all ? 1 : 0;
            }
            break;
        }
        case Formula::Kind::Box: {
            const auto& a = truth(f.arg());
            per_moment([&](MomentId m) { return everywhere_at(a, m); });
            break;
        }
        case Formula::Kind::Knows: {
            const auto& a = truth(f.arg());
            per_moment([&](MomentId m) {
                for (MomentId m1 = 0; m1 < t.size(); ++m1)
                    if (model_.frame().r()(m, m1) && !everywhere_at(a, m1)) return false;
                return true;
            });
            break;
        }
        case Formula::Kind::Proves: {
            if (!model_.universe().has(f.term()))
                throw UniverseError("polynomial '" + render(f.term()) + "' is outside the model's universe");
            const auto& a = truth(f.arg());
            per_moment([&](MomentId m) {
                if (!model_.evidence(m, f.term()).contains(f.arg())) return false;
                for (MomentId m1 = 0; m1 < t.size(); ++m1)
                    if (model_.frame().re()(m, m1) && !everywhere_at(a, m1)) return false;
                return true;
            });
            break;
        }
        case Formula::Kind::Announced:
            if (!model_.universe().has(f.term()))
                throw UniverseError("polynomial '" + render(f.term()) + "' is outside the model's universe");
            for (std::size_t i = 0; i < pairs.size(); ++i)
                out[i] = model_.act(pairs[i].first, pairs[i].second).count(f.term()) ? 1 : 0;
            break;
    }
    return out;
}

bool satisfies(const JstitModel& model, const Index& at, const Formula& f) {
    Evaluator ev(model);
    return ev.holds(at, f);
}

Validity valid_in_model(const JstitModel& model, const Formula& f) {
    Evaluator ev(model);
    const auto& v = ev.truth(f);
    const auto& pairs = model.temporal().pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (!v[i]) return {false, Index{pairs[i].first, pairs[i].second}};
    return {};
}

}  // namespace jastit
