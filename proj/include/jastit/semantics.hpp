#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "jastit/models.hpp"

namespace jastit {

struct Index {
    MomentId moment = 0;
    HistoryId history = 0;
    friend bool operator==(const Index&, const Index&) = default;
};

/// Truth of every subformula over all of MH(M), memoised per model. Polynomials
/// must belong to the model's universe; formulas outside it are allowed and
/// simply never occur in finite evidence sets.
class Evaluator {
public:
    explicit Evaluator(const JstitModel& model) : model_(model) {}

    bool holds(const Index& at, const Formula& f);
    /// One entry per MH pair, in the frame's pair order.
    const std::vector<std::uint8_t>& truth(const Formula& f);

private:
    std::vector<std::uint8_t> compute(const Formula& f);

    const JstitModel& model_;
    std::unordered_map<Formula, std::vector<std::uint8_t>> memo_;
};

/// Throws UniverseError when f mentions a polynomial outside the universe and
/// InputError when `at` is not a moment-history pair.
bool satisfies(const JstitModel& model, const Index& at, const Formula& f);

struct Validity {
    bool holds = true;
    std::optional<Index> failing;
};

/// The first failing pair in MH order, if any.
Validity valid_in_model(const JstitModel& model, const Formula& f);

// ---------------------------------------------------------------------------
// Bounded counter-model search

enum class EvidenceMode {
    Everything,         // E(m, t) = everything; the search is exhaustive within bounds
    EmptyOrEverything,  // per polynomial, either everything or nothing at all moments
};

struct SearchBounds {
    std::size_t max_moments = 3;
    std::size_t max_histories = 4;
    EvidenceMode evidence = EvidenceMode::Everything;
    std::size_t agents = 2;
    /// Candidate models evaluated before giving up with ResourceError.
    std::uint64_t max_evaluations = 5'000'000;
};

struct Countermodel {
    JstitModel model;
    Index index;
};

/// Searches tree-shaped frames by ascending size and returns the first model
/// (with the first failing index) in enumeration order. Throws ResourceError
/// when the evaluation budget runs out before the space is exhausted.
std::optional<Countermodel> find_countermodel(const Formula& f, const SearchBounds& bounds = {});

}  // namespace jastit
