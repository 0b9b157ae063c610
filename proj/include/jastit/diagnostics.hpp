#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace jastit {

enum class Severity { Error, Warning };

/// One violated constraint, with the tuple that violates it.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string rule;
    std::string message;
    std::vector<std::pair<std::string, std::string>> witness;
};

using Diagnostics = std::vector<Diagnostic>;

inline std::size_t error_count(const Diagnostics& ds) {
    return static_cast<std::size_t>(std::count_if(
        ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; }));
}

inline bool has_errors(const Diagnostics& ds) { return error_count(ds) > 0; }

inline bool has_rule(const Diagnostics& ds, const std::string& rule) {
    return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.rule == rule; });
}

}  // namespace jastit
