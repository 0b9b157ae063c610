#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace jastit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed concrete syntax. `position` is a byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::vector<std::string> expected, std::string found);

    std::size_t position() const { return position_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
    std::string found_;
};

/// Malformed documents, unknown names, violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// A formula mentions a term outside the model's declared universe.
class UniverseError : public Error {
public:
    using Error::Error;
};

/// A counter-model witness does not satisfy its defining conditions.
class WitnessError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured bound.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace jastit
