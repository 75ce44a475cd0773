#pragma once

#include <stdexcept>
#include <string>

namespace entrocone {

// Bad argument to an operation: out-of-range index, overlapping node sets,
// mismatched dimensions and the like.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A CausalModel or distribution table that violates its invariants.
class InvalidModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input file; `what()` names the offending field.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A size guard refused the computation. `flag()` is the CLI option that
// overrides it.
class GuardViolation : public std::runtime_error {
public:
    GuardViolation(const std::string& msg, std::string flag)
        : std::runtime_error(msg), flag_(std::move(flag)) {}
    const std::string& flag() const { return flag_; }

private:
    std::string flag_;
};

}  // namespace entrocone
