#pragma once

#include <stdexcept>
#include <string>

namespace reopt {

/// Violated precondition or type invariant (caller bug).
class ContractError : public std::invalid_argument {
public:
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// An oracle or exact routine refusing inputs beyond its guarded limits.
class LimitError : public std::runtime_error {
public:
    explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

/// File or stream level failure, with the offending path/line in the message.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace reopt
