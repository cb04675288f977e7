#pragma once

#include <stdexcept>
#include <string>

namespace opbim {

/// Malformed or ill-typed input (unknown sort, mismatched words, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A law, equivariance or action check failed. `witness` names the failing
/// cell and elements.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::string witness)
        : std::runtime_error(what + (witness.empty() ? "" : " [" + witness + "]")),
          witness_(std::move(witness)) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// An enumeration budget or truncation window was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A check that can only fail through a bug in this library.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace opbim
