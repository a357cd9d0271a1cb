/** \file
 * errors.hpp: exception hierarchy shared by all arrowhyp modules.
 */
#ifndef ARROWHYP_ERRORS_HPP_INCLUDED
#define ARROWHYP_ERRORS_HPP_INCLUDED

#include <stdexcept>
#include <string>

namespace arrowhyp {

// Base of all domain-level failures (exit code 1 territory for the CLI).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TagMismatch : DomainError {
    explicit TagMismatch(const std::string& msg = "space tag mismatch") : DomainError(msg) {}
};

struct OrderViolation : DomainError {
    explicit OrderViolation(const std::string& msg = "interval endpoints out of order") : DomainError(msg) {}
};

struct InvalidPoint : DomainError {
    explicit InvalidPoint(const std::string& msg) : DomainError(msg) {}
};

struct EmptyInput : DomainError {
    explicit EmptyInput(const std::string& msg = "empty input") : DomainError(msg) {}
};

struct NotInLower : DomainError {
    explicit NotInLower(const std::string& msg = "union is not contained in the open set") : DomainError(msg) {}
};

struct NotInUpper : DomainError {
    explicit NotInUpper(const std::string& msg = "union does not meet the open set") : DomainError(msg) {}
};

struct InvalidSequence : DomainError {
    explicit InvalidSequence(const std::string& msg) : DomainError(msg) {}
};

// Modulus claims an index bound that the generator contradicts.
struct ModulusError : InvalidSequence {
    explicit ModulusError(const std::string& msg) : InvalidSequence(msg) {}
};

// A corrupted homeomorphism value: no piece matched a point. Construction
// is supposed to make this unreachable.
struct PartitionViolation : std::logic_error {
    explicit PartitionViolation(const std::string& msg) : std::logic_error(msg) {}
};

// Malformed textual/JSON input (exit code 2 territory for the CLI).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace arrowhyp

#endif
