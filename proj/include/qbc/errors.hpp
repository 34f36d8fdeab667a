#pragma once

#include <stdexcept>
#include <string>

namespace qbc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A structurally vanishing denominator factor was hit while evaluating a
/// ratio.  Carries a description of the offending factor so callers can
/// decide whether to re-randomize the parameter point.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& factor)
        : Error("pole: vanishing factor " + factor) {}
};

/// A coefficient beyond the truncation order of a series was requested, or
/// an operation would need more precision than its inputs carry.
class OrderError : public Error {
public:
    explicit OrderError(const std::string& what) : Error("order: " + what) {}
};

/// Scalars of different ring tags (or series in different variables) were
/// combined.  Mixing is always a programming error, never coerced.
class TagError : public Error {
public:
    explicit TagError(const std::string& what) : Error("ring mismatch: " + what) {}
};

}  // namespace qbc
