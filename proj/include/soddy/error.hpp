#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace soddy {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checked 64-bit arithmetic left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A 5-tuple that is not a valid packing quintuple for the requested operation
/// (off the cone, non-primitive, or with a residue pattern other than (0,0,e,e,e)).
class MalformedQuintuple : public Error {
public:
    using Error::Error;
};

/// A configured work, state or memory budget was exhausted before completion.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t progress)
        : Error(what), progress_(progress) {}

    /// Units of work completed before the budget tripped (states, nodes, steps).
    std::uint64_t progress() const noexcept { return progress_; }

private:
    std::uint64_t progress_;
};

/// gcd(3*gamma, delta) is not a unit in Z[omega].
class GcdViolation : public Error {
public:
    using Error::Error;
};

class ParityViolation : public Error {
public:
    using Error::Error;
};

class NoCoprimePivot : public Error {
public:
    using Error::Error;
};

class NotAdmissible : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// The tangency system has no solution over Q(sqrt3) within the searched gauges.
class NoExactRealization : public Error {
public:
    using Error::Error;
};

}  // namespace soddy
