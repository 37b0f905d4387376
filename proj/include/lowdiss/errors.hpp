// errors.hpp - exception types shared by the lowdiss modules

#pragma once

#include <stdexcept>
#include <string>

namespace lowdiss {

/// Input violates a documented precondition or type invariant.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Requested power is nonpositive or above the maximum power.
class OutOfRangeError : public DomainError {
public:
    explicit OutOfRangeError(const std::string& what) : DomainError(what) {}
};

/// Operating point with no net heat intake from the hot bath; efficiency is undefined.
class InvalidRegimeError : public DomainError {
public:
    explicit InvalidRegimeError(const std::string& what) : DomainError(what) {}
};

/// A solver produced a point outside the admissible quadrant.
class DegenerateError : public DomainError {
public:
    explicit DegenerateError(const std::string& what) : DomainError(what) {}
};

/// Iterative numerics failed: non-finite values, no steady cycle, quadrature divergence.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lowdiss
