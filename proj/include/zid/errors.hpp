#pragma once

#include <stdexcept>
#include <string>

namespace zid {

// Argument outside the mathematical domain of an operation (n = 0, s at a
// kernel singularity, beta <= alpha, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Evaluation at a pole of zeta.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

// Requested range does not fit the configured memory budget.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Error estimate exceeds the requested target.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Division by a value too close to zero to be meaningful.
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zid
