#pragma once

#include <stdexcept>
#include <string>

namespace ginprod {

/// Base class for every error this library throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the mathematical domain of an operation (x <= 0, |x| >= 1, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// Evaluation requested exactly on a non-removable singularity.
class singularity_error : public error {
public:
    explicit singularity_error(const std::string& what) : error(what) {}
};

/// Argument too close to a pole for the requested precision.
class pole_error : public error {
public:
    explicit pole_error(const std::string& what) : error(what) {}
};

/// A quadrature or series failed to reach its accuracy target within its
/// refinement budget.
class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what) : error(what) {}
};

/// Numerical breakdown that invalidates a result (non-positive determinant,
/// excessive cancellation, eigensolver failure rate, ...).
class numerical_error : public error {
public:
    explicit numerical_error(const std::string& what) : error(what) {}
};

} // namespace ginprod
