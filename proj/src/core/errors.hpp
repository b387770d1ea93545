#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace cdeim {

/// Invalid argument or violated precondition (bad dimensions, duplicate
/// indices, non-finite input, ...).
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// File format or filesystem failure.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Breakdown inside a numerical routine (singular system after
/// regularization, zero spread rate, ...).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Iteration cap exceeded; carries the last iterate so callers can inspect
/// how far the solve got.
class no_convergence_error : public std::runtime_error {
public:
    no_convergence_error(const std::string& what, Eigen::VectorXd last_iterate)
        : std::runtime_error(what), last_iterate(std::move(last_iterate)) {}

    Eigen::VectorXd last_iterate;
};

/// The penalty parameter hit its cap before the stopping criterion was met;
/// the constraint set is likely empty for this basis.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cdeim
