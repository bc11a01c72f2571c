#pragma once

#include <stdexcept>
#include <string>

namespace votemarket {

/// Malformed input: out-of-range parameter, bad enum name, schema violation.
/// The CLI maps this (and std::invalid_argument / std::domain_error) to exit code 1.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Conditioning on a zero-probability event: the requested posterior does not exist.
class UndefinedPosteriorError : public std::domain_error {
public:
    explicit UndefinedPosteriorError(const std::string& what) : std::domain_error(what) {}
};

/// A score difference whose value is not defined as an extended real
/// (-inf minus -inf, or a positive-infinite payoff from a boundary report).
class IndeterminateScoreError : public std::domain_error {
public:
    explicit IndeterminateScoreError(const std::string& what) : std::domain_error(what) {}
};

/// A root finder was handed a bracket with no sign change.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace votemarket
