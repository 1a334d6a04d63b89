#pragma once

#include <stdexcept>
#include <string>

namespace spinboost {

/// Raised when a quadrature fails its self-convergence check or an
/// eigen-solver does not converge. Domain violations (bad mass, bad
/// bracket, malformed state) use std::domain_error instead.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinboost
