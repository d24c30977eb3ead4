#pragma once

#include <stdexcept>
#include <string>

namespace inspde {

/// Violated precondition or broken call contract (caller bug, not data).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// lambda + mu_k == 0 for some mode: (lambda*I - A) is not invertible.
struct SingularResolvent : std::domain_error {
    using std::domain_error::domain_error;
};

/// Picard iteration failed to contract within the configured iteration cap.
struct SolverDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite state encountered while stepping; message names the step.
struct InstabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace inspde
