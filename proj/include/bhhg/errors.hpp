#pragma once

#include <stdexcept>
#include <string>

namespace bhhg {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration (bad grid, bad pulse, bad config file).
struct ConfigError : Error {
    using Error::Error;
};

/// A caller broke an API precondition (mismatched lengths, bad argument domain).
struct ContractViolation : Error {
    using Error::Error;
};

/// An iterative scheme failed to converge within its iteration budget.
struct ConvergenceError : Error {
    using Error::Error;
};

/// A propagation or integration produced NaN/Inf and cannot continue.
struct NumericsError : Error {
    using Error::Error;
};

} // namespace bhhg
