#pragma once

#include <stdexcept>

namespace turbofan {

// Error taxonomy. The CLI maps these onto process exit codes:
// config/usage errors -> 2, solver failures -> 3, I/O failures -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user input: bad option values, malformed config/spec files,
// unknown fuel names, violated configuration invariants.
struct ConfigError : Error {
    using Error::Error;
};

// A model was evaluated outside its declared validity range.
struct RangeError : Error {
    using Error::Error;
};

// Non-convergence or an infeasible operating point discovered mid-solve.
struct SolverError : Error {
    using Error::Error;
};

// Filesystem problems: missing files, unreadable or unwritable paths.
struct IoError : Error {
    using Error::Error;
};

} // namespace turbofan
