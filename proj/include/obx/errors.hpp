#pragma once

#include <stdexcept>
#include <string>

namespace obx {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Netlist text rejected; carries the 1-based line number.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Netlist parsed but cannot be stamped into a well-posed system.
struct StampError : Error {
    using Error::Error;
};

/// det(G + lambda*C) is identically zero; the system is not solvable.
struct SingularPencilError : Error {
    using Error::Error;
};

/// The core/nilpotent subspace separation fell below the rank tolerance.
struct IllConditionedSplitError : Error {
    using Error::Error;
};

/// The AC system is singular at the source frequency.
struct ResonantFrequencyError : Error {
    using Error::Error;
};

/// The per-step augmented matrix could not be factored.
struct SingularAugmentedError : Error {
    using Error::Error;
};

/// A step was requested from a state holding too few derivative blocks.
struct InsufficientHistoryError : Error {
    using Error::Error;
};

/// Amplification denominator is numerically zero at the requested point.
struct PoleError : Error {
    using Error::Error;
};

/// Slope fit requested with fewer than 4 usable samples.
struct TooFewSamplesError : Error {
    using Error::Error;
};

}  // namespace obx
