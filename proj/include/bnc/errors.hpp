#pragma once

#include <stdexcept>
#include <string>

namespace bnc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The channel model cannot express the requested quantity (singular burst
/// system, no burst can start, loss rate coincides with a per-state rate).
struct DegenerateModelError : Error {
    using Error::Error;
};

/// No (p, q) in (0,1)^2 reproduces the requested loss statistics.
struct InfeasibleStatsError : Error {
    using Error::Error;
};

/// Real fractional power of the transition matrix does not exist (1-p-q < 0).
struct NegativeEigenvalueError : Error {
    using Error::Error;
};

/// Exhaustive enumeration would visit more sequences than the caller allows.
struct SearchSpaceExceededError : Error {
    using Error::Error;
};

/// Invalid experiment or scheme configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace bnc
