#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace inbox {

// Base for all library errors. The CLI maps subtypes to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, malformed files, out-of-range parameters.
struct InputError : Error {
    using Error::Error;
};

// A domain type failed its construction invariants.
struct ValidationError : Error {
    using Error::Error;
};

// A solve diverged: the set is not compact in the probed direction.
struct UnboundedError : Error {
    using Error::Error;
};

// No strictly feasible point exists (empty interior).
struct InfeasibleError : Error {
    using Error::Error;
};

// Instance exceeds a documented size cap (vertex-enumeration blow-up).
struct CapabilityError : Error {
    using Error::Error;
};

// Newton system lost positive definiteness; carries the failing iterate.
struct ConditioningError : Error {
    ConditioningError(const std::string& msg, std::vector<double> it)
        : Error(msg), iterate(std::move(it)) {}
    std::vector<double> iterate;
};

}  // namespace inbox
