#pragma once

#include <stdexcept>
#include <string>

namespace hjh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArguments : Error {
    using Error::Error;
};

struct FeasibilityError : Error {
    using Error::Error;
};

struct AssumptionViolation : Error {
    using Error::Error;
};

struct UndefinedNormal : Error {
    using Error::Error;
};

struct NoAdmissibleControl : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct ExtrapolationUnstable : Error {
    using Error::Error;
};

struct NonCoerciveHamiltonian : Error {
    using Error::Error;
};

struct EmptyLevelSet : Error {
    using Error::Error;
};

struct ResolutionError : Error {
    using Error::Error;
};

struct OutOfWindow : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace hjh
