#pragma once

#include <stdexcept>
#include <string>

namespace layersep {

/// Field or array dimensions do not match the grid they are used with.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configuration value violates its documented constraints.
class InvalidConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sampled data is too coarse for the requested operation. Never
/// downgraded to a warning: callers must supply finer data or relax
/// the request explicitly.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time integration produced a NaN/Inf.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, long step) : std::runtime_error(what), step_index(step) {}
    long step_index;
};

/// A mollification window does not fit inside the stored trace.
class InvalidWindowError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the validity horizon of a closed-form construction.
class HorizonError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A required input artifact (prior run output, decomposition, ...) is missing.
class DependencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace layersep
