#pragma once

#include <stdexcept>
#include <string>

namespace mkg {

/// Bad construction parameters (grid size, mass, time step, ...).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// API misuse: representation or grid mismatch between operands.
class UsageError : public std::logic_error {
public:
    explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

/// Initial data violating a compatibility constraint (Gauss law, charge
/// neutrality, solenoidal magnetic field). Names the violated integral.
class ConstraintError : public std::runtime_error {
public:
    explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

/// Applying an operator with a singular symbol to data it cannot act on
/// (e.g. an inverse wave operator on a field with nonzero mean).
class SingularOperatorError : public std::runtime_error {
public:
    explicit SingularOperatorError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical blow-up detected while stepping; carries the time stamp.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time;
};

} // namespace mkg
