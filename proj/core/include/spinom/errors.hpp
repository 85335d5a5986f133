#pragma once

#include <stdexcept>
#include <string>

namespace spinom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configuration value violates a documented invariant.
class InvalidParameter : public Error {
public:
    InvalidParameter(std::string field, const std::string& what)
        : Error("invalid parameter '" + field + "': " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Malformed configuration input (JSON, --set overrides, unknown keys).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The self-consistent mean-field iteration did not converge.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_q, double residual, int iterations)
        : Error(what), last_q_(last_q), residual_(residual), iterations_(iterations) {}

    double last_iterate() const noexcept { return last_q_; }
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double last_q_;
    double residual_;
    int iterations_;
};

/// The linearized dynamics is not asymptotically stable.
class UnstableSystem : public Error {
public:
    UnstableSystem(const std::string& what, double max_real_eig)
        : Error(what), max_real_eig_(max_real_eig) {}

    double max_real_eig() const noexcept { return max_real_eig_; }

private:
    double max_real_eig_;
};

/// A formula was evaluated outside its domain (unphysical matrix, bad argument).
class NumericDomainError : public Error {
public:
    using Error::Error;
};

/// No aerodynamic equilibrium on the physical branch (beta < 1).
class NoEquilibrium : public Error {
public:
    using Error::Error;
};

/// The revival-factor baseline (Omega = 0, J = 0) is missing from a grid.
class ReferenceMissing : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    using Error::Error;
};

/// File-system failure, always carrying the offending path.
class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace spinom
