#pragma once

#include <stdexcept>
#include <string>

namespace kinhom {

/// Base class for all failures raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The x-grid is too coarse to resolve the requested oscillation scale.
class UnderresolvedOscillation : public Error {
public:
    UnderresolvedOscillation(double spacing, double scale)
        : Error("grid spacing " + std::to_string(spacing) +
                " does not resolve oscillation scale " + std::to_string(scale)),
          spacing(spacing), scale(scale) {}
    double spacing;
    double scale;
};

class GridMismatch : public Error {
public:
    explicit GridMismatch(const std::string& what) : Error("grid mismatch: " + what) {}
};

class NonConvergence : public Error {
public:
    NonConvergence(int iterations, double residual)
        : Error("iterative solve stalled after " + std::to_string(iterations) +
                " iterations, residual " + std::to_string(residual)),
          iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

class SymmetryViolation : public Error {
public:
    explicit SymmetryViolation(double deviation)
        : Error("coupling tensor asymmetry " + std::to_string(deviation)),
          deviation(deviation) {}
    double deviation;
};

/// A structural hypothesis on the input fields fails at a sample point.
class HypothesisViolation : public Error {
public:
    HypothesisViolation(const std::string& which, double worst, double x0, double x1)
        : Error("hypothesis " + which + " violated: worst residual " +
                std::to_string(worst) + " at (" + std::to_string(x0) + ", " +
                std::to_string(x1) + ")"),
          which(which), worst(worst) {}
    std::string which;
    double worst;
};

/// The null space of the transport operator varies across sampled base points.
class HypothesisHFailed : public Error {
public:
    HypothesisHFailed(double angle, double ax0, double ax1, double bx0, double bx1)
        : Error("kernel depends on the base point: principal angle " +
                std::to_string(angle) + " between samples at (" +
                std::to_string(ax0) + "," + std::to_string(ax1) + ") and (" +
                std::to_string(bx0) + "," + std::to_string(bx1) + ")"),
          angle(angle) {}
    double angle;
};

class UnsupportedRegion : public Error {
public:
    explicit UnsupportedRegion(const std::string& what)
        : Error("closed-form characteristic requested outside its regime: " + what) {}
};

class EnergyGrowth : public Error {
public:
    EnergyGrowth(double before, double after)
        : Error("discrete energy grew from " + std::to_string(before) + " to " +
                std::to_string(after)),
          before(before), after(after) {}
    double before;
    double after;
};

class StepTooLarge : public Error {
public:
    explicit StepTooLarge(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& key, const std::string& what)
        : Error("config error at '" + key + "': " + what), key(key) {}
    std::string key;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace kinhom
