#pragma once

#include <stdexcept>
#include <string>

namespace predprey {

/// Base class for all library errors.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad parameters, probabilities outside [0,1], malformed engine config.
class InvalidConfigError : public SimError {
public:
    using SimError::SimError;
};

/// Zero-size lattice or mismatched grid dimensions.
class InvalidDimensionError : public SimError {
public:
    using SimError::SimError;
};

/// Sample too small for pair selection (N < 2 per cell).
class DegenerateSampleError : public SimError {
public:
    using SimError::SimError;
};

/// Applying an event row would drive a count negative.
class InfeasibleEventError : public SimError {
public:
    using SimError::SimError;
};

/// Carrying capacity 1 - d2/(2b) undefined because b = 0 while d2 > 0.
class CarryingCapacityError : public SimError {
public:
    using SimError::SimError;
};

/// Division by zero in a closed-form expression (e.g. equilibrium with p1 = 0).
class DivisionByZeroError : public SimError {
public:
    using SimError::SimError;
};

/// Tau-leaping step size underflowed tau_min.
class LeapFailureError : public SimError {
public:
    using SimError::SimError;
};

/// ODE/SDE integration diverged or violated a state invariant.
class SolverInstabilityError : public SimError {
public:
    using SimError::SimError;
};

/// Negative radicand when assembling the noise matrix.
class InfeasibleEquilibriumError : public SimError {
public:
    using SimError::SimError;
};

/// Incompatible time grids where a common grid is required.
class ResamplingError : public SimError {
public:
    using SimError::SimError;
};

/// Too few valid points for a least-squares fit.
class FitError : public SimError {
public:
    using SimError::SimError;
};

/// Enumerated state space exceeds the configured cap.
class StateSpaceSizeError : public SimError {
public:
    using SimError::SimError;
};

/// Timer resolution insufficient for a benchmark run.
class MeasurementError : public SimError {
public:
    using SimError::SimError;
};

}  // namespace predprey
