#pragma once

#include "selfsim/synthesis.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace selfsim {

/// Lognormal traffic-model coefficients: a trace value is
/// scale * exp(shape * x) for a standard-Gaussian forming value x, so
/// `scale` is the median intensity and `shape` the log-domain sigma.
struct ModelCoefficients {
    double scale = 1.0;
    double shape = 0.0;
    double target_mean = 1.0;
    double target_cv = 0.0;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double cv = 0.0;
};

struct TraceOrigin {
    enum class Kind { Model, Sum, External };

    Kind kind = Kind::External;
    std::optional<ModelCoefficients> coefficients; // Model
    std::optional<FormingKind> forming;            // Model
    std::size_t components = 0;                    // Sum

    static TraceOrigin model(const ModelCoefficients& coefficients, FormingKind forming);
    static TraceOrigin sum(std::size_t components);
    static TraceOrigin external();
};

/// Traffic-intensity series. Model-origin traces are strictly positive;
/// external traces may contain zeros.
struct TrafficTrace {
    std::vector<double> values;
    TraceOrigin origin;
};

/// Invert the lognormal moment equations: shape = sqrt(ln(1 + cv^2)),
/// scale = mean * exp(-shape^2 / 2). For a unit-variance Gaussian forming
/// process the transformed trace then has exactly the requested mean and
/// coefficient of variation in distribution.
ModelCoefficients calibrate(double target_mean, double target_cv);

/// mean = scale*exp(shape^2/2), variance = scale^2*exp(shape^2)*(exp(shape^2)-1),
/// cv = sqrt(exp(shape^2)-1).
Moments theoretical_moments(const ModelCoefficients& coefficients);

/// Pointwise y = scale * exp(shape * x). The forming series must be
/// standardized (all generators do this). Throws std::range_error if the
/// exponent would overflow, which cannot happen for realistic shapes.
TrafficTrace transform(const GaussianSeries& forming, const ModelCoefficients& coefficients);

} // namespace selfsim
