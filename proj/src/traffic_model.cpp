#include "selfsim/traffic_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace selfsim {

TraceOrigin TraceOrigin::model(const ModelCoefficients& coefficients, FormingKind forming) {
    TraceOrigin origin;
    origin.kind = Kind::Model;
    origin.coefficients = coefficients;
    origin.forming = forming;
    return origin;
}

TraceOrigin TraceOrigin::sum(std::size_t components) {
    TraceOrigin origin;
    origin.kind = Kind::Sum;
    origin.components = components;
    return origin;
}

TraceOrigin TraceOrigin::external() {
    return TraceOrigin{};
}

ModelCoefficients calibrate(double target_mean, double target_cv) {
    if (!(target_mean > 0.0)) throw std::domain_error("calibrate: mean must be positive");
    if (target_cv < 0.0) throw std::domain_error("calibrate: cv must be nonnegative");
    ModelCoefficients coefficients;
    coefficients.shape = std::sqrt(std::log1p(target_cv * target_cv));
    coefficients.scale = target_mean * std::exp(-0.5 * coefficients.shape * coefficients.shape);
    coefficients.target_mean = target_mean;
    coefficients.target_cv = target_cv;
    return coefficients;
}

Moments theoretical_moments(const ModelCoefficients& coefficients) {
    const double s2 = coefficients.shape * coefficients.shape;
    Moments moments;
    moments.mean = coefficients.scale * std::exp(0.5 * s2);
    moments.variance =
        coefficients.scale * coefficients.scale * std::exp(s2) * std::expm1(s2);
    moments.cv = std::sqrt(std::expm1(s2));
    return moments;
}

TrafficTrace transform(const GaussianSeries& forming, const ModelCoefficients& coefficients) {
    if (forming.values.empty()) throw std::invalid_argument("transform: empty forming series");
    if (!(coefficients.scale > 0.0) || coefficients.shape < 0.0) {
        throw std::domain_error("transform: invalid coefficients");
    }

    // exp() overflows past ~709.78; guard against pathological inputs.
    const double peak = *std::max_element(forming.values.begin(), forming.values.end());
    if (coefficients.shape * peak > 700.0) {
        throw std::range_error("transform: shape * max(forming) exceeds exponent range");
    }

    TrafficTrace trace;
    trace.values.resize(forming.values.size());
    for (std::size_t t = 0; t < forming.values.size(); ++t) {
        trace.values[t] = coefficients.scale * std::exp(coefficients.shape * forming.values[t]);
    }
    trace.origin = TraceOrigin::model(coefficients, forming.kind);
    return trace;
}

} // namespace selfsim
