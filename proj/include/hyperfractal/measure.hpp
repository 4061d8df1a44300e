#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hyperfractal {

/// Dimension of a measure. Nonnegative for every measure this library
/// produces; +infinity is a valid value (fully concentrated traffic).
struct DimensionValue {
    double value = 0.0;

    static DimensionValue infinite() {
        return {std::numeric_limits<double>::infinity()};
    }

    bool is_infinite() const { return std::isinf(value); }

    friend bool operator==(DimensionValue a, DimensionValue b) = default;
};

/// Iterated function system: contraction ratios and branching probabilities.
struct ContractionSystem {
    std::vector<double> ratios;         // each in (0,1)
    std::vector<double> probabilities;  // each in (0,1], summing to 1
};

/// Self-similar network whose step-n segments have length c*s^n and carry
/// mass m0*r^n, uniformly spread along each segment.
struct UniformSelfSimilarSpec {
    double s;   // per-step length scaling, in (0,1)
    double r;   // per-step mass scaling, > 0
    double c = 1.0;   // initial segment length
    double m0 = 1.0;  // initial segment mass
};

inline constexpr double kProbabilitySumTolerance = 1e-12;

namespace detail {

inline void validate(const ContractionSystem& system) {
    if (system.ratios.empty() || system.probabilities.empty())
        throw std::invalid_argument("ContractionSystem: empty ratio or probability list");
    if (system.ratios.size() != system.probabilities.size())
        throw std::invalid_argument("ContractionSystem: ratios and probabilities differ in length");
    double sum = 0.0;
    for (double p : system.probabilities) {
        if (!(p > 0.0) || p > 1.0)
            throw std::invalid_argument("ContractionSystem: probability outside (0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance)
        throw std::invalid_argument("ContractionSystem: probabilities do not sum to 1");
    for (double ratio : system.ratios) {
        if (!(ratio > 0.0) || !(ratio < 1.0))
            throw std::invalid_argument("ContractionSystem: ratio outside (0,1)");
    }
}

inline void validate(const UniformSelfSimilarSpec& spec) {
    if (!(spec.s > 0.0) || !(spec.s < 1.0))
        throw std::invalid_argument("UniformSelfSimilarSpec: s outside (0,1)");
    if (!(spec.r > 0.0))
        throw std::invalid_argument("UniformSelfSimilarSpec: r must be positive");
    if (!(spec.c > 0.0) || !(spec.m0 > 0.0))
        throw std::invalid_argument("UniformSelfSimilarSpec: c and m0 must be positive");
}

}  // namespace detail

/// Dimension of the invariant measure of an IFS: entropy over Lyapunov
/// exponent, sum(p_i ln(1/p_i)) / sum(p_i ln(1/lambda_i)).
inline DimensionValue ifs_dimension(const ContractionSystem& system) {
    detail::validate(system);
    double entropy = 0.0;
    double lyapunov = 0.0;
    for (std::size_t i = 0; i < system.ratios.size(); ++i) {
        const double p = system.probabilities[i];
        entropy += p * std::log(1.0 / p);
        lyapunov += p * std::log(1.0 / system.ratios[i]);
    }
    if (entropy == 0.0) return {0.0};  // a single branch with p = 1
    return {entropy / lyapunov};
}

/// Almost-everywhere dimension of a uniform self-similar measure: ln r / ln s.
inline DimensionValue uniform_ss_dimension(const UniformSelfSimilarSpec& spec) {
    detail::validate(spec);
    if (spec.r == 1.0) return {0.0};
    return {std::log(spec.r) / std::log(spec.s)};
}

/// Dimension of the Manhattan grid measure with axis weight p:
/// ln(4/(1-p)) / ln 2. Exactly 2 at p = 0, +infinity at p = 1.
inline DimensionValue manhattan_dimension(double p) {
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("manhattan_dimension: p outside [0,1]");
    if (p == 0.0) return {2.0};
    if (p == 1.0) return DimensionValue::infinite();
    const double q = 1.0 - p;
    return {std::log(4.0 / q) / std::log(2.0)};
}

/// Exponent of the ranked density decay nu(xi) ~ xi^(1 - dim):
/// 1 - manhattan_dimension(p) = ln((1-p)/2) / ln 2, strictly negative.
inline double nu_exponent(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("nu_exponent: p outside (0,1)");
    return 1.0 - manhattan_dimension(p).value;
}

}  // namespace hyperfractal
