#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mnv/field.hpp"

namespace mnv {

struct PlaneIntegralOptions {
    /// Target for quadrature error plus tail bound.
    double tol = 1e-4;
    /// Total field evaluations allowed before ToleranceNotMet.
    std::size_t max_evaluations = 1'000'000;
    /// Radial breakpoints; the truncation radius R is appended after the last one.
    std::vector<double> breakpoints{0.0, 1.0, 3.0, 10.0, 30.0};
    /// Extra breakpoints b/10, b/100, ... below the first positive breakpoint b,
    /// so structure concentrated near the origin is not stepped over.
    int grading_levels = 8;
    double max_radius = 1e7;
    /// Start of the angular period [offset, offset + 2 pi).
    double angle_offset = 0.0;
    /// Multiplier on the measured far-field constant r^4 U^2.
    double tail_safety = 2.0;
};

struct PlaneIntegralResult {
    /// Integral over the disc of radius R.
    double value = 0.0;
    /// Quadrature error estimate plus tail_bound: a bound for |value - plane integral|.
    double abs_error_estimate = 0.0;
    double tail_bound = 0.0;
    double radius = 0.0;
    std::size_t panels_used = 0;
    std::size_t evaluations = 0;
};

/**
 * Integral of U^2 over the plane at time t, in polar coordinates.
 *
 * The radial integral runs over the breakpoint segments up to R with
 * adaptive Gauss-Kronrod (G7/K15) panels; each radial node carries an inner
 * adaptive angular integral. R is doubled from the last breakpoint until the
 * tail bound pi K / R^2 is below tol/2, where K = tail_safety * max r^4 U^2
 * over sampled far-field points. Radial segments run in parallel and are
 * summed in segment order with compensated summation.
 *
 * Throws ToleranceNotMet when the evaluation budget runs out or R would
 * exceed max_radius.
 */
PlaneIntegralResult l2_integral(const Field& field, double t, const PlaneIntegralOptions& opt = {});

struct ConservationRow {
    double t = 0.0;
    double C = 0.0;
    PlaneIntegralResult integral;
    /// 3 pi off the blow-up time, 2 pi at it; empty when no reference applies.
    std::optional<double> reference;
    double deviation = 0.0;
};

struct ConservationScan {
    std::vector<ConservationRow> rows;
    /// Largest |value - 3 pi| over rows with t != C (0 if there are none).
    double max_deviation_regular = 0.0;
};

/**
 * l2_integral at each time. With `enneper_reference` set, rows carry the
 * reference value of the Enneper blow-up solution and their deviation from it.
 */
ConservationScan conservation_scan(const Field& field, double C, std::span<const double> times,
                                   const PlaneIntegralOptions& opt = {}, bool enneper_reference = true);

}  // namespace mnv
