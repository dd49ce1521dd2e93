#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mnv/field.hpp"
#include "mnv/grid.hpp"

namespace mnv {

/// Central-difference steps; all stencils are second order.
struct Stencil {
    double h_space = 1e-3;
    double h_time = 1e-4;

    Stencil scaled(double f) const noexcept { return {h_space * f, h_time * f}; }
};

struct Residuals {
    /// |U_t - (U_zzz + 3U_z V + 3/2 U V_z) - (U_zbar^3 + 3U_zbar Vbar + 3/2 U Vbar_zbar)|
    double mnv = 0.0;
    /// |V_zbar - (U^2)_z|
    double constraint = 0.0;
};

/**
 * Both residuals at one point. Wirtinger derivatives are assembled from real
 * partials, d = (d_x - i d_y)/2 and dbar = (d_x + i d_y)/2. Third derivatives
 * use width-5 (pure) and 3x3 (mixed) central stencils.
 *
 * Throws StencilCollision if the point lies within 10 h of the field's
 * singularity, or if any stencil node lands where the field is undefined.
 */
Residuals residuals(const Field& field, const SpaceTimePoint& p, const Stencil& st = {});
double mnv_residual(const Field& field, const SpaceTimePoint& p, const Stencil& st = {});
double constraint_residual(const Field& field, const SpaceTimePoint& p, const Stencil& st = {});

struct VerifyOptions {
    Stencil stencil{};
    /// Order is estimated from residuals at h0, h0/2, ... (order_levels steps),
    /// with the time step scaled by the same factor.
    double order_h0 = 1e-2;
    int order_levels = 3;
};

struct ResidualReport {
    SpaceTimePoint point;
    double mnv_residual = 0.0;
    double constraint_residual = 0.0;
    double h_used = 0.0;
    /// Least-squares slope of log(residual) against log(h); NaN when a
    /// residual vanishes exactly.
    double mnv_order = 0.0;
    double constraint_order = 0.0;

    /// min(mnv_order, constraint_order)
    double estimated_order() const noexcept;
};

struct VerifyReport {
    std::vector<ResidualReport> points;
    double max_residual = 0.0;
    /// NaN if no point has a defined order.
    double min_order = 0.0;
    double max_order = 0.0;
};

ResidualReport verify_point(const Field& field, const SpaceTimePoint& p, const VerifyOptions& opt = {});
VerifyReport verify_points(const Field& field, std::span<const SpaceTimePoint> points,
                           const VerifyOptions& opt = {});

/// Field samples on a plane grid at several times. values is time-major, then
/// row-major over the grid. Undefined samples hold NaN.
struct FieldGrid {
    PlaneGrid grid;
    std::vector<double> times;
    std::vector<FieldValue> values;

    const FieldValue& at(std::size_t i, std::size_t j, std::size_t k) const
    {
        return values[k * grid.size() + grid.index(i, j)];
    }
};

/// Undefined points (BlowUpPoint) are recorded as NaN; `undefined` counts them.
FieldGrid sample_field(const Field& field, const PlaneGrid& grid, std::span<const double> times,
                       std::size_t* undefined = nullptr);

struct GridResidualStats {
    std::size_t nodes = 0;
    double max_mnv = 0.0;
    double mean_mnv = 0.0;
    double max_constraint = 0.0;
    double mean_constraint = 0.0;
};

/**
 * Residuals from the sampled values alone, at every node whose full stencil
 * (two cells in x and y, one time step) is inside the grid and defined.
 * Times must be uniformly spaced with at least three entries.
 */
GridResidualStats grid_residuals(const FieldGrid& fg);

struct DecayRow {
    double r = 0.0;
    double max_r2_u = 0.0;
    double max_r2_v = 0.0;
};

struct DecayReport {
    double t = 0.0;
    std::vector<DecayRow> rows;
    /// Set when r^2|U| or r^2|V| grows by more than 50% between consecutive radii.
    bool growth = false;
};

/// Requires radii >= 1.
DecayReport decay_report(const Field& field, double t, std::span<const double> radii,
                         std::span<const double> angles);

struct SingularLimitRow {
    double r = 0.0;
    double phi = 0.0;
    double u = 0.0;
    /// U(r e^{i phi}, C) + cos 2 phi
    double deviation = 0.0;
};

/// Requires radii > 0.
std::vector<SingularLimitRow> singular_limit_report(const Field& field, double C, std::span<const double> radii,
                                                    std::span<const double> angles);

}  // namespace mnv
