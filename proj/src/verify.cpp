#include "mnv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mnv/error.hpp"
#include "mnv/parallel.hpp"

namespace mnv {

using namespace std::complex_literals;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCollisionRadius = 10.0;

/**
 * Residuals from a sampler over integer offsets (ix, iy in [-2, 2], it in
 * [-1, 1]) and the spacings. Shared by the pointwise and grid paths.
 */
template <typename Sampler>
Residuals assemble_residuals(const Sampler& f, double hx, double hy, double ht)
{
    const FieldValue c = f(0, 0, 0);
    const FieldValue xp = f(1, 0, 0), xm = f(-1, 0, 0), xpp = f(2, 0, 0), xmm = f(-2, 0, 0);
    const FieldValue yp = f(0, 1, 0), ym = f(0, -1, 0), ypp = f(0, 2, 0), ymm = f(0, -2, 0);
    const FieldValue pp = f(1, 1, 0), pm = f(1, -1, 0), mp = f(-1, 1, 0), mm = f(-1, -1, 0);
    const FieldValue tp = f(0, 0, 1), tm = f(0, 0, -1);

    const double U = c.U;
    const double U_t = (tp.U - tm.U) / (2.0 * ht);
    const double U_x = (xp.U - xm.U) / (2.0 * hx);
    const double U_y = (yp.U - ym.U) / (2.0 * hy);
    const double U_xxx = (xpp.U - 2.0 * xp.U + 2.0 * xm.U - xmm.U) / (2.0 * hx * hx * hx);
    const double U_yyy = (ypp.U - 2.0 * yp.U + 2.0 * ym.U - ymm.U) / (2.0 * hy * hy * hy);
    const double U_xxy = ((pp.U - 2.0 * yp.U + mp.U) - (pm.U - 2.0 * ym.U + mm.U)) / (2.0 * hy * hx * hx);
    const double U_xyy = ((pp.U - 2.0 * xp.U + pm.U) - (mp.U - 2.0 * xm.U + mm.U)) / (2.0 * hx * hy * hy);

    const Complex V = c.V;
    const Complex V_x = (xp.V - xm.V) / (2.0 * hx);
    const Complex V_y = (yp.V - ym.V) / (2.0 * hy);

    const Complex U_z = 0.5 * (U_x - 1i * U_y);
    const Complex U_zb = 0.5 * (U_x + 1i * U_y);
    const Complex U_zzz = (U_xxx - 3i * U_xxy - 3.0 * U_xyy + 1i * U_yyy) / 8.0;
    const Complex U_zbzbzb = (U_xxx + 3i * U_xxy - 3.0 * U_xyy - 1i * U_yyy) / 8.0;
    const Complex V_z = 0.5 * (V_x - 1i * V_y);
    const Complex V_zb = 0.5 * (V_x + 1i * V_y);
    // conj(V) differentiated in zbar is conj(V_z)
    const Complex Vbar_zb = std::conj(V_z);

    const Complex rhs = (U_zzz + 3.0 * U_z * V + 1.5 * U * V_z)
                        + (U_zbzbzb + 3.0 * U_zb * std::conj(V) + 1.5 * U * Vbar_zb);

    const double U2_x = (xp.U * xp.U - xm.U * xm.U) / (2.0 * hx);
    const double U2_y = (yp.U * yp.U - ym.U * ym.U) / (2.0 * hy);
    const Complex U2_z = 0.5 * (U2_x - 1i * U2_y);

    return {std::abs(U_t - rhs), std::abs(V_zb - U2_z)};
}

void check_clearance(const Field& field, const SpaceTimePoint& p, const Stencil& st)
{
    if (!field.singularity) {
        return;
    }
    const SpaceTimePoint& s = *field.singularity;
    const double d = std::sqrt((p.x - s.x) * (p.x - s.x) + (p.y - s.y) * (p.y - s.y) + (p.t - s.t) * (p.t - s.t));
    const double h = std::max(st.h_space, st.h_time);
    if (d < kCollisionRadius * h) {
        std::ostringstream os;
        os << "point (" << p.x << ", " << p.y << ", " << p.t << ") is within " << kCollisionRadius
           << " h of the singularity";
        throw StencilCollision(os.str());
    }
}

double log_slope(std::span<const double> h, std::span<const double> r)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (!(r[k] > 0.0)) {
            return kNaN;
        }
        const double lx = std::log(h[k]);
        const double ly = std::log(r[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Residuals residuals(const Field& field, const SpaceTimePoint& p, const Stencil& st)
{
    if (!(st.h_space > 0.0) || !(st.h_time > 0.0)) {
        throw InvalidArgument("stencil steps must be positive");
    }
    check_clearance(field, p, st);
    auto sample = [&](int ix, int iy, int it) {
        try {
            return field({p.x + ix * st.h_space, p.y + iy * st.h_space, p.t + it * st.h_time});
        } catch (const BlowUpPoint& e) {
            throw StencilCollision(std::string("stencil node hits an undefined point: ") + e.what());
        } catch (const DegenerateMatrix& e) {
            throw StencilCollision(std::string("stencil node hits an undefined point: ") + e.what());
        }
    };
    return assemble_residuals(sample, st.h_space, st.h_space, st.h_time);
}

double mnv_residual(const Field& field, const SpaceTimePoint& p, const Stencil& st)
{
    return residuals(field, p, st).mnv;
}

double constraint_residual(const Field& field, const SpaceTimePoint& p, const Stencil& st)
{
    return residuals(field, p, st).constraint;
}

double ResidualReport::estimated_order() const noexcept
{
    if (std::isnan(mnv_order)) {
        return constraint_order;
    }
    if (std::isnan(constraint_order)) {
        return mnv_order;
    }
    return std::min(mnv_order, constraint_order);
}

ResidualReport verify_point(const Field& field, const SpaceTimePoint& p, const VerifyOptions& opt)
{
    if (opt.order_levels < 2 || !(opt.order_h0 > 0.0)) {
        throw InvalidArgument("order estimation needs h0 > 0 and at least two levels");
    }
    ResidualReport rep;
    rep.point = p;
    rep.h_used = opt.stencil.h_space;
    const Residuals base = residuals(field, p, opt.stencil);
    rep.mnv_residual = base.mnv;
    rep.constraint_residual = base.constraint;

    const double ratio = opt.stencil.h_time / opt.stencil.h_space;
    std::vector<double> hs, rm, rc;
    double h = opt.order_h0;
    for (int k = 0; k < opt.order_levels; ++k, h *= 0.5) {
        const Residuals r = residuals(field, p, {h, h * ratio});
        hs.push_back(h);
        rm.push_back(r.mnv);
        rc.push_back(r.constraint);
    }
    rep.mnv_order = log_slope(hs, rm);
    rep.constraint_order = log_slope(hs, rc);
    return rep;
}

VerifyReport verify_points(const Field& field, std::span<const SpaceTimePoint> points, const VerifyOptions& opt)
{
    VerifyReport rep;
    rep.points.resize(points.size());
    parallel_for(points.size(), [&](std::size_t k) { rep.points[k] = verify_point(field, points[k], opt); });

    rep.min_order = kNaN;
    rep.max_order = kNaN;
    for (const ResidualReport& r : rep.points) {
        rep.max_residual = std::max({rep.max_residual, r.mnv_residual, r.constraint_residual});
        for (double o : {r.mnv_order, r.constraint_order}) {
            if (std::isnan(o)) {
                continue;
            }
            rep.min_order = std::isnan(rep.min_order) ? o : std::min(rep.min_order, o);
            rep.max_order = std::isnan(rep.max_order) ? o : std::max(rep.max_order, o);
        }
    }
    return rep;
}

FieldGrid sample_field(const Field& field, const PlaneGrid& grid, std::span<const double> times,
                       std::size_t* undefined)
{
    grid.validate();
    FieldGrid fg{grid, {times.begin(), times.end()}, {}};
    fg.values.resize(grid.size() * times.size());
    std::vector<unsigned char> bad(fg.values.size(), 0);
    parallel_for(fg.values.size(), [&](std::size_t n) {
        const std::size_t k = n / grid.size();
        const std::size_t v = n % grid.size();
        const SpaceTimePoint p{grid.x(v % grid.nx), grid.y(v / grid.nx), times[k]};
        try {
            fg.values[n] = field(p);
        } catch (const BlowUpPoint&) {
            fg.values[n] = {kNaN, Complex(kNaN, kNaN)};
            bad[n] = 1;
        }
    });
    if (undefined) {
        *undefined = static_cast<std::size_t>(std::count(bad.begin(), bad.end(), 1));
    }
    return fg;
}

GridResidualStats grid_residuals(const FieldGrid& fg)
{
    const std::size_t nt = fg.times.size();
    if (nt < 3) {
        throw InvalidArgument("grid residuals need at least three time slices");
    }
    if (fg.values.size() != nt * fg.grid.size()) {
        throw InvalidArgument("field grid value count does not match its shape");
    }
    const double ht = (fg.times.back() - fg.times.front()) / static_cast<double>(nt - 1);
    for (std::size_t k = 1; k < nt; ++k) {
        const double step = fg.times[k] - fg.times[k - 1];
        if (!(std::abs(step - ht) <= 1e-9 * std::abs(ht)) || !(ht > 0.0)) {
            throw InvalidArgument("time slices must be increasing and uniformly spaced");
        }
    }
    const double hx = fg.grid.dx();
    const double hy = fg.grid.dy();

    GridResidualStats stats;
    double sum_m = 0.0, sum_c = 0.0;
    for (std::size_t k = 1; k + 1 < nt; ++k) {
        for (std::size_t j = 2; j + 2 < fg.grid.ny; ++j) {
            for (std::size_t i = 2; i + 2 < fg.grid.nx; ++i) {
                bool defined = true;
                auto sample = [&](int ix, int iy, int it) {
                    const FieldValue& v = fg.at(i + ix, j + iy, k + it);
                    if (std::isnan(v.U)) {
                        defined = false;
                    }
                    return v;
                };
                const Residuals r = assemble_residuals(sample, hx, hy, ht);
                if (!defined) {
                    continue;
                }
                ++stats.nodes;
                stats.max_mnv = std::max(stats.max_mnv, r.mnv);
                stats.max_constraint = std::max(stats.max_constraint, r.constraint);
                sum_m += r.mnv;
                sum_c += r.constraint;
            }
        }
    }
    if (stats.nodes > 0) {
        stats.mean_mnv = sum_m / static_cast<double>(stats.nodes);
        stats.mean_constraint = sum_c / static_cast<double>(stats.nodes);
    }
    return stats;
}

DecayReport decay_report(const Field& field, double t, std::span<const double> radii, std::span<const double> angles)
{
    DecayReport rep;
    rep.t = t;
    for (double r : radii) {
        if (!(r >= 1.0)) {
            throw InvalidArgument("decay radii must be >= 1");
        }
        DecayRow row{r, 0.0, 0.0};
        for (double phi : angles) {
            const FieldValue v = field({r * std::cos(phi), r * std::sin(phi), t});
            row.max_r2_u = std::max(row.max_r2_u, r * r * std::abs(v.U));
            row.max_r2_v = std::max(row.max_r2_v, r * r * std::abs(v.V));
        }
        rep.rows.push_back(row);
    }
    constexpr double kGrowth = 1.5;
    constexpr double kFloor = 1e-12;
    for (std::size_t k = 1; k < rep.rows.size(); ++k) {
        const DecayRow& a = rep.rows[k - 1];
        const DecayRow& b = rep.rows[k];
        if ((b.max_r2_u > kFloor && b.max_r2_u > kGrowth * a.max_r2_u)
            || (b.max_r2_v > kFloor && b.max_r2_v > kGrowth * a.max_r2_v)) {
            rep.growth = true;
        }
    }
    return rep;
}

std::vector<SingularLimitRow> singular_limit_report(const Field& field, double C, std::span<const double> radii,
                                                    std::span<const double> angles)
{
    std::vector<SingularLimitRow> rows;
    rows.reserve(radii.size() * angles.size());
    for (double r : radii) {
        if (!(r > 0.0)) {
            throw InvalidArgument("singular-limit radii must be positive");
        }
        for (double phi : angles) {
            const double u = field({r * std::cos(phi), r * std::sin(phi), C}).U;
            rows.push_back({r, phi, u, u + std::cos(2.0 * phi)});
        }
    }
    return rows;
}

}  // namespace mnv
