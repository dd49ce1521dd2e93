#pragma once

#include <vector>

#include "mnv/algebra.hpp"
#include "mnv/grid.hpp"
#include "mnv/spinor.hpp"

namespace mnv {

inline constexpr double kBranchPointEpsilon = 1e-14;

struct SurfacePoint {
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;

    double norm2() const noexcept { return u1 * u1 + u2 * u2 + u3 * u3; }

    friend SurfacePoint operator+(const SurfacePoint& a, const SurfacePoint& b) noexcept
    {
        return {a.u1 + b.u1, a.u2 + b.u2, a.u3 + b.u3};
    }
    friend SurfacePoint operator-(const SurfacePoint& a, const SurfacePoint& b) noexcept
    {
        return {a.u1 - b.u1, a.u2 - b.u2, a.u3 - b.u3};
    }
    friend SurfacePoint operator*(double s, const SurfacePoint& a) noexcept
    {
        return {s * a.u1, s * a.u2, s * a.u3};
    }
    friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

/**
 * Weierstrass data of a spinor pair at one instant.
 *
 * The representation integrands are polynomial in z plus their conjugates,
 * so the path integrals from the base point 0 are evaluated through exact
 * antiderivatives:
 *
 *     u1 = -Im  int_0^z (p^2 + q^2)
 *     u2 =  Re  int_0^z (q^2 - p^2)
 *     u3 = 2 Re int_0^z  p q
 *
 * where psi1 = p and psi2 = conj(q).
 */
class WeierstrassPatch {
public:
    WeierstrassPatch(const SpinorPair& s, double t);

    const HoloPoly& p() const noexcept { return p_; }
    const HoloPoly& q() const noexcept { return q_; }

    SpinorValues spinor(Complex z) const noexcept { return {p_(z), std::conj(q_(z))}; }

    SurfacePoint point(Complex z, const SurfacePoint& u0 = {}) const noexcept;

    struct ExtendedPoint {
        long double u1 = 0.0L;
        long double u2 = 0.0L;
        long double u3 = 0.0L;
    };
    /// Same as point(), with the antiderivatives evaluated in long double.
    ExtendedPoint point_extended(Complex z, const SurfacePoint& u0 = {}) const noexcept;

    /// e^{2 alpha} = (|psi1|^2 + |psi2|^2)^2.
    double induced_metric(Complex z) const noexcept;

    /// Unit normal; throws BranchPoint where |psi1|^2 + |psi2|^2 <= kBranchPointEpsilon.
    SurfacePoint normal(Complex z) const;

private:
    HoloPoly p_;
    HoloPoly q_;
    HoloPoly sum_sq_;
    HoloPoly diff_sq_;
    HoloPoly prod_;
    HoloPoly sum_sq_int_;
    HoloPoly diff_sq_int_;
    HoloPoly prod_int_;
};

SurfacePoint surface_point(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0 = {});
double induced_metric(const SpinorPair& s, Complex z, double t);
SurfacePoint normal_vector(const SpinorPair& s, Complex z, double t);

/// su(2) encoding ((i u3, -u1 - i u2), (u1 - i u2, -i u3)); det equals |p|^2.
HMatrix surface_matrix(const SurfacePoint& p);

/// Reads a point back through the same dictionary. The real part of alpha is
/// ignored (it vanishes on su(2)).
SurfacePoint decode_surface_matrix(const HMatrix& m) noexcept;

/// Samples the surface at every vertex of the grid, row-major.
std::vector<SurfacePoint> sample_surface(const SpinorPair& s, const PlaneGrid& grid, double t,
                                         const SurfacePoint& u0 = {});

}  // namespace mnv
