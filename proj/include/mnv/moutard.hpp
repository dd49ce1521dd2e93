#pragma once

#include <span>

#include "mnv/algebra.hpp"
#include "mnv/field.hpp"
#include "mnv/grid.hpp"
#include "mnv/spinor.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv {

/// Image of the origin used by the blow-up construction: the surface passes
/// through 0 exactly when t = C.
inline SurfacePoint origin_image(double C) noexcept { return {0.0, -C, 0.0}; }

struct VWCoefficients {
    Complex v{};
    double w = 0.0;
};

/**
 * Pointwise deformation coefficients of the spinor pair at (z, t):
 *
 *     v = (psi1_z^2 - psi2_zbar^2) - 2 (psi1 psi1_zz - psi2 psi2_zbarzbar)
 *     w = 2 Re(p' q' - p'' q - p q'')
 */
VWCoefficients vw_coefficients(const SpinorPair& s, Complex z, double t);

/**
 * Time-dependent part of S~: -i int_0^t ((w, conj v), (v, -w)) dtau with
 * v, w taken at the base point z = 0. This is the dt-component of the
 * one-form integrated along the time axis, computed exactly since v and w
 * are polynomial in tau there.
 */
HMatrix deformation_term(const SpinorPair& s, double t);

/// Psi0 = ((psi1, -conj psi2), (psi2, conj psi1)) as an H-matrix (alpha = p, beta = -q).
HMatrix psi_matrix(const SpinorValues& psi) noexcept;

struct MoutardFrame {
    HMatrix s_tilde;
    HMatrix psi0;
    /// d/dy of psi0; also of H-form.
    HMatrix psi0_y;
};

/**
 * Everything the transformation needs from one spinor pair at a fixed time.
 * Building one is the expensive part; evaluating at many z is cheap.
 */
struct MoutardScalars;

class MoutardSnapshot {
public:
    MoutardSnapshot(const SpinorPair& s, double t, const SurfacePoint& u0);

    double t() const noexcept { return t_; }
    const WeierstrassPatch& patch() const noexcept { return patch_; }

    HMatrix s_tilde(Complex z) const;
    MoutardFrame frame(Complex z) const;
    /// moutard_scalars(frame(z)) with S~ assembled in extended precision.
    MoutardScalars scalars(Complex z, double eps_det) const;

private:
    double t_;
    SurfacePoint u0_;
    WeierstrassPatch patch_;
    HoloPoly dp_;
    HoloPoly dq_;
    HMatrix deformation_;
};

/// S~(z, t) = surface_matrix(F(z, t) + u0) + deformation_term(t).
HMatrix s_tilde(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0);

MoutardFrame moutard_frame(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0);

/**
 * K = ((iW, a), (-conj a, -iW)) and M = ((b, c), (-conj c, conj b)).
 * W_imag is the imaginary part left over when W is read off K; it is zero
 * up to rounding.
 */
struct MoutardScalars {
    double W = 0.0;
    double W_imag = 0.0;
    Complex a{};
    Complex b{};
    Complex c{};
};

/**
 * Assembles K = Psi S~^{-1} Gamma Psi^T Gamma^{-1} and
 * M = Gamma Psi_y Psi^{-1} Gamma^{-1} as general 2x2 products and reads off
 * the scalars. Throws DegenerateMatrix when det S~ <= eps_det and
 * SingularFrame when Psi0 is not invertible.
 */
MoutardScalars moutard_scalars(const MoutardFrame& frame, double eps_det = kDefaultDetEpsilon);

/// Seed U = V = 0: U~ = W and V~ = a^2 + 2 a conj(b) - 2 i conj(c) W.
FieldValue transformed_potentials(const MoutardScalars& m) noexcept;

/// Throws BlowUpPoint where S~ degenerates.
double potential_u(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0,
                   double eps_det = kDefaultDetEpsilon);
Complex potential_v(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0,
                    double eps_det = kDefaultDetEpsilon);

/// Field (U~, V~) generated by a seed spinor through the matrix pipeline.
Field moutard_field(const SpinorPair& s, const SurfacePoint& u0, double eps_det = kDefaultDetEpsilon);

// Enneper seed (z, 1) with origin image origin_image(C) -------------------

struct GammaDelta {
    Complex gamma;
    Complex delta;
};

/// Entries of S~ = ((gamma, delta), (-conj delta, conj gamma)) in closed form.
GammaDelta enneper_gamma_delta(double x, double y, double t, double C) noexcept;

/// Closed forms of W, a, b, c in terms of gamma and delta.
MoutardScalars enneper_scalars(double x, double y, double t, double C);

struct ClosedFormValue {
    double u = 0.0;
    double Q = 0.0;
};

/// U~ = -3((r^2 + 3)(x^2 - y^2) - 6x(C - t)) / Q. Throws BlowUpPoint at (0, 0, C).
ClosedFormValue enneper_closed_form(double x, double y, double t, double C);

/// U~ at t = C in polar coordinates, r > 0.
double enneper_polar_form(double r, double phi);

/// Matrix pipeline with the Enneper seed; singularity (0, 0, C).
Field enneper_field(double C);

/// U~ from the rational closed form, V~ from the closed-form scalars.
Field enneper_closed_field(double C);

// One-form -----------------------------------------------------------------

/// Pointwise data of two H-valued solutions Phi, Psi and the potentials.
struct OneFormInputs {
    Mat2 phi = Mat2::Zero();
    Mat2 phi_y = Mat2::Zero();
    Mat2 phi_yy = Mat2::Zero();
    Mat2 psi = Mat2::Zero();
    Mat2 psi_y = Mat2::Zero();
    Mat2 psi_yy = Mat2::Zero();
    double U = 0.0;
    double U_x = 0.0;
    Complex V{};
};

/// Components of omega~(Phi, Psi) = dx_part dx + dy_part dy + dt_part dt.
struct OneFormComponents {
    Mat2 dx = Mat2::Zero();
    Mat2 dy = Mat2::Zero();
    Mat2 dt = Mat2::Zero();
};

/**
 * omega~(Phi, Psi) = Phi^T Psi dy - i Phi^T s3 Psi dx
 *   + [ i(Phi_yy^T s3 Psi + Phi^T s3 Psi_yy - Phi_y^T s3 Psi_y)
 *       + 2iU (Phi_y^T s2 Psi - Phi^T s2 Psi_y)
 *       + Phi^T ((iU^2 - 3iV, -iU_x), (-iU_x, -iU^2 + 3i conj V)) Psi ] dt
 */
OneFormComponents one_form(const OneFormInputs& in);

/// omega~(Psi0, Psi0) of the seed (U = V = 0) at a space-time point.
OneFormComponents seed_one_form(const SpinorPair& s, const SpaceTimePoint& p);

/**
 * Gamma * integral of omega~(Psi0, Psi0) along the polyline `path`, by
 * adaptive Simpson on each segment to absolute tolerance `tol` per segment.
 * Throws QuadratureFailure if the recursion limit is reached first.
 */
HMatrix one_form_integral(const SpinorPair& s, std::span<const SpaceTimePoint> path, double tol = 1e-12);

}  // namespace mnv
