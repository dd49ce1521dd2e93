#include "mnv/moutard.hpp"

#include <cmath>
#include <sstream>

#include "mnv/error.hpp"

namespace mnv {

using namespace std::complex_literals;

namespace {

using ComplexL = std::complex<long double>;
using Mat2L = Eigen::Matrix<ComplexL, 2, 2>;

Mat2L widen(const HMatrix& m)
{
    const ComplexL a(m.alpha().real(), m.alpha().imag());
    const ComplexL b(m.beta().real(), m.beta().imag());
    Mat2L out;
    out << a, b, -std::conj(b), std::conj(a);
    return out;
}

Mat2L widened_inverse(const Mat2L& m)
{
    const ComplexL a = m(0, 0);
    const ComplexL b = m(0, 1);
    const long double det = std::norm(a) + std::norm(b);
    Mat2L out;
    out << std::conj(a) / det, -b / det, std::conj(b) / det, a / det;
    return out;
}

Complex narrow(const ComplexL& c)
{
    return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
}

MoutardScalars scalars_from(const Mat2L& s_tilde, const MoutardFrame& frame, double eps_det)
{
    const long double det = std::norm(s_tilde(0, 0)) + std::norm(s_tilde(0, 1));
    if (!(det > eps_det)) {
        std::ostringstream os;
        os << "H-matrix is degenerate: det = " << static_cast<double>(det) << " <= " << eps_det;
        throw DegenerateMatrix(os.str());
    }
    try {
        inverse(frame.psi0, kBranchPointEpsilon);
    } catch (const DegenerateMatrix& e) {
        throw SingularFrame(std::string("Psi0 is not invertible: ") + e.what());
    }

    // W is a small difference of O(|z|^2 / |S~|) terms, so the products run in
    // extended precision.
    const Mat2L gamma = widen(HMatrix::gamma());
    const Mat2L gamma_inv = -gamma;
    const Mat2L psi = widen(frame.psi0);
    const Mat2L s_inv = widened_inverse(s_tilde);
    const Mat2L psi_inv = widened_inverse(psi);

    const Mat2L K = psi * s_inv * gamma * psi.transpose() * gamma_inv;
    const Mat2L M = gamma * widen(frame.psi0_y) * psi_inv * gamma_inv;

    const ComplexL W = -ComplexL(0.0L, 1.0L) * K(0, 0);
    return {static_cast<double>(W.real()), static_cast<double>(W.imag()), narrow(K(0, 1)), narrow(M(0, 0)),
            narrow(M(0, 1))};
}

constexpr int kSimpsonMaxDepth = 50;
constexpr int kSimpsonInitialPanels = 8;

BlowUpPoint blow_up_at(Complex z, double t, const char* detail)
{
    std::ostringstream os;
    os << "field undefined at z = " << z << ", t = " << t << ": " << detail;
    return BlowUpPoint(os.str());
}

template <typename F>
Mat2 simpson_recurse(const F& f, double a, double b, const Mat2& fa, const Mat2& fm, const Mat2& fb,
                     const Mat2& whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Mat2 flm = f(lm);
    const Mat2 frm = f(rm);
    const Mat2 left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Mat2 right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Mat2 delta = left + right - whole;
    if (max_abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        std::ostringstream os;
        os << "adaptive Simpson did not reach tolerance " << tol << " on [" << a << ", " << b << "]";
        throw QuadratureFailure(os.str());
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
           + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
Mat2 adaptive_simpson(const F& f, double tol)
{
    Mat2 total = Mat2::Zero();
    const double h = 1.0 / kSimpsonInitialPanels;
    const double panel_tol = tol / kSimpsonInitialPanels;
    for (int k = 0; k < kSimpsonInitialPanels; ++k) {
        const double a = k * h;
        const double b = (k + 1 == kSimpsonInitialPanels) ? 1.0 : (k + 1) * h;
        const Mat2 fa = f(a);
        const Mat2 fb = f(b);
        const Mat2 fm = f(0.5 * (a + b));
        const Mat2 whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_recurse(f, a, b, fa, fm, fb, whole, panel_tol, kSimpsonMaxDepth);
    }
    return total;
}

}  // namespace

VWCoefficients vw_coefficients(const SpinorPair& s, Complex z, double t)
{
    const SpinorPair e = s.evolve(t);
    const Complex p = e.p()(z);
    const Complex p1 = e.p().derivative(1)(z);
    const Complex p2 = e.p().derivative(2)(z);
    const Complex q = e.q()(z);
    const Complex q1 = e.q().derivative(1)(z);
    const Complex q2 = e.q().derivative(2)(z);
    // psi2 = conj q, psi2_zbar = conj q', psi2_zbarzbar = conj q''
    const Complex v = (p1 * p1 - std::conj(q1 * q1)) - 2.0 * (p * p2 - std::conj(q * q2));
    const double w = 2.0 * (p1 * q1 - p2 * q - p * q2).real();
    return {v, w};
}

HMatrix deformation_term(const SpinorPair& s, double t)
{
    const HoloPoly P0 = origin_jet_in_time(s.p(), 0);
    const HoloPoly P1 = origin_jet_in_time(s.p(), 1);
    const HoloPoly P2 = origin_jet_in_time(s.p(), 2);
    const HoloPoly Q0 = origin_jet_in_time(s.q(), 0);
    const HoloPoly Q1 = origin_jet_in_time(s.q(), 1);
    const HoloPoly Q2 = origin_jet_in_time(s.q(), 2);

    // tau is real, so conjugating a polynomial in tau conjugates its coefficients
    const HoloPoly v = P1 * P1 - (Q1 * Q1).conj_coeffs() - Complex(2.0) * (P0 * P2 - (Q0 * Q2).conj_coeffs());
    const HoloPoly x = P1 * Q1 - P2 * Q0 - P0 * Q2;
    const HoloPoly w = x + x.conj_coeffs();

    const Complex tc(t, 0.0);
    const Complex v_int = v.antiderivative()(tc);
    const double w_int = w.antiderivative()(tc).real();
    return HMatrix(-1i * w_int, -1i * std::conj(v_int));
}

HMatrix psi_matrix(const SpinorValues& psi) noexcept
{
    return HMatrix(psi.psi1, -std::conj(psi.psi2));
}

MoutardSnapshot::MoutardSnapshot(const SpinorPair& s, double t, const SurfacePoint& u0)
    : t_(t), u0_(u0), patch_(s, t), dp_(patch_.p().derivative()), dq_(patch_.q().derivative()),
      deformation_(deformation_term(s, t))
{
}

HMatrix MoutardSnapshot::s_tilde(Complex z) const
{
    return surface_matrix(patch_.point(z, u0_)) + deformation_;
}

MoutardScalars MoutardSnapshot::scalars(Complex z, double eps_det) const
{
    const WeierstrassPatch::ExtendedPoint u = patch_.point_extended(z, u0_);
    const ComplexL alpha = ComplexL(0.0L, u.u3) + widen(deformation_)(0, 0);
    const ComplexL beta = ComplexL(-u.u1, -u.u2) + widen(deformation_)(0, 1);
    Mat2L st;
    st << alpha, beta, -std::conj(beta), std::conj(alpha);
    return scalars_from(st, frame(z), eps_det);
}

MoutardFrame MoutardSnapshot::frame(Complex z) const
{
    const SpinorValues psi = patch_.spinor(z);
    return {s_tilde(z), psi_matrix(psi), HMatrix(1i * dp_(z), -1i * dq_(z))};
}

HMatrix s_tilde(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0)
{
    return MoutardSnapshot(s, t, u0).s_tilde(z);
}

MoutardFrame moutard_frame(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0)
{
    return MoutardSnapshot(s, t, u0).frame(z);
}

MoutardScalars moutard_scalars(const MoutardFrame& frame, double eps_det)
{
    return scalars_from(widen(frame.s_tilde), frame, eps_det);
}

FieldValue transformed_potentials(const MoutardScalars& m) noexcept
{
    const double U = m.W;
    const Complex V = m.a * m.a + 2.0 * m.a * std::conj(m.b) - 2i * std::conj(m.c) * m.W;
    return {U, V};
}

namespace {

FieldValue pipeline_value(const MoutardSnapshot& snap, Complex z, double eps_det)
{
    try {
        return transformed_potentials(snap.scalars(z, eps_det));
    } catch (const DegenerateMatrix& e) {
        throw blow_up_at(z, snap.t(), e.what());
    }
}

}  // namespace

double potential_u(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0, double eps_det)
{
    return pipeline_value(MoutardSnapshot(s, t, u0), z, eps_det).U;
}

Complex potential_v(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0, double eps_det)
{
    return pipeline_value(MoutardSnapshot(s, t, u0), z, eps_det).V;
}

Field moutard_field(const SpinorPair& s, const SurfacePoint& u0, double eps_det)
{
    Field f;
    f.eval = [s, u0, eps_det](const SpaceTimePoint& p) {
        return pipeline_value(MoutardSnapshot(s, p.t, u0), p.z(), eps_det);
    };
    return f;
}

GammaDelta enneper_gamma_delta(double x, double y, double t, double C) noexcept
{
    const double s = C - t;
    const Complex gamma(0.0, x * x - y * y);
    const Complex delta(-y * (y * y / 3.0 - x * x - 1.0), -(x * (1.0 + y * y - x * x / 3.0) - s));
    return {gamma, delta};
}

MoutardScalars enneper_scalars(double x, double y, double t, double C)
{
    const auto [g, d] = enneper_gamma_delta(x, y, t, C);
    const Complex z(x, y);
    const double r2 = std::norm(z);
    const double den = std::norm(g) + std::norm(d);
    if (!(den > 0.0)) {
        throw blow_up_at(z, t, "|gamma|^2 + |delta|^2 = 0");
    }
    const Complex W = -1i * (r2 * std::conj(g) + g + d * z - std::conj(d) * std::conj(z)) / den;
    const Complex a = (z * (std::conj(g) - g) - d * z * z - std::conj(d)) / den;
    const Complex b = -1i * z / (1.0 + r2);
    const Complex c = -1i / (1.0 + r2);
    return {W.real(), W.imag(), a, b, c};
}

ClosedFormValue enneper_closed_form(double x, double y, double t, double C)
{
    const double s = C - t;
    const double x2 = x * x;
    const double y2 = y * y;
    const double r2 = x2 + y2;
    const double Q = r2 * r2 * r2 + 3.0 * (x2 * x2 + y2 * y2) + 18.0 * x2 * y2 + 9.0 * r2 + 9.0 * s * s
                     + (6.0 * x2 * x - 18.0 * x * y2 - 18.0 * x) * s;
    if (!(Q > 0.0)) {
        throw blow_up_at({x, y}, t, "Q = 0");
    }
    return {-3.0 * ((r2 + 3.0) * (x2 - y2) - 6.0 * x * s) / Q, Q};
}

double enneper_polar_form(double r, double phi)
{
    if (!(r > 0.0)) {
        throw BlowUpPoint("polar form at t = C needs r > 0");
    }
    const double r2 = r * r;
    const double s2 = std::sin(2.0 * phi);
    return -3.0 * r2 * (r2 + 3.0) * std::cos(2.0 * phi) / (r2 * (r2 * r2 + 3.0 * r2 * (1.0 + s2 * s2) + 9.0));
}

Field enneper_field(double C)
{
    Field f = moutard_field(SpinorPair::enneper(), origin_image(C));
    f.singularity = SpaceTimePoint{0.0, 0.0, C};
    return f;
}

Field enneper_closed_field(double C)
{
    Field f;
    f.eval = [C](const SpaceTimePoint& p) {
        const double U = enneper_closed_form(p.x, p.y, p.t, C).u;
        const Complex V = transformed_potentials(enneper_scalars(p.x, p.y, p.t, C)).V;
        return FieldValue{U, V};
    };
    f.singularity = SpaceTimePoint{0.0, 0.0, C};
    return f;
}

Field zero_field()
{
    Field f;
    f.eval = [](const SpaceTimePoint&) { return FieldValue{}; };
    return f;
}

OneFormComponents one_form(const OneFormInputs& in)
{
    const Mat2 s2 = pauli(Pauli::sigma2);
    const Mat2 s3 = pauli(Pauli::sigma3);
    const Mat2 phiT = in.phi.transpose();

    OneFormComponents out;
    out.dy = phiT * in.psi;
    out.dx = -1i * (phiT * s3 * in.psi);

    Mat2 potential;
    potential << 1i * (in.U * in.U) - 3i * in.V, -1i * in.U_x,
                 -1i * in.U_x, -1i * (in.U * in.U) + 3i * std::conj(in.V);
    out.dt = 1i * (in.phi_yy.transpose() * s3 * in.psi + phiT * s3 * in.psi_yy
                   - in.phi_y.transpose() * s3 * in.psi_y)
             + 2i * in.U * (in.phi_y.transpose() * s2 * in.psi - phiT * s2 * in.psi_y)
             + phiT * potential * in.psi;
    return out;
}

OneFormComponents seed_one_form(const SpinorPair& s, const SpaceTimePoint& p)
{
    const SpinorPair e = s.evolve(p.t);
    const Complex z = p.z();
    OneFormInputs in;
    in.psi = HMatrix(e.p()(z), -e.q()(z)).to_matrix();
    in.psi_y = HMatrix(1i * e.p().derivative(1)(z), -1i * e.q().derivative(1)(z)).to_matrix();
    in.psi_yy = HMatrix(-e.p().derivative(2)(z), e.q().derivative(2)(z)).to_matrix();
    in.phi = in.psi;
    in.phi_y = in.psi_y;
    in.phi_yy = in.psi_yy;
    return one_form(in);
}

HMatrix one_form_integral(const SpinorPair& s, std::span<const SpaceTimePoint> path, double tol)
{
    if (!(tol > 0.0)) {
        throw InvalidArgument("one_form_integral: tolerance must be positive");
    }
    const Mat2 gamma = HMatrix::gamma().to_matrix();
    Mat2 total = Mat2::Zero();
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const SpaceTimePoint a = path[k];
        const SpaceTimePoint b = path[k + 1];
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        const double dt = b.t - a.t;
        if (dx == 0.0 && dy == 0.0 && dt == 0.0) {
            continue;
        }
        auto integrand = [&](double u) -> Mat2 {
            const OneFormComponents w = seed_one_form(s, {a.x + u * dx, a.y + u * dy, a.t + u * dt});
            return gamma * (w.dx * dx + w.dy * dy + w.dt * dt);
        };
        total += adaptive_simpson(integrand, tol);
    }
    return HMatrix::from_matrix(total, 1e-9 * (1.0 + max_abs(total)));
}

}  // namespace mnv
