#include "mnv/weierstrass.hpp"

#include <sstream>

#include "mnv/error.hpp"
#include "mnv/parallel.hpp"

namespace mnv {

WeierstrassPatch::WeierstrassPatch(const SpinorPair& s, double t)
{
    const SpinorPair e = s.evolve(t);
    p_ = e.p();
    q_ = e.q();
    const HoloPoly p2 = p_ * p_;
    const HoloPoly q2 = q_ * q_;
    sum_sq_ = p2 + q2;
    diff_sq_ = q2 - p2;
    prod_ = p_ * q_;
    sum_sq_int_ = sum_sq_.antiderivative();
    diff_sq_int_ = diff_sq_.antiderivative();
    prod_int_ = prod_.antiderivative();
}

namespace {

using ComplexL = std::complex<long double>;

ComplexL antiderivative_at(const HoloPoly& f, ComplexL z)
{
    const auto c = f.coeffs();
    ComplexL acc{};
    for (std::size_t k = c.size(); k-- > 0;) {
        acc = acc * z + ComplexL(c[k].real(), c[k].imag()) / static_cast<long double>(k + 1);
    }
    return acc * z;
}

}  // namespace

SurfacePoint WeierstrassPatch::point(Complex z, const SurfacePoint& u0) const noexcept
{
    return {-sum_sq_int_(z).imag() + u0.u1, diff_sq_int_(z).real() + u0.u2,
            2.0 * prod_int_(z).real() + u0.u3};
}

WeierstrassPatch::ExtendedPoint WeierstrassPatch::point_extended(Complex z, const SurfacePoint& u0) const noexcept
{
    const ComplexL zl(z.real(), z.imag());
    return {-antiderivative_at(sum_sq_, zl).imag() + u0.u1, antiderivative_at(diff_sq_, zl).real() + u0.u2,
            2.0L * antiderivative_at(prod_, zl).real() + u0.u3};
}

double WeierstrassPatch::induced_metric(Complex z) const noexcept
{
    const double e = std::norm(p_(z)) + std::norm(q_(z));
    return e * e;
}

SurfacePoint WeierstrassPatch::normal(Complex z) const
{
    const SpinorValues psi = spinor(z);
    const double e = std::norm(psi.psi1) + std::norm(psi.psi2);
    if (!(e > kBranchPointEpsilon)) {
        std::ostringstream os;
        os << "branch point at z = " << z << ": |psi1|^2 + |psi2|^2 = " << e;
        throw BranchPoint(os.str());
    }
    // (i(m - conj m), -(m + conj m), |psi2|^2 - |psi1|^2) / e with m = psi1 psi2
    const Complex m = psi.psi1 * psi.psi2;
    return {-2.0 * m.imag() / e, -2.0 * m.real() / e, (std::norm(psi.psi2) - std::norm(psi.psi1)) / e};
}

SurfacePoint surface_point(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0)
{
    return WeierstrassPatch(s, t).point(z, u0);
}

double induced_metric(const SpinorPair& s, Complex z, double t)
{
    return WeierstrassPatch(s, t).induced_metric(z);
}

SurfacePoint normal_vector(const SpinorPair& s, Complex z, double t)
{
    return WeierstrassPatch(s, t).normal(z);
}

HMatrix surface_matrix(const SurfacePoint& p)
{
    return HMatrix(Complex(0.0, p.u3), Complex(-p.u1, -p.u2));
}

SurfacePoint decode_surface_matrix(const HMatrix& m) noexcept
{
    return {-m.beta().real(), -m.beta().imag(), m.alpha().imag()};
}

std::vector<SurfacePoint> sample_surface(const SpinorPair& s, const PlaneGrid& grid, double t,
                                         const SurfacePoint& u0)
{
    grid.validate();
    const WeierstrassPatch patch(s, t);
    std::vector<SurfacePoint> out(grid.size());
    parallel_for(grid.ny, [&](std::size_t j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            out[grid.index(i, j)] = patch.point({grid.x(i), grid.y(j)}, u0);
        }
    });
    return out;
}

}  // namespace mnv
