#include "mnv/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mnv/error.hpp"

namespace mnv {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

HMatrix::HMatrix(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta)
{
    if (!finite(alpha) || !finite(beta)) {
        throw InvalidArgument("HMatrix entries must be finite");
    }
}

HMatrix HMatrix::from_matrix(const Mat2& m, double tol)
{
    const double off = std::max(std::abs(m(1, 0) + std::conj(m(0, 1))),
                                std::abs(m(1, 1) - std::conj(m(0, 0))));
    if (!(off <= tol)) {
        std::ostringstream os;
        os << "matrix is not of the form (a, b; -conj b, conj a): deviation " << off;
        throw InvalidArgument(os.str());
    }
    return HMatrix(m(0, 0), m(0, 1));
}

Mat2 HMatrix::to_matrix() const
{
    Mat2 m;
    m << alpha_, beta_, -std::conj(beta_), std::conj(alpha_);
    return m;
}

double HMatrix::max_abs() const noexcept { return std::max(std::abs(alpha_), std::abs(beta_)); }

HMatrix& HMatrix::operator+=(const HMatrix& o) noexcept
{
    alpha_ += o.alpha_;
    beta_ += o.beta_;
    return *this;
}

HMatrix& HMatrix::operator-=(const HMatrix& o) noexcept
{
    alpha_ -= o.alpha_;
    beta_ -= o.beta_;
    return *this;
}

HMatrix& HMatrix::operator*=(double s) noexcept
{
    alpha_ *= s;
    beta_ *= s;
    return *this;
}

HMatrix operator*(const HMatrix& a, const HMatrix& b) noexcept
{
    // first row of ((a1, b1), (-b1*, a1*)) . ((a2, b2), (-b2*, a2*))
    return HMatrix(a.alpha_ * b.alpha_ - a.beta_ * std::conj(b.beta_),
                   a.alpha_ * b.beta_ + a.beta_ * std::conj(b.alpha_), HMatrix::Unchecked{});
}

HMatrix inverse(const HMatrix& a, double eps_det)
{
    const double d = a.det();
    if (!(d > eps_det)) {
        std::ostringstream os;
        os << "H-matrix is degenerate: det = " << d << " <= " << eps_det;
        throw DegenerateMatrix(os.str());
    }
    HMatrix inv = a.adjoint();
    inv *= 1.0 / d;
    return inv;
}

Mat2 pauli(Pauli which)
{
    using namespace std::complex_literals;
    Mat2 m;
    switch (which) {
    case Pauli::identity: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::sigma2: m << 0.0, -1i, 1i, 0.0; break;
    case Pauli::sigma3: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace mnv
