#pragma once

#include <complex>

#include <Eigen/Core>

namespace mnv {

using Complex = std::complex<double>;

/// General 2x2 complex matrix. Only used where products leave H
/// (transposes, Pauli matrices inside the one-form).
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kDefaultDetEpsilon = 1e-300;

/**
 * Element of the quaternionic matrix space H:
 *
 *     ( alpha      beta      )
 *     ( -conj(beta) conj(alpha) )
 *
 * Stored as the pair (alpha, beta), so the pattern holds by construction.
 * H is closed under products and inversion; it is not closed under
 * multiplication by non-real scalars, hence only real scaling is offered.
 */
class HMatrix {
public:
    HMatrix() = default;
    HMatrix(Complex alpha, Complex beta);

    static HMatrix identity() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }
    /// Gamma = ((0, 1), (-1, 0)).
    static HMatrix gamma() { return {Complex(0.0, 0.0), Complex(1.0, 0.0)}; }

    /// Accepts a general matrix only if it has the H pattern within `tol`
    /// (max-entry); throws InvalidArgument otherwise.
    static HMatrix from_matrix(const Mat2& m, double tol = 1e-12);

    Complex alpha() const noexcept { return alpha_; }
    Complex beta() const noexcept { return beta_; }

    /// |alpha|^2 + |beta|^2, always >= 0.
    double det() const noexcept { return std::norm(alpha_) + std::norm(beta_); }

    /// Conjugate transpose, equal to det * inverse.
    HMatrix adjoint() const noexcept { return HMatrix(std::conj(alpha_), -beta_, Unchecked{}); }

    Mat2 to_matrix() const;

    /// Largest absolute entry.
    double max_abs() const noexcept;

    HMatrix& operator+=(const HMatrix& o) noexcept;
    HMatrix& operator-=(const HMatrix& o) noexcept;
    HMatrix& operator*=(double s) noexcept;

    friend HMatrix operator*(const HMatrix& a, const HMatrix& b) noexcept;
    friend HMatrix operator+(HMatrix a, const HMatrix& b) noexcept { return a += b; }
    friend HMatrix operator-(HMatrix a, const HMatrix& b) noexcept { return a -= b; }
    friend HMatrix operator-(const HMatrix& a) noexcept { return HMatrix(-a.alpha_, -a.beta_, Unchecked{}); }
    friend HMatrix operator*(double s, HMatrix a) noexcept { return a *= s; }

    friend bool operator==(const HMatrix&, const HMatrix&) = default;

private:
    struct Unchecked {};
    HMatrix(Complex alpha, Complex beta, Unchecked) noexcept : alpha_(alpha), beta_(beta) {}

    Complex alpha_{0.0, 0.0};
    Complex beta_{0.0, 0.0};
};

/// Throws DegenerateMatrix when det(a) <= eps_det.
HMatrix inverse(const HMatrix& a, double eps_det = kDefaultDetEpsilon);

enum class Pauli { identity, sigma2, sigma3 };

Mat2 pauli(Pauli which);

/// Max-entry norm of a general 2x2 matrix.
double max_abs(const Mat2& m);

}  // namespace mnv
