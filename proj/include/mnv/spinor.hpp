#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mnv/algebra.hpp"

namespace mnv {

inline constexpr std::size_t kDefaultMaxDegree = 16;

/**
 * Holomorphic polynomial p(z) = sum_k c_k z^k.
 *
 * Trailing zero coefficients are trimmed on construction, so the zero
 * polynomial has no coefficients and degree() == -1. The degree cap is
 * checked once, at construction.
 */
class HoloPoly {
public:
    HoloPoly() = default;
    explicit HoloPoly(std::vector<Complex> coeffs, std::size_t max_degree = kDefaultMaxDegree);

    static HoloPoly monomial(std::size_t k, Complex c = 1.0, std::size_t max_degree = kDefaultMaxDegree);

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Coefficient k, zero past the degree.
    Complex coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

    Complex operator()(Complex z) const noexcept;

    HoloPoly derivative(int order = 1) const;
    /// Antiderivative vanishing at 0.
    HoloPoly antiderivative() const;
    /// Coefficient-wise conjugate: the polynomial with conj(p(conj z)).
    HoloPoly conj_coeffs() const;

    friend HoloPoly operator*(const HoloPoly& a, const HoloPoly& b);
    friend HoloPoly operator+(const HoloPoly& a, const HoloPoly& b);
    friend HoloPoly operator-(const HoloPoly& a, const HoloPoly& b);
    friend HoloPoly operator*(Complex s, const HoloPoly& a);

    friend bool operator==(const HoloPoly&, const HoloPoly&) = default;

private:
    std::vector<Complex> coeffs_;
};

/// Exact solution of d/dt p = p''' with p(., 0) = p0:
/// p(., t) = sum_m t^m / m! * p0^{(3m)}. The series terminates.
HoloPoly evolve_cubic_flow(const HoloPoly& p0, double t);

/// The order-th z-derivative of the evolved polynomial at z = 0, as a
/// polynomial in the time variable: coefficient m is c_{3m+order} (3m+order)! / m!.
HoloPoly origin_jet_in_time(const HoloPoly& p0, int order);

struct SpinorValues {
    Complex psi1;
    Complex psi2;
};

/**
 * Spinor (psi1, psi2) with psi1 = p(z) and psi2 = conj(q(z)); both p and q
 * are holomorphic, so psi1 and conj(psi2) are.
 */
class SpinorPair {
public:
    SpinorPair(HoloPoly p, HoloPoly q);

    /// psi = (z, 1).
    static SpinorPair enneper();
    /// psi = (z^k, 1).
    static SpinorPair higher_enneper(std::size_t k);

    const HoloPoly& p() const noexcept { return p_; }
    const HoloPoly& q() const noexcept { return q_; }
    bool is_zero() const noexcept { return p_.is_zero() && q_.is_zero(); }

    /// Both components follow the same cubic flow: d/dt psi1 = d^3/dz^3 psi1
    /// and d/dt psi2 = d^3/dzbar^3 psi2, which for q reads d/dt q = q'''.
    SpinorPair evolve(double t) const;

    SpinorValues eval(Complex z, double t) const;

private:
    HoloPoly p_;
    HoloPoly q_;
};

}  // namespace mnv
