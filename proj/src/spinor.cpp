#include "mnv/spinor.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "mnv/error.hpp"

namespace mnv {

namespace {

void trim(std::vector<Complex>& c)
{
    while (!c.empty() && c.back() == Complex{}) {
        c.pop_back();
    }
}

// n! / m! for n >= m, as a double.
double falling_ratio(std::size_t n, std::size_t m)
{
    double r = 1.0;
    for (std::size_t k = m + 1; k <= n; ++k) {
        r *= static_cast<double>(k);
    }
    return r;
}

HoloPoly unchecked(std::vector<Complex> c)
{
    trim(c);
    const std::size_t cap = c.empty() ? 0 : c.size() - 1;
    return HoloPoly(std::move(c), cap);
}

}  // namespace

HoloPoly::HoloPoly(std::vector<Complex> coeffs, std::size_t max_degree) : coeffs_(std::move(coeffs))
{
    for (const Complex& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw InvalidArgument("polynomial coefficients must be finite");
        }
    }
    trim(coeffs_);
    if (!coeffs_.empty() && coeffs_.size() - 1 > max_degree) {
        std::ostringstream os;
        os << "polynomial degree " << coeffs_.size() - 1 << " exceeds the cap " << max_degree;
        throw InvalidArgument(os.str());
    }
}

HoloPoly HoloPoly::monomial(std::size_t k, Complex c, std::size_t max_degree)
{
    std::vector<Complex> coeffs(k + 1);
    coeffs[k] = c;
    return HoloPoly(std::move(coeffs), max_degree);
}

Complex HoloPoly::operator()(Complex z) const noexcept
{
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

HoloPoly HoloPoly::derivative(int order) const
{
    if (order < 0) {
        throw InvalidArgument("derivative order must be non-negative");
    }
    const auto n = static_cast<std::size_t>(order);
    if (n >= coeffs_.size()) {
        return {};
    }
    std::vector<Complex> d(coeffs_.size() - n);
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = coeffs_[k + n] * falling_ratio(k + n, k);
    }
    return unchecked(std::move(d));
}

HoloPoly HoloPoly::antiderivative() const
{
    if (coeffs_.empty()) {
        return {};
    }
    std::vector<Complex> a(coeffs_.size() + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    }
    return unchecked(std::move(a));
}

HoloPoly HoloPoly::conj_coeffs() const
{
    std::vector<Complex> c(coeffs_);
    for (Complex& x : c) {
        x = std::conj(x);
    }
    return unchecked(std::move(c));
}

HoloPoly operator*(const HoloPoly& a, const HoloPoly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return unchecked(std::move(c));
}

HoloPoly operator+(const HoloPoly& a, const HoloPoly& b)
{
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = a.coeff(k) + b.coeff(k);
    }
    return unchecked(std::move(c));
}

HoloPoly operator-(const HoloPoly& a, const HoloPoly& b) { return a + Complex(-1.0) * b; }

HoloPoly operator*(Complex s, const HoloPoly& a)
{
    std::vector<Complex> c(a.coeffs_);
    for (Complex& x : c) {
        x *= s;
    }
    return unchecked(std::move(c));
}

HoloPoly evolve_cubic_flow(const HoloPoly& p0, double t)
{
    HoloPoly result = p0;
    HoloPoly term = p0.derivative(3);
    double factor = 1.0;
    for (int m = 1; !term.is_zero(); ++m) {
        factor *= t / m;
        result = result + Complex(factor) * term;
        term = term.derivative(3);
    }
    return result;
}

HoloPoly origin_jet_in_time(const HoloPoly& p0, int order)
{
    if (order < 0) {
        throw InvalidArgument("jet order must be non-negative");
    }
    const auto k = static_cast<std::size_t>(order);
    std::vector<Complex> c;
    for (std::size_t m = 0; 3 * m + k < p0.coeffs().size(); ++m) {
        // (3m+k)! / m!
        c.push_back(p0.coeff(3 * m + k) * falling_ratio(3 * m + k, m));
    }
    return unchecked(std::move(c));
}

SpinorPair::SpinorPair(HoloPoly p, HoloPoly q) : p_(std::move(p)), q_(std::move(q)) {}

SpinorPair SpinorPair::enneper() { return higher_enneper(1); }

SpinorPair SpinorPair::higher_enneper(std::size_t k)
{
    return SpinorPair(HoloPoly::monomial(k), HoloPoly::monomial(0));
}

SpinorPair SpinorPair::evolve(double t) const
{
    return SpinorPair(evolve_cubic_flow(p_, t), evolve_cubic_flow(q_, t));
}

SpinorValues SpinorPair::eval(Complex z, double t) const
{
    const SpinorPair e = evolve(t);
    return {e.p_(z), std::conj(e.q_(z))};
}

}  // namespace mnv
