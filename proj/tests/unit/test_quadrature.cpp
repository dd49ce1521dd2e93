#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <numbers>

#include "mnv/error.hpp"
#include "mnv/moutard.hpp"
#include "mnv/parallel.hpp"
#include "mnv/quadrature.hpp"

using namespace mnv;

namespace {

constexpr double kPi = std::numbers::pi;

// U^2 = exp(-r^2) integrates to pi; with the angular factor, r^2 cos^2(2 phi) exp(-r^2)
// integrates to pi/2.
Field gaussian(bool angular)
{
    Field f;
    f.eval = [angular](const SpaceTimePoint& p) {
        const double r2 = p.x * p.x + p.y * p.y;
        double u = std::exp(-0.5 * r2);
        if (angular) {
            u *= (p.x * p.x - p.y * p.y) / std::sqrt(std::max(r2, 1e-300));
        }
        return FieldValue{u, Complex(0.0)};
    };
    return f;
}

// U = 1/(1 + r^2) has plane integral pi; its tail decays like 1/r^4.
Field lorentzian()
{
    Field f;
    f.eval = [](const SpaceTimePoint& p) { return FieldValue{1.0 / (1.0 + p.x * p.x + p.y * p.y), Complex(0.0)}; };
    return f;
}

}  // namespace

TEST_CASE("integrals with known values")
{
    const PlaneIntegralResult z = l2_integral(zero_field(), 0.0);
    CHECK(z.value == 0.0);
    CHECK(z.abs_error_estimate == 0.0);

    const PlaneIntegralResult g = l2_integral(gaussian(false), 0.0, {.tol = 1e-8});
    CHECK(std::abs(g.value - kPi) <= g.abs_error_estimate + 1e-12);
    CHECK(std::abs(g.value - kPi) <= 1e-8);

    // U^2 = r^2 cos^2(2 phi) exp(-r^2): integral pi/2
    const PlaneIntegralResult a = l2_integral(gaussian(true), 0.0, {.tol = 1e-8});
    CHECK(std::abs(a.value - kPi / 2) <= 1e-8);

    const PlaneIntegralResult l = l2_integral(lorentzian(), 0.0, {.tol = 1e-6});
    CHECK(std::abs(l.value - kPi) <= l.abs_error_estimate);
    CHECK(std::abs(l.value - kPi) <= 1e-6);
    CHECK(l.tail_bound <= 0.5e-6);
    CHECK(l.value >= 0.0);
}

TEST_CASE("Enneper values off and at the blow-up time")
{
    const double C = 0.6;
    const Field f = enneper_field(C);
    const PlaneIntegralResult off = l2_integral(f, C + 1, {.tol = 1e-4});
    CHECK(std::abs(off.value - 3 * kPi) <= 1e-3);
    CHECK(std::abs(off.value - 3 * kPi) <= off.abs_error_estimate);
    const PlaneIntegralResult at = l2_integral(f, C, {.tol = 1e-4});
    CHECK(std::abs(at.value - 2 * kPi) <= 1e-3);
    CHECK(std::abs(at.value - 2 * kPi) <= at.abs_error_estimate);
    CHECK(at.panels_used > 0);
    CHECK(at.evaluations > 0);
}

TEST_CASE("the jump is sharp")
{
    const double C = 0.0;
    const Field f = enneper_field(C);
    CHECK(std::abs(l2_integral(f, C + 1e-3).value - 3 * kPi) <= 2e-3);
    CHECK(std::abs(l2_integral(f, C - 1e-3).value - 3 * kPi) <= 2e-3);
    CHECK(std::abs(l2_integral(f, C).value - 2 * kPi) <= 1e-3);
}

TEST_CASE("rotating the angular period leaves the value unchanged")
{
    const Field f = enneper_field(0.0);
    for (double t : {0.0, 0.5}) {
        const PlaneIntegralResult a = l2_integral(f, t, {.tol = 1e-4});
        const PlaneIntegralResult b = l2_integral(f, t, {.tol = 1e-4, .angle_offset = kPi / 4});
        CHECK(std::abs(a.value - b.value) <= 1e-4);
    }
}

TEST_CASE("halving the tolerance stays within the previous error estimate")
{
    const Field f = enneper_field(0.0);
    for (double t : {0.0, -1.0}) {
        double tol = 1e-3;
        PlaneIntegralResult prev = l2_integral(f, t, {.tol = tol});
        for (int k = 0; k < 3; ++k) {
            tol /= 2;
            const PlaneIntegralResult next = l2_integral(f, t, {.tol = tol});
            CHECK(std::abs(next.value - prev.value) <= prev.abs_error_estimate);
            prev = next;
        }
    }
}

TEST_CASE("results do not depend on the thread count")
{
    const Field f = enneper_field(0.0);
    set_thread_count(1);
    const double one = l2_integral(f, 0.3).value;
    set_thread_count(5);
    const double five = l2_integral(f, 0.3).value;
    set_thread_count(0);
    CHECK(std::memcmp(&one, &five, sizeof one) == 0);
}

TEST_CASE("failures")
{
    const Field f = enneper_field(0.0);
    CHECK_THROWS_AS(l2_integral(f, 1.0, {.tol = 1e-4, .max_evaluations = 1000}), ToleranceNotMet);
    CHECK_THROWS_AS(l2_integral(f, 1.0, {.tol = 0.0}), InvalidArgument);
    CHECK_THROWS_AS(l2_integral(f, 1.0, {.tol = 1e-4, .breakpoints = {1.0, 2.0}}), InvalidArgument);
    // a field that decays too slowly never meets the tail bound
    Field slow;
    slow.eval = [](const SpaceTimePoint& p) {
        return FieldValue{1.0 / std::sqrt(1.0 + p.x * p.x + p.y * p.y), Complex(0.0)};
    };
    CHECK_THROWS_AS(l2_integral(slow, 0.0), ToleranceNotMet);
}

TEST_CASE("conservation scan")
{
    const double C = 1.5;
    const Field f = enneper_field(C);
    const std::vector<double> times{C - 2, C - 1, C - 0.1, C + 0.1, C + 1};
    const ConservationScan scan = conservation_scan(f, C, times);
    REQUIRE(scan.rows.size() == 5);
    CHECK(scan.max_deviation_regular <= 1e-3);
    for (const ConservationRow& r : scan.rows) {
        REQUIRE(r.reference.has_value());
        CHECK(*r.reference == 3 * kPi);
        CHECK(r.deviation <= 1e-3);
        CHECK(r.C == C);
    }

    const std::vector<double> at{C};
    const ConservationScan jump = conservation_scan(f, C, at);
    CHECK(*jump.rows[0].reference == 2 * kPi);
    CHECK(jump.rows[0].deviation <= 1e-3);
    CHECK(jump.max_deviation_regular == 0.0);

    CHECK(conservation_scan(f, C, std::vector<double>{}).rows.empty());

    const ConservationScan plain = conservation_scan(zero_field(), C, at, {}, false);
    CHECK_FALSE(plain.rows[0].reference.has_value());
}
