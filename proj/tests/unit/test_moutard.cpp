#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "mnv/error.hpp"
#include "mnv/moutard.hpp"
#include "support.hpp"

using namespace mnv;
using test::dist;

namespace {

const Complex I(0.0, 1.0);

const std::vector<SpinorPair>& seeds()
{
    static const std::vector<SpinorPair> s{
        SpinorPair::enneper(),
        SpinorPair::higher_enneper(3),
        SpinorPair(HoloPoly::monomial(4), HoloPoly::monomial(1)),
        SpinorPair(HoloPoly({Complex(0.2, 0.1), Complex(0.0, -1.0), 0.5, Complex(0.1, 0.2)}),
                   HoloPoly({1.0, Complex(0.3, 0.3)})),
    };
    return s;
}

HMatrix closed_loop_integral(const SpinorPair& s, std::vector<SpaceTimePoint> loop)
{
    loop.push_back(loop.front());
    return one_form_integral(s, loop, 1e-12);
}

}  // namespace

TEST_CASE("deformation coefficients")
{
    for (int n = 0; n < 20; ++n) {
        const Complex z = test::random_complex(3.0);
        const double t = test::uniform(-2, 2);
        const VWCoefficients e = vw_coefficients(SpinorPair::enneper(), z, t);
        CHECK(dist(e.v, 1.0) < 1e-15);
        CHECK(e.w == 0.0);
        const VWCoefficients q = vw_coefficients(SpinorPair::higher_enneper(2), z, t);
        CHECK(std::abs(q.v) < 1e-12);
        CHECK(q.w == -4.0);
        const VWCoefficients zero = vw_coefficients(SpinorPair(HoloPoly(), HoloPoly()), z, t);
        CHECK(zero.v == Complex(0.0));
        CHECK(zero.w == 0.0);
    }
}

TEST_CASE("Enneper S~ in closed form")
{
    const double C = 1.25;
    for (int n = 0; n < 200; ++n) {
        const double x = test::uniform(-3, 3), y = test::uniform(-3, 3), t = test::uniform(-2, 3);
        const HMatrix S = s_tilde(SpinorPair::enneper(), {x, y}, t, origin_image(C));
        const Complex gamma = I * (x * x - y * y);
        const Complex delta = -y * (y * y / 3 - x * x - 1) - I * (x * (1 + y * y - x * x / 3) - (C - t));
        CHECK(dist(S.alpha(), gamma) < 1e-13);
        CHECK(dist(S.beta(), delta) < 1e-13);
        const GammaDelta gd = enneper_gamma_delta(x, y, t, C);
        CHECK(dist(S, HMatrix(gd.gamma, gd.delta)) < 1e-13);
    }
    const double t = 0.5;
    const HMatrix origin = s_tilde(SpinorPair::enneper(), 0.0, t, origin_image(C));
    CHECK(origin.alpha() == Complex(0.0));
    CHECK(dist(origin.beta(), I * (C - t)) < 1e-16);
    CHECK(std::abs(origin.det() - (C - t) * (C - t)) < 1e-15);
    CHECK(s_tilde(SpinorPair::enneper(), 0.0, C, origin_image(C)).det() == 0.0);
}

TEST_CASE("Enneper S~ moves by rigid translation")
{
    // the time term for v = 1, w = 0 is ((0, -i t), (-i t, 0))
    const double C = 0.4, t = 1.7;
    const Complex z(0.3, -0.8);
    const HMatrix S0 = surface_matrix(surface_point(SpinorPair::enneper(), z, 0.0, origin_image(C)));
    const HMatrix St = s_tilde(SpinorPair::enneper(), z, t, origin_image(C));
    CHECK(dist(St - S0, HMatrix(0.0, -I * t)) < 1e-15);
}

TEST_CASE("scalars at the origin")
{
    const double C = 0.9;
    for (double t : {-1.0, 0.2, 2.5}) {
        const MoutardScalars m = moutard_scalars(moutard_frame(SpinorPair::enneper(), 0.0, t, origin_image(C)));
        CHECK(std::abs(m.b) < 1e-16);
        CHECK(dist(m.c, -I) < 1e-16);
        CHECK(dist(m.a, I / (C - t)) < 1e-14);
        CHECK(std::abs(m.W) < 1e-16);
        CHECK(dist(potential_v(SpinorPair::enneper(), 0.0, t, origin_image(C)), -1.0 / ((C - t) * (C - t))) < 1e-14);
    }
}

TEST_CASE("matrix assembly agrees with the closed-form scalars")
{
    const double C = -0.6;
    for (int n = 0; n < 1000; ++n) {
        const double x = test::uniform(-5, 5), y = test::uniform(-5, 5), t = C + test::uniform(-3, 3);
        const MoutardScalars m = moutard_scalars(moutard_frame(SpinorPair::enneper(), {x, y}, t, origin_image(C)));
        const MoutardScalars c = enneper_scalars(x, y, t, C);
        CHECK(std::abs(m.W - c.W) < 1e-11);
        CHECK(dist(m.a, c.a) < 1e-11);
        CHECK(dist(m.b, c.b) < 1e-11);
        CHECK(dist(m.c, c.c) < 1e-11);
        CHECK(std::abs(m.W_imag) < 1e-12);
        CHECK(std::abs(c.W_imag) < 1e-12);
    }
}

TEST_CASE("W is real for general seeds")
{
    for (const SpinorPair& s : seeds()) {
        for (int n = 0; n < 100; ++n) {
            const SurfacePoint u0{test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1)};
            const MoutardScalars m =
                moutard_scalars(moutard_frame(s, test::random_complex(2.0), test::uniform(-1, 1), u0));
            CHECK(std::abs(m.W_imag) <= 1e-12 * std::max(1.0, std::abs(m.W)));
        }
    }
}

TEST_CASE("potential examples")
{
    const SpinorPair e = SpinorPair::enneper();
    const double C = 0.3;
    CHECK(std::abs(potential_u(e, 1.0, C, origin_image(C)) + 12.0 / 13.0) < 1e-15);
    CHECK(std::abs(potential_u(e, I, C, origin_image(C)) - 12.0 / 13.0) < 1e-15);
    CHECK(std::abs(potential_u(e, 0.0, C + 0.5, origin_image(C))) < 1e-16);

    const ClosedFormValue cf = enneper_closed_form(1.0, 0.0, C, C);
    CHECK(cf.Q == 13.0);
    CHECK(std::abs(cf.u + 12.0 / 13.0) < 1e-16);
    const ClosedFormValue o = enneper_closed_form(0.0, 0.0, C - 2.0, C);
    CHECK(o.u == 0.0);
    CHECK(o.Q == 36.0);

    CHECK(transformed_potentials({}).U == 0.0);
    CHECK(transformed_potentials({}).V == Complex(0.0));
}

TEST_CASE("blow-up point")
{
    const SpinorPair e = SpinorPair::enneper();
    const double C = 0.3;
    CHECK_THROWS_AS(potential_u(e, 0.0, C, origin_image(C)), BlowUpPoint);
    CHECK_THROWS_AS(potential_v(e, 0.0, C, origin_image(C)), BlowUpPoint);
    CHECK_THROWS_AS(enneper_closed_form(0.0, 0.0, C, C), BlowUpPoint);
    CHECK_THROWS_AS(enneper_field(C)({0.0, 0.0, C}), BlowUpPoint);
    CHECK_THROWS_AS(moutard_scalars(moutard_frame(e, 0.0, C, origin_image(C))), DegenerateMatrix);
    CHECK_NOTHROW(potential_u(e, 1e-8, C, origin_image(C)));
    CHECK_NOTHROW(potential_u(e, 0.0, C + 1e-9, origin_image(C)));
    REQUIRE(enneper_field(C).singularity.has_value());
    CHECK(enneper_field(C).singularity->t == C);
}

TEST_CASE("pipeline matches the rational closed form")
{
    const double C = 1.1;
    const SpinorPair e = SpinorPair::enneper();
    for (int n = 0; n < 1000; ++n) {
        const double x = test::uniform(-5, 5), y = test::uniform(-5, 5), t = C + test::uniform(-3, 3);
        CHECK(std::abs(potential_u(e, {x, y}, t, origin_image(C)) - enneper_closed_form(x, y, t, C).u) < 1e-11);
    }
    for (int n = 0; n < 1000; ++n) {
        const double r = test::uniform(1e-3, 10), phi = test::uniform(0, 2 * std::numbers::pi);
        const double u = enneper_closed_form(r * std::cos(phi), r * std::sin(phi), C, C).u;
        CHECK(std::abs(u - enneper_polar_form(r, phi)) < 1e-12);
    }
}

TEST_CASE("closed fields agree")
{
    const Field a = enneper_field(0.5);
    const Field b = enneper_closed_field(0.5);
    for (int n = 0; n < 200; ++n) {
        const SpaceTimePoint p{test::uniform(-3, 3), test::uniform(-3, 3), test::uniform(-2, 3)};
        CHECK(std::abs(a(p).U - b(p).U) < 1e-11);
        CHECK(dist(a(p).V, b(p).V) < 1e-11);
    }
}

TEST_CASE("degeneracy only at the blow-up point")
{
    const double C = 0.7;
    for (int n = 0; n < 2000; ++n) {
        const double x = test::uniform(-3, 3), y = test::uniform(-3, 3), t = C + test::uniform(-2, 2);
        CHECK(s_tilde(SpinorPair::enneper(), {x, y}, t, origin_image(C)).det() > 0.0);
    }
    // on the line x = y = 0 det = (C - t)^2 vanishes only at t = C
    for (double d : {-1.0, -1e-3, 1e-6, 0.5}) {
        CHECK(s_tilde(SpinorPair::enneper(), 0.0, C + d, origin_image(C)).det() > 0.0);
    }
}

TEST_CASE("even in y, and a function of C - t")
{
    const Field f = enneper_field(0.0);
    for (int n = 0; n < 200; ++n) {
        const double x = test::uniform(-3, 3), y = test::uniform(-3, 3), t = test::uniform(-2, 2);
        CHECK(f({x, y, t}).U == f({x, -y, t}).U);
    }
}

TEST_CASE("decay at infinity")
{
    const double C = 0.2;
    const Field f = enneper_field(C);
    for (double t : {C - 1, C, C + 1}) {
        for (double r : {1e2, 1e3, 1e4}) {
            for (int k = 0; k < 16; ++k) {
                const double phi = 2 * std::numbers::pi * k / 16;
                const FieldValue v = f({r * std::cos(phi), r * std::sin(phi), t});
                CHECK(r * r * std::abs(v.U) <= 10.0);
                CHECK(r * r * std::abs(v.V) <= 10.0);
                if (t == C) {
                    CHECK(std::abs(r * r * v.U + 3 * std::cos(2 * phi)) <= 20.0 / (r * r));
                }
            }
        }
    }
}

TEST_CASE("direction-dependent limit at the blow-up point")
{
    const double C = -0.4;
    const Field f = enneper_field(C);
    for (double r : {1e-1, 1e-2, 1e-3}) {
        for (int k = 0; k < 16; ++k) {
            const double phi = 2 * std::numbers::pi * k / 16;
            const double u = f({r * std::cos(phi), r * std::sin(phi), C}).U;
            CHECK(std::abs(u + std::cos(2 * phi)) <= 2 * r * r);
        }
    }
    CHECK(std::abs(f({1e-4, 0.0, C}).U + 1.0) < 1e-7);
    CHECK(std::abs(f({0.0, 1e-4, C}).U - 1.0) < 1e-7);
    CHECK(std::abs(f({1e-4, 1e-4, C}).U) < 1e-7);
}

TEST_CASE("one-form is closed")
{
    for (const SpinorPair& s : seeds()) {
        for (int n = 0; n < 3; ++n) {
            const double x0 = test::uniform(-1, 1), y0 = test::uniform(-1, 1), t0 = test::uniform(-1, 1);
            const double w = test::uniform(0.2, 1.0), h = test::uniform(0.2, 1.0), d = test::uniform(0.2, 1.0);
            // spatial rectangle at fixed time
            const HMatrix space = closed_loop_integral(s, {{x0, y0, t0}, {x0 + w, y0, t0}, {x0 + w, y0 + h, t0},
                                                           {x0, y0 + h, t0}});
            CHECK(space.max_abs() <= 1e-8);
            // rectangles in the (x, t) and (y, t) planes and a skew triangle
            const HMatrix xt = closed_loop_integral(s, {{x0, y0, t0}, {x0 + w, y0, t0}, {x0 + w, y0, t0 + d},
                                                        {x0, y0, t0 + d}});
            CHECK(xt.max_abs() <= 1e-8);
            const HMatrix yt = closed_loop_integral(s, {{x0, y0, t0}, {x0, y0, t0 + d}, {x0, y0 + h, t0 + d},
                                                        {x0, y0 + h, t0}});
            CHECK(yt.max_abs() <= 1e-8);
            const HMatrix skew =
                closed_loop_integral(s, {{x0, y0, t0}, {x0 + w, y0 + h, t0 - d}, {x0 - h, y0 + w, t0 + d}});
            CHECK(skew.max_abs() <= 1e-8);
        }
    }
}

TEST_CASE("one-form integrates to differences of S~")
{
    const SpinorPair e = SpinorPair::enneper();
    const SurfacePoint u0 = origin_image(0.6);
    const std::vector<SpaceTimePoint> seg{{0, 0, 0}, {1, 0, 0}};
    CHECK(dist(one_form_integral(e, seg), s_tilde(e, 1.0, 0.0, u0) - s_tilde(e, 0.0, 0.0, u0)) <= 1e-8);
    const std::vector<SpaceTimePoint> single{{0.3, 0.2, 0.1}};
    CHECK(one_form_integral(e, single) == HMatrix());
    CHECK(one_form_integral(e, std::vector<SpaceTimePoint>{}) == HMatrix());

    for (const SpinorPair& s : seeds()) {
        for (int n = 0; n < 3; ++n) {
            const SpaceTimePoint a{test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1)};
            const SpaceTimePoint b{test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1)};
            const SpaceTimePoint mid{test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1)};
            const HMatrix expected = s_tilde(s, b.z(), b.t, u0) - s_tilde(s, a.z(), a.t, u0);
            const std::vector<SpaceTimePoint> path{a, mid, b};
            CHECK(dist(one_form_integral(s, path), expected) <= 1e-8);
        }
    }
}

TEST_CASE("one-form reduces to Psi^T Psi and Psi^T s3 Psi at the seed")
{
    const SpinorPair s = seeds()[3];
    const SpaceTimePoint p{0.4, -0.3, 0.2};
    const OneFormComponents c = seed_one_form(s, p);
    const Mat2 psi = moutard_frame(s, p.z(), p.t, {}).psi0.to_matrix();
    CHECK(max_abs(c.dy - psi.transpose() * psi) < 1e-15);
    CHECK(max_abs(c.dx + I * (psi.transpose() * pauli(Pauli::sigma3) * psi)) < 1e-15);
}
