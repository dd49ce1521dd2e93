#include <array>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mnv/error.hpp"
#include "mnv/inversion.hpp"
#include "mnv/moutard.hpp"
#include "mnv/quadrature.hpp"
#include "mnv/verify.hpp"
#include "mnv/weierstrass.hpp"

namespace py = pybind11;
using namespace mnv;

namespace {

using Triple = std::array<double, 3>;
using Matrix = std::array<std::array<Complex, 2>, 2>;

SurfacePoint to_point(const Triple& a) { return {a[0], a[1], a[2]}; }
Triple to_triple(const SurfacePoint& p) { return {p.u1, p.u2, p.u3}; }

Matrix to_rows(const HMatrix& m)
{
    const Mat2 d = m.to_matrix();
    return {{{d(0, 0), d(0, 1)}, {d(1, 0), d(1, 1)}}};
}

Field field_for(const SpinorPair& s, double C)
{
    Field f = moutard_field(s, origin_image(C));
    f.singularity = SpaceTimePoint{0.0, 0.0, C};
    return f;
}

PlaneIntegralOptions plane_options(double tol, double max_evaluations)
{
    PlaneIntegralOptions o;
    o.tol = tol;
    o.max_evaluations = max_evaluations;
    return o;
}

py::dict integral_dict(const PlaneIntegralResult& r)
{
    py::dict d;
    d["value"] = r.value;
    d["error_estimate"] = r.abs_error_estimate;
    d["tail_bound"] = r.tail_bound;
    d["radius"] = r.radius;
    d["panels_used"] = r.panels_used;
    d["evaluations"] = r.evaluations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Moutard blow-up solutions of the modified Novikov-Veselov equation";

    // Translators run newest first, so the subclasses are registered after the base.
    const auto base = py::register_exception<Error>(m, "MnvError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base);
    py::register_exception<DegenerateMatrix>(m, "DegenerateMatrix", base);
    py::register_exception<SingularFrame>(m, "SingularFrame", base);
    py::register_exception<BranchPoint>(m, "BranchPoint", base);
    py::register_exception<BlowUpPoint>(m, "BlowUpPoint", base);
    py::register_exception<StencilCollision>(m, "StencilCollision", base);
    py::register_exception<QuadratureFailure>(m, "QuadratureFailure", base);
    py::register_exception<ToleranceNotMet>(m, "ToleranceNotMet", base);

    py::class_<SpinorPair>(m, "Spinor")
        .def(py::init([](const std::vector<Complex>& p, const std::vector<Complex>& q) {
                 return SpinorPair(HoloPoly(p), HoloPoly(q));
             }),
             py::arg("p"), py::arg("q"),
             "psi1 = p(z), psi2 = conj(q(z)); p and q are coefficient lists, lowest degree first.")
        .def_static("enneper", &SpinorPair::enneper)
        .def_static("higher_enneper", &SpinorPair::higher_enneper, py::arg("k"))
        .def_property_readonly("p", [](const SpinorPair& s) {
            return std::vector<Complex>(s.p().coeffs().begin(), s.p().coeffs().end());
        })
        .def_property_readonly("q", [](const SpinorPair& s) {
            return std::vector<Complex>(s.q().coeffs().begin(), s.q().coeffs().end());
        })
        .def("evolve", &SpinorPair::evolve, py::arg("t"))
        .def(
            "__call__",
            [](const SpinorPair& s, Complex z, double t) {
                const SpinorValues v = s.eval(z, t);
                return std::make_pair(v.psi1, v.psi2);
            },
            py::arg("z"), py::arg("t") = 0.0);

    m.def("origin_image", [](double C) { return to_triple(origin_image(C)); }, py::arg("C"));

    m.def(
        "surface_point",
        [](const SpinorPair& s, Complex z, double t, const Triple& u0) {
            return to_triple(surface_point(s, z, t, to_point(u0)));
        },
        py::arg("spinor"), py::arg("z"), py::arg("t") = 0.0, py::arg("u0") = Triple{0.0, 0.0, 0.0});
    m.def(
        "normal", [](const SpinorPair& s, Complex z, double t) { return to_triple(normal_vector(s, z, t)); },
        py::arg("spinor"), py::arg("z"), py::arg("t") = 0.0);
    m.def("induced_metric", &induced_metric, py::arg("spinor"), py::arg("z"), py::arg("t") = 0.0);

    m.def(
        "s_tilde",
        [](const SpinorPair& s, Complex z, double t, double C) {
            return to_rows(s_tilde(s, z, t, origin_image(C)));
        },
        py::arg("spinor"), py::arg("z"), py::arg("t"), py::arg("C"));
    m.def(
        "potentials",
        [](const SpinorPair& s, double x, double y, double t, double C) {
            const FieldValue v = moutard_field(s, origin_image(C))({x, y, t});
            return std::make_pair(v.U, v.V);
        },
        py::arg("spinor"), py::arg("x"), py::arg("y"), py::arg("t"), py::arg("C"));
    m.def(
        "enneper_closed_form", [](double x, double y, double t, double C) { return enneper_closed_form(x, y, t, C).u; },
        py::arg("x"), py::arg("y"), py::arg("t"), py::arg("C"));
    m.def("enneper_polar_form", &enneper_polar_form, py::arg("r"), py::arg("phi"));

    m.def(
        "invert_point", [](const Triple& p) { return to_triple(invert_point(to_point(p))); }, py::arg("point"));

    m.def(
        "verify_point",
        [](const SpinorPair& s, double x, double y, double t, double C, double h, double h_time) {
            VerifyOptions opt;
            opt.stencil = {h, h_time};
            const ResidualReport r = verify_point(field_for(s, C), {x, y, t}, opt);
            py::dict d;
            d["mnv_residual"] = r.mnv_residual;
            d["constraint_residual"] = r.constraint_residual;
            d["h"] = r.h_used;
            d["mnv_order"] = r.mnv_order;
            d["constraint_order"] = r.constraint_order;
            return d;
        },
        py::arg("spinor"), py::arg("x"), py::arg("y"), py::arg("t"), py::arg("C"), py::arg("h") = 1e-3,
        py::arg("h_time") = 1e-4);

    m.def(
        "l2_integral",
        [](const SpinorPair& s, double t, double C, double tol, double max_evaluations) {
            PlaneIntegralResult r;
            {
                py::gil_scoped_release release;
                r = l2_integral(field_for(s, C), t, plane_options(tol, max_evaluations));
            }
            return integral_dict(r);
        },
        py::arg("spinor"), py::arg("t"), py::arg("C"), py::arg("tol") = 1e-4, py::arg("max_evaluations") = 1e6);
}
