"""Python bindings for the mnv core library."""

from ._core import (
    BlowUpPoint,
    BranchPoint,
    DegenerateMatrix,
    InvalidArgument,
    MnvError,
    QuadratureFailure,
    SingularFrame,
    Spinor,
    StencilCollision,
    ToleranceNotMet,
    enneper_closed_form,
    enneper_polar_form,
    induced_metric,
    invert_point,
    l2_integral,
    normal,
    origin_image,
    potentials,
    s_tilde,
    surface_point,
    verify_point,
)

__all__ = [
    "BlowUpPoint",
    "BranchPoint",
    "DegenerateMatrix",
    "InvalidArgument",
    "MnvError",
    "QuadratureFailure",
    "SingularFrame",
    "Spinor",
    "StencilCollision",
    "ToleranceNotMet",
    "enneper_closed_form",
    "enneper_polar_form",
    "induced_metric",
    "invert_point",
    "l2_integral",
    "normal",
    "origin_image",
    "potentials",
    "s_tilde",
    "surface_point",
    "verify_point",
]
