#include "mnv/error.hpp"

namespace mnv {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::degenerate_matrix: return "DegenerateMatrix";
    case ErrorKind::singular_frame: return "SingularFrame";
    case ErrorKind::branch_point: return "BranchPoint";
    case ErrorKind::blow_up_point: return "BlowUpPoint";
    case ErrorKind::stencil_collision: return "StencilCollision";
    case ErrorKind::quadrature_failure: return "QuadratureFailure";
    case ErrorKind::tolerance_not_met: return "ToleranceNotMet";
    }
    return "Unknown";
}

}  // namespace mnv
