#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mnv {

enum class ErrorKind {
    invalid_argument,
    degenerate_matrix,
    singular_frame,
    branch_point,
    blow_up_point,
    stencil_collision,
    quadrature_failure,
    tolerance_not_met,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& m) : Error(ErrorKind::invalid_argument, m) {}
};

/// Determinant at or below the configured threshold. Marks the blow-up locus.
struct DegenerateMatrix : Error {
    explicit DegenerateMatrix(const std::string& m) : Error(ErrorKind::degenerate_matrix, m) {}
};

struct SingularFrame : Error {
    explicit SingularFrame(const std::string& m) : Error(ErrorKind::singular_frame, m) {}
};

struct BranchPoint : Error {
    explicit BranchPoint(const std::string& m) : Error(ErrorKind::branch_point, m) {}
};

struct BlowUpPoint : Error {
    explicit BlowUpPoint(const std::string& m) : Error(ErrorKind::blow_up_point, m) {}
};

struct StencilCollision : Error {
    explicit StencilCollision(const std::string& m) : Error(ErrorKind::stencil_collision, m) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& m) : Error(ErrorKind::quadrature_failure, m) {}
};

struct ToleranceNotMet : Error {
    explicit ToleranceNotMet(const std::string& m) : Error(ErrorKind::tolerance_not_met, m) {}
};

}  // namespace mnv
