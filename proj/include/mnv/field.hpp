#pragma once

#include <functional>
#include <optional>

#include "mnv/algebra.hpp"
#include "mnv/grid.hpp"

namespace mnv {

/// Real potential U and complex companion V of the mNV equation at one point.
struct FieldValue {
    double U = 0.0;
    Complex V{};
};

/**
 * A space-time field (U, V) together with its known singular point, if any.
 * eval may throw BlowUpPoint (or DegenerateMatrix) where the field is undefined.
 */
struct Field {
    std::function<FieldValue(const SpaceTimePoint&)> eval;
    std::optional<SpaceTimePoint> singularity;

    FieldValue operator()(const SpaceTimePoint& p) const { return eval(p); }
};

/// U = 0, V = 0 everywhere.
Field zero_field();

}  // namespace mnv
