#pragma once

#include <iosfwd>

#include "mnv/verify.hpp"

namespace mnv {

/**
 * CSV with header "x,y,t,U,ReV,ImV"; rows are time-major, then row-major over
 * the grid, at 17 significant digits. Undefined samples are written as "nan".
 */
void write_field_csv(std::ostream& os, const FieldGrid& fg);

/**
 * Inverse of write_field_csv. The grid and times are recovered from the
 * coordinate columns; throws InvalidArgument if the rows do not form a
 * complete grid in the expected order.
 */
FieldGrid read_field_csv(std::istream& is);

}  // namespace mnv
