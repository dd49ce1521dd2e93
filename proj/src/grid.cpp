#include "mnv/grid.hpp"

#include <cmath>

#include "mnv/error.hpp"

namespace mnv {

void PlaneGrid::validate() const
{
    if (nx < 2 || ny < 2) {
        throw InvalidArgument("grid needs at least 2 samples per axis");
    }
    if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax)) {
        throw InvalidArgument("grid bounds must be finite");
    }
    if (!(xmin < xmax) || !(ymin < ymax)) {
        throw InvalidArgument("grid bounds must be increasing");
    }
}

}  // namespace mnv
