#pragma once

#include <cstddef>

#include "mnv/algebra.hpp"

namespace mnv {

struct SpaceTimePoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    Complex z() const noexcept { return {x, y}; }
};

/**
 * Rectangular sampling of the (x, y) plane. Vertices are ordered row-major:
 * index = j * nx + i with x varying fastest.
 */
struct PlaneGrid {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;
    std::size_t nx = 2;
    std::size_t ny = 2;

    /// Throws InvalidArgument unless nx, ny >= 2 and the bounds are finite and increasing.
    void validate() const;

    std::size_t size() const noexcept { return nx * ny; }
    double dx() const noexcept { return (xmax - xmin) / static_cast<double>(nx - 1); }
    double dy() const noexcept { return (ymax - ymin) / static_cast<double>(ny - 1); }
    double x(std::size_t i) const noexcept { return i + 1 == nx ? xmax : xmin + dx() * static_cast<double>(i); }
    double y(std::size_t j) const noexcept { return j + 1 == ny ? ymax : ymin + dy() * static_cast<double>(j); }
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx + i; }
};

}  // namespace mnv
