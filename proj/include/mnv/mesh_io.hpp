#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "mnv/grid.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv {

struct TriangleMesh {
    std::vector<SurfacePoint> vertices;
    /// Zero-based vertex indices.
    std::vector<std::array<std::size_t, 3>> faces;
};

/**
 * Builds a mesh from row-major grid samples. Each grid quad
 * (i,j),(i+1,j),(i+1,j+1),(i,j+1) is split into two triangles. Vertices with
 * keep[k] == false are dropped together with every face touching them, and the
 * remaining vertices are renumbered in order. An empty `keep` keeps everything.
 */
TriangleMesh grid_mesh(const PlaneGrid& grid, std::vector<SurfacePoint> samples,
                       const std::vector<bool>& keep = {});

/// Wavefront OBJ: optional "# " comment lines, "v" lines at 17 significant
/// digits, then 1-based "f" lines.
void write_obj(std::ostream& os, const TriangleMesh& mesh, std::string_view comment = {});

}  // namespace mnv
