#include "mnv/mesh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "mnv/error.hpp"

namespace mnv {

TriangleMesh grid_mesh(const PlaneGrid& grid, std::vector<SurfacePoint> samples, const std::vector<bool>& keep)
{
    grid.validate();
    if (samples.size() != grid.size()) {
        throw InvalidArgument("sample count does not match the grid");
    }
    if (!keep.empty() && keep.size() != samples.size()) {
        throw InvalidArgument("keep mask does not match the grid");
    }
    constexpr std::size_t dropped = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> remap(samples.size(), dropped);

    TriangleMesh mesh;
    mesh.vertices.reserve(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (keep.empty() || keep[k]) {
            remap[k] = mesh.vertices.size();
            mesh.vertices.push_back(samples[k]);
        }
    }
    mesh.faces.reserve(2 * (grid.nx - 1) * (grid.ny - 1));
    auto add = [&](std::size_t a, std::size_t b, std::size_t c) {
        if (remap[a] != dropped && remap[b] != dropped && remap[c] != dropped) {
            mesh.faces.push_back({remap[a], remap[b], remap[c]});
        }
    };
    for (std::size_t j = 0; j + 1 < grid.ny; ++j) {
        for (std::size_t i = 0; i + 1 < grid.nx; ++i) {
            const std::size_t a = grid.index(i, j);
            const std::size_t b = grid.index(i + 1, j);
            const std::size_t c = grid.index(i + 1, j + 1);
            const std::size_t d = grid.index(i, j + 1);
            add(a, b, c);
            add(a, c, d);
        }
    }
    return mesh;
}

void write_obj(std::ostream& os, const TriangleMesh& mesh, std::string_view comment)
{
    std::size_t start = 0;
    while (start < comment.size()) {
        const std::size_t end = std::min(comment.find('\n', start), comment.size());
        os << "# " << comment.substr(start, end - start) << '\n';
        start = end + 1;
    }
    char buf[128];
    for (const SurfacePoint& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.u1, v.u2, v.u3);
        os << buf;
    }
    for (const auto& f : mesh.faces) {
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
}

}  // namespace mnv
