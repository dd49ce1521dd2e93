#pragma once

#include <vector>

#include "mnv/algebra.hpp"
#include "mnv/grid.hpp"
#include "mnv/mesh_io.hpp"
#include "mnv/spinor.hpp"
#include "mnv/weierstrass.hpp"

namespace mnv {

/// Moebius inversion in su(2) coordinates: S -> S^{-1}.
/// Throws DegenerateMatrix for the point at the centre of inversion.
HMatrix invert_surface_matrix(const HMatrix& S, double eps_det = kDefaultDetEpsilon);

/// Decoded inversion of a Euclidean point: -p / |p|^2 under the su(2) dictionary.
SurfacePoint invert_point(const SurfacePoint& p, double eps_det = kDefaultDetEpsilon);

/// Psi~ = Psi0 S^{-1}; its columns are Weierstrass spinors of the inverted surface.
HMatrix inverted_spinor(const HMatrix& psi0, const HMatrix& S, double eps_det = kDefaultDetEpsilon);

/**
 * Potential of the inverted surface, U~ = U + W with U = 0 for the minimal
 * seed. K is assembled as Psi~ adj(Psi0) entirely in H, where
 * adj(Psi0) = Gamma Psi0^T Gamma^{-1}; this is independent of the general
 * matrix assembly in moutard_scalars.
 */
double inverted_potential(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0,
                          double eps_det = kDefaultDetEpsilon);

struct InvertedSample {
    Complex z;
    double t = 0.0;
    SurfacePoint point;
    /// det S~ <= eps_det: the vertex maps to infinity and `point` is unset.
    bool degenerate = false;
};

/// Inverts the moving surface S~(., t) at every grid vertex, row-major.
std::vector<InvertedSample> sample_inverted_surface(const SpinorPair& s, const PlaneGrid& grid, double t,
                                                    const SurfacePoint& u0,
                                                    double eps_det = kDefaultDetEpsilon);

/// Mesh of the inverted samples; degenerate vertices and their faces are omitted.
TriangleMesh inverted_mesh(const PlaneGrid& grid, const std::vector<InvertedSample>& samples);

}  // namespace mnv
