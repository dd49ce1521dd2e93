#include "mnv/inversion.hpp"

#include <sstream>

#include "mnv/error.hpp"
#include "mnv/moutard.hpp"
#include "mnv/parallel.hpp"

namespace mnv {

HMatrix invert_surface_matrix(const HMatrix& S, double eps_det) { return inverse(S, eps_det); }

SurfacePoint invert_point(const SurfacePoint& p, double eps_det)
{
    return decode_surface_matrix(invert_surface_matrix(surface_matrix(p), eps_det));
}

HMatrix inverted_spinor(const HMatrix& psi0, const HMatrix& S, double eps_det)
{
    return psi0 * invert_surface_matrix(S, eps_det);
}

double inverted_potential(const SpinorPair& s, Complex z, double t, const SurfacePoint& u0, double eps_det)
{
    const MoutardFrame frame = moutard_frame(s, z, t, u0);
    HMatrix psi_tilde;
    try {
        psi_tilde = inverted_spinor(frame.psi0, frame.s_tilde, eps_det);
    } catch (const DegenerateMatrix& e) {
        std::ostringstream os;
        os << "inverted surface is at infinity for z = " << z << ", t = " << t << ": " << e.what();
        throw BlowUpPoint(os.str());
    }
    const HMatrix K = psi_tilde * frame.psi0.adjoint();
    // K = ((iW, a), (-conj a, -iW))
    return K.alpha().imag();
}

std::vector<InvertedSample> sample_inverted_surface(const SpinorPair& s, const PlaneGrid& grid, double t,
                                                    const SurfacePoint& u0, double eps_det)
{
    grid.validate();
    const MoutardSnapshot snap(s, t, u0);
    std::vector<InvertedSample> out(grid.size());
    parallel_for(grid.ny, [&](std::size_t j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            InvertedSample& sample = out[grid.index(i, j)];
            sample.z = Complex(grid.x(i), grid.y(j));
            sample.t = t;
            const HMatrix S = snap.s_tilde(sample.z);
            if (!(S.det() > eps_det)) {
                sample.degenerate = true;
                continue;
            }
            sample.point = decode_surface_matrix(invert_surface_matrix(S, eps_det));
        }
    });
    return out;
}

TriangleMesh inverted_mesh(const PlaneGrid& grid, const std::vector<InvertedSample>& samples)
{
    std::vector<SurfacePoint> points(samples.size());
    std::vector<bool> keep(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        points[k] = samples[k].point;
        keep[k] = !samples[k].degenerate;
    }
    return grid_mesh(grid, std::move(points), keep);
}

}  // namespace mnv
