#ifndef CURVESCAT_SURFACE_HPP
#define CURVESCAT_SURFACE_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace curvescat {

// Geometry of the scatterer: a sphere of radius R joined to an infinite
// plane along the circle of polar angle alpha.  All other modules take the
// pair (R, alpha) through this type; R defaults to 1 and observables are
// reported in the dimensionless combinations kR, sigma/R, etc.
struct SurfaceGeometry {
    double R;
    double alpha;
    double contact_radius;  // R * sin(alpha), cached

    explicit SurfaceGeometry(double alpha_, double R_ = 1.0)
        : R(R_), alpha(alpha_), contact_radius(R_ * std::sin(alpha_)) {
        if (!(R > 0.0))
            throw std::invalid_argument("SurfaceGeometry: R must be positive");
        if (!(alpha > 0.0 && alpha < std::numbers::pi))
            throw std::invalid_argument("SurfaceGeometry: alpha must lie in (0, pi)");
    }
};

// Point on the surface in dimensionless polar coordinates rho = r/R, phi.
// phi is stored reduced to [0, 2*pi).
struct SurfacePoint {
    double rho;
    double phi;

    SurfacePoint(double rho_, double phi_);
};

// Azimuthal metric factor g(rho): sin^2(rho) on the sphere (rho < alpha),
// (rho - alpha + sin(alpha))^2 in the plane.  Continuous at rho = alpha,
// which is assigned to the planar branch.
double metric_g(const SurfaceGeometry& geom, double rho);

// Embedding of the surface point into flat 3-space, (x, y, z) in units of
// length.  The planar portion sits at height z = R*cos(alpha).
std::array<double, 3> embed(const SurfaceGeometry& geom, const SurfacePoint& p);

}  // namespace curvescat

#endif
