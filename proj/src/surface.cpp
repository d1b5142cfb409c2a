#include "curvescat/surface.hpp"

namespace curvescat {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

SurfacePoint::SurfacePoint(double rho_, double phi_) : rho(rho_), phi(phi_) {
    if (!(rho >= 0.0))
        throw std::invalid_argument("SurfacePoint: rho must be non-negative");
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
}

double metric_g(const SurfaceGeometry& geom, double rho) {
    if (!(rho >= 0.0))
        throw std::domain_error("metric_g: rho must be non-negative");
    if (rho < geom.alpha) {
        const double s = std::sin(rho);
        return s * s;
    }
    const double u = rho - geom.alpha + std::sin(geom.alpha);
    return u * u;
}

std::array<double, 3> embed(const SurfaceGeometry& geom, const SurfacePoint& p) {
    const double c = std::cos(p.phi);
    const double s = std::sin(p.phi);
    if (p.rho < geom.alpha) {
        const double sr = std::sin(p.rho);
        return {geom.R * c * sr, geom.R * s * sr, geom.R * std::cos(p.rho)};
    }
    const double u = geom.R * (p.rho - geom.alpha + std::sin(geom.alpha));
    return {u * c, u * s, geom.R * std::cos(geom.alpha)};
}

}  // namespace curvescat
