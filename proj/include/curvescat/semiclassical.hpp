#ifndef CURVESCAT_SEMICLASSICAL_HPP
#define CURVESCAT_SEMICLASSICAL_HPP

#include <complex>
#include <span>

#include "curvescat/quantum.hpp"

namespace curvescat {

// Dimensionless path-length function
//   Delta(alpha, mu) = 2 acos(cos(alpha)/sqrt(1-mu^2)) - 2 sqrt(sin^2(alpha) - mu^2),
// defined for |mu| <= sin(alpha).
double path_length_delta(double alpha, double mu);

// Turning point rho0 with g(rho0) = mu^2 (sphere branch for |mu| < sin alpha,
// planar branch otherwise).
double turning_point(double alpha, double mu);

// Closed-form WKBJ phase shift and its ingredients.
struct WkbjPhase {
    double delta;   // phase shift
    double Delta;   // path-length function Delta(alpha, mu)
    double Theta;   // classical deflection Theta(alpha, mu)
    double mu;      // m / kR
    double rho0;    // turning point
};

// delta_m = (kR/2) Delta - (m/2) Theta for |m| < kR sin(alpha), else exactly 0.
WkbjPhase wkbj_phase(double alpha, double kR, int m);

// Phase-shift table in the WKBJ approximation (same layout as the exact one).
PhaseShiftTable wkbj_phase_table(double alpha, double kR);

// Dirichlet-kernel forward-spike term
//   (i/2) sin((floor(kR sin alpha) + 1/2) theta) / sin(theta/2),
// with the removable theta = 0 limit handled.
std::complex<double> forward_spike(double alpha, double kR, double theta);

// Two-path stationary-phase amplitude f~(theta).  Throws std::domain_error
// near and beyond the caustic (guard band 3 (kR)^{-2/3}) where the simple
// stationary-phase approximation is invalid.
std::complex<double> stationary_phase_amplitude(double alpha, double kR, double theta);

enum class ScRoute {
    stationary,  // forward spike + two-path stationary-phase terms
    summed       // exact partial-wave sum over the closed-form WKBJ phases
};

// Semiclassical differential cross section on a theta grid.  Caustic guard
// regions (stationary route, alpha < pi/2) are reported as NaN gaps.
AmplitudeGrid sc_diff_xsec(double alpha, double kR, std::span<const double> thetas,
                           ScRoute route = ScRoute::stationary);

// sigma~_SC = 4 sin(alpha)
//   - (2 sqrt(pi cot(alpha/2)) / sqrt(kR)) cos(2 kR (alpha - sin alpha) - pi/4).
double sc_total_xsec(double alpha, double kR);

}  // namespace curvescat

#endif
