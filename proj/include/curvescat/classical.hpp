#ifndef CURVESCAT_CLASSICAL_HPP
#define CURVESCAT_CLASSICAL_HPP

#include <cstddef>
#include <vector>

#include "curvescat/surface.hpp"

namespace curvescat {

// Wrap an angle to (-pi, pi].
double wrap_angle(double theta);

// Deflection data for one trajectory, all angles in radians.
// mu = J/(M v R) = -b/R is the scaled angular momentum.
struct ClassicalDeflection {
    double theta;
    double beta;
    double b_over_R;
    double mu;
};

// Caustic (maximal deflection) data; exists only for alpha < pi/2.
struct CausticData {
    double theta_c;  // 2 asin(tan^2(alpha/2))
    double beta_c;   // asin(1 / (2 cos(alpha/2)))
};

// The two impact-parameter branches feeding a given scattering angle.
// valid == false means theta is outside the classical support.
struct BranchPair {
    double b_plus;
    double b_minus;
    bool valid;
};

// Embedded trajectory through the scatterer.  segment[i] tags point i as
// 0 = incoming half-line, 1 = great-circle arc, 2 = outgoing half-line.
// The tangent markers are arc-length positions bracketing the portion of
// the path between the entry and exit tangents to the contact circle.
struct TrajectorySample {
    std::vector<std::array<double, 3>> points;
    std::vector<double> arc_lengths;
    std::vector<int> segment;
    double entry_tangent_s;
    double exit_tangent_s;
    double theta;  // resulting deflection angle
};

// Classical scattering angle Theta(alpha, mu), wrapped to (-pi, pi].
// Requires |mu| < sin(alpha) (the trajectory must touch the sphere).
double deflection_angle(double alpha, double mu);

// Exit azimuth phi_exit = 2 atan(cos(alpha) tan(beta)) - beta, |beta| <= pi/2.
double exit_angle(double alpha, double beta);

// Caustic angles; throws std::domain_error for alpha >= pi/2 (no caustic,
// the full circle of scattering angles is covered).
CausticData caustic(double alpha);

// Impact-parameter branches b+-(alpha, theta).  Sub-caustic radicand noise
// within 1e-12 is clamped; genuinely negative radicands give valid=false.
BranchPair impact_branches(double alpha, double theta, double R = 1.0);

// Closed-form derivatives db+-/dtheta (same branch order as impact_branches).
// Near caustics and theta=0 the radicals degrade; see impact_branch_slopes_fd.
BranchPair impact_branch_slopes(double alpha, double theta, double R = 1.0);

// Richardson-extrapolated central-difference fallback, one-sided in |theta|.
BranchPair impact_branch_slopes_fd(double alpha, double theta, double R = 1.0,
                                   double step = 1e-6);

// Normalized angular distribution D(alpha, theta) with unit enclosed area.
// Returns 0 outside the classical support (in_support set to false).
double normalized_diff_xsec(double alpha, double theta, bool& in_support);
double normalized_diff_xsec(double alpha, double theta);

// |db/dtheta| = 2 R sin(alpha) D(alpha, theta).
double classical_diff_xsec(double alpha, double theta, double R, bool& in_support);
double classical_diff_xsec(double alpha, double theta, double R = 1.0);

// Hard-disk baseline (a/2) sin(|theta|/2).
double hard_disk_diff_xsec(double a, double theta);

// Integral of |db/dtheta| over the classical support; equals 2 R sin(alpha).
// The integrable endpoint singularity is removed by substitution.
double classical_total_xsec(double alpha, double R = 1.0, double rel_tol = 1e-9);

// Piecewise path: incoming half-line, great-circle arc, outgoing half-line.
// Requires |beta| < pi/2; n_points >= 8 samples distributed by arc length.
TrajectorySample sample_trajectory(const SurfaceGeometry& geom, double beta,
                                   std::size_t n_points);

}  // namespace curvescat

#endif
