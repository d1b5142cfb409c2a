#ifndef CURVESCAT_SPECFUN_HPP
#define CURVESCAT_SPECFUN_HPP

#include <stdexcept>
#include <vector>

namespace curvescat {

// Thrown when Y_m(x) leaves the representable range (m >> x).  Callers in
// the partial-wave machinery treat the corresponding delta_m as exactly 0.
struct bessel_overflow : std::range_error {
    using std::range_error::range_error;
};

// J_m, Y_m and their derivatives at a common positive argument.
struct BesselPair {
    double j;
    double y;
    double jp;
    double yp;
    int m;
    double x;
};

// Single-order evaluation.  Throws std::domain_error for x <= 0 and
// bessel_overflow when Y_m is not representable.
BesselPair bessel_jy(int m, double x);

// All orders 0..m_max at fixed x in O(m_max): downward Miller recurrence
// with sum-rule normalization for J, upward recurrence from (Y0, Y1) for Y.
// Orders past an overflow in Y are truncated from the result.
std::vector<BesselPair> bessel_jy_all_orders(int m_max, double x);

// Cheap predicate: the centrifugal barrier keeps the partial wave away from
// the scatterer, so delta_m is numerically zero and the caller may skip the
// Bessel/interior evaluation entirely.
bool phase_shift_negligible(int m, double kR, double margin = 0.05);

// Degree lambda(kR) of the interior Legendre solution,
// lambda(lambda+1) = (kR)^2.
double legendre_degree(double kR);

// Logarithmic derivative of the regular interior solution at the junction.
struct InteriorSolution {
    double lambda;
    int m_abs;
    double log_deriv;  // d/drho ln psi_m at rho = alpha
    bool pole;         // interior solution vanishes at alpha; use 1/L matching
    enum class Method { ode, series } method = Method::ode;
};

// Integrates the interior radial equation from rho = 1e-6 with the regular
// sin^|m| initialization and returns psi'/psi at rho = alpha.  Depends on m
// only through |m|.
InteriorSolution interior_log_derivative(double kR, int m, double alpha,
                                         double rel_tol = 1e-11);

}  // namespace curvescat

#endif
