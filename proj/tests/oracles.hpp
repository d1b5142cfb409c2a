// Independent brute-force oracles used only by the test suite.
#ifndef CURVESCAT_TEST_ORACLES_HPP
#define CURVESCAT_TEST_ORACLES_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace curvescat::oracles {

inline constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Ferrers / hypergeometric series for the interior log-derivative.
// psi = sin^m(rho) * S(z), z = (1 - cos rho)/2,
// S = 2F1(m - lambda, lambda + m + 1; m + 1; z), lambda(lambda+1) = (kR)^2.
// Converges for z < 1; usable in double precision while the alternating-term
// cancellation stays moderate (kR up to ~12).
// ---------------------------------------------------------------------------
struct Hyp2F1 {
    double value;
    double deriv;  // dS/dz
};

inline Hyp2F1 hyp2f1_with_derivative(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    double dterm, dsum = a * b / c;
    dterm = dsum;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (n >= 1) {
            dterm *= (a + n) * (b + n) / ((c + n) * n) * z;
            dsum += dterm;
        }
        if (std::abs(term) < 1e-18 * std::abs(sum) &&
            std::abs(dterm) < 1e-18 * std::abs(dsum) && n > 4)
            return {sum, dsum};
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

inline double series_log_derivative(double kR, int m, double alpha) {
    const double lambda = std::sqrt(kR * kR + 0.25) - 0.5;
    const double z = (1.0 - std::cos(alpha)) / 2.0;
    const auto s = hyp2f1_with_derivative(m - lambda, lambda + m + 1.0, m + 1.0, z);
    // d/drho ln psi = m cot(rho) + (sin(rho)/2) S'/S
    return m * std::cos(alpha) / std::sin(alpha) +
           std::sin(alpha) / 2.0 * s.deriv / s.value;
}

// ---------------------------------------------------------------------------
// Fixed-step RK4 helper for 2-component linear systems.
// ---------------------------------------------------------------------------
template <typename Rhs>
inline void rk4_step(std::array<double, 2>& y, double& t, double h, Rhs rhs) {
    const auto k1 = rhs(y, t);
    const std::array<double, 2> y2{y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]};
    const auto k2 = rhs(y2, t + h / 2);
    const std::array<double, 2> y3{y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]};
    const auto k3 = rhs(y3, t + h / 2);
    const std::array<double, 2> y4{y[0] + h * k3[0], y[1] + h * k3[1]};
    const auto k4 = rhs(y4, t + h);
    y[0] += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    y[1] += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    t += h;
}

// ---------------------------------------------------------------------------
// Full-domain ODE phase-shift oracle: integrate the radial equation across
// the sphere and out along the plane to k r = 60, then fit A J_m + B Y_m to
// (psi, psi'); delta = -atan2(B, A) mod pi.  Entirely independent of the
// junction-matching production path (fixed-step RK4, fit far from rho=alpha).
// ---------------------------------------------------------------------------
inline double ode_phase_shift(double alpha, double kR, int m) {
    m = std::abs(m);
    const double rho0 = 1e-6;
    const double c2 = (m * (m + 1.0) - kR * kR) / (4.0 * (m + 1.0));

    // sphere, stage 1: w = psi / sin^m on a log-graded mesh up to the
    // turning point (w is O(1) and smooth there)
    double rho_sw = rho0;
    if (m > 0)
        rho_sw = (m >= 0.999 * kR) ? alpha
                                   : std::min(alpha, std::asin(m / kR));
    if (rho_sw < rho0) rho_sw = rho0;

    std::array<double, 2> w{1.0 + c2 * rho0 * rho0, 2.0 * c2 * rho0};
    double rho = rho0;
    auto rhs_w = [&](const std::array<double, 2>& y, double t) {
        const double cot = std::cos(t) / std::sin(t);
        return std::array<double, 2>{
            y[1], -(2.0 * m + 1.0) * cot * y[1] - (kR * kR - m * (m + 1.0)) * y[0]};
    };
    if (rho_sw > rho0 * (1.0 + 1e-12)) {
        const int n1 = 40000;
        const double r = std::pow(rho_sw / rho0, 1.0 / n1);
        for (int i = 0; i < n1; ++i) rk4_step(w, rho, rho * (r - 1.0), rhs_w);
        rho = rho_sw;
    }

    // sphere, stage 2: psi itself from the turning point to alpha
    std::array<double, 2> psi{
        w[0], w[1] + m * std::cos(rho_sw) / std::sin(rho_sw) * w[0]};
    auto rhs_psi = [&](const std::array<double, 2>& y, double t) {
        const double s = std::sin(t);
        return std::array<double, 2>{
            y[1], -std::cos(t) / s * y[1] - (kR * kR - m * m / (s * s)) * y[0]};
    };
    if (rho_sw < alpha) {
        const double h_target = (2.0 * pi / std::max(kR, 4.0)) / 800.0;
        const int n2 = std::max(4000, static_cast<int>((alpha - rho_sw) / h_target));
        const double h = (alpha - rho_sw) / n2;
        for (int i = 0; i < n2; ++i) rk4_step(psi, rho, h, rhs_psi);
    }

    // plane: u = rho - alpha + sin(alpha), Bessel's equation
    auto rhs_plane = [&](const std::array<double, 2>& y, double t) {
        return std::array<double, 2>{
            y[1], -y[1] / t - (kR * kR - m * m / (t * t)) * y[0]};
    };
    double u = std::sin(alpha);
    const double u_end = std::max(60.0 / kR, u + 1.0);
    {
        const double h_target = (2.0 * pi / std::max(kR, 4.0)) / 800.0;
        const int n3 = std::max(4000, static_cast<int>((u_end - u) / h_target));
        const double h = (u_end - u) / n3;
        for (int i = 0; i < n3; ++i) {
            rk4_step(psi, u, h, rhs_plane);
            const double mag = std::max(std::abs(psi[0]), std::abs(psi[1]));
            if (mag > 1e250) {
                psi[0] /= mag;
                psi[1] /= mag;
            }
        }
    }

    const double x = kR * u_end;
    const double jm = std::cyl_bessel_j(static_cast<double>(m), x);
    const double ym = std::cyl_neumann(static_cast<double>(m), x);
    const double jm1 = (m == 0) ? -std::cyl_bessel_j(1.0, x)
                                : std::cyl_bessel_j(static_cast<double>(m - 1), x);
    const double ym1 = (m == 0) ? -std::cyl_neumann(1.0, x)
                                : std::cyl_neumann(static_cast<double>(m - 1), x);
    const double jp = jm1 - m / x * jm;
    const double yp = ym1 - m / x * ym;
    // psi = A J + B Y, psi'(d/du) = kR (A J' + B Y'); Wronskian J Y' - Y J' = 2/(pi x)
    const double wron = 2.0 / (pi * x);
    const double A = (psi[0] * yp - psi[1] / kR * ym) / wron;
    const double B = (psi[1] / kR * jm - psi[0] * jp) / wron;
    double d = -std::atan2(B, A);
    d = std::remainder(d, pi);
    if (d <= -pi / 2.0) d += pi;
    return d;
}

// ---------------------------------------------------------------------------
// Azimuthal sweep of the spherical geodesic arc by quadrature,
//   |dphi| = 2 |mu| Int_{rho_t}^{alpha} drho / (sin rho sqrt(sin^2 rho - mu^2)),
// with rho = rho_t + u^2 removing the turning-point singularity.
// ---------------------------------------------------------------------------
inline double sphere_sweep_quadrature(double alpha, double mu) {
    const double am = std::abs(mu);
    if (!(am < std::sin(alpha)))
        throw std::domain_error("sphere_sweep_quadrature: |mu| must be < sin(alpha)");
    if (am == 0.0) return 0.0;
    const double rho_t = std::asin(am);
    const double umax = std::sqrt(alpha - rho_t);
    // integrand in u: 2 * 2u * mu / (sin(rho) sqrt(sin^2 rho - mu^2)); the
    // sqrt vanishes like u at u=0, cancelled by the 2u factor.  Composite
    // Simpson on a fine grid is ample for oracle duty.
    const int n = 200000;
    auto f = [&](double u) {
        const double rho = rho_t + u * u;
        const double s = std::sin(rho);
        const double rad = s * s - mu * mu;
        if (rad <= 0.0 || u == 0.0) {
            // u -> 0 limit: sin^2(rho) - mu^2 ~ 2 sin(rho_t) cos(rho_t) u^2
            const double lim = 2.0 * std::sin(rho_t) * std::cos(rho_t);
            return 2.0 * 2.0 * am / (std::sin(rho_t) * std::sqrt(lim));
        }
        return 2.0 * 2.0 * u * am / (s * std::sqrt(rad));
    };
    const double h = umax / n;
    double sum = f(0.0) + f(umax);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return sum * h / 3.0;
}

// ---------------------------------------------------------------------------
// Bisection inversion of the deflection angle on a monotone mu interval.
// ---------------------------------------------------------------------------
template <typename F>
inline double bisect(F f, double lo, double hi, double tol = 1e-14) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace curvescat::oracles

#endif
