#include "curvescat/specfun.hpp"

#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

namespace curvescat {

namespace {

constexpr double overflow_guard = 1e280;

// J'_m = J_{m-1} - (m/x) J_m, with J_{-1} = -J_1 (same relation for Y)
double deriv(double f_prev, double f, int m, double x) {
    return f_prev - static_cast<double>(m) / x * f;
}

}  // namespace

std::vector<BesselPair> bessel_jy_all_orders(int m_max, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_jy_all_orders: x must be positive");
    if (m_max < 0) throw std::domain_error("bessel_jy_all_orders: m_max must be >= 0");

    // --- J by downward Miller recurrence with sum-rule normalization ---
    const int base = static_cast<int>(std::ceil(std::max(static_cast<double>(m_max), x)));
    int start = base + 16 + static_cast<int>(std::ceil(3.0 * std::sqrt(base + 1.0)));
    if (start % 2) ++start;  // even start keeps the sum rule bookkeeping simple

    std::vector<double> j(static_cast<std::size_t>(m_max) + 1, 0.0);
    double jp2 = 0.0;        // J_{k+1}
    double jp1 = 1e-300;     // J_k (arbitrary scale)
    double sum = 0.0;        // J_0 + 2 sum_{even k >= 2} J_k = 1
    for (int k = start; k >= 1; --k) {
        const double jm = 2.0 * k / x * jp1 - jp2;
        jp2 = jp1;
        jp1 = jm;
        const int mm = k - 1;
        if (mm <= m_max) j[static_cast<std::size_t>(mm)] = jm;
        if (mm > 0 && mm % 2 == 0) sum += 2.0 * jm;
        if (std::abs(jp1) > overflow_guard) {  // rescale the running pair
            const double inv = 1.0 / std::abs(jp1);
            jp1 *= inv;
            jp2 *= inv;
            sum *= inv;
            for (auto& v : j) v *= inv;
        }
    }
    sum += jp1;  // jp1 now holds the unnormalized J_0
    const double scale = 1.0 / sum;
    for (auto& v : j) v *= scale;

    // --- Y by upward recurrence from (Y0, Y1) ---
    std::vector<double> y(static_cast<std::size_t>(m_max) + 1, 0.0);
    y[0] = std::cyl_neumann(0.0, x);
    int y_limit = m_max;
    if (m_max >= 1) {
        y[1] = std::cyl_neumann(1.0, x);
        for (int m = 1; m < m_max; ++m) {
            const double next = 2.0 * m / x * y[static_cast<std::size_t>(m)] -
                                y[static_cast<std::size_t>(m - 1)];
            if (!std::isfinite(next) || std::abs(next) > overflow_guard) {
                y_limit = m;
                break;
            }
            y[static_cast<std::size_t>(m + 1)] = next;
        }
    }

    std::vector<BesselPair> out;
    out.reserve(static_cast<std::size_t>(y_limit) + 1);
    for (int m = 0; m <= y_limit; ++m) {
        BesselPair p;
        p.m = m;
        p.x = x;
        p.j = j[static_cast<std::size_t>(m)];
        p.y = y[static_cast<std::size_t>(m)];
        if (m == 0) {
            p.jp = -j[1 <= m_max ? 1 : 0];
            if (m_max == 0) p.jp = -std::cyl_bessel_j(1.0, x);
            p.yp = -std::cyl_neumann(1.0, x);
        } else {
            p.jp = deriv(j[static_cast<std::size_t>(m - 1)], p.j, m, x);
            p.yp = deriv(y[static_cast<std::size_t>(m - 1)], p.y, m, x);
        }
        out.push_back(p);
    }
    return out;
}

BesselPair bessel_jy(int m, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_jy: x must be positive");
    m = std::abs(m);
    const double j = std::cyl_bessel_j(static_cast<double>(m), x);
    const double y = std::cyl_neumann(static_cast<double>(m), x);
    if (!std::isfinite(y) || std::abs(y) > overflow_guard)
        throw bessel_overflow(
            "bessel_jy: Y_m out of range (m >> x); treat the phase shift as 0");
    const double jm1 = (m == 0) ? -std::cyl_bessel_j(1.0, x)
                                : std::cyl_bessel_j(static_cast<double>(m - 1), x);
    const double ym1 = (m == 0) ? -std::cyl_neumann(1.0, x)
                                : std::cyl_neumann(static_cast<double>(m - 1), x);
    BesselPair p;
    p.m = m;
    p.x = x;
    p.j = j;
    p.y = y;
    p.jp = (m == 0) ? jm1 : deriv(jm1, j, m, x);
    p.yp = (m == 0) ? ym1 : deriv(ym1, y, m, x);
    return p;
}

bool phase_shift_negligible(int m, double kR, double margin) {
    return std::abs(m) > kR * (1.0 + margin) + 40.0;
}

double legendre_degree(double kR) {
    return std::sqrt(kR * kR + 0.25) - 0.5;
}

InteriorSolution interior_log_derivative(double kR, int m, double alpha,
                                         double rel_tol) {
    if (!(alpha > 0.0 && alpha < std::numbers::pi))
        throw std::domain_error("interior_log_derivative: alpha must lie in (0, pi)");
    if (!(kR > 0.0))
        throw std::domain_error("interior_log_derivative: kR must be positive");
    const int ma = std::abs(m);

    // Substituting psi = sin^|m|(rho) w(rho) into the interior radial equation
    // gives the regular, non-stiff form
    //   w'' + (2|m|+1) cot(rho) w' + ((kR)^2 - m(m+1)) w = 0,
    // with psi'/psi = |m| cot(rho) + w'/w.  The w form is well conditioned
    // only while sin^|m|(rho) tracks psi (the inner evanescent region): past
    // the turning point psi oscillates at fixed amplitude, so w sweeps many
    // orders of magnitude and relative-error control loses the solution.
    // There we switch to integrating psi itself, an O(1) oscillator.
    const double coeff = kR * kR - static_cast<double>(ma) * (ma + 1.0);
    using state = std::array<double, 2>;
    auto rhs_w = [&](const state& w, state& dw, double rho) {
        const double cot = std::cos(rho) / std::sin(rho);
        dw[0] = w[1];
        dw[1] = -(2.0 * ma + 1.0) * cot * w[1] - coeff * w[0];
    };
    auto rhs_psi = [&](const state& p, state& dp, double rho) {
        const double s = std::sin(rho);
        const double cot = std::cos(rho) / s;
        dp[0] = p[1];
        dp[1] = -cot * p[1] -
                (kR * kR - static_cast<double>(ma) * ma / (s * s)) * p[0];
    };

    const double rho0 = 1e-6;
    const double c2 = (static_cast<double>(ma) * (ma + 1.0) - kR * kR) /
                      (4.0 * (ma + 1.0));
    state w{1.0 + c2 * rho0 * rho0, 2.0 * c2 * rho0};

    // inner turning point sin(rho*) = |m|/kR bounds the w-form region
    double rho_switch = rho0;
    if (ma > 0) {
        rho_switch =
            (ma >= 0.999 * kR) ? alpha : std::min(alpha, std::asin(ma / kR));
        if (rho_switch < rho0) rho_switch = rho0;
    }

    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<state>>(1e-14, rel_tol);
    auto renorm = [](state& s) {
        const double mag = std::max(std::abs(s[0]), std::abs(s[1]));
        if (mag > 1e200 || (mag > 0.0 && mag < 1e-200)) {
            s[0] /= mag;
            s[1] /= mag;
        }
    };
    if (rho_switch > rho0) {
        const int n_seg = 4;
        double lo = rho0;
        for (int seg = 0; seg < n_seg; ++seg) {
            const double hi = rho0 + (rho_switch - rho0) * (seg + 1.0) / n_seg;
            ode::integrate_adaptive(stepper, rhs_w, w, lo, hi, (hi - lo) / 64.0);
            renorm(w);
            lo = hi;
        }
    }

    // psi = sin^|m| w up to an overall constant, which drops out of the
    // log-derivative
    const double cot_s = std::cos(rho_switch) / std::sin(rho_switch);
    state psi{w[0], w[1] + ma * cot_s * w[0]};
    if (rho_switch < alpha) {
        const int n_seg = 16;
        double lo = rho_switch;
        for (int seg = 0; seg < n_seg; ++seg) {
            const double hi =
                rho_switch + (alpha - rho_switch) * (seg + 1.0) / n_seg;
            ode::integrate_adaptive(stepper, rhs_psi, psi, lo, hi,
                                    (hi - lo) / 64.0);
            renorm(psi);
            lo = hi;
        }
    } else {
        // w form carried all the way to alpha (|m| >= kR sin alpha region)
        const double cot_a = std::cos(alpha) / std::sin(alpha);
        psi = {w[0], w[1] + ma * cot_a * w[0]};
    }

    InteriorSolution sol;
    sol.lambda = legendre_degree(kR);
    sol.m_abs = ma;
    sol.method = InteriorSolution::Method::ode;
    if (psi[0] == 0.0 || std::abs(psi[1] / psi[0]) > 1e12) {
        sol.pole = true;
        sol.log_deriv = std::numeric_limits<double>::infinity();
        return sol;
    }
    sol.pole = false;
    sol.log_deriv = psi[1] / psi[0];
    return sol;
}

}  // namespace curvescat
