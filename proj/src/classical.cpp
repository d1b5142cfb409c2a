#include "curvescat/classical.hpp"

#include <algorithm>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace curvescat {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Radical building blocks of Eq. b+-(theta):
//   s = sin(|theta|/2), t = tan^2(alpha/2),
//   A = sqrt((1+s)(t+s)), B = sqrt((1-s)(t-s)).
struct Radicals {
    double s, t, c2;  // c2 = cos^2(alpha/2)
    double A, B;
    bool valid;
};

Radicals radicals(double alpha, double theta) {
    Radicals r;
    r.s = std::sin(std::abs(theta) / 2.0);
    const double ta = std::tan(alpha / 2.0);
    r.t = ta * ta;
    const double ca = std::cos(alpha / 2.0);
    r.c2 = ca * ca;
    const double ra = (1.0 + r.s) * (r.t + r.s);
    double rb = (1.0 - r.s) * (r.t - r.s);
    r.valid = true;
    if (rb < 0.0) {
        if (rb > -1e-12) {
            rb = 0.0;  // caustic-edge rounding noise
        } else {
            r.valid = false;
            rb = 0.0;
        }
    }
    r.A = std::sqrt(ra);
    r.B = std::sqrt(rb);
    return r;
}

}  // namespace

double wrap_angle(double theta) {
    double t = std::remainder(theta, two_pi);  // [-pi, pi]
    if (t <= -pi) t += two_pi;
    return t;
}

double deflection_angle(double alpha, double mu) {
    const double sa = std::sin(alpha);
    if (!(std::abs(mu) < sa))
        throw std::domain_error("deflection_angle: |mu| must be < sin(alpha)");
    const double rad = std::sqrt(sa * sa - mu * mu);
    const double theta =
        2.0 * std::asin(mu / sa) - 2.0 * std::atan2(mu * std::cos(alpha), rad);
    return wrap_angle(theta);
}

double exit_angle(double alpha, double beta) {
    if (!(std::abs(beta) <= pi / 2.0))
        throw std::domain_error("exit_angle: |beta| must be <= pi/2");
    // 2 atan(cos(alpha) tan(beta)) - beta, in atan2 form so beta = +-pi/2 works
    return 2.0 * std::atan2(std::cos(alpha) * std::sin(beta), std::cos(beta)) - beta;
}

CausticData caustic(double alpha) {
    if (!(alpha < pi / 2.0))
        throw std::domain_error("caustic: no caustic for alpha >= pi/2");
    const double ta = std::tan(alpha / 2.0);
    CausticData c;
    c.theta_c = 2.0 * std::asin(ta * ta);
    // d(theta)/d(beta) = 2 (cos(alpha) / (1 - sin^2(alpha) sin^2(beta)) - 1)
    // vanishes at sin^2(beta) = 1/(1 + cos(alpha)) = 1/(2 cos^2(alpha/2))
    c.beta_c = std::asin(1.0 / (std::sqrt(2.0) * std::cos(alpha / 2.0)));
    return c;
}

BranchPair impact_branches(double alpha, double theta, double R) {
    Radicals r = radicals(alpha, theta);
    BranchPair bp{0.0, 0.0, r.valid};
    if (!r.valid) return bp;
    // coalesce the branches inside the radical-cancellation band at the caustic
    if (alpha < pi / 2.0 &&
        std::abs(caustic(alpha).theta_c - std::abs(theta)) < 1e-9)
        r.B = 0.0;
    // theta = 0 reports the theta -> 0+ limit of the b+ branch
    const double st = (theta == 0.0) ? 1.0 : sgn(theta);
    bp.b_plus = -sgn(std::cos(alpha)) * st * R * r.c2 * (r.A + r.B);
    bp.b_minus = -st * R * r.c2 * (r.A - r.B);
    return bp;
}

BranchPair impact_branch_slopes(double alpha, double theta, double R) {
    const Radicals r = radicals(alpha, theta);
    BranchPair d{0.0, 0.0, r.valid};
    if (!r.valid) return d;
    // dA/ds and dB/ds combined analytically with ds/dtheta = cos(|theta|/2)/2
    // = sqrt((1-s)(1+s))/2 so the 1/B divergence cancels at backscatter
    const double dAc = (r.t + 1.0 + 2.0 * r.s) / 4.0 *
                       std::sqrt((1.0 - r.s) / (r.t + r.s));
    const double dBc = (r.t > r.s)
                           ? -(r.t + 1.0 - 2.0 * r.s) / 4.0 *
                                 std::sqrt((1.0 + r.s) / (r.t - r.s))
                           : -std::numeric_limits<double>::infinity();
    d.b_plus = -sgn(std::cos(alpha)) * R * r.c2 * (dAc + dBc);
    d.b_minus = -R * r.c2 * (dAc - dBc);
    return d;
}

BranchPair impact_branch_slopes_fd(double alpha, double theta, double R, double step) {
    const double th = std::abs(theta) > 0.0 ? std::abs(theta) : step;
    double theta_max = pi;
    if (alpha < pi / 2.0) theta_max = caustic(alpha).theta_c;
    double h = std::min({step, th / 2.0, (theta_max - th) / 2.0});
    if (h <= 0.0) h = step * 1e-3;
    auto diff = [&](double hh) {
        const BranchPair p1 = impact_branches(alpha, th + hh, R);
        const BranchPair p0 = impact_branches(alpha, th - hh, R);
        return std::array<double, 2>{(p1.b_plus - p0.b_plus) / (2.0 * hh),
                                     (p1.b_minus - p0.b_minus) / (2.0 * hh)};
    };
    const auto d1 = diff(h);
    const auto d2 = diff(h / 2.0);
    // b(-theta) = -b(theta), so the slopes are even in theta
    return BranchPair{(4.0 * d2[0] - d1[0]) / 3.0, (4.0 * d2[1] - d1[1]) / 3.0, true};
}

double normalized_diff_xsec(double alpha, double theta, bool& in_support) {
    const double s = std::sin(std::abs(wrap_angle(theta)) / 2.0);
    const double sh = std::sin(alpha / 2.0);
    const double ch = std::cos(alpha / 2.0);
    const double num = std::sqrt(1.0 + s) * (1.0 - 2.0 * ch * ch * s);
    const double rad = sh * sh - s * ch * ch;
    if (rad < 0.0) {
        if (rad > -1e-14 && std::abs(num) < 1e-7) {  // hemisphere backscatter corner
            in_support = true;
            return 0.0;
        }
        in_support = false;
        return 0.0;
    }
    in_support = true;
    if (rad == 0.0 && num == 0.0) return 0.0;
    return num / (8.0 * sh * std::sqrt(rad));
}

double normalized_diff_xsec(double alpha, double theta) {
    bool dummy;
    return normalized_diff_xsec(alpha, theta, dummy);
}

double classical_diff_xsec(double alpha, double theta, double R, bool& in_support) {
    return 2.0 * R * std::sin(alpha) * normalized_diff_xsec(alpha, theta, in_support);
}

double classical_diff_xsec(double alpha, double theta, double R) {
    bool dummy;
    return classical_diff_xsec(alpha, theta, R, dummy);
}

double hard_disk_diff_xsec(double a, double theta) {
    if (!(std::abs(theta) <= pi))
        throw std::domain_error("hard_disk_diff_xsec: theta must lie in [-pi, pi]");
    return 0.5 * a * std::sin(std::abs(theta) / 2.0);
}

double classical_total_xsec(double alpha, double R, double rel_tol) {
    const double theta_max = (alpha < pi / 2.0) ? caustic(alpha).theta_c : pi;
    // theta = theta_max - u^2 removes the (theta_max - theta)^{-1/2} endpoint
    // singularity exactly
    auto integrand = [&](double u) {
        const double theta = theta_max - u * u;
        if (theta <= 0.0) return 0.0;
        return 2.0 * u * classical_diff_xsec(alpha, theta, R);
    };
    using quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double half =
        quad::integrate(integrand, 0.0, std::sqrt(theta_max), 15, rel_tol);
    return 2.0 * half;  // D is even in theta
}

TrajectorySample sample_trajectory(const SurfaceGeometry& geom, double beta,
                                   std::size_t n_points) {
    if (!(std::abs(beta) < pi / 2.0))
        throw std::domain_error("sample_trajectory: |beta| must be < pi/2");
    if (n_points < 8) n_points = 8;

    const double R = geom.R;
    const double alpha = geom.alpha;
    const double sa = std::sin(alpha);
    const double ca = std::cos(alpha);
    const double b = R * sa * std::sin(beta);
    const double z_plane = R * ca;

    // entry at (rho, phi) = (alpha, pi - beta)
    const double phi_in = pi - beta;
    const std::array<double, 3> p_entry = {R * sa * std::cos(phi_in),
                                           R * sa * std::sin(phi_in), z_plane};

    // great-circle arc: p(s) = p_entry cos(s) + R u sin(s)
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    const std::array<double, 3> e_rho = {std::cos(phi_in) * ca, std::sin(phi_in) * ca,
                                         -sa};
    const std::array<double, 3> e_phi = {-std::sin(phi_in), std::cos(phi_in), 0.0};
    std::array<double, 3> u;
    for (int i = 0; i < 3; ++i) u[i] = -cb * e_rho[i] - sb * e_phi[i];
    const double s_arc_max = 2.0 * std::atan2(sa * cb, ca);

    const double phi_out = exit_angle(alpha, beta);
    const double theta = wrap_angle(2.0 * std::atan2(ca * sb, cb) - 2.0 * beta);
    const std::array<double, 3> p_exit = {R * sa * std::cos(phi_out),
                                          R * sa * std::sin(phi_out), z_plane};

    const double L_line = 3.0 * R * sa + R;  // generous lead-in/out
    const double L_arc = R * s_arc_max;
    const double L_total = 2.0 * L_line + L_arc;

    TrajectorySample out;
    out.theta = theta;
    const std::size_t n_in =
        std::max<std::size_t>(2, static_cast<std::size_t>(n_points * L_line / L_total));
    const std::size_t n_out = n_in;
    const std::size_t n_arc = std::max<std::size_t>(4, n_points - n_in - n_out);

    double s_cum = 0.0;
    auto push = [&](const std::array<double, 3>& p, int seg, double ds) {
        s_cum += ds;
        out.points.push_back(p);
        out.arc_lengths.push_back(s_cum);
        out.segment.push_back(seg);
    };

    // incoming half-line along +x at height z_plane, offset y = b
    const double x_entry = p_entry[0];
    for (std::size_t i = 0; i < n_in; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n_in);
        const double x = (x_entry - L_line) + f * L_line;
        push({x, b, z_plane}, 0, i == 0 ? 0.0 : L_line / n_in);
    }

    // arc, uniform in the great-circle angle (constant speed)
    for (std::size_t i = 0; i <= n_arc; ++i) {
        const double s = s_arc_max * static_cast<double>(i) / static_cast<double>(n_arc);
        std::array<double, 3> p;
        for (int k = 0; k < 3; ++k)
            p[k] = p_entry[k] * std::cos(s) + R * u[k] * std::sin(s);
        push(p, 1, i == 0 ? 0.0 : L_arc / n_arc);
    }

    // outgoing half-line in direction theta
    const std::array<double, 2> dir = {std::cos(theta), std::sin(theta)};
    for (std::size_t i = 1; i <= n_out; ++i) {
        const double tau = L_line * static_cast<double>(i) / static_cast<double>(n_out);
        push({p_exit[0] + tau * dir[0], p_exit[1] + tau * dir[1], z_plane}, 2,
             L_line / n_out);
    }

    // tangent markers: perpendicular tangents to the contact circle on the
    // incident and scattered directions (the thick-path delimiters)
    const double s_entry_line = L_line - (x_entry - (-R * sa));  // crossing x = -R sa
    out.entry_tangent_s = s_entry_line;
    const double proj = p_exit[0] * dir[0] + p_exit[1] * dir[1];
    out.exit_tangent_s = L_line + L_arc + (R * sa - proj);
    return out;
}

}  // namespace curvescat
