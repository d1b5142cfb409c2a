#include "curvescat/semiclassical.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "curvescat/classical.hpp"
#include "curvescat/parallel.hpp"

namespace curvescat {

namespace {

constexpr double pi = std::numbers::pi;

double principal(double d) {
    d = std::remainder(d, pi);
    if (d <= -pi / 2.0) d += pi;
    return d;
}

}  // namespace

double path_length_delta(double alpha, double mu) {
    const double sa = std::sin(alpha);
    if (!(std::abs(mu) <= sa))
        throw std::domain_error("path_length_delta: |mu| must be <= sin(alpha)");
    const double rad = std::max(0.0, sa * sa - mu * mu);
    double arg = std::cos(alpha) / std::sqrt(std::max(1e-300, 1.0 - mu * mu));
    arg = std::clamp(arg, -1.0, 1.0);
    return 2.0 * std::acos(arg) - 2.0 * std::sqrt(rad);
}

double turning_point(double alpha, double mu) {
    const double am = std::abs(mu);
    if (am < std::sin(alpha)) return std::asin(am);
    return alpha - std::sin(alpha) + am;
}

WkbjPhase wkbj_phase(double alpha, double kR, int m) {
    if (!(kR > 0.0)) throw std::domain_error("wkbj_phase: kR must be positive");
    WkbjPhase p;
    p.mu = static_cast<double>(m) / kR;
    p.rho0 = turning_point(alpha, p.mu);
    if (!(std::abs(p.mu) < std::sin(alpha))) {
        p.delta = 0.0;  // planar turning point: no phase accumulated
        p.Delta = 0.0;
        p.Theta = 0.0;
        return p;
    }
    p.Delta = path_length_delta(alpha, p.mu);
    p.Theta = deflection_angle(alpha, p.mu);
    p.delta = 0.5 * kR * p.Delta - 0.5 * m * p.Theta;
    return p;
}

PhaseShiftTable wkbj_phase_table(double alpha, double kR) {
    PhaseShiftTable table;
    table.alpha = alpha;
    table.kR = kR;
    table.method = PhaseShiftTable::Method::wkbj;
    table.m_max = static_cast<int>(std::ceil(kR * std::sin(alpha))) + 1;
    table.delta.resize(static_cast<std::size_t>(table.m_max) + 1);
    for (int m = 0; m <= table.m_max; ++m)
        table.delta[static_cast<std::size_t>(m)] = principal(wkbj_phase(alpha, kR, m).delta);
    return table;
}

std::complex<double> forward_spike(double alpha, double kR, double theta) {
    const double n = std::floor(kR * std::sin(alpha));
    const double half = std::sin(theta / 2.0);
    if (std::abs(half) < 1e-12) return {0.0, 0.5 * (2.0 * n + 1.0)};
    return {0.0, 0.5 * std::sin((n + 0.5) * theta) / half};
}

std::complex<double> stationary_phase_amplitude(double alpha, double kR, double theta) {
    theta = wrap_angle(theta);
    if (alpha < pi / 2.0) {
        const double guard = 3.0 * std::pow(kR, -2.0 / 3.0);
        if (std::abs(theta) >= caustic(alpha).theta_c - guard)
            throw std::domain_error(
                "stationary_phase_amplitude: theta inside the caustic guard band");
    }
    const BranchPair b = impact_branches(alpha, theta, 1.0);
    if (!b.valid)
        throw std::domain_error("stationary_phase_amplitude: no classical paths");
    const BranchPair db = impact_branch_slopes(alpha, theta, 1.0);

    const double sa = std::sin(alpha);
    auto term = [&](double bv, double slope) -> std::complex<double> {
        const double mu = std::clamp(-bv, -sa, sa);
        const double phase = kR * path_length_delta(alpha, mu) +
                             0.25 * pi * ((slope > 0.0) - (slope < 0.0));
        return std::sqrt(std::abs(slope)) *
               std::complex<double>(std::cos(phase), std::sin(phase));
    };
    const std::complex<double> sum =
        term(b.b_plus, db.b_plus) + term(b.b_minus, db.b_minus);
    return std::complex<double>(0.0, -1.0) * std::sqrt(pi * kR / 2.0) * sum;
}

AmplitudeGrid sc_diff_xsec(double alpha, double kR, std::span<const double> thetas,
                           ScRoute route) {
    if (route == ScRoute::summed) {
        AmplitudeGrid grid = amplitude(wkbj_phase_table(alpha, kR), thetas);
        grid.method = "wkbj";
        return grid;
    }
    AmplitudeGrid grid;
    grid.thetas.assign(thetas.begin(), thetas.end());
    grid.f.resize(thetas.size());
    grid.dsigma.resize(thetas.size());
    grid.method = "wkbj-stationary";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    parallel_for(thetas.size(), [&](std::size_t i) {
        try {
            const std::complex<double> f =
                forward_spike(alpha, kR, grid.thetas[i]) +
                stationary_phase_amplitude(alpha, kR, grid.thetas[i]);
            grid.f[i] = f;
            grid.dsigma[i] = 2.0 * std::norm(f) / (pi * kR);
        } catch (const std::domain_error&) {
            grid.f[i] = {nan, nan};
            grid.dsigma[i] = nan;
        }
    });
    return grid;
}

double sc_total_xsec(double alpha, double kR) {
    if (!(kR > 0.0)) throw std::domain_error("sc_total_xsec: kR must be positive");
    const double osc =
        std::cos(2.0 * kR * (alpha - std::sin(alpha)) - 0.25 * pi);
    return 4.0 * std::sin(alpha) -
           2.0 * std::sqrt(pi / (std::tan(alpha / 2.0) * kR)) * osc;
}

}  // namespace curvescat
