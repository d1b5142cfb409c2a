#include "curvescat/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "curvescat/parallel.hpp"
#include "curvescat/semiclassical.hpp"
#include "curvescat/specfun.hpp"

namespace curvescat {

namespace {

constexpr double pi = std::numbers::pi;

// principal value in (-pi/2, pi/2]; observables only depend on delta mod pi
double principal(double d) {
    d = std::remainder(d, pi);
    if (d <= -pi / 2.0) d += pi;
    return d;
}

double delta_from_matching(double kR, const BesselPair& bp, const InteriorSolution& in) {
    double num, den;
    if (in.pole || std::abs(in.log_deriv) > 1e10) {
        // interior solution vanishes at the junction: the L terms dominate
        num = bp.j;
        den = bp.y;
    } else {
        num = kR * bp.jp - in.log_deriv * bp.j;
        den = kR * bp.yp - in.log_deriv * bp.y;
    }
    return principal(std::atan2(num, den));
}

}  // namespace

double phase_shift(double alpha, double kR, int m, double ode_rtol) {
    if (!(kR > 0.0)) throw std::domain_error("phase_shift: kR must be positive");
    m = std::abs(m);
    if (phase_shift_negligible(m, kR)) return 0.0;
    const double x = kR * std::sin(alpha);
    BesselPair bp;
    try {
        bp = bessel_jy(m, x);
    } catch (const bessel_overflow&) {
        return 0.0;  // deep centrifugal suppression
    }
    const InteriorSolution in = interior_log_derivative(kR, m, alpha, ode_rtol);
    return delta_from_matching(kR, bp, in);
}

PhaseShiftTable phase_table(double alpha, double kR, const PhaseConfig& cfg) {
    if (!(kR > 0.0)) throw std::domain_error("phase_table: kR must be positive");
    const double x = kR * std::sin(alpha);
    const int buffer = std::max(cfg.m_buffer_min,
                                static_cast<int>(std::ceil(4.0 * std::cbrt(kR))));
    int m_max = static_cast<int>(std::ceil(x)) + buffer;

    PhaseShiftTable table;
    table.alpha = alpha;
    table.kR = kR;
    table.method = PhaseShiftTable::Method::exact;

    for (;;) {
        const auto bessels = bessel_jy_all_orders(m_max, x);
        const int usable = static_cast<int>(bessels.size()) - 1;

        table.delta.assign(static_cast<std::size_t>(m_max) + 1, 0.0);
        parallel_for(
            static_cast<std::size_t>(std::min(m_max, usable)) + 1,
            [&](std::size_t mi) {
                const int m = static_cast<int>(mi);
                if (phase_shift_negligible(m, kR)) return;
                const InteriorSolution in =
                    interior_log_derivative(kR, m, alpha, cfg.ode_rtol);
                table.delta[mi] = delta_from_matching(kR, bessels[mi], in);
            },
            cfg.threads);

        const double tail = std::sin(table.delta.back());
        if (tail * tail < cfg.tail_tol) break;
        m_max += std::max(8, m_max / 4);
        if (m_max > cfg.m_hard_cap)
            throw std::runtime_error("phase_table: tail criterion not met");
    }
    table.m_max = m_max;
    return table;
}

AmplitudeGrid amplitude(const PhaseShiftTable& table, std::span<const double> thetas,
                        int threads) {
    for (std::size_t i = 1; i < thetas.size(); ++i)
        if (!(thetas[i] > thetas[i - 1]))
            throw std::invalid_argument("amplitude: theta grid must be increasing");

    AmplitudeGrid grid;
    grid.thetas.assign(thetas.begin(), thetas.end());
    grid.f.resize(thetas.size());
    grid.dsigma.resize(thetas.size());
    grid.method = table.method == PhaseShiftTable::Method::exact ? "quantum" : "wkbj";

    // precompute sin(delta) e^{i delta}; fold m and -m into a cosine
    std::vector<std::complex<double>> coef(table.delta.size());
    for (std::size_t mi = 0; mi < table.delta.size(); ++mi) {
        const double d = table.delta[mi];
        coef[mi] = std::sin(d) * std::complex<double>(std::cos(d), std::sin(d));
    }

    parallel_for(
        thetas.size(),
        [&](std::size_t i) {
            const double th = grid.thetas[i];
            std::complex<double> f = coef[0];
            for (std::size_t mi = 1; mi < coef.size(); ++mi)
                f += 2.0 * coef[mi] * std::cos(mi * th);
            grid.f[i] = f;
            grid.dsigma[i] = 2.0 * std::norm(f) / (pi * table.kR);
        },
        threads);
    return grid;
}

double total_xsec(const PhaseShiftTable& table) {
    double s = 0.0;
    for (std::size_t mi = table.delta.size(); mi-- > 1;) {
        const double sd = std::sin(table.delta[mi]);
        s += 2.0 * sd * sd;
    }
    const double sd0 = std::sin(table.delta[0]);
    s += sd0 * sd0;
    return 4.0 / table.kR * s;
}

std::vector<double> make_theta_grid(int n, bool refine_forward, double kR_sin_alpha) {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(n) * 2);
    for (int i = 1; i <= n; ++i)
        g.push_back(-pi + 2.0 * pi * static_cast<double>(i) / n);  // (-pi, pi]
    if (refine_forward && kR_sin_alpha > 0.0) {
        const double w = 10.0 / kR_sin_alpha;
        for (int i = 0; i <= n / 4; ++i)
            g.push_back(-w + 2.0 * w * static_cast<double>(i) / (n / 4));
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                g.end());
    }
    return g;
}

namespace {

struct Sample {
    double kR;
    double sigma;
};

// prominence baseline: the higher of the two windowed minima flanking the
// candidate (insensitive to the nonuniform sample spacing)
double flank_baseline(const std::vector<Sample>& s, std::size_t center,
                      double half_width) {
    const double k0 = s[center].kR;
    double lo_min = s[center].sigma, hi_min = s[center].sigma;
    for (std::size_t i = center; i-- > 0;) {
        if (k0 - s[i].kR > half_width) break;
        lo_min = std::min(lo_min, s[i].sigma);
    }
    for (std::size_t i = center + 1; i < s.size(); ++i) {
        if (s[i].kR - k0 > half_width) break;
        hi_min = std::min(hi_min, s[i].sigma);
    }
    return std::max(lo_min, hi_min);
}

}  // namespace

ScanResult sigma_scan(double alpha, double kR_min, double kR_max, int n,
                      const PhaseConfig& cfg, double prominence_threshold) {
    if (!(kR_min > 0.0 && kR_min < kR_max))
        throw std::domain_error("sigma_scan: need 0 < kR_min < kR_max");
    if (n < 2) n = 2;

    std::vector<double> ks;
    ks.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ks.push_back(kR_min + (kR_max - kR_min) * static_cast<double>(i) / (n - 1));

    // for super-hemispheres refine around every sqrt(l(l+1)) in range: the
    // tunnelling resonances narrow quickly with l and alpha -> pi
    std::vector<double> res_centers;
    if (alpha > pi / 2.0) {
        for (int l = 1;; ++l) {
            const double c = std::sqrt(static_cast<double>(l) * (l + 1.0));
            if (c > kR_max + 0.2) break;
            if (c < kR_min - 0.2) continue;
            res_centers.push_back(c);
            double lo = std::max(kR_min, c - 0.1), hi = std::min(kR_max, c + 0.1);
            double width = hi - lo;
            for (int level = 0; level < 3; ++level) {
                const int fine = 20;
                for (int i = 0; i <= fine; ++i)
                    ks.push_back(lo + width * static_cast<double>(i) / fine);
                // zoom the next level onto the center third
                const double mid = 0.5 * (lo + hi);
                width /= 6.0;
                lo = std::max(kR_min, mid - width);
                hi = std::min(kR_max, mid + width);
                width = hi - lo;
            }
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

    std::vector<Sample> samples(ks.size());
    parallel_for(
        ks.size(),
        [&](std::size_t i) {
            samples[i] = {ks[i], total_xsec(phase_table(alpha, ks[i], cfg))};
        },
        cfg.threads);

    ScanResult out;
    out.kR_samples.reserve(samples.size());
    out.sigma_over_R.reserve(samples.size());
    out.sigma_sc_over_R.reserve(samples.size());
    for (const auto& s : samples) {
        out.kR_samples.push_back(s.kR);
        out.sigma_over_R.push_back(s.sigma);
        out.sigma_sc_over_R.push_back(sc_total_xsec(alpha, s.kR));
    }

    // peak detection runs on the residual sigma - sigma~_SC: the smooth
    // semiclassical background oscillates with period pi/(alpha - sin alpha)
    // and would otherwise masquerade as (or mask) resonance structure
    std::vector<Sample> residual(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        residual[i] = {samples[i].kR, samples[i].sigma - out.sigma_sc_over_R[i]};

    for (std::size_t i = 1; i + 1 < residual.size(); ++i) {
        if (!(residual[i].sigma > residual[i - 1].sigma &&
              residual[i].sigma >= residual[i + 1].sigma))
            continue;
        const double prom = residual[i].sigma - flank_baseline(residual, i, 0.4);
        if (prom < prominence_threshold) continue;
        // keep only the dominant sample of a cluster
        if (!out.peaks.empty() && std::abs(out.peaks.back().kR - samples[i].kR) < 0.3) {
            if (out.peaks.back().prominence >= prom) continue;
            out.peaks.pop_back();
        }
        Peak p;
        // report the raw-sigma maximum near the residual peak; the residual
        // slope can displace the extremum of broad resonances slightly
        p.kR = samples[i].kR;
        double best = samples[i].sigma;
        for (std::size_t j = 0; j < samples.size(); ++j)
            if (std::abs(samples[j].kR - samples[i].kR) <= 0.1 &&
                samples[j].sigma > best) {
                best = samples[j].sigma;
                p.kR = samples[j].kR;
            }
        p.prominence = prom;
        if (alpha > pi / 2.0) {
            const double ell = (std::sqrt(4.0 * p.kR * p.kR + 1.0) - 1.0) / 2.0;
            p.l = static_cast<int>(std::lround(ell));
            p.nearest_sqrt_ll = std::sqrt(static_cast<double>(p.l) * (p.l + 1.0));
        } else {
            p.l = -1;
            p.nearest_sqrt_ll = std::numeric_limits<double>::quiet_NaN();
        }
        out.peaks.push_back(p);
    }
    return out;
}

}  // namespace curvescat
