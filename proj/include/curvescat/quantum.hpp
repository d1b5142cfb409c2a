#ifndef CURVESCAT_QUANTUM_HPP
#define CURVESCAT_QUANTUM_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace curvescat {

// Phase shifts delta_m for |m| <= m_max at fixed (alpha, kR).  Only m >= 0
// is stored: delta_{-m} = delta_m because the radial equation depends on m^2.
// Values are arctangent principal values in (-pi/2, pi/2]; all observables
// enter through e^{i delta} sin(delta), which is invariant mod pi.
struct PhaseShiftTable {
    double alpha = 0.0;
    double kR = 0.0;
    int m_max = 0;
    std::vector<double> delta;  // index |m|
    enum class Method { exact, wkbj } method = Method::exact;

    double operator()(int m) const { return delta[static_cast<std::size_t>(m < 0 ? -m : m)]; }
};

struct PhaseConfig {
    double ode_rtol = 1e-11;
    double tail_tol = 1e-12;   // require sin^2(delta_{m_max}) below this
    int m_buffer_min = 12;     // buffer = max(m_buffer_min, ceil(4 (kR)^{1/3}))
    int m_hard_cap = 20000;
    int threads = 0;           // 0 = library default (CURVESCAT_THREADS / hw)
};

// Exact phase shift from junction matching via the interior log-derivative.
// Bessel overflow (deep centrifugal suppression) yields exactly 0.
double phase_shift(double alpha, double kR, int m, double ode_rtol = 1e-11);

// Full table with automatic truncation: m_max = ceil(kR sin alpha) + buffer,
// extended until the tail criterion sin^2(delta_{m_max}) < tail_tol holds.
// Throws std::runtime_error if the tail never converges within m_hard_cap.
PhaseShiftTable phase_table(double alpha, double kR, const PhaseConfig& cfg = {});

// f(theta) and dsigma/dtheta on a theta grid (grid must be strictly increasing).
struct AmplitudeGrid {
    std::vector<double> thetas;
    std::vector<std::complex<double>> f;
    std::vector<double> dsigma;  // R^{-1} dsigma/dtheta = 2|f|^2 / (pi kR)
    std::string method;
};

AmplitudeGrid amplitude(const PhaseShiftTable& table, std::span<const double> thetas,
                        int threads = 0);

// sigma/R = (4/kR) sum_m sin^2(delta_m).
double total_xsec(const PhaseShiftTable& table);

// Resonance scan over kR.
struct Peak {
    double kR;
    double prominence;
    double nearest_sqrt_ll;  // closest sqrt(l(l+1)); NaN when alpha <= pi/2
    int l;
};

struct ScanResult {
    std::vector<double> kR_samples;
    std::vector<double> sigma_over_R;
    std::vector<double> sigma_sc_over_R;
    std::vector<Peak> peaks;
};

// Samples sigma(kR) on a uniform grid of n points; for alpha > pi/2 the
// windows around each sqrt(l(l+1)) are refined adaptively before peaks are
// detected by prominence over a local median.
ScanResult sigma_scan(double alpha, double kR_min, double kR_max, int n,
                      const PhaseConfig& cfg = {}, double prominence_threshold = 0.3);

// Default theta grid: n uniform points on (-pi, pi], optionally locally
// refined around theta = 0 with window width 10/(kR sin alpha).
std::vector<double> make_theta_grid(int n = 4096, bool refine_forward = false,
                                    double kR_sin_alpha = 0.0);

}  // namespace curvescat

#endif
