// curvescat command-line tool: classical / quantum / semiclassical scattering
// observables for the sphere-on-a-plane surface, emitted as CSV plus a JSON
// sidecar (or a single JSON file with --format json).

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvescat/classical.hpp"
#include "curvescat/quantum.hpp"
#include "curvescat/semiclassical.hpp"
#include "curvescat/surface.hpp"

using nlohmann::json;
namespace cs = curvescat;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double pi = std::numbers::pi;

// exit codes per the interface contract
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kIoError = 4;

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts plain radians ("2.356") or multiples of pi ("0.75pi", "pi", "-pi").
double parse_angle(const std::string& text) {
    std::string s = text;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    double mult = 1.0;
    bool has_pi = false;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        has_pi = true;
        s.resize(s.size() - 2);
        if (s.empty() || s == "+")
            mult = 1.0;
        else if (s == "-")
            mult = -1.0;
        else {
            std::size_t pos = 0;
            try {
                mult = std::stod(s, &pos);
            } catch (const std::exception&) {
                throw config_error("cannot parse angle '" + text + "'");
            }
            if (pos != s.size())
                throw config_error("cannot parse angle '" + text + "'");
        }
    } else {
        std::size_t pos = 0;
        try {
            mult = std::stod(s, &pos);
        } catch (const std::exception&) {
            throw config_error("cannot parse angle '" + text + "'");
        }
        if (pos != s.size())
            throw config_error("cannot parse angle '" + text + "'");
    }
    return has_pi ? mult * pi : mult;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunConfig {
    std::string alpha_text = "0.5pi";
    double alpha = pi / 2.0;
    double kR = 10.0;
    std::string theta_min_text = "-pi", theta_max_text = "pi";
    double theta_min = -pi, theta_max = pi;
    int theta_count = 4096;
    bool refine_forward = false;
    std::string method = "all";
    std::string format = "csv";
    std::string output;
    std::string sc_route = "stationary";
    double ode_rtol = 1e-11;
    double bessel_tol = 1e-12;  // phase-table tail criterion
    int m_buffer = 12;
    unsigned seed = 12345;
    std::string beta_text, theta_text;  // trajectory selectors

    cs::PhaseConfig phase_cfg() const {
        cs::PhaseConfig c;
        c.ode_rtol = ode_rtol;
        c.tail_tol = bessel_tol;
        c.m_buffer_min = m_buffer;
        return c;
    }
    json to_json(const std::string& subcommand) const {
        json j;
        j["version"] = kVersion;
        j["subcommand"] = subcommand;
        j["alpha"] = alpha;
        j["kR"] = kR;
        j["grid"] = {{"theta_min", theta_min},
                     {"theta_max", theta_max},
                     {"count", theta_count},
                     {"refine_forward", refine_forward}};
        j["method"] = method;
        j["sc_route"] = sc_route;
        j["tolerances"] = {{"ode_rtol", ode_rtol},
                           {"bessel_tol", bessel_tol},
                           {"m_buffer", m_buffer}};
        j["seed"] = seed;
        return j;
    }
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool needs_kr) {
    cmd->add_option("--alpha", cfg.alpha_text,
                    "Opening angle (radians or '<x>pi')")
        ->required();
    if (needs_kr) cmd->add_option("--kr", cfg.kR, "Dimensionless wavenumber kR");
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", cfg.output, "Output path prefix");
    cmd->add_option("--ode-rtol", cfg.ode_rtol, "Interior ODE relative tolerance");
    cmd->add_option("--bessel-tol", cfg.bessel_tol,
                    "Phase-table tail criterion on sin^2(delta)");
    cmd->add_option("--m-buffer", cfg.m_buffer, "Minimum partial-wave buffer");
    cmd->add_option("--seed", cfg.seed, "Monte-Carlo seed");
}

void add_theta_grid_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--theta-min", cfg.theta_min_text, "Grid lower edge");
    cmd->add_option("--theta-max", cfg.theta_max_text, "Grid upper edge");
    cmd->add_option("--theta-count", cfg.theta_count, "Grid point count");
    cmd->add_flag("--refine-forward", cfg.refine_forward,
                  "Refine the grid around theta = 0");
}

void finalize(RunConfig& cfg) {
    cfg.alpha = parse_angle(cfg.alpha_text);
    cfg.theta_min = parse_angle(cfg.theta_min_text);
    cfg.theta_max = parse_angle(cfg.theta_max_text);
    if (!(cfg.alpha > 0.0 && cfg.alpha < pi))
        throw config_error("alpha must lie in (0, pi)");
    if (!(cfg.kR > 0.0)) throw config_error("kr must be positive");
    if (!(cfg.theta_min < cfg.theta_max))
        throw config_error("theta-min must be below theta-max");
    if (cfg.theta_count < 2) throw config_error("theta-count must be >= 2");
}

std::vector<double> build_theta_grid(const RunConfig& cfg) {
    if (cfg.refine_forward && cfg.theta_min <= -pi + 1e-12 &&
        cfg.theta_max >= pi - 1e-12)
        return cs::make_theta_grid(cfg.theta_count, true,
                                   cfg.kR * std::sin(cfg.alpha));
    std::vector<double> g(static_cast<std::size_t>(cfg.theta_count));
    for (int i = 0; i < cfg.theta_count; ++i)
        g[static_cast<std::size_t>(i)] =
            cfg.theta_min +
            (cfg.theta_max - cfg.theta_min) * i / (cfg.theta_count - 1);
    return g;
}

// tabular payload shared by the CSV and JSON writers
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void emit(const RunConfig& cfg, const std::string& subcommand, const Table& table,
          json sidecar_extra) {
    const std::string prefix = cfg.output.empty() ? subcommand : cfg.output;
    json meta = cfg.to_json(subcommand);
    for (auto& [k, v] : sidecar_extra.items()) meta[k] = v;

    if (cfg.format == "csv") {
        std::ofstream csv(prefix + ".csv");
        if (!csv) throw io_error("cannot open " + prefix + ".csv");
        for (std::size_t c = 0; c < table.header.size(); ++c)
            csv << table.header[c] << (c + 1 < table.header.size() ? "," : "");
        csv << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                csv << row[c] << (c + 1 < row.size() ? "," : "");
            csv << "\n";
        }
        if (!csv.flush()) throw io_error("write failure on " + prefix + ".csv");
    } else {
        json data;
        data["columns"] = table.header;
        auto& rows = data["rows"] = json::array();
        for (const auto& row : table.rows) rows.push_back(row);
        meta["data"] = data;
    }
    std::ofstream side(prefix + ".json");
    if (!side) throw io_error("cannot open " + prefix + ".json");
    side << meta.dump(2) << "\n";
    if (!side.flush()) throw io_error("write failure on " + prefix + ".json");
}

int cmd_xsec(RunConfig& cfg) {
    finalize(cfg);
    const auto thetas = build_theta_grid(cfg);
    const bool want_classical = cfg.method == "classical" || cfg.method == "all";
    const bool want_quantum = cfg.method == "quantum" || cfg.method == "all";
    const bool want_sc = cfg.method == "semiclassical" || cfg.method == "all";

    Table t;
    t.header = {"theta"};
    std::vector<double> cls, support;
    if (want_classical) {
        t.header.insert(t.header.end(), {"classical", "support"});
        for (double th : thetas) {
            bool in;
            cls.push_back(cs::classical_diff_xsec(cfg.alpha, th, 1.0, in));
            support.push_back(in ? 1.0 : 0.0);
        }
    }
    std::optional<cs::AmplitudeGrid> qm, sc;
    int m_max = 0;
    if (want_quantum) {
        t.header.push_back("quantum");
        auto table = cs::phase_table(cfg.alpha, cfg.kR, cfg.phase_cfg());
        m_max = table.m_max;
        qm = cs::amplitude(table, thetas);
    }
    if (want_sc) {
        t.header.push_back("semiclassical");
        sc = cs::sc_diff_xsec(cfg.alpha, cfg.kR, thetas,
                              cfg.sc_route == "summed" ? cs::ScRoute::summed
                                                       : cs::ScRoute::stationary);
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        std::vector<std::string> row{fmt(thetas[i])};
        if (want_classical) {
            row.push_back(fmt(cls[i]));
            row.push_back(fmt(support[i]));
        }
        if (qm) row.push_back(fmt(qm->dsigma[i]));
        if (sc) row.push_back(fmt(sc->dsigma[i]));
        t.rows.push_back(std::move(row));
    }
    json extra;
    if (want_quantum) extra["m_max"] = m_max;
    emit(cfg, "xsec", t, extra);
    return kOk;
}

int cmd_scan(RunConfig& cfg, double kr_min, double kr_max, int count) {
    finalize(cfg);
    if (!(kr_min > 0.0 && kr_min < kr_max))
        throw config_error("need 0 < kr-min < kr-max");
    const auto scan =
        cs::sigma_scan(cfg.alpha, kr_min, kr_max, count, cfg.phase_cfg());
    Table t;
    t.header = {"kR", "sigma_over_R", "sigma_sc_over_R", "asymptote"};
    const double asym = 4.0 * std::sin(cfg.alpha);
    for (std::size_t i = 0; i < scan.kR_samples.size(); ++i)
        t.rows.push_back({fmt(scan.kR_samples[i]), fmt(scan.sigma_over_R[i]),
                          fmt(scan.sigma_sc_over_R[i]), fmt(asym)});
    json peaks = json::array();
    for (const auto& p : scan.peaks) {
        json jp = {{"kR", p.kR}, {"prominence", p.prominence}};
        if (p.l >= 0) {
            jp["l"] = p.l;
            jp["sqrt_l_lp1"] = p.nearest_sqrt_ll;
        }
        peaks.push_back(jp);
    }
    emit(cfg, "scan", t,
         json{{"peaks", peaks}, {"kR_min", kr_min}, {"kR_max", kr_max}});
    return kOk;
}

int cmd_phase_table(RunConfig& cfg) {
    finalize(cfg);
    const auto table = cs::phase_table(cfg.alpha, cfg.kR, cfg.phase_cfg());
    const double x = cfg.kR * std::sin(cfg.alpha);
    Table t;
    t.header = {"m", "delta_m", "sin2_delta_m", "above_contact"};
    for (int m = 0; m <= table.m_max; ++m) {
        const double d = table(m);
        const double s = std::sin(d);
        t.rows.push_back({fmt(m), fmt(d), fmt(s * s), m > x ? "1" : "0"});
    }
    emit(cfg, "phase-table", t,
         json{{"m_max", table.m_max}, {"kR_sin_alpha", x}});
    return kOk;
}

int cmd_trajectory(RunConfig& cfg, std::size_t n_points) {
    finalize(cfg);
    if (cfg.beta_text.empty() == cfg.theta_text.empty())
        throw config_error("give exactly one of --beta or --theta");
    const cs::SurfaceGeometry geom(cfg.alpha);

    std::vector<std::pair<std::string, double>> betas;
    if (!cfg.beta_text.empty()) {
        const double beta = parse_angle(cfg.beta_text);
        if (!(std::abs(beta) < pi / 2.0))
            throw config_error("|beta| must be < pi/2");
        betas.emplace_back("single", beta);
    } else {
        const double theta = parse_angle(cfg.theta_text);
        const auto bp = cs::impact_branches(cfg.alpha, theta);
        if (!bp.valid)
            throw config_error("theta outside the classical support");
        const double sa = std::sin(cfg.alpha);
        betas.emplace_back("plus", std::asin(std::clamp(bp.b_plus / sa, -1.0, 1.0)));
        betas.emplace_back("minus", std::asin(std::clamp(bp.b_minus / sa, -1.0, 1.0)));
    }

    Table t;
    t.header = {"branch", "x", "y", "z", "s", "segment"};
    static const char* seg_name[] = {"incoming", "sphere", "outgoing"};
    json traj_meta = json::array();
    for (const auto& [name, beta] : betas) {
        const auto traj = cs::sample_trajectory(geom, beta, n_points);
        for (std::size_t i = 0; i < traj.points.size(); ++i)
            t.rows.push_back({name, fmt(traj.points[i][0]), fmt(traj.points[i][1]),
                              fmt(traj.points[i][2]), fmt(traj.arc_lengths[i]),
                              seg_name[traj.segment[i]]});
        traj_meta.push_back({{"branch", name},
                             {"beta", beta},
                             {"theta", traj.theta},
                             {"entry_tangent_s", traj.entry_tangent_s},
                             {"exit_tangent_s", traj.exit_tangent_s}});
    }
    emit(cfg, "trajectory", t, json{{"trajectories", traj_meta}});
    return kOk;
}

int cmd_compare(RunConfig& cfg) {
    finalize(cfg);
    const auto thetas = build_theta_grid(cfg);
    auto table = cs::phase_table(cfg.alpha, cfg.kR, cfg.phase_cfg());
    const auto qm = cs::amplitude(table, thetas);
    const auto sc = cs::sc_diff_xsec(cfg.alpha, cfg.kR, thetas,
                                     cfg.sc_route == "summed"
                                         ? cs::ScRoute::summed
                                         : cs::ScRoute::stationary);
    Table t;
    t.header = {"theta", "classical", "support", "quantum", "semiclassical"};
    double d_cq = 0.0, d_cs = 0.0, d_qs = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        bool in;
        const double c = cs::classical_diff_xsec(cfg.alpha, thetas[i], 1.0, in);
        const double q = qm.dsigma[i];
        const double s = sc.dsigma[i];
        t.rows.push_back({fmt(thetas[i]), fmt(c), in ? "1" : "0", fmt(q), fmt(s)});
        if (in) d_cq = std::max(d_cq, std::abs(c - q));
        if (in && std::isfinite(s)) d_cs = std::max(d_cs, std::abs(c - s));
        if (std::isfinite(s)) d_qs = std::max(d_qs, std::abs(q - s));
    }
    json extra = {{"m_max", table.m_max},
                  {"max_discrepancy",
                   {{"classical_vs_quantum", d_cq},
                    {"classical_vs_semiclassical", d_cs},
                    {"quantum_vs_semiclassical", d_qs}}}};
    emit(cfg, "compare", t, extra);
    std::printf("max |classical - quantum|       = %.6g\n", d_cq);
    std::printf("max |classical - semiclassical| = %.6g\n", d_cs);
    std::printf("max |quantum - semiclassical|   = %.6g\n", d_qs);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering observables on a plane with a spherical extrusion"};
    app.require_subcommand(1);

    RunConfig cfg;
    double kr_min = 1.0, kr_max = 10.0;
    int scan_count = 200;
    std::size_t traj_points = 256;

    auto* xsec = app.add_subcommand("xsec", "Differential cross section");
    add_common_flags(xsec, cfg, true);
    add_theta_grid_flags(xsec, cfg);
    xsec->add_option("--method", cfg.method, "Method selector")
        ->check(CLI::IsMember({"classical", "quantum", "semiclassical", "all"}));
    xsec->add_option("--sc-route", cfg.sc_route, "Semiclassical evaluation route")
        ->check(CLI::IsMember({"stationary", "summed"}));

    auto* scan = app.add_subcommand("scan", "Total cross section vs kR");
    add_common_flags(scan, cfg, false);
    scan->add_option("--kr-min", kr_min, "Scan lower edge")->required();
    scan->add_option("--kr-max", kr_max, "Scan upper edge")->required();
    scan->add_option("--count", scan_count, "Base sample count");

    auto* pt = app.add_subcommand("phase-table", "Phase shifts delta_m");
    add_common_flags(pt, cfg, true);

    auto* traj = app.add_subcommand("trajectory", "Embedded classical path");
    add_common_flags(traj, cfg, false);
    traj->add_option("--beta", cfg.beta_text, "Contact angle (radians or '<x>pi')");
    traj->add_option("--theta", cfg.theta_text,
                     "Scattering angle; emits both branches");
    traj->add_option("--points", traj_points, "Samples along the path");

    auto* cmp = app.add_subcommand("compare", "All three methods side by side");
    add_common_flags(cmp, cfg, true);
    add_theta_grid_flags(cmp, cfg);
    cmp->add_option("--sc-route", cfg.sc_route, "Semiclassical evaluation route")
        ->check(CLI::IsMember({"stationary", "summed"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (xsec->parsed()) return cmd_xsec(cfg);
        if (scan->parsed()) return cmd_scan(cfg, kr_min, kr_max, scan_count);
        if (pt->parsed()) return cmd_phase_table(cfg);
        if (traj->parsed()) return cmd_trajectory(cfg, traj_points);
        if (cmp->parsed()) return cmd_compare(cfg);
    } catch (const config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const io_error& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kIoError;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kNumericalError;
    }
    return kOk;
}
