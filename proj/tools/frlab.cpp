// frlab: operator assembly, spectral analysis, error maps, and a 1D
// advection solver behind one CLI. Each subcommand emits CSV (and optional
// SVG) into --out and prints a summary JSON object on stdout; diagnostics go
// to stderr. Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frlab/advect_sim.hpp"
#include "frlab/basis.hpp"
#include "frlab/correction.hpp"
#include "frlab/csv.hpp"
#include "frlab/error_analysis.hpp"
#include "frlab/filtering.hpp"
#include "frlab/operators.hpp"
#include "frlab/svg.hpp"
#include "frlab/von_neumann.hpp"

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ============================================================================
// config file plumbing: JSON keys mirror long option names; explicit
// command-line flags win over config values; unknown keys are rejected
// with the file and key named.
// ============================================================================

struct ConfigBinding {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> apply;
};

using Registry = std::vector<ConfigBinding>;

template <typename T>
CLI::Option* bind_opt(CLI::App* cmd, Registry& reg, const std::string& name,
                      T& var, const std::string& desc) {
    CLI::Option* o = cmd->add_option("--" + name, var, desc);
    reg.push_back({name, o, [&var, name](const json& v) {
                       try {
                           var = v.get<T>();
                       } catch (const json::exception&) {
                           throw ConfigError("key '" + name +
                                             "' has the wrong value type");
                       }
                   }});
    return o;
}

CLI::Option* bind_flag(CLI::App* cmd, Registry& reg, const std::string& name,
                       bool& var, const std::string& desc) {
    CLI::Option* o = cmd->add_flag("--" + name, var, desc);
    reg.push_back({name, o, [&var, name](const json& v) {
                       if (!v.is_boolean())
                           throw ConfigError("key '" + name +
                                             "' must be a boolean");
                       var = v.get<bool>();
                   }});
    return o;
}

void apply_config(const std::string& path, const Registry& reg,
                  const std::string& subcommand) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError(path + ": top level must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        const ConfigBinding* hit = nullptr;
        for (const auto& b : reg)
            if (b.key == key) hit = &b;
        if (!hit)
            throw ConfigError(path + ": unknown key '" + key +
                              "' for subcommand '" + subcommand + "'");
        if (hit->opt->count() > 0) continue;  // explicit flag wins
        try {
            hit->apply(value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ": " + e.what());
        }
    }
}

// ============================================================================
// shared parameter block
// ============================================================================

struct SchemeParams {
    int p = 4;
    std::string scheme = "huynh";
    double iota = std::numeric_limits<double>::quiet_NaN();  // unset
    double alpha = 1.0;
    double sigma = 0.0;
    std::string filter_mode = "none";
    int rk = 33;
};

void add_scheme_options(CLI::App* cmd, Registry& reg, SchemeParams& sp) {
    bind_opt(cmd, reg, "p", sp.p, "polynomial order");
    bind_opt(cmd, reg, "scheme", sp.scheme,
             "correction family member: dg, huynh, iota-plus");
    bind_opt(cmd, reg, "iota", sp.iota,
             "explicit correction parameter (overrides --scheme)");
    bind_opt(cmd, reg, "alpha", sp.alpha, "upwind weight in [0, 1]");
    bind_opt(cmd, reg, "sigma", sp.sigma, "filter width (0 = no filtering)");
    bind_opt(cmd, reg, "filter-mode", sp.filter_mode,
             "none, full, diff, correction");
    bind_opt(cmd, reg, "rk", sp.rk, "time scheme: 33 or 44");
}

int rk_order_of(int rk) {
    if (rk == 33) return 3;
    if (rk == 44) return 4;
    throw ConfigError("--rk must be 33 or 44");
}

frlab::FilterMode parse_filter_mode(const std::string& s) {
    if (s == "none") return frlab::FilterMode::None;
    if (s == "full") return frlab::FilterMode::FullScheme;
    if (s == "diff") return frlab::FilterMode::DiffOnly;
    if (s == "correction") return frlab::FilterMode::CorrectionOnly;
    throw ConfigError("--filter-mode must be none, full, diff or correction");
}

Eigen::VectorXd linspace(double lo, double hi, int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

// iota maximizing the unfiltered CFL limit, located on a 41-point grid
double locate_iota_plus(int p, int rk_order, double alpha) {
    double top = 4.0 * frlab::huynh_scheme(p).iota;
    Eigen::VectorXd ig = linspace(0.0, top, 41);
    Eigen::VectorXd sg = Eigen::VectorXd::Zero(1);
    frlab::CflMap map =
        frlab::cfl_scan(p, rk_order, alpha, ig, sg, frlab::FilterMode::None);
    return ig[map.argmax_iota];
}

frlab::CorrectionScheme resolve_scheme(const SchemeParams& sp) {
    if (!std::isnan(sp.iota)) return frlab::custom_scheme(sp.iota);
    if (sp.scheme == "dg") return frlab::dg_scheme();
    if (sp.scheme == "huynh") return frlab::huynh_scheme(sp.p);
    if (sp.scheme == "iota-plus")
        return frlab::custom_scheme(
            locate_iota_plus(sp.p, rk_order_of(sp.rk), sp.alpha));
    throw ConfigError("--scheme must be dg, huynh or iota-plus");
}

frlab::FrOperators build_ops(const SchemeParams& sp) {
    return frlab::assemble_filtered_operators(
        frlab::gauss_points(sp.p), resolve_scheme(sp), sp.alpha, sp.sigma,
        parse_filter_mode(sp.filter_mode));
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

json scheme_summary(const SchemeParams& sp) {
    json j;
    j["p"] = sp.p;
    j["scheme"] = std::isnan(sp.iota) ? sp.scheme : "custom";
    j["iota"] = std::isnan(sp.iota) ? resolve_scheme(sp).iota : sp.iota;
    j["alpha"] = sp.alpha;
    j["sigma"] = sp.sigma;
    j["filter_mode"] = sp.filter_mode;
    j["rk"] = sp.rk;
    return j;
}

// ============================================================================
// subcommand payloads
// ============================================================================

struct DispersionCmd {
    SchemeParams sp;
    double tau = 0.0, cfl = 0.0;
    int khat_points = 400;
    std::string out = ".";
    bool svg = false;
};

int run_dispersion(const DispersionCmd& c) {
    double tau = c.tau > 0.0 ? c.tau : c.cfl;  // delta = 1, a = 1
    if (!(tau > 0.0)) throw ConfigError("dispersion: set --tau or --cfl > 0");

    frlab::SpectralConfig cfg;
    cfg.ops = build_ops(c.sp);
    cfg.tau = tau;
    cfg.rk_order = rk_order_of(c.sp.rk);
    cfg.khat_grid = frlab::default_khat_grid(c.khat_points);

    frlab::SpectralResult res = frlab::dispersion_analysis(cfg);
    frlab::StabilityReport st = frlab::is_stable(cfg);

    const int n_modes = c.sp.p + 1;
    frlab::CsvTable disp{{"khat", "mode", "value"}, {}};
    frlab::CsvTable diss{{"khat", "mode", "value"}, {}};
    frlab::CsvTable full{{"khat", "mode", "re_c", "im_c", "abs_mu"}, {}};
    int defective = 0;
    for (const auto& pt : res.points) {
        if (pt.defective) ++defective;
        for (int m = 0; m < n_modes; ++m) {
            disp.rows.push_back({pt.khat, double(m), pt.c[m].real()});
            diss.rows.push_back({pt.khat, double(m), pt.c[m].imag()});
            full.rows.push_back({pt.khat, double(m), pt.c[m].real(),
                                 pt.c[m].imag(), std::abs(pt.mu[m])});
        }
    }
    frlab::write_csv(out_path(c.out, "dispersion.csv"), disp);
    frlab::write_csv(out_path(c.out, "dissipation.csv"), diss);
    frlab::write_csv(out_path(c.out, "spectrum.csv"), full);

    if (c.svg) {
        std::vector<frlab::SvgSeries> re_series(n_modes), im_series(n_modes);
        for (int m = 0; m < n_modes; ++m) {
            re_series[m].label = "mode " + std::to_string(m);
            im_series[m].label = re_series[m].label;
            for (const auto& pt : res.points) {
                re_series[m].x.push_back(pt.khat);
                re_series[m].y.push_back(pt.c[m].real());
                im_series[m].x.push_back(pt.khat);
                im_series[m].y.push_back(pt.c[m].imag());
            }
        }
        frlab::write_text_atomic(out_path(c.out, "dispersion.svg"),
                                 frlab::svg_line_plot("Re c(khat)", re_series));
        frlab::write_text_atomic(out_path(c.out, "dissipation.svg"),
                                 frlab::svg_line_plot("Im c(khat)", im_series));
    }

    if (st.stable)
        std::cerr << "stability: stable, max |mu| = " << st.worst_mu
                  << " at khat = " << st.worst_khat << "\n";
    else
        std::cerr << "stability: UNSTABLE, worst |mu| = " << st.worst_mu
                  << " at khat = " << st.worst_khat << "\n";

    json j = scheme_summary(c.sp);
    j["subcommand"] = "dispersion";
    j["tau"] = tau;
    j["stable"] = st.stable;
    j["worst_khat"] = st.worst_khat;
    j["worst_abs_mu"] = st.worst_mu;
    j["defective_points"] = defective;
    j["primary_mode_first"] = res.points.front().primary;
    j["files"] = {out_path(c.out, "dispersion.csv"),
                  out_path(c.out, "dissipation.csv"),
                  out_path(c.out, "spectrum.csv")};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct CflScanCmd {
    SchemeParams sp;  // iota/scheme ignored; grid supplies iota
    double iota_min = 0.0, iota_max = -1.0;  // default: [0, 4 * iota_huynh]
    int iota_points = 41;
    double sigma_min = 0.0, sigma_max = 1.0;
    int sigma_points = 41;
    std::string out = ".";
    bool svg = false;
};

int run_cfl_scan(const CflScanCmd& c) {
    double imax = c.iota_max >= 0.0 ? c.iota_max
                                    : 4.0 * frlab::huynh_scheme(c.sp.p).iota;
    Eigen::VectorXd ig = linspace(c.iota_min, imax, c.iota_points);
    Eigen::VectorXd sg = linspace(c.sigma_min, c.sigma_max, c.sigma_points);
    frlab::CflMap map =
        frlab::cfl_scan(c.sp.p, rk_order_of(c.sp.rk), c.sp.alpha, ig, sg,
                        parse_filter_mode(c.sp.filter_mode));

    frlab::CsvTable t{{"iota", "sigma", "cfl"}, {}};
    for (int i = 0; i < ig.size(); ++i)
        for (int j = 0; j < sg.size(); ++j)
            t.rows.push_back({ig[i], sg[j], map.cfl(i, j)});
    frlab::write_csv(out_path(c.out, "cflmap.csv"), t);

    if (c.svg) {
        std::vector<double> xs(ig.data(), ig.data() + ig.size());
        std::vector<double> ys(sg.data(), sg.data() + sg.size());
        std::vector<double> vs;
        for (int i = 0; i < ig.size(); ++i)
            for (int j = 0; j < sg.size(); ++j) vs.push_back(map.cfl(i, j));
        frlab::write_text_atomic(
            out_path(c.out, "cflmap.svg"),
            frlab::svg_heatmap("CFL limit over (iota, sigma)", xs, ys, vs));
    }

    json j;
    j["subcommand"] = "cfl-scan";
    j["p"] = c.sp.p;
    j["rk"] = c.sp.rk;
    j["alpha"] = c.sp.alpha;
    j["filter_mode"] = c.sp.filter_mode;
    j["argmax"] = {{"iota", ig[map.argmax_iota]},
                   {"sigma", sg[map.argmax_sigma]},
                   {"cfl", map.max_cfl}};
    j["baseline_cfl"] = map.baseline_cfl;
    j["boost_percent"] = 100.0 * (map.max_cfl / map.baseline_cfl - 1.0);
    j["files"] = {out_path(c.out, "cflmap.csv")};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct ErrorMapCmd {
    SchemeParams sp;
    bool fully = false;
    double tau = 0.05;
    int khat_points = 400;
    std::string out = ".";
    bool svg = false;
};

int run_error_map(const ErrorMapCmd& c) {
    frlab::ErrorMapConfig cfg;
    cfg.ops = build_ops(c.sp);
    cfg.khat_grid = frlab::default_khat_grid(c.khat_points);
    cfg.fully_discrete = c.fully;
    cfg.tau = c.tau;
    cfg.r = rk_order_of(c.sp.rk);
    if (c.fully && !(c.tau > 0.0))
        throw ConfigError("error-map: fully discrete maps need --tau > 0");

    frlab::ErrorMap map = frlab::build_error_map(cfg);

    const int nt = static_cast<int>(map.t_or_n.size());
    frlab::CsvTable em{{"khat", "t_or_n", "error_norm", "saturated"}, {}};
    for (int ki = 0; ki < map.khat_grid.size(); ++ki)
        for (int ti = 0; ti < nt; ++ti)
            em.rows.push_back(
                {map.khat_grid[ki], map.t_or_n[ti], map.err(ki, ti),
                 double(map.saturated[size_t(ki) * nt + ti])});
    frlab::write_csv(out_path(c.out, "errormap.csv"), em);

    frlab::CsvTable hl{{"khat", "mode", "half_life"}, {}};
    for (int ki = 0; ki < map.khat_grid.size(); ++ki)
        for (int m = 0; m < map.half_lives.cols(); ++m)
            hl.rows.push_back(
                {map.khat_grid[ki], double(m), map.half_lives(ki, m)});
    frlab::write_csv(out_path(c.out, "halflife.csv"), hl);

    if (c.svg) {
        std::vector<double> xs, ys, vs;
        for (int ki = 0; ki < map.khat_grid.size(); ++ki)
            xs.push_back(map.khat_grid[ki]);
        for (int ti = 0; ti < nt; ++ti) ys.push_back(map.t_or_n[ti]);
        for (int ki = 0; ki < map.khat_grid.size(); ++ki)
            for (int ti = 0; ti < nt; ++ti) {
                double v = map.err(ki, ti);
                vs.push_back(v > 0.0 ? std::log10(v) : -16.0);
            }
        frlab::write_text_atomic(
            out_path(c.out, "errormap.svg"),
            frlab::svg_heatmap("log10 error over (khat, t)", xs, ys, vs));
    }

    double max_t0 = 0.0;
    int t0_col = -1;
    for (int ti = 0; ti < nt; ++ti)
        if (map.t_or_n[ti] == 0.0) t0_col = ti;
    if (t0_col >= 0)
        for (int ki = 0; ki < map.khat_grid.size(); ++ki)
            max_t0 = std::max(max_t0, std::abs(map.err(ki, t0_col)));

    int flagged = 0;
    for (auto f : map.flagged) flagged += f;

    json j = scheme_summary(c.sp);
    j["subcommand"] = "error-map";
    j["tag"] = map.tag;
    j["modal_convention"] = map.convention;
    j["max_error_at_t0"] = max_t0;
    j["flagged_points"] = flagged;
    j["files"] = {out_path(c.out, "errormap.csv"),
                  out_path(c.out, "halflife.csv")};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct AdvectCmd {
    SchemeParams sp;
    std::string sim_case = "bump";
    int n_elements = 32;
    double tau = 0.0, cfl = 0.0;
    double t_end = 10.0;
    double bump_width = 0.2, bump_center = 0.5;
    double wave_k = 1.0, inflow_amplitude = 1.0;
    std::string out = ".";
    bool svg = false;
};

int run_advect(const AdvectCmd& c) {
    frlab::SimConfig cfg;
    cfg.ops = build_ops(c.sp);
    cfg.n_elements = c.n_elements;
    cfg.tau = c.tau;
    cfg.cfl = c.cfl;
    cfg.t_end = c.t_end;
    cfg.rk_order = rk_order_of(c.sp.rk);

    json j = scheme_summary(c.sp);
    j["subcommand"] = "advect";
    j["case"] = c.sim_case;
    j["n_elements"] = c.n_elements;
    j["t_end"] = c.t_end;

    if (c.sim_case == "bump") {
        cfg.ic = frlab::IcKind::GaussianBump;
        cfg.bump_center = c.bump_center;
        cfg.bump_width = c.bump_width;
        frlab::BumpResult res = frlab::run_bump_case(cfg);

        frlab::CsvTable t{{"x", "u"}, {}};
        for (int e = 0; e < cfg.n_elements; ++e)
            for (int q = 0; q <= c.sp.p; ++q)
                t.rows.push_back({frlab::node_x(cfg, e, q), res.state.u(e, q)});
        frlab::write_csv(out_path(c.out, "field.csv"), t);
        if (c.svg) {
            frlab::SvgSeries s{"u(x)", {}, {}};
            for (const auto& row : t.rows) {
                s.x.push_back(row[0]);
                s.y.push_back(row[1]);
            }
            frlab::write_text_atomic(
                out_path(c.out, "field.svg"),
                frlab::svg_line_plot("final bump field", {s}));
        }
        j["diverged"] = res.diverged;
        j["l2_error"] = res.l2_error;
        j["linf_error"] = res.linf_error;
        j["min_value"] = res.min_value;
        j["peak_value"] = res.peak_value;
        j["peak_location"] = res.peak_location;
        j["analytic_peak_location"] = res.analytic_peak_location;
        j["bump_width"] = c.bump_width;
        j["files"] = {out_path(c.out, "field.csv")};
        if (res.diverged) std::cerr << "advect: run diverged\n";
    } else if (c.sim_case == "wave") {
        cfg.bc = frlab::BcKind::InflowOutflow;
        cfg.inflow_k = c.wave_k;
        cfg.inflow_amplitude = c.inflow_amplitude;
        frlab::WaveResult res = frlab::run_wave_case(cfg);

        frlab::CsvTable t{{"t", "u"}, {}};
        double max_abs = 0.0;
        for (size_t i = 0; i < res.t.size(); ++i) {
            t.rows.push_back({res.t[i], res.probe[i]});
            max_abs = std::max(max_abs, std::abs(res.probe[i]));
        }
        frlab::write_csv(out_path(c.out, "probe.csv"), t);
        if (c.svg) {
            frlab::SvgSeries s{"u(x=1, t)", res.t, res.probe};
            frlab::write_text_atomic(
                out_path(c.out, "probe.svg"),
                frlab::svg_line_plot("outlet probe trace", {s}));
        }
        j["diverged"] = res.diverged;
        j["growth"] = res.growth;
        j["max_abs_probe"] = max_abs;
        j["inflow_amplitude"] = res.inflow_amplitude;
        j["wave_k"] = c.wave_k;
        j["files"] = {out_path(c.out, "probe.csv")};
        if (res.growth) std::cerr << "advect: amplitude growth flagged\n";
    } else {
        throw ConfigError("--case must be bump or wave");
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct OrderStudyCmd {
    SchemeParams sp;
    std::vector<int> grids = {8, 12, 16, 24, 32};
    double cfl = 0.167;
    double bump_width = 0.2;
    std::string out = ".";
    bool svg = false;
};

int run_order_study(const OrderStudyCmd& c) {
    frlab::SimConfig tmpl;
    tmpl.ops = build_ops(c.sp);
    tmpl.cfl = c.cfl;
    tmpl.rk_order = rk_order_of(c.sp.rk);
    tmpl.ic = frlab::IcKind::GaussianBump;
    tmpl.bump_width = c.bump_width;
    frlab::OrderResult res = frlab::order_study(tmpl, c.grids);

    frlab::CsvTable t{{"n_elements", "dx", "l2_error"}, {}};
    for (size_t i = 0; i < res.n_elements.size(); ++i)
        t.rows.push_back(
            {double(res.n_elements[i]), res.dx[i], res.l2_error[i]});
    frlab::write_csv(out_path(c.out, "order.csv"), t);
    if (c.svg) {
        frlab::SvgSeries s{"L2 error", res.dx, res.l2_error};
        frlab::write_text_atomic(
            out_path(c.out, "order.svg"),
            frlab::svg_line_plot("grid convergence", {s}, true, true));
    }

    json j = scheme_summary(c.sp);
    j["subcommand"] = "order-study";
    j["cfl"] = c.cfl;
    j["grids"] = c.grids;
    j["l2_errors"] = res.l2_error;
    j["slope"] = res.slope;
    j["diverged"] = res.diverged;
    j["files"] = {out_path(c.out, "order.csv")};
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct FilterReCmd {
    double rho = 1.0, u = 1.0, tau = 0.0, sigma = 0.0, h = 0.0;
};

int run_filter_re(const FilterReCmd& c) {
    double re = frlab::filter_reynolds(c.rho, c.u, c.tau, c.sigma, c.h);
    std::cout << frlab::format_double(re) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flux reconstruction operator and stability laboratory"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; explicit flags "
                                            "override config values");

    DispersionCmd dc;
    Registry dreg;
    CLI::App* dcmd = app.add_subcommand(
        "dispersion", "fully discrete dispersion/dissipation curves");
    dcmd->fallthrough();
    add_scheme_options(dcmd, dreg, dc.sp);
    bind_opt(dcmd, dreg, "tau", dc.tau, "time step");
    bind_opt(dcmd, dreg, "cfl", dc.cfl, "time step as CFL (delta = 1)");
    bind_opt(dcmd, dreg, "khat-points", dc.khat_points, "wavenumber grid size");
    bind_opt(dcmd, dreg, "out", dc.out, "output directory");
    bind_flag(dcmd, dreg, "svg", dc.svg, "emit SVG plots");

    CflScanCmd cc;
    Registry creg;
    CLI::App* ccmd =
        app.add_subcommand("cfl-scan", "CFL limit over an (iota, sigma) grid");
    ccmd->fallthrough();
    add_scheme_options(ccmd, creg, cc.sp);
    bind_opt(ccmd, creg, "iota-min", cc.iota_min, "iota grid start");
    bind_opt(ccmd, creg, "iota-max", cc.iota_max,
             "iota grid end (default 4x the Huynh value)");
    bind_opt(ccmd, creg, "iota-points", cc.iota_points, "iota grid size");
    bind_opt(ccmd, creg, "sigma-min", cc.sigma_min, "sigma grid start");
    bind_opt(ccmd, creg, "sigma-max", cc.sigma_max, "sigma grid end");
    bind_opt(ccmd, creg, "sigma-points", cc.sigma_points, "sigma grid size");
    bind_opt(ccmd, creg, "out", cc.out, "output directory");
    bind_flag(ccmd, creg, "svg", cc.svg, "emit SVG heatmap");

    ErrorMapCmd ec;
    Registry ereg;
    CLI::App* ecmd = app.add_subcommand(
        "error-map", "analytic error over (khat, t) plus modal half-lives");
    ecmd->fallthrough();
    add_scheme_options(ecmd, ereg, ec.sp);
    bind_flag(ecmd, ereg, "fully", ec.fully,
              "fully discrete map (time measured in steps of --tau)");
    bind_opt(ecmd, ereg, "tau", ec.tau, "time step for --fully");
    bind_opt(ecmd, ereg, "khat-points", ec.khat_points, "wavenumber grid size");
    bind_opt(ecmd, ereg, "out", ec.out, "output directory");
    bind_flag(ecmd, ereg, "svg", ec.svg, "emit SVG heatmap");

    AdvectCmd ac;
    Registry areg;
    CLI::App* acmd =
        app.add_subcommand("advect", "1D linear advection solver cases");
    acmd->fallthrough();
    add_scheme_options(acmd, areg, ac.sp);
    bind_opt(acmd, areg, "case", ac.sim_case, "bump or wave");
    bind_opt(acmd, areg, "n-elements", ac.n_elements, "element count");
    bind_opt(acmd, areg, "tau", ac.tau, "time step");
    bind_opt(acmd, areg, "cfl", ac.cfl, "time step as CFL");
    bind_opt(acmd, areg, "t-end", ac.t_end, "final time");
    bind_opt(acmd, areg, "bump-width", ac.bump_width, "Gaussian scale");
    bind_opt(acmd, areg, "bump-center", ac.bump_center, "bump center");
    bind_opt(acmd, areg, "wave-k", ac.wave_k, "inflow wavenumber");
    bind_opt(acmd, areg, "inflow-amplitude", ac.inflow_amplitude,
             "inflow amplitude");
    bind_opt(acmd, areg, "out", ac.out, "output directory");
    bind_flag(acmd, areg, "svg", ac.svg, "emit SVG plot");

    OrderStudyCmd oc;
    Registry oreg;
    CLI::App* ocmd = app.add_subcommand(
        "order-study", "bump convergence at fixed CFL, 1000 steps per grid");
    ocmd->fallthrough();
    add_scheme_options(ocmd, oreg, oc.sp);
    bind_opt(ocmd, oreg, "grids", oc.grids, "element counts");
    bind_opt(ocmd, oreg, "cfl", oc.cfl, "fixed CFL across grids");
    bind_opt(ocmd, oreg, "bump-width", oc.bump_width, "Gaussian scale");
    bind_opt(ocmd, oreg, "out", oc.out, "output directory");
    bind_flag(ocmd, oreg, "svg", oc.svg, "emit SVG plot");

    FilterReCmd fc;
    Registry freg;
    CLI::App* fcmd = app.add_subcommand(
        "filter-re", "filter Reynolds number 24 rho u tau / (sigma^2 h)");
    fcmd->fallthrough();
    bind_opt(fcmd, freg, "rho", fc.rho, "density");
    bind_opt(fcmd, freg, "u", fc.u, "velocity scale");
    bind_opt(fcmd, freg, "tau", fc.tau, "time step");
    bind_opt(fcmd, freg, "sigma", fc.sigma, "filter width");
    bind_opt(fcmd, freg, "dx", fc.h, "grid spacing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        if (!config_path.empty()) {
            const Registry* reg = nullptr;
            if (active == dcmd) reg = &dreg;
            if (active == ccmd) reg = &creg;
            if (active == ecmd) reg = &ereg;
            if (active == acmd) reg = &areg;
            if (active == ocmd) reg = &oreg;
            if (active == fcmd) reg = &freg;
            apply_config(config_path, *reg, active->get_name());
        }
        if (active == dcmd) return run_dispersion(dc);
        if (active == ccmd) return run_cfl_scan(cc);
        if (active == ecmd) return run_error_map(ec);
        if (active == acmd) return run_advect(ac);
        if (active == ocmd) return run_order_study(oc);
        if (active == fcmd) return run_filter_re(fc);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
