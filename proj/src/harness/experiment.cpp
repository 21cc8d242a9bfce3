#include "cellout/harness/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "cellout/errors.hpp"
#include "cellout/fenton.hpp"
#include "cellout/fluid.hpp"
#include "cellout/harness/svg.hpp"
#include "cellout/mcsim.hpp"
#include "cellout/rng.hpp"

#include <json.hpp>

namespace cellout::harness {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

ChannelParams channel_for(const ExperimentConfig& cfg, double eta, double sigma_db) {
    ChannelParams p;
    p.eta = eta;
    p.sigma_db = sigma_db;
    p.power = cfg.channel.power;
    p.k_const = cfg.channel.k_const;
    p.noise = cfg.channel.noise;
    p.validate();
    return p;
}

int angle_count(const ExperimentConfig& cfg) {
    return cfg.mobile.azimuth == AzimuthMode::Average ? cfg.mobile.n_angles : 1;
}

std::vector<YfMoments> discrete_moments(const ExperimentConfig& cfg, const Geometry& geo,
                                        const CurveKey& key) {
    const auto params = channel_for(cfg, key.eta, key.sigma_db);
    std::vector<YfMoments> out;
    for (const auto& pt :
         ring_positions(geo.layout.rc(), key.r_over_rc * geo.layout.rc(), angle_count(cfg))) {
        out.push_back(yf_moments_discrete(distance_profile(geo.layout, pt), params));
    }
    return out;
}

YfMoments fluid_moments(const ExperimentConfig& cfg, const Geometry& geo, const CurveKey& key) {
    return yf_moments_fluid(key.r_over_rc * geo.layout.rc(),
                            channel_for(cfg, key.eta, key.sigma_db), geo.fluid);
}

double delta10(const OutageCurve& curve, double p) {
    try {
        return sinr_at_outage(curve, p);
    } catch (const RangeError&) {
        return kNaN;
    }
}

const char* series_color(Model m) {
    switch (m) {
        case Model::Fluid:
            return "#1f4e9c";
        case Model::Discrete:
            return "#2a8a3e";
        case Model::MonteCarlo:
            return "#c0392b";
    }
    return "black";
}

void write_chart(const fs::path& path, const std::string& title,
                 const std::vector<const CurveResult*>& curves) {
    LineChart chart;
    chart.title = title;
    chart.x_label = "SINR threshold (dB)";
    chart.y_label = "Outage probability";
    for (const auto* c : curves) {
        Series s;
        s.label = std::string(to_string(c->model)) + ", sigma=" + format_number(c->key.sigma_db) +
                  " dB";
        s.x = c->curve.thresholds_db;
        s.y = c->curve.probs;
        s.color = series_color(c->model);
        s.dotted = c->model == Model::MonteCarlo;
        chart.series.push_back(std::move(s));
    }
    auto out = open_out(path);
    chart.write(out);
    finish(out, path);
}

struct Row {
    std::vector<std::string> cells;
};

void write_table(const fs::path& path, const std::string& header, const std::vector<Row>& rows) {
    auto out = open_out(path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.cells.size(); ++i) {
            out << (i ? "," : "") << row.cells[i];
        }
        out << '\n';
    }
    finish(out, path);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";  // folds -0
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ComparisonReport compare(const OutageCurve& a, const OutageCurve& b, double p) {
    if (a.thresholds_db.size() != a.probs.size() || b.thresholds_db.size() != b.probs.size()) {
        throw DomainError("compare: curve with mismatched threshold and probability counts");
    }
    if (a.thresholds_db != b.thresholds_db) {
        throw DomainError("compare: curves are sampled on different threshold grids");
    }
    if (a.thresholds_db.empty()) {
        throw DomainError("compare: empty curves");
    }
    ComparisonReport r;
    for (std::size_t i = 0; i < a.probs.size(); ++i) {
        r.max_deviation = std::max(r.max_deviation, std::abs(a.probs[i] - b.probs[i]));
    }
    r.delta10_a_db = delta10(a, p);
    r.delta10_b_db = delta10(b, p);
    r.shift_db = r.delta10_b_db - r.delta10_a_db;
    return r;
}

std::string CurveKey::tag() const {
    return "eta" + format_number(eta) + "_sigma" + format_number(sigma_db) + "_r" +
           format_number(r_over_rc) + "_" + to_string(mode);
}

Geometry make_geometry(const ExperimentConfig& cfg) {
    Geometry geo{build_hex_network(cfg.network.rings, cfg.network.rc_m), {}};
    const double r_nw = cfg.network.r_nw_m.value_or(geo.layout.r_nw());
    geo.fluid = FluidParams::hexagonal(cfg.network.rc_m, r_nw);
    geo.fluid.validate();
    return geo;
}

CurveResult analytic_curve(const ExperimentConfig& cfg, const Geometry& geo, const CurveKey& key,
                           Model model) {
    CurveResult out;
    out.key = key;
    out.model = model;
    out.curve.thresholds_db = cfg.thresholds_db;
    if (model == Model::Fluid) {
        out.curve = outage_curve(fluid_moments(cfg, geo, key), cfg.thresholds_db, key.mode,
                                 cfg.quadrature);
    } else if (model == Model::Discrete) {
        const auto moments = discrete_moments(cfg, geo, key);
        out.curve.probs.assign(cfg.thresholds_db.size(), 0.0);
        for (const auto& m : moments) {
            const auto c = outage_curve(m, cfg.thresholds_db, key.mode, cfg.quadrature);
            for (std::size_t i = 0; i < c.probs.size(); ++i) {
                out.curve.probs[i] += c.probs[i];
            }
        }
        for (double& p : out.curve.probs) {
            p /= static_cast<double>(moments.size());
        }
        // Averaging keeps the running maximum, but guard against rounding.
        for (std::size_t i = 1; i < out.curve.probs.size(); ++i) {
            out.curve.probs[i] = std::clamp(out.curve.probs[i], out.curve.probs[i - 1], 1.0);
        }
    } else {
        throw DomainError("analytic_curve: the mc model is not analytic");
    }
    out.standard_error.assign(cfg.thresholds_db.size(), 0.0);
    return out;
}

std::uint64_t curve_seed(std::uint64_t base_seed, const CurveKey& key) {
    return rng::mix64(base_seed ^ fnv1a(key.tag()));
}

SimConfig sim_config_for(const ExperimentConfig& cfg, const Geometry& geo, const CurveKey& key) {
    SimConfig sc;
    sc.snapshots = cfg.sim.snapshots;
    sc.seed = curve_seed(cfg.sim.seed, key);
    sc.mobile = RingPlacement{key.r_over_rc * geo.layout.rc(), angle_count(cfg)};
    sc.shadowing = key.sigma_db > 0.0;
    sc.fading = key.mode == OutageMode::Fading;
    sc.interferer_fading = cfg.sim.interferer_fading;
    return sc;
}

CurveResult simulated_curve(const ExperimentConfig& cfg, const Geometry& geo,
                            const CurveKey& key, unsigned threads, bool keep_samples) {
    const auto sc = sim_config_for(cfg, geo, key);
    auto samples = simulate(geo.layout, channel_for(cfg, key.eta, key.sigma_db), sc, threads);
    auto emp = empirical_outage(samples, cfg.thresholds_db);
    CurveResult out;
    out.key = key;
    out.model = Model::MonteCarlo;
    out.curve = std::move(emp.curve);
    out.standard_error = std::move(emp.standard_error);
    if (keep_samples) {
        out.samples_db = std::move(samples.values_db);
    }
    return out;
}

std::vector<CurveKey> curve_keys(const ExperimentConfig& cfg) {
    std::vector<CurveKey> keys;
    for (double eta : cfg.channel.eta) {
        for (double sigma : cfg.channel.sigma_db) {
            for (double r : cfg.mobile.r_over_rc) {
                for (OutageMode mode : cfg.channel_modes) {
                    keys.push_back({eta, sigma, r, mode});
                }
            }
        }
    }
    return keys;
}

ExperimentResult evaluate_experiment(const ExperimentConfig& cfg, unsigned threads) {
    validate_threshold_grid(cfg.thresholds_db);
    const auto geo = make_geometry(cfg);
    const auto has = [&](Model m) {
        return std::find(cfg.models.begin(), cfg.models.end(), m) != cfg.models.end();
    };
    ExperimentResult result;
    for (const auto& key : curve_keys(cfg)) {
        std::map<Model, std::size_t> index;
        for (Model m : {Model::Discrete, Model::Fluid, Model::MonteCarlo}) {
            if (!has(m)) {
                continue;
            }
            index[m] = result.curves.size();
            result.curves.push_back(m == Model::MonteCarlo ? simulated_curve(cfg, geo, key, threads)
                                                           : analytic_curve(cfg, geo, key, m));
        }
        const std::pair<Model, Model> pairs[] = {{Model::Fluid, Model::MonteCarlo},
                                                 {Model::Discrete, Model::MonteCarlo},
                                                 {Model::Fluid, Model::Discrete}};
        for (const auto& [a, b] : pairs) {
            if (index.count(a) && index.count(b)) {
                result.rows.push_back({key, a, b,
                                       compare(result.curves[index[a]].curve,
                                               result.curves[index[b]].curve)});
            }
        }
    }
    return result;
}

void write_curve_csv(std::ostream& os, const OutageCurve& curve,
                     const std::vector<double>& standard_error) {
    os << "delta_db,prob,stderr\n";
    for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i) {
        os << format_number(curve.thresholds_db[i]) << ',' << format_number(curve.probs[i]) << ','
           << format_number(i < standard_error.size() ? standard_error[i] : 0.0) << '\n';
    }
}

OutageCurve read_curve_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DomainError("cannot open curve file " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("delta_db,prob", 0) != 0) {
        throw DomainError(path.string() + ": expected a delta_db,prob header");
    }
    OutageCurve curve;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        double vals[2];
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 2; ++k) {
            const auto res = std::from_chars(p, end, vals[k]);
            if (res.ec != std::errc{} || (k == 0 && (res.ptr == end || *res.ptr != ','))) {
                throw DomainError(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed row");
            }
            p = res.ptr + 1;
        }
        curve.thresholds_db.push_back(vals[0]);
        curve.probs.push_back(vals[1]);
    }
    curve.validate();
    return curve;
}

void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
    os << "eta,sigma_db,r_over_rc,mode_a,mode_b,max_dev,delta10_a_db,delta10_b_db,shift_db\n";
    for (const auto& row : rows) {
        const std::string mode = to_string(row.key.mode);
        os << format_number(row.key.eta) << ',' << format_number(row.key.sigma_db) << ','
           << format_number(row.key.r_over_rc) << ',' << to_string(row.model_a) << '-' << mode
           << ',' << to_string(row.model_b) << '-' << mode << ','
           << format_number(row.report.max_deviation) << ','
           << format_number(row.report.delta10_a_db) << ','
           << format_number(row.report.delta10_b_db) << ','
           << format_number(row.report.shift_db) << '\n';
    }
}

void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result) {
    const fs::path dir = cfg.output.directory;
    fs::create_directories(dir);
    std::map<std::string, std::vector<const CurveResult*>> by_tag;
    for (const auto& c : result.curves) {
        const fs::path path = dir / ("curve_" + c.key.tag() + "_" + to_string(c.model) + ".csv");
        auto out = open_out(path);
        write_curve_csv(out, c.curve, c.standard_error);
        finish(out, path);
        by_tag[c.key.tag()].push_back(&c);
    }
    const fs::path report = dir / "report.csv";
    auto out = open_out(report);
    write_report_csv(out, result.rows);
    finish(out, report);
    if (cfg.output.svg) {
        for (const auto& [tag, curves] : by_tag) {
            const auto& k = curves.front()->key;
            write_chart(dir / ("chart_" + tag + ".svg"),
                        "eta=" + format_number(k.eta) + ", r/Rc=" + format_number(k.r_over_rc) +
                            ", " + to_string(k.mode),
                        curves);
        }
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads) {
    auto result = evaluate_experiment(cfg, threads);
    write_experiment(cfg, result);
    return result;
}

void dump_samples(const ExperimentConfig& cfg, unsigned threads) {
    const auto geo = make_geometry(cfg);
    const fs::path dir = cfg.output.directory;
    fs::create_directories(dir);
    {
        const fs::path path = dir / "layout.csv";
        auto out = open_out(path);
        geo.layout.write_csv(out);
        finish(out, path);
    }
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& key : curve_keys(cfg)) {
        const auto sc = sim_config_for(cfg, geo, key);
        const auto samples =
            simulate(geo.layout, channel_for(cfg, key.eta, key.sigma_db), sc, threads);
        const fs::path path = dir / ("samples_" + key.tag() + ".csv");
        auto out = open_out(path);
        samples.write_csv(out);
        finish(out, path);
        meta[key.tag()] = {{"layout_hash", samples.meta.layout_hash},
                           {"seed", sc.seed},
                           {"config", samples.meta.config_echo}};
    }
    const fs::path path = dir / "samples_meta.json";
    auto out = open_out(path);
    out << meta.dump(2) << '\n';
    finish(out, path);
}

void mf_sweep(const ExperimentConfig& cfg) {
    const auto geo = make_geometry(cfg);
    const auto sigmas = cfg.sigma_grid();
    std::vector<Row> rows;
    std::vector<Row> saturation;
    LineChart chart;
    chart.title = "m_f versus shadowing spread";
    chart.x_label = "sigma (dB)";
    chart.y_label = "m_f (dB)";
    chart.unit_y = false;
    const char* colors[] = {"#1f4e9c", "#c0392b", "#2a8a3e", "#8e44ad", "#d35400"};
    int series_index = 0;
    for (double eta : cfg.channel.eta) {
        for (double r : cfg.mobile.r_over_rc) {
            const auto points = h_saturation_curve(r * geo.layout.rc(), eta, geo.fluid, sigmas);
            Series s;
            s.label = "eta=" + format_number(eta) + ", r/Rc=" + format_number(r);
            s.color = colors[series_index++ % 5];
            for (const auto& pt : points) {
                const auto& m = pt.moments;
                rows.push_back({{format_number(eta), format_number(r), format_number(pt.sigma_db),
                                 format_number(m.m_f_db), format_number(m.m_f_linear()),
                                 format_number(m.s_f_db), format_number(m.h_factor),
                                 format_number(m.g_factor)}});
                s.x.push_back(pt.sigma_db);
                s.y.push_back(m.m_f_db);
            }
            chart.series.push_back(std::move(s));
            const double g = g_fluid(r * geo.layout.rc(), eta, geo.fluid);
            const double limit = 1.0 / std::sqrt(g);
            const double h12 = h_function(g, 12.0);
            saturation.push_back({{format_number(eta), format_number(r), format_number(g),
                                   format_number(limit), format_number(h12),
                                   format_number(h12 / limit)}});
        }
    }
    const fs::path dir = cfg.output.directory;
    fs::create_directories(dir);
    write_table(dir / "mf_vs_sigma.csv",
                "eta,r_over_rc,sigma_db,m_f_db,m_f_linear,s_f_db,h_factor,g_factor", rows);
    write_table(dir / "mf_saturation.csv", "eta,r_over_rc,g_factor,h_limit,h_at_12db,ratio_12db",
                saturation);
    if (cfg.output.svg) {
        const fs::path path = dir / "mf_vs_sigma.svg";
        auto out = open_out(path);
        chart.write(out);
        finish(out, path);
    }
}

void coverage_table(const ExperimentConfig& cfg) {
    const auto geo = make_geometry(cfg);
    std::vector<Row> rows;
    for (double eta : cfg.channel.eta) {
        for (double sigma : cfg.channel.sigma_db) {
            for (OutageMode mode : cfg.channel_modes) {
                const OutageModel model{channel_for(cfg, eta, sigma), geo.fluid, mode,
                                        cfg.quadrature};
                for (double delta : cfg.coverage.delta_db) {
                    const auto res = coverage_radius(model, delta, cfg.coverage.p_target);
                    rows.push_back({{format_number(eta), format_number(sigma), to_string(mode),
                                     format_number(delta), format_number(cfg.coverage.p_target),
                                     format_number(res.radius),
                                     format_number(res.radius / geo.layout.rc()),
                                     to_string(res.status)}});
                }
            }
        }
    }
    const fs::path dir = cfg.output.directory;
    fs::create_directories(dir);
    write_table(dir / "coverage.csv",
                "eta,sigma_db,mode,delta_db,p_target,radius_m,radius_over_rc,status", rows);
}

void capacity_table(const ExperimentConfig& cfg, unsigned threads) {
    const auto geo = make_geometry(cfg);
    std::vector<Row> rows;
    for (const auto& key : curve_keys(cfg)) {
        for (Model model : cfg.models) {
            double cap = 0.0;
            if (model == Model::Fluid) {
                cap = mean_capacity(fluid_moments(cfg, geo, key), key.mode, cfg.quadrature);
            } else if (model == Model::Discrete) {
                const auto moments = discrete_moments(cfg, geo, key);
                for (const auto& m : moments) {
                    cap += mean_capacity(m, key.mode, cfg.quadrature);
                }
                cap /= static_cast<double>(moments.size());
            } else {
                const auto sim = simulated_curve(cfg, geo, key, threads, true);
                double sum = 0.0;
                for (double x : sim.samples_db) {
                    sum += std::log2(1.0 + db_to_linear(x));
                }
                cap = sum / static_cast<double>(sim.samples_db.size());
            }
            rows.push_back({{format_number(key.eta), format_number(key.sigma_db),
                             format_number(key.r_over_rc), to_string(key.mode), to_string(model),
                             format_number(cap)}});
        }
    }
    const fs::path dir = cfg.output.directory;
    fs::create_directories(dir);
    write_table(dir / "capacity.csv", "eta,sigma_db,r_over_rc,mode,model,capacity_bps_hz", rows);
}

void reproduce_figures(const ExperimentConfig& cfg, unsigned threads) {
    const fs::path root = cfg.output.directory;
    std::vector<Row> summary;
    auto note = [&](const std::string& fig, const std::string& quantity, const std::string& model,
                    double value) {
        summary.push_back({{fig, quantity, model, format_number(value)}});
    };
    auto value_of = [](const ExperimentResult& res, double sigma, Model model) {
        for (const auto& c : res.curves) {
            if (c.model == model && c.key.sigma_db == sigma) {
                return delta10(c.curve, 0.1);
            }
        }
        return kNaN;
    };
    auto sub = [&](const char* name) {
        ExperimentConfig c = cfg;
        c.output.directory = root / name;
        return c;
    };

    // m_f against sigma at the cell edge.
    {
        auto c = sub("fig2");
        c.channel.eta = {3.0};
        c.mobile.r_over_rc = {1.0};
        mf_sweep(c);
        const auto geo = make_geometry(c);
        const double g = g_fluid(geo.layout.rc(), 3.0, geo.fluid);
        note("fig2", "h12_over_limit", "fluid", h_function(g, 12.0) * std::sqrt(g));
    }

    // Outage with shadowing and fading: edge, eta 3 and 4, then r = Rc/2.
    ExperimentResult fig3;
    for (const auto& [name, eta, r, sigmas] :
         {std::tuple<const char*, double, double, std::vector<double>>{"fig3", 3.0, 1.0, {3.0, 6.0}},
          {"fig4", 4.0, 1.0, {3.0, 6.0}},
          {"fig5", 3.0, 0.5, {3.0}}}) {
        auto c = sub(name);
        c.channel.eta = {eta};
        c.channel.sigma_db = sigmas;
        c.mobile.r_over_rc = {r};
        c.channel_modes = {OutageMode::Fading};
        const auto res = run_experiment(c, threads);
        for (double s : sigmas) {
            for (Model m : c.models) {
                note(name, "delta10_sigma" + format_number(s) + "_db", to_string(m),
                     value_of(res, s, m));
            }
        }
        if (sigmas.size() == 2) {
            for (Model m : c.models) {
                note(name, "delta10_gap_db", to_string(m),
                     value_of(res, sigmas[0], m) - value_of(res, sigmas[1], m));
            }
        }
        if (std::string(name) == "fig4") {
            c.coverage.delta_db = {-15.0, -20.0};
            coverage_table(c);
        }
        if (std::string(name) == "fig3") {
            fig3 = res;
        }
    }

    // Shadowing without fading at the edge, including the deterministic case.
    {
        auto c = sub("fig6");
        c.channel.eta = {3.0};
        c.channel.sigma_db = {0.0, 3.0, 6.0};
        c.mobile.r_over_rc = {1.0};
        c.channel_modes = {OutageMode::Shadowing};
        const auto res = run_experiment(c, threads);
        for (Model m : c.models) {
            const double d0 = value_of(res, 0.0, m);
            const double d3 = value_of(res, 3.0, m);
            note("fig6", "delta10_sigma0_db", to_string(m), d0);
            note("fig6", "delta10_sigma3_db", to_string(m), d3);
            note("fig6", "shift_shadowing_db", to_string(m), d3 - d0);
            note("fig6", "shift_fading_db", to_string(m), value_of(fig3, 3.0, m) - d3);
        }
    }

    fs::create_directories(root);
    write_table(root / "figure_summary.csv", "figure,quantity,model,value", summary);
}

}  // namespace cellout::harness
