#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cellout/errors.hpp"
#include "cellout/fenton.hpp"
#include "cellout/fluid.hpp"
#include "cellout/harness/config.hpp"
#include "cellout/harness/experiment.hpp"
#include "cellout/hexnet.hpp"
#include "cellout/mcsim.hpp"
#include "cellout/outage.hpp"

namespace py = pybind11;
using namespace cellout;

namespace {

QuadratureConfig quadrature(const std::string& method, int nodes, double abs_tol) {
    QuadratureConfig qc;
    if (method == "gauss-laguerre") {
        qc.method = QuadratureMethod::GaussLaguerre;
    } else if (method == "adaptive") {
        qc.method = QuadratureMethod::Adaptive;
    } else {
        throw DomainError("quadrature method must be 'gauss-laguerre' or 'adaptive', got '" + method + "'");
    }
    qc.nodes = nodes;
    qc.abs_tol = abs_tol;
    return qc;
}

py::dict report_dict(const harness::ReportRow& row) {
    py::dict d;
    d["tag"] = row.key.tag();
    d["model_a"] = harness::to_string(row.model_a);
    d["model_b"] = harness::to_string(row.model_b);
    d["max_deviation"] = row.report.max_deviation;
    d["delta10_a_db"] = row.report.delta10_a_db;
    d["delta10_b_db"] = row.report.delta10_b_db;
    d["shift_db"] = row.report.shift_db;
    return d;
}

}  // namespace

PYBIND11_MODULE(_cellout, m) {
    m.doc() = "Downlink SINR outage: analytic models and hexagonal Monte Carlo";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<RangeError>(m, "RangeError", error);
    py::register_exception<ModelViolationError>(m, "ModelViolationError", error);
    py::register_exception<harness::ConfigError>(m, "ConfigError", error);

    py::enum_<OutageMode>(m, "OutageMode")
        .value("SHADOWING", OutageMode::Shadowing)
        .value("FADING", OutageMode::Fading);
    py::enum_<CoverageStatus>(m, "CoverageStatus")
        .value("INTERIOR", CoverageStatus::Interior)
        .value("FULL_CELL", CoverageStatus::FullCell)
        .value("NO_COVERAGE", CoverageStatus::NoCoverage);

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init([](double eta, double sigma_db, double power, double k_const) {
                 ChannelParams p{eta, sigma_db, power, k_const, 0.0};
                 p.validate();
                 return p;
             }),
             py::arg("eta") = 3.0, py::arg("sigma_db") = 0.0, py::arg("power") = 1.0,
             py::arg("k_const") = 1.0)
        .def_readwrite("eta", &ChannelParams::eta)
        .def_readwrite("sigma_db", &ChannelParams::sigma_db)
        .def_readwrite("power", &ChannelParams::power)
        .def_readwrite("k_const", &ChannelParams::k_const)
        .def("__repr__", [](const ChannelParams& p) {
            return "ChannelParams(eta=" + std::to_string(p.eta) +
                   ", sigma_db=" + std::to_string(p.sigma_db) + ")";
        });

    py::class_<FluidParams>(m, "FluidParams")
        .def(py::init([](double rho_bs, double rc, double r_nw) {
                 FluidParams fp{rho_bs, rc, r_nw};
                 fp.validate();
                 return fp;
             }),
             py::arg("rho_bs"), py::arg("rc"), py::arg("r_nw"))
        .def_static("hexagonal", &FluidParams::hexagonal, py::arg("rc"), py::arg("r_nw"))
        .def_readonly("rho_bs", &FluidParams::rho_bs)
        .def_readonly("rc", &FluidParams::rc)
        .def_readonly("r_nw", &FluidParams::r_nw);

    py::class_<YfMoments>(m, "YfMoments")
        .def(py::init([](double m_f_db, double s_f_db) {
                 YfMoments y;
                 y.m_f_db = m_f_db;
                 y.s_f_db = s_f_db;
                 return y;
             }),
             py::arg("m_f_db"), py::arg("s_f_db"))
        .def_readonly("m_f_db", &YfMoments::m_f_db)
        .def_readonly("s_f_db", &YfMoments::s_f_db)
        .def_readonly("g_factor", &YfMoments::g_factor)
        .def_readonly("y_f_linear", &YfMoments::y_f_linear)
        .def_readonly("h_factor", &YfMoments::h_factor);

    py::class_<OutageCurve>(m, "OutageCurve")
        .def(py::init([](std::vector<double> t, std::vector<double> p) {
                 OutageCurve c{std::move(t), std::move(p)};
                 c.validate();
                 return c;
             }),
             py::arg("thresholds_db"), py::arg("probs"))
        .def_readonly("thresholds_db", &OutageCurve::thresholds_db)
        .def_readonly("probs", &OutageCurve::probs);

    py::class_<Point>(m, "Point")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readonly("x", &Point::x)
        .def_readonly("y", &Point::y);

    py::class_<NetworkLayout>(m, "NetworkLayout")
        .def_property_readonly("positions", [](const NetworkLayout& l) {
            std::vector<std::pair<double, double>> out;
            for (const auto& p : l.positions()) {
                out.emplace_back(p.x, p.y);
            }
            return out;
        })
        .def_property_readonly("rc", &NetworkLayout::rc)
        .def_property_readonly("rings", &NetworkLayout::rings)
        .def_property_readonly("r_nw", &NetworkLayout::r_nw)
        .def_property_readonly("rho_bs", &NetworkLayout::rho_bs)
        .def_property_readonly("station_count", &NetworkLayout::station_count)
        .def("hash", &NetworkLayout::hash);

    py::class_<DistanceProfile>(m, "DistanceProfile")
        .def(py::init([](double r, std::vector<double> d) { return DistanceProfile{r, std::move(d)}; }),
             py::arg("r"), py::arg("interferer_distances"))
        .def_readonly("r", &DistanceProfile::r)
        .def_readonly("interferer_distances", &DistanceProfile::interferer_distances);

    m.def("db_to_linear", &db_to_linear, py::arg("x_db"));
    m.def("linear_to_db", &linear_to_db, py::arg("x"));
    m.def("q_function", &q_function, py::arg("u"));

    m.def("build_hex_network", &build_hex_network, py::arg("rings"), py::arg("rc"));
    m.def("distance_profile",
          [](const NetworkLayout& l, double x, double y, bool outside) {
              return distance_profile(l, {x, y}, outside);
          },
          py::arg("layout"), py::arg("x"), py::arg("y"), py::arg("allow_outside_cell") = false);
    m.def("ring_positions",
          [](double rc, double r, int n) {
              std::vector<std::pair<double, double>> out;
              for (const auto& p : ring_positions(rc, r, n)) {
                  out.emplace_back(p.x, p.y);
              }
              return out;
          },
          py::arg("rc"), py::arg("r"), py::arg("n_angles"));

    m.def("y_factor_discrete", &y_factor_discrete, py::arg("profile"), py::arg("eta"));
    m.def("g_factor_discrete", &g_factor_discrete, py::arg("profile"), py::arg("eta"));
    m.def("h_function", &h_function, py::arg("g"), py::arg("sigma_db"));
    m.def("yf_moments_discrete", &yf_moments_discrete, py::arg("profile"), py::arg("params"));
    m.def("y_fluid", &y_fluid, py::arg("r"), py::arg("eta"), py::arg("fluid"));
    m.def("g_fluid", &g_fluid, py::arg("r"), py::arg("eta"), py::arg("fluid"));
    m.def("yf_moments_fluid", &yf_moments_fluid, py::arg("r"), py::arg("params"), py::arg("fluid"));

    m.def("outage_probability",
          [](const YfMoments& mo, double delta_db, OutageMode mode, const std::string& method, int nodes,
             double abs_tol) {
              return outage_probability(mo, delta_db, mode, quadrature(method, nodes, abs_tol));
          },
          py::arg("moments"), py::arg("delta_db"), py::arg("mode"),
          py::arg("quadrature") = "gauss-laguerre", py::arg("nodes") = 64, py::arg("abs_tol") = 1e-8);
    m.def("outage_curve",
          [](const YfMoments& mo, const std::vector<double>& grid, OutageMode mode, const std::string& method,
             int nodes, double abs_tol) {
              return outage_curve(mo, grid, mode, quadrature(method, nodes, abs_tol));
          },
          py::arg("moments"), py::arg("grid_db"), py::arg("mode"),
          py::arg("quadrature") = "gauss-laguerre", py::arg("nodes") = 64, py::arg("abs_tol") = 1e-8);
    m.def("sinr_at_outage",
          [](const YfMoments& mo, OutageMode mode, double p) { return sinr_at_outage(mo, mode, p); },
          py::arg("moments"), py::arg("mode"), py::arg("p"));
    m.def("sinr_at_outage", py::overload_cast<const OutageCurve&, double>(&sinr_at_outage),
          py::arg("curve"), py::arg("p"));
    m.def("coverage_radius",
          [](const ChannelParams& ch, const FluidParams& fp, OutageMode mode, double delta_db, double p) {
              const auto res = coverage_radius(OutageModel{ch, fp, mode, {}}, delta_db, p);
              return py::make_tuple(res.radius, res.status);
          },
          py::arg("params"), py::arg("fluid"), py::arg("mode"), py::arg("delta_db"), py::arg("p_target"),
          "Largest radius whose outage stays at or below p_target; returns (radius, status).");
    m.def("mean_capacity",
          [](const YfMoments& mo, OutageMode mode) { return mean_capacity(mo, mode); },
          py::arg("moments"), py::arg("mode"));

    m.def("simulate",
          [](const NetworkLayout& layout, const ChannelParams& params, double r, int n_angles,
             std::uint64_t snapshots, std::uint64_t seed, bool shadowing, bool fading,
             bool interferer_fading, unsigned threads) {
              SimConfig sc;
              sc.snapshots = snapshots;
              sc.seed = seed;
              sc.mobile = RingPlacement{r, n_angles};
              sc.shadowing = shadowing;
              sc.fading = fading;
              sc.interferer_fading = interferer_fading && fading;
              py::gil_scoped_release release;
              return simulate(layout, params, sc, threads).values_db;
          },
          py::arg("layout"), py::arg("params"), py::arg("r"), py::arg("n_angles") = 12,
          py::arg("snapshots") = 10000, py::arg("seed") = 1, py::arg("shadowing") = true,
          py::arg("fading") = true, py::arg("interferer_fading") = true, py::arg("threads") = 0,
          "Raw SINR samples in dB, snapshot-major.");
    m.def("empirical_outage",
          [](const std::vector<double>& samples, const std::vector<double>& grid) {
              const auto e = empirical_outage(samples, grid);
              return py::make_tuple(e.curve, e.standard_error);
          },
          py::arg("samples_db"), py::arg("grid_db"));

    py::class_<harness::ExperimentConfig>(m, "ExperimentConfig")
        .def_property(
            "output_directory", [](const harness::ExperimentConfig& c) { return c.output.directory; },
            [](harness::ExperimentConfig& c, const std::filesystem::path& p) { c.output.directory = p; })
        .def_property_readonly("models", [](const harness::ExperimentConfig& c) {
            std::vector<std::string> out;
            for (auto mdl : c.models) {
                out.emplace_back(harness::to_string(mdl));
            }
            return out;
        })
        .def_property_readonly("thresholds_db", [](const harness::ExperimentConfig& c) { return c.thresholds_db; });
    m.def("parse_config", [](const std::string& text) { return harness::parse_config(text); },
          py::arg("json_text"));
    m.def("run_experiment",
          [](const harness::ExperimentConfig& cfg, unsigned threads) {
              harness::ExperimentResult res;
              {
                  py::gil_scoped_release release;
                  res = harness::run_experiment(cfg, threads);
              }
              py::list rows;
              for (const auto& row : res.rows) {
                  rows.append(report_dict(row));
              }
              return rows;
          },
          py::arg("config"), py::arg("threads") = 0,
          "Runs the experiment, writes its files and returns the comparison rows.");
}
