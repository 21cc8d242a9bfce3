#include "cellout/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cellout::harness {

namespace {

using nlohmann::json;

int line_at_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

// Lenient scanner over already-validated JSON text.
class PointerScanner {
public:
    explicit PointerScanner(std::string_view text) : text_(text) {}

    std::vector<std::pair<std::string, int>> run() {
        value("");
        return std::move(out_);
    }

private:
    void record(const std::string& ptr) {
        if (seen_.insert(ptr).second) {
            out_.emplace_back(ptr, line_);
        }
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r')) {
            if (text_[pos_] == '\n') {
                ++line_;
            }
            ++pos_;
        }
    }

    std::string string_token() {
        std::string s;
        ++pos_;  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
                s += text_[pos_ + 1];
                pos_ += 2;
                continue;
            }
            s += text_[pos_++];
        }
        ++pos_;  // closing quote
        return s;
    }

    void value(const std::string& ptr) {
        skip_ws();
        record(ptr);
        if (pos_ >= text_.size()) {
            return;
        }
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '}') {
                ++pos_;
                return;
            }
            while (pos_ < text_.size()) {
                skip_ws();
                const std::string key = string_token();
                const std::string child = ptr + "/" + escape_pointer_token(key);
                record(child);
                skip_ws();
                ++pos_;  // ':'
                value(child);
                skip_ws();
                if (pos_ < text_.size() && text_[pos_++] == '}') {
                    return;
                }
            }
        } else if (c == '[') {
            ++pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ']') {
                ++pos_;
                return;
            }
            for (int index = 0; pos_ < text_.size(); ++index) {
                value(ptr + "/" + std::to_string(index));
                skip_ws();
                if (pos_ < text_.size() && text_[pos_++] == ']') {
                    return;
                }
            }
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
                   text_[pos_] != ']' && text_[pos_] != ' ' && text_[pos_] != '\n' &&
                   text_[pos_] != '\r' && text_[pos_] != '\t') {
                ++pos_;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::vector<std::pair<std::string, int>> out_;
    std::set<std::string> seen_;
};

class Reader {
public:
    explicit Reader(std::string_view text) {
        for (auto& [ptr, line] : json_pointer_lines(text)) {
            lines_[ptr] = line;
        }
    }

    [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
        const auto it = lines_.find(ptr);
        const int line = it == lines_.end() ? 0 : it->second;
        std::ostringstream os;
        os << "config line " << line << " (" << (ptr.empty() ? "/" : ptr) << "): " << msg;
        throw ConfigError(os.str(), line);
    }

    void only_keys(const json& obj, const std::string& ptr,
                   std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) {
            fail(ptr, "expected an object");
        }
        for (const auto& [key, _] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(),
                             [&](const char* a) { return key == a; })) {
                fail(ptr + "/" + escape_pointer_token(key), "unknown key '" + key + "'");
            }
        }
    }

    double number(const json& v, const std::string& ptr) const {
        if (!v.is_number()) {
            fail(ptr, "expected a number");
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            fail(ptr, "expected a finite number");
        }
        return x;
    }

    std::int64_t integer(const json& v, const std::string& ptr) const {
        if (!v.is_number_integer()) {
            fail(ptr, "expected an integer");
        }
        return v.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(const json& v, const std::string& ptr) const {
        if (v.is_number_unsigned()) {
            return v.get<std::uint64_t>();
        }
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(v.get<std::int64_t>());
        }
        fail(ptr, "expected a nonnegative integer");
    }

    bool boolean(const json& v, const std::string& ptr) const {
        if (!v.is_boolean()) {
            fail(ptr, "expected true or false");
        }
        return v.get<bool>();
    }

    std::string string(const json& v, const std::string& ptr) const {
        if (!v.is_string()) {
            fail(ptr, "expected a string");
        }
        return v.get<std::string>();
    }

    // A number or a nonempty array of numbers.
    std::vector<double> numbers(const json& v, const std::string& ptr) const {
        if (v.is_number()) {
            return {number(v, ptr)};
        }
        if (!v.is_array() || v.empty()) {
            fail(ptr, "expected a number or a nonempty array of numbers");
        }
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(number(v[i], ptr + "/" + std::to_string(i)));
        }
        return out;
    }

    std::vector<std::string> strings(const json& v, const std::string& ptr) const {
        if (v.is_string()) {
            return {v.get<std::string>()};
        }
        if (!v.is_array() || v.empty()) {
            fail(ptr, "expected a string or a nonempty array of strings");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(string(v[i], ptr + "/" + std::to_string(i)));
        }
        return out;
    }

private:
    std::map<std::string, int> lines_;
};

void read_network(const Reader& rd, const json& j, ExperimentConfig::Network& n) {
    const std::string p = "/network";
    rd.only_keys(j, p, {"rings", "rc_m", "r_nw_m"});
    if (j.contains("rings")) {
        const auto rings = rd.integer(j["rings"], p + "/rings");
        if (rings < 1 || rings > 64) {
            rd.fail(p + "/rings", "rings must be between 1 and 64");
        }
        n.rings = static_cast<int>(rings);
    }
    if (j.contains("rc_m")) {
        n.rc_m = rd.number(j["rc_m"], p + "/rc_m");
        if (!(n.rc_m > 0.0)) {
            rd.fail(p + "/rc_m", "rc_m must be positive");
        }
    }
    if (j.contains("r_nw_m") && !j["r_nw_m"].is_null()) {
        n.r_nw_m = rd.number(j["r_nw_m"], p + "/r_nw_m");
        if (!(*n.r_nw_m >= 2.0 * n.rc_m)) {
            rd.fail(p + "/r_nw_m", "r_nw_m must be at least 2 * rc_m");
        }
    }
}

void read_channel(const Reader& rd, const json& j, ExperimentConfig::Channel& c) {
    const std::string p = "/channel";
    rd.only_keys(j, p, {"eta", "sigma_db", "power", "k_const", "noise"});
    if (j.contains("eta")) {
        c.eta = rd.numbers(j["eta"], p + "/eta");
        for (double e : c.eta) {
            if (!(e > 2.0)) {
                rd.fail(p + "/eta", "eta must exceed 2");
            }
        }
    }
    if (j.contains("sigma_db")) {
        c.sigma_db = rd.numbers(j["sigma_db"], p + "/sigma_db");
        for (double s : c.sigma_db) {
            if (!(s >= 0.0)) {
                rd.fail(p + "/sigma_db", "sigma_db must be nonnegative");
            }
        }
    }
    auto positive = [&](const char* key, double& dst) {
        if (j.contains(key)) {
            dst = rd.number(j[key], p + "/" + key);
            if (!(dst > 0.0)) {
                rd.fail(p + "/" + key, std::string(key) + " must be positive");
            }
        }
    };
    positive("power", c.power);
    positive("k_const", c.k_const);
    if (j.contains("noise")) {
        c.noise = rd.number(j["noise"], p + "/noise");
        if (c.noise < 0.0) {
            rd.fail(p + "/noise", "noise must be nonnegative");
        }
    }
}

void read_mobile(const Reader& rd, const json& j, ExperimentConfig::Mobile& m) {
    const std::string p = "/mobile";
    rd.only_keys(j, p, {"r_over_rc", "azimuth", "n_angles"});
    if (j.contains("r_over_rc")) {
        m.r_over_rc = rd.numbers(j["r_over_rc"], p + "/r_over_rc");
        for (double r : m.r_over_rc) {
            if (!(r > 0.0 && r <= 1.0)) {
                rd.fail(p + "/r_over_rc", "r_over_rc values must lie in (0, 1]");
            }
        }
    }
    if (j.contains("azimuth")) {
        const auto a = rd.string(j["azimuth"], p + "/azimuth");
        if (a == "zero") {
            m.azimuth = AzimuthMode::Zero;
        } else if (a == "average") {
            m.azimuth = AzimuthMode::Average;
        } else {
            rd.fail(p + "/azimuth", "azimuth must be \"zero\" or \"average\"");
        }
    }
    if (j.contains("n_angles")) {
        const auto n = rd.integer(j["n_angles"], p + "/n_angles");
        if (n < 1 || n > 360) {
            rd.fail(p + "/n_angles", "n_angles must be between 1 and 360");
        }
        m.n_angles = static_cast<int>(n);
    }
}

std::vector<double> read_thresholds(const Reader& rd, const json& j) {
    const std::string p = "/thresholds";
    rd.only_keys(j, p, {"start_db", "stop_db", "step_db", "values_db"});
    std::vector<double> grid;
    if (j.contains("values_db")) {
        if (j.contains("start_db") || j.contains("stop_db") || j.contains("step_db")) {
            rd.fail(p, "give either values_db or start_db/stop_db/step_db, not both");
        }
        grid = rd.numbers(j["values_db"], p + "/values_db");
    } else {
        const double start = j.contains("start_db") ? rd.number(j["start_db"], p + "/start_db") : -30.0;
        const double stop = j.contains("stop_db") ? rd.number(j["stop_db"], p + "/stop_db") : 10.0;
        const double step = j.contains("step_db") ? rd.number(j["step_db"], p + "/step_db") : 0.1;
        if (!(step > 0.0) || !(stop >= start)) {
            rd.fail(p, "need step_db > 0 and stop_db >= start_db");
        }
        if ((stop - start) / step > 1e6) {
            rd.fail(p, "threshold grid exceeds 10^6 points");
        }
        grid = make_grid(start, stop, step);
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            rd.fail(p + "/values_db/" + std::to_string(i), "thresholds must be strictly increasing");
        }
    }
    return grid;
}

void read_modes(const Reader& rd, const json& j, ExperimentConfig& cfg) {
    const std::string p = "/modes";
    rd.only_keys(j, p, {"channel", "models"});
    if (j.contains("channel")) {
        cfg.channel_modes.clear();
        for (const auto& s : rd.strings(j["channel"], p + "/channel")) {
            if (s == "fading") {
                cfg.channel_modes.push_back(OutageMode::Fading);
            } else if (s == "shadowing") {
                cfg.channel_modes.push_back(OutageMode::Shadowing);
            } else {
                rd.fail(p + "/channel", "unknown channel mode '" + s + "'");
            }
        }
    }
    if (j.contains("models")) {
        cfg.models.clear();
        for (const auto& s : rd.strings(j["models"], p + "/models")) {
            if (s == "discrete") {
                cfg.models.push_back(Model::Discrete);
            } else if (s == "fluid") {
                cfg.models.push_back(Model::Fluid);
            } else if (s == "mc") {
                cfg.models.push_back(Model::MonteCarlo);
            } else {
                rd.fail(p + "/models", "unknown model '" + s + "'");
            }
        }
    }
}

void read_sim(const Reader& rd, const json& j, ExperimentConfig::Sim& s) {
    const std::string p = "/sim";
    rd.only_keys(j, p, {"snapshots", "seed", "interferer_fading"});
    if (j.contains("snapshots")) {
        s.snapshots = rd.unsigned_integer(j["snapshots"], p + "/snapshots");
        if (s.snapshots < 1) {
            rd.fail(p + "/snapshots", "snapshots must be at least 1");
        }
    }
    if (j.contains("seed")) {
        s.seed = rd.unsigned_integer(j["seed"], p + "/seed");
    }
    if (j.contains("interferer_fading")) {
        s.interferer_fading = rd.boolean(j["interferer_fading"], p + "/interferer_fading");
    }
}

void read_quadrature(const Reader& rd, const json& j, QuadratureConfig& q) {
    const std::string p = "/quadrature";
    rd.only_keys(j, p, {"method", "nodes", "abs_tol"});
    if (j.contains("method")) {
        const auto m = rd.string(j["method"], p + "/method");
        if (m == "gauss-laguerre") {
            q.method = QuadratureMethod::GaussLaguerre;
        } else if (m == "adaptive") {
            q.method = QuadratureMethod::Adaptive;
        } else {
            rd.fail(p + "/method", "method must be \"gauss-laguerre\" or \"adaptive\"");
        }
    }
    if (j.contains("nodes")) {
        const auto n = rd.integer(j["nodes"], p + "/nodes");
        if (n < 2 || n > 512) {
            rd.fail(p + "/nodes", "nodes must be between 2 and 512");
        }
        q.nodes = static_cast<int>(n);
    }
    if (j.contains("abs_tol")) {
        q.abs_tol = rd.number(j["abs_tol"], p + "/abs_tol");
        if (!(q.abs_tol > 0.0)) {
            rd.fail(p + "/abs_tol", "abs_tol must be positive");
        }
    }
}

void read_coverage(const Reader& rd, const json& j, ExperimentConfig::Coverage& c) {
    const std::string p = "/coverage";
    rd.only_keys(j, p, {"delta_db", "p_target"});
    if (j.contains("delta_db")) {
        c.delta_db = rd.numbers(j["delta_db"], p + "/delta_db");
    }
    if (j.contains("p_target")) {
        c.p_target = rd.number(j["p_target"], p + "/p_target");
        if (!(c.p_target > 0.0 && c.p_target <= 1.0)) {
            rd.fail(p + "/p_target", "p_target must lie in (0, 1]");
        }
    }
}

void read_mf_sweep(const Reader& rd, const json& j, ExperimentConfig::MfSweep& m) {
    const std::string p = "/mf_sweep";
    rd.only_keys(j, p, {"sigma_start_db", "sigma_stop_db", "sigma_step_db"});
    if (j.contains("sigma_start_db")) {
        m.sigma_start_db = rd.number(j["sigma_start_db"], p + "/sigma_start_db");
    }
    if (j.contains("sigma_stop_db")) {
        m.sigma_stop_db = rd.number(j["sigma_stop_db"], p + "/sigma_stop_db");
    }
    if (j.contains("sigma_step_db")) {
        m.sigma_step_db = rd.number(j["sigma_step_db"], p + "/sigma_step_db");
    }
    if (!(m.sigma_start_db >= 0.0) || !(m.sigma_stop_db >= m.sigma_start_db) ||
        !(m.sigma_step_db > 0.0)) {
        rd.fail(p, "need 0 <= sigma_start_db <= sigma_stop_db and sigma_step_db > 0");
    }
    if ((m.sigma_stop_db - m.sigma_start_db) / m.sigma_step_db > 1e5) {
        rd.fail(p, "sigma grid exceeds 10^5 points");
    }
}

void read_output(const Reader& rd, const json& j, ExperimentConfig::Output& o) {
    const std::string p = "/output";
    rd.only_keys(j, p, {"directory", "svg"});
    if (j.contains("directory")) {
        o.directory = rd.string(j["directory"], p + "/directory");
    }
    if (j.contains("svg")) {
        o.svg = rd.boolean(j["svg"], p + "/svg");
    }
}

}  // namespace

const char* to_string(Model model) noexcept {
    switch (model) {
        case Model::Discrete:
            return "discrete";
        case Model::Fluid:
            return "fluid";
        case Model::MonteCarlo:
            return "mc";
    }
    return "unknown";
}

ExperimentConfig::ExperimentConfig() : thresholds_db(make_grid(-30.0, 10.0, 0.1)) {}

std::vector<double> ExperimentConfig::sigma_grid() const {
    return make_grid(mf_sweep.sigma_start_db, mf_sweep.sigma_stop_db, mf_sweep.sigma_step_db);
}

std::vector<double> make_grid(double start, double stop, double step) {
    std::vector<double> grid;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
    for (long i = 0; i <= n; ++i) {
        // Round to 12 significant decimals so 0.1-steps print as typed.
        const double v = start + static_cast<double>(i) * step;
        grid.push_back(std::round(v * 1e9) / 1e9);
    }
    return grid;
}

std::vector<std::pair<std::string, int>> json_pointer_lines(std::string_view json_text) {
    return PointerScanner(json_text).run();
}

ExperimentConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        const int line = line_at_offset(json_text, e.byte == 0 ? 0 : e.byte - 1);
        throw ConfigError("config line " + std::to_string(line) + ": invalid JSON: " + e.what(),
                          line);
    }
    const Reader rd(json_text);
    rd.only_keys(root, "", {"$schema", "network", "channel", "mobile", "thresholds", "modes",
                            "sim", "quadrature", "coverage", "mf_sweep", "output"});
    ExperimentConfig cfg;
    if (root.contains("network")) {
        read_network(rd, root["network"], cfg.network);
    }
    if (root.contains("channel")) {
        read_channel(rd, root["channel"], cfg.channel);
    }
    if (root.contains("mobile")) {
        read_mobile(rd, root["mobile"], cfg.mobile);
    }
    if (root.contains("thresholds")) {
        cfg.thresholds_db = read_thresholds(rd, root["thresholds"]);
    }
    if (root.contains("modes")) {
        read_modes(rd, root["modes"], cfg);
    }
    if (root.contains("sim")) {
        read_sim(rd, root["sim"], cfg.sim);
    }
    if (root.contains("quadrature")) {
        read_quadrature(rd, root["quadrature"], cfg.quadrature);
    }
    if (root.contains("coverage")) {
        read_coverage(rd, root["coverage"], cfg.coverage);
    }
    if (root.contains("mf_sweep")) {
        read_mf_sweep(rd, root["mf_sweep"], cfg.mf_sweep);
    }
    if (root.contains("output")) {
        read_output(rd, root["output"], cfg.output);
    }
    if (cfg.network.r_nw_m && *cfg.network.r_nw_m < 2.0 * cfg.network.rc_m) {
        rd.fail("/network/r_nw_m", "r_nw_m must be at least 2 * rc_m");
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string(), 0);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace cellout::harness
