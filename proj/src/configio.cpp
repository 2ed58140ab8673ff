#include "geosph/configio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace geosph {

namespace {

using KeyMap = std::map<std::string, std::map<std::string, std::string>>;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') quoted = !quoted;
        if (!quoted && (line[k] == '#' || line[k] == ';'))
            return line.substr(0, k);
    }
    return line;
}

KeyMap tokenize(const std::string& text, const std::string& source) {
    KeyMap map;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(source + ":" + std::to_string(lineno) +
                     ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(source + ":" + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            fail(source + ":" + std::to_string(lineno) + ": key outside a section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty() || value.empty())
            fail(source + ":" + std::to_string(lineno) + ": empty key or value");
        if (!map[section].emplace(key, value).second)
            fail(source + ": duplicate key " + section + "." + key);
    }
    return map;
}

/// Pops typed values out of the token map so leftovers can be reported.
class Reader {
public:
    Reader(KeyMap map, std::vector<std::string>& defaults)
        : map_(std::move(map)), defaults_(defaults) {}

    bool has(const std::string& sec, const std::string& key) const {
        auto s = map_.find(sec);
        return s != map_.end() && s->second.count(key) > 0;
    }

    std::string take_string(const std::string& sec, const std::string& key) {
        auto s = map_.find(sec);
        if (s == map_.end() || !s->second.count(key))
            fail("missing required key " + sec + "." + key);
        std::string v = s->second.at(key);
        s->second.erase(key);
        return v;
    }

    std::string take_string(const std::string& sec, const std::string& key,
                            const std::string& def) {
        if (!has(sec, key)) {
            note_default(sec, key, def);
            return def;
        }
        return take_string(sec, key);
    }

    double parse_number(const std::string& sec, const std::string& key,
                        const std::string& v) const {
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0')
            fail(sec + "." + key + ": not a number: '" + v + "'");
        return x;
    }

    double take_number(const std::string& sec, const std::string& key) {
        return parse_number(sec, key, take_string(sec, key));
    }

    double take_number(const std::string& sec, const std::string& key,
                       double def) {
        if (!has(sec, key)) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", def);
            note_default(sec, key, buf);
            return def;
        }
        return take_number(sec, key);
    }

    bool take_bool(const std::string& sec, const std::string& key, bool def) {
        if (!has(sec, key)) {
            note_default(sec, key, def ? "true" : "false");
            return def;
        }
        const std::string v = take_string(sec, key);
        if (v == "true") return true;
        if (v == "false") return false;
        fail(sec + "." + key + ": expected true or false, got '" + v + "'");
    }

    void reject_leftovers() const {
        for (const auto& [sec, keys] : map_)
            for (const auto& [key, value] : keys)
                fail("unknown key " + sec + "." + key);
    }

private:
    void note_default(const std::string& sec, const std::string& key,
                      const std::string& v) {
        defaults_.push_back(sec + "." + key + " = " + v);
    }

    KeyMap map_;
    std::vector<std::string>& defaults_;
};

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

} // namespace

LoadedConfig parse_config_text(const std::string& text,
                               const std::string& source_name) {
    LoadedConfig out;
    Reader r(tokenize(text, source_name), out.defaults_applied);

    // [scenario]
    const std::string type = r.take_string("scenario", "type");
    if (type == "collapse") {
        out.scenario.type = ScenarioSpec::Type::Collapse;
        out.scenario.block.width = r.take_number("scenario", "width", 2.0);
        out.scenario.block.height = r.take_number("scenario", "height", 1.0);
        out.scenario.block.floor_length =
            r.take_number("scenario", "floor_length",
                          out.scenario.block.width + 3.0 * out.scenario.block.height);
        out.scenario.block.left_wall = r.take_bool("scenario", "left_wall", true);
        out.scenario.geostatic = r.take_bool("scenario", "geostatic", false);
    } else if (type == "slope") {
        out.scenario.type = ScenarioSpec::Type::Slope;
        out.scenario.slope.crest_height =
            r.take_number("scenario", "crest_height", 5.0);
        out.scenario.slope.angle_deg = r.take_number("scenario", "angle_deg", 45.0);
        out.scenario.slope.foundation_depth =
            r.take_number("scenario", "foundation_depth", 3.0);
        out.scenario.slope.lateral_extent =
            r.take_number("scenario", "lateral_extent", 20.0);
        out.scenario.slope.toe_x = r.take_number("scenario", "toe_x", 7.0);
        out.scenario.geostatic = r.take_bool("scenario", "geostatic", true);
        out.scenario.fs = r.take_number("scenario", "fs", 1.0);
        out.scenario.fs_start = r.take_number("scenario", "fs_start", 1.0);
        out.scenario.fs_step = r.take_number("scenario", "fs_step", 0.1);
        out.scenario.fs_max = r.take_number("scenario", "fs_max", 3.0);
        if (out.scenario.fs < 1.0) fail("scenario.fs must be >= 1");
    } else {
        fail("scenario.type: unknown scenario '" + type + "'");
    }

    // [material]
    const double rho0 = r.take_number("material", "rho0");
    const double E = r.take_number("material", "E");
    const double nu = r.take_number("material", "nu", 0.3);
    const double cohesion = r.take_number("material", "cohesion");
    const double phi_deg = r.take_number("material", "friction_angle_deg");
    const double psi_deg = r.take_number("material", "dilatancy_angle_deg", 0.0);
    const bool plastic = r.take_bool("material", "plastic", true);
    try {
        out.material = derive_material(rho0, E, nu, cohesion, deg_to_rad(phi_deg),
                                       deg_to_rad(psi_deg));
    } catch (const std::invalid_argument& e) {
        fail(std::string("[material] ") + e.what());
    }
    out.material.plastic = plastic;
    out.friction_angle_deg = phi_deg;
    out.dilatancy_angle_deg = psi_deg;

    // [numerics]
    const std::string method = r.take_string("numerics", "method");
    if (method == "CESPH")
        out.sim.method = Method::CESPH;
    else if (method == "TLSPH")
        out.sim.method = Method::TLSPH;
    else
        fail("numerics.method: unknown method '" + method + "'");

    out.sim.dp = r.take_number("numerics", "dp");
    out.sim.h = r.take_number("numerics", "h", 1.5 * out.sim.dp);
    out.sim.dt = r.take_number("numerics", "dt");
    out.sim.t_end = r.take_number("numerics", "t_end");
    out.sim.beta1 = r.take_number("numerics", "beta1", 2.5);
    out.sim.beta2 = r.take_number("numerics", "beta2", 2.5);
    const bool gamma_given = r.has("numerics", "gamma");
    out.sim.gamma = r.take_number("numerics", "gamma", 0.6);
    out.sim.alpha_hg = r.take_number("numerics", "alpha_hg", 50.0);
    const std::string k_upd = r.take_string("numerics", "k_update", "2");
    if (k_upd == "off")
        out.sim.k_update = k_update_disabled;
    else
        out.sim.k_update = r.parse_number("numerics", "k_update", k_upd);
    out.sim.gradient_correction =
        r.take_bool("numerics", "gradient_correction", true);
    const std::string pk1 = r.take_string("numerics", "pk1_form", "left");
    if (pk1 == "left")
        out.sim.pk1_form = Pk1Form::Left;
    else if (pk1 == "right")
        out.sim.pk1_form = Pk1Form::Right;
    else
        fail("numerics.pk1_form: expected left or right, got '" + pk1 + "'");
    out.sim.gravity = r.take_number("numerics", "gravity", 9.81);
    const std::string damping = r.take_string("numerics", "damping", "off");
    if (damping == "off")
        out.sim.damping = DampingMode::Off;
    else if (damping == "viscous")
        out.sim.damping = DampingMode::Viscous;
    else
        fail("numerics.damping: expected off or viscous, got '" + damping + "'");
    out.sim.c_d = r.take_number("numerics", "c_d", 0.0);
    out.sim.geostatic_ke_tol = r.take_number("numerics", "geostatic_ke_tol", 1e-6);
    out.sim.geostatic_max_time =
        r.take_number("numerics", "geostatic_max_time", 2.0);

    // [output]
    out.output_dir = r.take_string("output", "dir", "out");
    out.sim.output_interval = r.take_number("output", "interval", 0.05);
    out.sim.write_vtk = r.take_bool("output", "vtk", true);
    out.sim.write_csv = r.take_bool("output", "csv", true);
    out.sim.write_diagnostics = r.take_bool("output", "diagnostics", true);

    r.reject_leftovers();

    try {
        out.sim.finalize();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }

    if (out.sim.method == Method::TLSPH && gamma_given && out.sim.gamma > 0.0)
        out.warnings.push_back(
            "numerics.gamma: artificial pressure is ignored by TLSPH");

    return out;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string effective_config_text(const LoadedConfig& cfg) {
    std::ostringstream os;
    char buf[48];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    auto boolean = [](bool b) { return b ? "true" : "false"; };

    os << "[scenario]\n";
    if (cfg.scenario.type == ScenarioSpec::Type::Collapse) {
        os << "type = collapse\n";
        os << "width = " << num(cfg.scenario.block.width) << "\n";
        os << "height = " << num(cfg.scenario.block.height) << "\n";
        os << "floor_length = " << num(cfg.scenario.block.floor_length) << "\n";
        os << "left_wall = " << boolean(cfg.scenario.block.left_wall) << "\n";
        os << "geostatic = " << boolean(cfg.scenario.geostatic) << "\n";
    } else {
        os << "type = slope\n";
        os << "crest_height = " << num(cfg.scenario.slope.crest_height) << "\n";
        os << "angle_deg = " << num(cfg.scenario.slope.angle_deg) << "\n";
        os << "foundation_depth = " << num(cfg.scenario.slope.foundation_depth)
           << "\n";
        os << "lateral_extent = " << num(cfg.scenario.slope.lateral_extent)
           << "\n";
        os << "toe_x = " << num(cfg.scenario.slope.toe_x) << "\n";
        os << "geostatic = " << boolean(cfg.scenario.geostatic) << "\n";
        os << "fs = " << num(cfg.scenario.fs) << "\n";
        os << "fs_start = " << num(cfg.scenario.fs_start) << "\n";
        os << "fs_step = " << num(cfg.scenario.fs_step) << "\n";
        os << "fs_max = " << num(cfg.scenario.fs_max) << "\n";
    }

    os << "[material]\n";
    os << "rho0 = " << num(cfg.material.rho0) << "\n";
    os << "E = " << num(cfg.material.E) << "\n";
    os << "nu = " << num(cfg.material.nu) << "\n";
    os << "cohesion = " << num(cfg.material.c) << "\n";
    os << "friction_angle_deg = " << num(cfg.friction_angle_deg) << "\n";
    os << "dilatancy_angle_deg = " << num(cfg.dilatancy_angle_deg) << "\n";
    os << "plastic = " << boolean(cfg.material.plastic) << "\n";

    os << "[numerics]\n";
    os << "method = " << to_string(cfg.sim.method) << "\n";
    os << "dp = " << num(cfg.sim.dp) << "\n";
    os << "h = " << num(cfg.sim.h) << "\n";
    os << "dt = " << num(cfg.sim.dt) << "\n";
    os << "t_end = " << num(cfg.sim.t_end) << "\n";
    os << "beta1 = " << num(cfg.sim.beta1) << "\n";
    os << "beta2 = " << num(cfg.sim.beta2) << "\n";
    os << "gamma = " << num(cfg.sim.gamma) << "\n";
    os << "alpha_hg = " << num(cfg.sim.alpha_hg) << "\n";
    if (cfg.sim.k_update == k_update_disabled)
        os << "k_update = off\n";
    else
        os << "k_update = " << num(cfg.sim.k_update) << "\n";
    os << "gradient_correction = " << boolean(cfg.sim.gradient_correction)
       << "\n";
    os << "pk1_form = " << to_string(cfg.sim.pk1_form) << "\n";
    os << "gravity = " << num(cfg.sim.gravity) << "\n";
    os << "damping = " << to_string(cfg.sim.damping) << "\n";
    os << "c_d = " << num(cfg.sim.c_d) << "\n";
    os << "geostatic_ke_tol = " << num(cfg.sim.geostatic_ke_tol) << "\n";
    os << "geostatic_max_time = " << num(cfg.sim.geostatic_max_time) << "\n";

    os << "[output]\n";
    os << "dir = " << cfg.output_dir << "\n";
    os << "interval = " << num(cfg.sim.output_interval) << "\n";
    os << "vtk = " << boolean(cfg.sim.write_vtk) << "\n";
    os << "csv = " << boolean(cfg.sim.write_csv) << "\n";
    os << "diagnostics = " << boolean(cfg.sim.write_diagnostics) << "\n";
    return os.str();
}

std::string config_hash(const LoadedConfig& cfg) {
    const std::string text = effective_config_text(cfg);
    const std::size_t h = std::hash<std::string>{}(text);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%08zx", h & 0xffffffffu);
    return buf;
}

} // namespace geosph
