#include "mlalpha/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mlalpha/errors.hpp"

namespace mlalpha {

std::string to_string(Preset p) {
    switch (p) {
        case Preset::DeterministicHighEta: return "deterministic-high-eta";
        case Preset::DeterministicLowEta: return "deterministic-low-eta";
        case Preset::RandomHighEta: return "random-high-eta";
        case Preset::RandomLowEta: return "random-low-eta";
        case Preset::Custom: return "custom";
    }
    return "custom";
}

Preset preset_from_string(const std::string& s) {
    for (Preset p : {Preset::DeterministicHighEta, Preset::DeterministicLowEta,
                     Preset::RandomHighEta, Preset::RandomLowEta, Preset::Custom})
        if (to_string(p) == s) return p;
    throw ConfigError("unknown preset '" + s + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string ForcingSpec::to_string() const {
    if (zero) return "zero";
    std::ostringstream os;
    os << "mode:" << kx << "," << ky << "," << kz << ":" << format_double(amplitude);
    return os.str();
}

ForcingSpec ForcingSpec::parse(const std::string& s) {
    ForcingSpec f;
    if (s == "zero") return f;
    if (s.rfind("mode:", 0) != 0)
        throw ConfigError("forcing must be 'zero' or 'mode:KX,KY,KZ:AMP', got '" + s + "'");
    const std::string rest = s.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
        throw ConfigError("forcing mode spec is missing the amplitude: '" + s + "'");
    std::istringstream ks(rest.substr(0, colon));
    char comma1 = 0, comma2 = 0;
    if (!(ks >> f.kx >> comma1 >> f.ky >> comma2 >> f.kz) || comma1 != ',' || comma2 != ',')
        throw ConfigError("malformed forcing wavevector in '" + s + "'");
    f.amplitude = std::stod(rest.substr(colon + 1));
    f.zero = false;
    return f;
}

ExperimentConfig::ExperimentConfig() : c_gn(std::pow(4.0 / (3.0 * std::sqrt(3.0)), 0.75)) {}

ModelParams ExperimentConfig::model(const Grid& g) const {
    std::optional<SpectralVectorField> f;
    if (!forcing.zero)
        f = make_single_mode_forcing(g, forcing.kx, forcing.ky, forcing.kz,
                                     forcing.amplitude);
    return ModelParams::make(nu, alpha, grid_l, std::move(f));
}

AssimilationParams ExperimentConfig::assim() const {
    return AssimilationParams::make(beta, eta, h, interpolant);
}

InterpolantSpec ExperimentConfig::interpolant_spec() const {
    return InterpolantSpec::make(interpolant, h, grid_l, c1, c2);
}

void ExperimentConfig::validate() const {
    (void)grid();
    (void)assim();
    (void)interpolant_spec();
    step.validate();
    if (!(nu > 0.0)) throw ConfigError("model.nu must be positive");
    if (!(alpha > 0.0)) throw ConfigError("model.alpha must be positive");
    if (!(c_gn > 0.0)) throw ConfigError("constants.c must be positive");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig preset_config(Preset p) {
    ExperimentConfig cfg; // defaults already match the benchmark setup
    cfg.preset = p;
    switch (p) {
        case Preset::DeterministicHighEta:
            cfg.eta = 1.5;
            cfg.random_initial = false;
            break;
        case Preset::DeterministicLowEta:
            cfg.eta = 1e-4;
            cfg.random_initial = false;
            break;
        case Preset::RandomHighEta:
            cfg.eta = 1.5;
            cfg.random_initial = true;
            break;
        case Preset::RandomLowEta:
            cfg.eta = 1e-4;
            cfg.random_initial = true;
            break;
        case Preset::Custom:
            break;
    }
    return cfg;
}

std::vector<Preset> all_presets() {
    return {Preset::DeterministicHighEta, Preset::DeterministicLowEta,
            Preset::RandomHighEta, Preset::RandomLowEta};
}

namespace {

struct Line {
    int number;
    std::string key;
    std::string value;
    std::string raw;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream is(text);
    std::string raw;
    int number = 0;
    while (std::getline(is, raw)) {
        ++number;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(number) +
                              ": expected key=value, got '" + raw + "'");
        Line l{number, trim(s.substr(0, eq)), trim(s.substr(eq + 1)), raw};
        if (l.key.empty())
            throw ConfigError("config line " + std::to_string(number) + ": empty key");
        lines.push_back(std::move(l));
    }
    return lines;
}

[[noreturn]] void bad_line(const Line& l, const std::string& why) {
    throw ConfigError("config line " + std::to_string(l.number) + " (" + l.raw + "): " + why);
}

double parse_positive(const Line& l) {
    double v = 0.0;
    try {
        v = std::stod(l.value);
    } catch (const std::exception&) {
        bad_line(l, "not a number");
    }
    if (!(v > 0.0)) bad_line(l, "physical parameter must be positive");
    return v;
}

double parse_nonneg(const Line& l) {
    double v = 0.0;
    try {
        v = std::stod(l.value);
    } catch (const std::exception&) {
        bad_line(l, "not a number");
    }
    if (v < 0.0) bad_line(l, "parameter must be nonnegative");
    return v;
}

long parse_long(const Line& l) {
    try {
        return std::stol(l.value);
    } catch (const std::exception&) {
        bad_line(l, "not an integer");
    }
}

bool parse_bool(const Line& l) {
    if (l.value == "true") return true;
    if (l.value == "false") return false;
    bad_line(l, "expected true or false");
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    const std::vector<Line> lines = tokenize(text);

    ExperimentConfig cfg;
    bool preset_expanded = false;
    bool preset_seen = false;
    for (const Line& l : lines) {
        if (l.key == "preset") {
            if (preset_seen) bad_line(l, "preset given twice");
            preset_seen = true;
            cfg = preset_config(preset_from_string(l.value));
            preset_expanded = cfg.preset != Preset::Custom;
        }
    }

    std::set<std::string> seen;
    for (const Line& l : lines) {
        const std::string& k = l.key;
        seen.insert(k);
        try {
            if (k == "preset") continue;
            else if (k == "grid.n") cfg.grid_n = static_cast<int>(parse_long(l));
            else if (k == "grid.l") cfg.grid_l = parse_positive(l);
            else if (k == "grid.dealias") cfg.grid_dealias = parse_positive(l);
            else if (k == "model.nu") cfg.nu = parse_positive(l);
            else if (k == "model.alpha") cfg.alpha = parse_positive(l);
            else if (k == "model.forcing") cfg.forcing = ForcingSpec::parse(l.value);
            else if (k == "assim.beta") cfg.beta = parse_positive(l);
            else if (k == "assim.eta") cfg.eta = parse_nonneg(l);
            else if (k == "assim.h") cfg.h = parse_positive(l);
            else if (k == "assim.interpolant") cfg.interpolant = interpolant_kind_from_string(l.value);
            else if (k == "assim.c1") cfg.c1 = parse_positive(l);
            else if (k == "assim.c2") cfg.c2 = parse_positive(l);
            else if (k == "constants.c") cfg.c_gn = parse_positive(l);
            else if (k == "step.dt") cfg.step.dt = parse_positive(l);
            else if (k == "step.scheme") cfg.step.scheme = scheme_from_string(l.value);
            else if (k == "step.t_end") cfg.step.t_end = parse_positive(l);
            else if (k == "step.output_every") cfg.step.output_every = parse_long(l);
            else if (k == "step.cfl_warn") cfg.step.cfl_warn = parse_positive(l);
            else if (k == "step.nudging") cfg.step.nudging = nudging_mode_from_string(l.value);
            else if (k == "step.linear_only") cfg.step.linear_only = parse_bool(l);
            else if (k == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(l));
            else if (k == "random_initial") cfg.random_initial = parse_bool(l);
            else if (k == "output_dir") cfg.output_dir = l.value;
            else if (k == "output.slices") cfg.emit_slices = parse_bool(l);
            else if (k == "output.debug") cfg.emit_debug = parse_bool(l);
            else bad_line(l, "unknown key '" + k + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            bad_line(l, e.what());
        }
    }

    // without a preset the experiment must be spelled out in full
    if (!preset_expanded) {
        for (const char* required :
             {"grid.n", "grid.l", "model.nu", "model.alpha", "assim.beta", "assim.eta",
              "assim.h", "step.dt", "step.t_end"})
            if (!seen.count(required))
                throw ConfigError(std::string("custom config is missing required key '") +
                                  required + "'");
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "preset=" << to_string(cfg.preset) << "\n";
    os << "grid.n=" << cfg.grid_n << "\n";
    os << "grid.l=" << format_double(cfg.grid_l) << "\n";
    os << "grid.dealias=" << format_double(cfg.grid_dealias) << "\n";
    os << "model.nu=" << format_double(cfg.nu) << "\n";
    os << "model.alpha=" << format_double(cfg.alpha) << "\n";
    os << "model.forcing=" << cfg.forcing.to_string() << "\n";
    os << "assim.beta=" << format_double(cfg.beta) << "\n";
    os << "assim.eta=" << format_double(cfg.eta) << "\n";
    os << "assim.h=" << format_double(cfg.h) << "\n";
    os << "assim.interpolant=" << to_string(cfg.interpolant) << "\n";
    os << "assim.c1=" << format_double(cfg.c1) << "\n";
    os << "assim.c2=" << format_double(cfg.c2) << "\n";
    os << "constants.c=" << format_double(cfg.c_gn) << "\n";
    os << "step.dt=" << format_double(cfg.step.dt) << "\n";
    os << "step.scheme=" << to_string(cfg.step.scheme) << "\n";
    os << "step.t_end=" << format_double(cfg.step.t_end) << "\n";
    os << "step.output_every=" << cfg.step.output_every << "\n";
    os << "step.cfl_warn=" << format_double(cfg.step.cfl_warn) << "\n";
    os << "step.nudging=" << to_string(cfg.step.nudging) << "\n";
    os << "step.linear_only=" << (cfg.step.linear_only ? "true" : "false") << "\n";
    os << "seed=" << cfg.seed << "\n";
    os << "random_initial=" << (cfg.random_initial ? "true" : "false") << "\n";
    os << "output_dir=" << cfg.output_dir << "\n";
    os << "output.slices=" << (cfg.emit_slices ? "true" : "false") << "\n";
    os << "output.debug=" << (cfg.emit_debug ? "true" : "false") << "\n";
    return os.str();
}

} // namespace mlalpha
