#include "chlab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace chlab {

ModelParams RunConfig::model() const {
    ModelParams p;
    p.alpha = alpha;
    p.nu = nu;
    p.gamma = gamma;
    p.dealias = dealias;
    p.equation = alpha == 0.0 ? Equation::burgers : Equation::camassa_holm;
    return p;
}

StepControl RunConfig::control() const {
    StepControl c;
    c.cfl = cfl;
    c.dt_max = dt_max;
    c.t_end = t_end;
    c.save_every = save_every;
    c.norm_indices = {sobolev_s, sobolev_s - 1.0};
    return c;
}

SweepConfig RunConfig::sweep() const {
    SweepConfig s;
    s.u0 = u0;
    s.s = sobolev_s;
    s.alphas = alphas;
    s.ns = ns;
    s.n_points = n_points;
    s.period = period;
    s.t_end = t_end;
    s.control = control();
    s.control.norm_indices = {sobolev_s};
    return s;
}

namespace {

struct Cursor {
    std::size_t line = 0;
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("config line " + std::to_string(line) + ": " + msg);
    }
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& v, const Cursor& at) {
    // accept "2*pi"-free plain numbers plus the literal "pi" multiples used
    // for periods, e.g. "6.283185307179586"
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        at.fail("malformed number '" + v + "'");
    return x;
}

std::uint64_t parse_uint(const std::string& v, const Cursor& at) {
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        at.fail("malformed integer '" + v + "'");
    return x;
}

bool parse_bool(const std::string& v, const Cursor& at) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    at.fail("malformed boolean '" + v + "' (use true/false/on/off/1/0)");
}

std::vector<std::string> split(const std::string& v, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

InitialSpec parse_u0(const std::string& v, const Cursor& at) {
    InitialSpec spec;
    if (v == "band_limited") {
        spec.kind = InitialKind::band_limited;
        return spec;
    }
    const auto colon = v.find(':');
    const std::string head = colon == std::string::npos ? v : v.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : v.substr(colon + 1);
    if (head == "rough")
        spec.kind = InitialKind::rough;
    else if (head == "peakon")
        spec.kind = InitialKind::peakon_smoothed;
    else
        at.fail("unknown u0 kind '" + head +
                "' (band_limited | rough:... | peakon:...)");
    for (const std::string& kv : split(args, ',')) {
        if (kv.empty()) continue;
        const auto eq = kv.find('=');
        if (eq == std::string::npos) at.fail("malformed u0 argument '" + kv + "'");
        const std::string key = trim(kv.substr(0, eq));
        const std::string val = trim(kv.substr(eq + 1));
        if (spec.kind == InitialKind::rough && key == "s")
            spec.rough_s = parse_number(val, at);
        else if (spec.kind == InitialKind::rough && key == "seed")
            spec.seed = parse_uint(val, at);
        else if (spec.kind == InitialKind::peakon_smoothed && key == "c")
            spec.peakon_c = parse_number(val, at);
        else if (spec.kind == InitialKind::peakon_smoothed && key == "alpha")
            spec.peakon_alpha = parse_number(val, at);
        else
            at.fail("unknown u0 argument '" + key + "'");
    }
    return spec;
}

void validate(const RunConfig& c) {
    if (c.n_points < 8 || (c.n_points & (c.n_points - 1)) != 0)
        throw ConfigError("[grid] n_points must be a power of two >= 8");
    if (!(c.period > 0.0)) throw ConfigError("[grid] period must be positive");
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0))
        throw ConfigError("[model] alpha = " + std::to_string(c.alpha) +
                          " outside [0, 1]; the zero-filter regime needs "
                          "alpha < 1 (alpha = 1 is kept for peakon runs)");
    if (!(c.nu >= 0.0)) throw ConfigError("[model] nu must be >= 0");
    if (!(c.gamma >= 0.0 && c.gamma <= 2.0))
        throw ConfigError("[model] gamma must lie in [0, 2]");
    if (!(c.t_end > 0.0)) throw ConfigError("[time] t_end must be positive");
    if (!(c.cfl > 0.0 && c.cfl <= 1.0))
        throw ConfigError("[time] cfl must lie in (0, 1]");
    if (!(c.dt_max > 0.0)) throw ConfigError("[time] dt_max must be positive");
    if (c.save_every == 0) throw ConfigError("[time] save_every must be >= 1");
    if (!(c.sobolev_s > 1.5))
        throw ConfigError("[sweep] sobolev_s = " + std::to_string(c.sobolev_s) +
                          " violates s > 3/2, the regularity floor of the "
                          "convergence theory");
    for (double a : c.alphas)
        if (!(a > 0.0 && a < 1.0))
            throw ConfigError("[sweep] alphas must lie in (0, 1)");
    for (std::size_t i = 1; i < c.alphas.size(); ++i)
        if (!(c.alphas[i] < c.alphas[i - 1]))
            throw ConfigError("[sweep] alphas must be strictly decreasing");
    for (std::size_t i = 1; i < c.ns.size(); ++i)
        if (!(c.ns[i] > c.ns[i - 1]))
            throw ConfigError("[sweep] ns must be strictly increasing");
    if (c.u0.kind == InitialKind::rough && !(c.u0.rough_s > 1.5))
        throw ConfigError("[data] rough u0 requires s > 3/2");
    if (c.u0.kind == InitialKind::peakon_smoothed && !(c.u0.peakon_alpha > 0.0))
        throw ConfigError("[data] peakon u0 requires alpha > 0");
    for (const std::string& f : c.formats)
        if (f != "csv" && f != "json" && f != "gp")
            throw ConfigError("[output] unknown format '" + f + "'");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    Cursor at;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++at.line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') at.fail("malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "model" && section != "time" &&
                section != "data" && section != "sweep" && section != "output")
                at.fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) at.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty()) at.fail("key '" + key + "' outside any section");

        if (section == "grid" && key == "n_points")
            cfg.n_points = parse_uint(val, at);
        else if (section == "grid" && key == "period")
            cfg.period = parse_number(val, at);
        else if (section == "model" && key == "alpha")
            cfg.alpha = parse_number(val, at);
        else if (section == "model" && key == "nu")
            cfg.nu = parse_number(val, at);
        else if (section == "model" && key == "gamma")
            cfg.gamma = parse_number(val, at);
        else if (section == "model" && key == "dealias")
            cfg.dealias = parse_bool(val, at);
        else if (section == "time" && key == "t_end")
            cfg.t_end = parse_number(val, at);
        else if (section == "time" && key == "cfl")
            cfg.cfl = parse_number(val, at);
        else if (section == "time" && key == "dt_max")
            cfg.dt_max = parse_number(val, at);
        else if (section == "time" && key == "save_every")
            cfg.save_every = parse_uint(val, at);
        else if (section == "data" && key == "u0")
            cfg.u0 = parse_u0(val, at);
        else if (section == "sweep" && key == "alphas") {
            cfg.alphas.clear();
            for (const std::string& s : split(val, ','))
                cfg.alphas.push_back(parse_number(s, at));
        } else if (section == "sweep" && key == "ns") {
            cfg.ns.clear();
            for (const std::string& s : split(val, ','))
                cfg.ns.push_back(static_cast<int>(parse_uint(s, at)));
        } else if (section == "sweep" && key == "sobolev_s")
            cfg.sobolev_s = parse_number(val, at);
        else if (section == "output" && key == "dir")
            cfg.dir = val;
        else if (section == "output" && key == "formats")
            cfg.formats = split(val, ',');
        else
            at.fail("unknown key '" + key + "' in section [" + section + "]");
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ConfigError("cannot open config file " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[grid]\n";
    os << "n_points = " << cfg.n_points << "\n";
    os << "period = " << cfg.period << "\n\n";
    os << "[model]\n";
    os << "alpha = " << cfg.alpha << "\n";
    os << "nu = " << cfg.nu << "\n";
    os << "gamma = " << cfg.gamma << "\n";
    os << "dealias = " << (cfg.dealias ? "true" : "false") << "\n\n";
    os << "[time]\n";
    os << "t_end = " << cfg.t_end << "\n";
    os << "cfl = " << cfg.cfl << "\n";
    os << "dt_max = " << cfg.dt_max << "\n";
    os << "save_every = " << cfg.save_every << "\n\n";
    os << "[data]\n";
    os << "u0 = ";
    switch (cfg.u0.kind) {
        case InitialKind::band_limited:
            os << "band_limited";
            break;
        case InitialKind::rough:
            os << "rough:s=" << cfg.u0.rough_s << ",seed=" << cfg.u0.seed;
            break;
        case InitialKind::peakon_smoothed:
            os << "peakon:c=" << cfg.u0.peakon_c
               << ",alpha=" << cfg.u0.peakon_alpha;
            break;
    }
    os << "\n\n[sweep]\n";
    os << "alphas = ";
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
        os << (i ? ", " : "") << cfg.alphas[i];
    os << "\nns = ";
    for (std::size_t i = 0; i < cfg.ns.size(); ++i)
        os << (i ? ", " : "") << cfg.ns[i];
    os << "\nsobolev_s = " << cfg.sobolev_s << "\n\n";
    os << "[output]\n";
    os << "dir = " << cfg.dir << "\n";
    os << "formats = ";
    for (std::size_t i = 0; i < cfg.formats.size(); ++i)
        os << (i ? ", " : "") << cfg.formats[i];
    os << "\n";
    return os.str();
}

} // namespace chlab
