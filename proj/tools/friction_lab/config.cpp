#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lab {

namespace {

KeySpec real_key(std::string key, std::string fallback, std::optional<double> lo = {}, std::optional<double> hi = {},
                 bool lo_open = false, bool hi_open = false, std::string note = {}) {
    KeySpec k;
    k.key = std::move(key);
    k.kind = Kind::real;
    k.fallback = std::move(fallback);
    k.lo = lo;
    k.hi = hi;
    k.lo_open = lo_open;
    k.hi_open = hi_open;
    k.note = std::move(note);
    return k;
}

KeySpec positive(std::string key, std::string fallback) { return real_key(std::move(key), std::move(fallback), 0.0, {}, true); }

KeySpec int_key(std::string key, std::string fallback, double lo, double hi) {
    KeySpec k;
    k.key = std::move(key);
    k.kind = Kind::integer;
    k.fallback = std::move(fallback);
    k.lo = lo;
    k.hi = hi;
    return k;
}

KeySpec flag_key(std::string key, std::string fallback) {
    KeySpec k;
    k.key = std::move(key);
    k.kind = Kind::flag;
    k.fallback = std::move(fallback);
    return k;
}

KeySpec text_key(std::string key, std::string fallback, bool required = false) {
    KeySpec k;
    k.key = std::move(key);
    k.kind = Kind::text;
    k.fallback = std::move(fallback);
    k.required = required;
    return k;
}

KeySpec vec3_key(std::string key, std::string fallback) {
    KeySpec k;
    k.key = std::move(key);
    k.kind = Kind::reals;
    k.fallback = std::move(fallback);
    k.length = 3;
    return k;
}

const char* kDeltaNote = "the Omega integrals are defined for delta < 1";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    const std::string s = trim(text);
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_long(const std::string& text, long& out) {
    const std::string s = trim(text);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_flag(const std::string& text, bool& out) {
    const std::string s = trim(text);
    if (s == "true") out = true;
    else if (s == "false") out = false;
    else return false;
    return true;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

std::string format_bound(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_range(const std::string& name, double v, const KeySpec& spec) {
    const bool below = spec.lo && (spec.lo_open ? v <= *spec.lo : v < *spec.lo);
    const bool above = spec.hi && (spec.hi_open ? v >= *spec.hi : v > *spec.hi);
    if (!below && !above) return;
    std::string range;
    if (spec.lo) range += (spec.lo_open ? "> " : ">= ") + format_bound(*spec.lo);
    if (spec.lo && spec.hi) range += " and ";
    if (spec.hi) range += (spec.hi_open ? "< " : "<= ") + format_bound(*spec.hi);
    std::string msg = "value of " + name + " out of range: got " + format_bound(v) + ", must be " + range;
    if (!spec.note.empty()) msg += " (" + spec.note + ")";
    throw ConfigError(msg);
}

void check_value(const std::string& name, const std::string& raw, const KeySpec& spec) {
    switch (spec.kind) {
        case Kind::real: {
            double v = 0;
            if (!parse_double(raw, v)) throw ConfigError("value of " + name + " is not a finite number: '" + raw + "'");
            check_range(name, v, spec);
            break;
        }
        case Kind::integer: {
            long v = 0;
            if (!parse_long(raw, v)) throw ConfigError("value of " + name + " is not an integer: '" + raw + "'");
            check_range(name, static_cast<double>(v), spec);
            break;
        }
        case Kind::flag: {
            bool v = false;
            if (!parse_flag(raw, v)) throw ConfigError("value of " + name + " must be true or false: '" + raw + "'");
            break;
        }
        case Kind::text:
            if (spec.required && trim(raw).empty()) throw ConfigError("value of " + name + " must not be empty");
            break;
        case Kind::reals: {
            const auto items = split_list(raw);
            if (spec.length && items.size() != spec.length)
                throw ConfigError("value of " + name + " needs " + std::to_string(spec.length) +
                                  " comma-separated numbers, got " + std::to_string(items.size()));
            for (const auto& item : items) {
                double v = 0;
                if (!parse_double(item, v))
                    throw ConfigError("value of " + name + " has a non-numeric element: '" + item + "'");
                check_range(name, v, spec);
            }
            break;
        }
    }
}

const KeySpec* find_key(const SectionSpec& s, const std::string& key) {
    for (const auto& k : s.keys)
        if (k.key == key) return &k;
    return nullptr;
}

const SectionSpec* find_section(const std::vector<SectionSpec>& all, const std::string& name) {
    for (const auto& s : all)
        if (s.name == name) return &s;
    return nullptr;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"omega-table", "delta-star", "gfunc",    "kernel",
                                                "fresnel",     "dispersive", "simulate", "fit"};
    return names;
}

bool is_subcommand(const std::string& name) {
    const auto& s = subcommands();
    return std::find(s.begin(), s.end(), name) != s.end();
}

std::vector<SectionSpec> schema(const std::string& subcommand) {
    const bool free_field = subcommand == "gfunc" || subcommand == "kernel" || subcommand == "dispersive";
    std::vector<SectionSpec> out;
    out.push_back({"model",
                   {positive("M", "10"), real_key("g", free_field ? "0" : "0.05", 0.0), positive("rho0", "1"),
                    positive("g_max", "0.1"), real_key("sigma", "1", 0.0, 10.0, true)}});

    KeySpec single = real_key("delta", "", {}, 1.0, false, true, kDeltaNote);
    out.push_back({"omega-table",
                   {single, real_key("delta_min", "-2", {}, 1.0, false, true, kDeltaNote),
                    real_key("delta_max", "0.95", {}, 1.0, false, true, kDeltaNote), positive("delta_step", "0.01"),
                    int_key("nodes", "801", 33, 100001)}});

    KeySpec nz;
    nz.key = "n_zero_deltas";
    nz.kind = Kind::reals;
    nz.fallback = "0.6, 0.65, 0.51";
    nz.lo = 0.5;
    nz.hi = 1.0;
    nz.lo_open = nz.hi_open = true;
    nz.note = "N0 is defined for 1/2 < delta < 1";
    out.push_back({"delta-star",
                   {real_key("tol", "1e-6", 0.0, 0.01, true), int_key("nodes", "801", 33, 100001), nz,
                    real_key("convolution_delta", "0.6", 0.5, 1.0, true, true), real_key("convolution_t_max", "1e4", 1.0, 1e6, true),
                    int_key("convolution_points_per_decade", "20", 2, 1000)}});

    out.push_back({"gfunc",
                   {positive("k_min", "1e-4"), real_key("k_max", "2", 0.0, 20.0, true), int_key("points", "41", 0, 100000),
                    flag_key("log_spacing", "true")}});

    out.push_back({"kernel",
                   {real_key("dt", "0.01", 0.0, 0.1, true), real_key("t_max", "50", 1.0, 200.0),
                    real_key("identity_dt", "0.02", 0.0, 0.1, true), positive("tail_t_min", "500"),
                    positive("tail_t_max", "2000"), int_key("tail_points", "16", 2, 1000), positive("f_t_min", "50"),
                    positive("f_t_max", "200"), int_key("f_points", "16", 2, 1000), positive("kdot_fit_t_min", "50"),
                    real_key("kdot_fit_t_max", "500", 1.0, 2000.0), real_key("order_t_max", "20", 1.0, 100.0)}});

    out.push_back({"fresnel", {real_key("cutoff", "20", 5.0, 1000.0)}});

    out.push_back({"dispersive",
                   {positive("t_first", "31.6227766016838"), positive("t_last", "1000"), int_key("samples", "31", 2, 1000),
                    positive("fit_min", "100"), positive("fit_max", "1000"), positive("tolerance", "0.1")}});

    out.push_back({"simulate",
                   {real_key("dt", "0.01", 0.0, 0.1, true), real_key("t_max", "200", 0.0, 1e5, true),
                    int_key("sample_every", "50", 1, 1000000), real_key("delta", "0.6", 0.5, 1.0, true, true),
                    int_key("snapshot_every", "0", 0, 100000000), flag_key("absorber", "true")}});
    out.push_back({"grid",
                   {int_key("n", "64", 8, 512), positive("L", "40"), real_key("absorber_width", "7.5", 0.0),
                    real_key("absorber_strength", "1", 0.0), int_key("absorber_order", "2", 1, 8)}});
    out.push_back({"initial",
                   {vec3_key("x0", "0, 0, 0"), vec3_key("p0", "0.05, 0, 0"), real_key("beta_amplitude", "1e-3", 0.0),
                    positive("beta_width", "1"), vec3_key("beta_carrier", "0, 0, 0"), vec3_key("beta_center", "0, 0, 0")}});

    out.push_back({"fit",
                   {text_key("input", "", true), text_key("column_t", "t"), text_key("column_y", "pabs"),
                    real_key("t_min", "0", 0.0), real_key("t_max", "0", 0.0), int_key("min_points", "10", 2, 1000000),
                    real_key("expected_exponent", ""), positive("tolerance", "0.1")}});
    return out;
}

std::vector<std::string> sections_used(const std::string& subcommand) {
    if (subcommand == "omega-table" || subcommand == "delta-star" || subcommand == "fresnel" || subcommand == "fit")
        return {subcommand};
    if (subcommand == "simulate") return {"model", "simulate", "grid", "initial"};
    return {"model", subcommand};
}

const Config::Entry& Config::entry(const std::string& section, const std::string& key) const {
    const auto s = values_.find(section);
    if (s != values_.end()) {
        const auto k = s->second.find(key);
        if (k != s->second.end()) return k->second;
    }
    throw ConfigError("missing required field " + section + "." + key);
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = values_.find(section);
    return s != values_.end() && s->second.count(key) > 0;
}

double Config::real(const std::string& section, const std::string& key) const {
    double v = 0;
    parse_double(entry(section, key).raw, v);
    return v;
}

long Config::integer(const std::string& section, const std::string& key) const {
    long v = 0;
    parse_long(entry(section, key).raw, v);
    return v;
}

bool Config::flag(const std::string& section, const std::string& key) const {
    bool v = false;
    parse_flag(entry(section, key).raw, v);
    return v;
}

std::string Config::text(const std::string& section, const std::string& key) const {
    return trim(entry(section, key).raw);
}

std::vector<double> Config::reals(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(entry(section, key).raw)) {
        double v = 0;
        parse_double(item, v);
        out.push_back(v);
    }
    return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& raw, const KeySpec& spec) {
    values_[section][key] = Entry{raw, spec.kind};
}

nlohmann::json Config::echo() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& name : sections_used(subcommand)) {
        nlohmann::json s = nlohmann::json::object();
        const auto it = values_.find(name);
        if (it != values_.end()) {
            for (const auto& [key, e] : it->second) {
                switch (e.kind) {
                    case Kind::real: s[key] = real(name, key); break;
                    case Kind::integer: s[key] = integer(name, key); break;
                    case Kind::flag: s[key] = flag(name, key); break;
                    case Kind::text: s[key] = text(name, key); break;
                    case Kind::reals: s[key] = reals(name, key); break;
                }
            }
        }
        j[name] = s;
    }
    return j;
}

Config parse_config(const std::string& subcommand, const std::string& path, const std::vector<std::string>& overrides) {
    if (!is_subcommand(subcommand)) throw ConfigError("unknown subcommand '" + subcommand + "'");
    const auto all = schema(subcommand);

    // section -> key -> raw text
    std::map<std::string, std::map<std::string, std::string>> given;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read config file " + path);
        boost::property_tree::ptree tree;
        try {
            boost::property_tree::ini_parser::read_ini(in, tree);
        } catch (const boost::property_tree::ini_parser_error& e) {
            throw ConfigError(path + ": line " + std::to_string(e.line()) + ": " + e.message());
        }
        for (const auto& [name, section] : tree) {
            if (!section.data().empty())
                throw ConfigError("key '" + name + "' appears outside a section; put it under [section]");
            const SectionSpec* spec = find_section(all, name);
            if (!spec) throw ConfigError("unknown section [" + name + "]");
            for (const auto& [key, value] : section) {
                if (!find_key(*spec, key))
                    throw ConfigError("unknown key '" + key + "' in section [" + name + "] (strict mode)");
                given[name][key] = value.data();
            }
        }
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        const auto dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigError("override '" + o + "' is not of the form section.key=value");
        const std::string name = trim(o.substr(0, dot));
        const std::string key = trim(o.substr(dot + 1, eq - dot - 1));
        const SectionSpec* spec = find_section(all, name);
        if (!spec) throw ConfigError("unknown section [" + name + "]");
        if (!find_key(*spec, key)) throw ConfigError("unknown key '" + key + "' in section [" + name + "] (strict mode)");
        given[name][key] = o.substr(eq + 1);
    }

    // Every given value is validated, including sections of other subcommands,
    // so a shared config file with a typo fails whichever subcommand reads it.
    for (const auto& [name, keys] : given) {
        const SectionSpec* spec = find_section(all, name);
        for (const auto& [key, raw] : keys) check_value(name + "." + key, raw, *find_key(*spec, key));
    }

    Config cfg;
    cfg.subcommand = subcommand;
    for (const auto& name : sections_used(subcommand)) {
        const SectionSpec* spec = find_section(all, name);
        for (const auto& k : spec->keys) {
            const auto s = given.find(name);
            if (s != given.end() && s->second.count(k.key)) {
                cfg.set(name, k.key, s->second.at(k.key), k);
            } else if (k.required) {
                throw ConfigError("missing required field " + name + "." + k.key);
            } else if (!k.fallback.empty()) {
                check_value(name + "." + k.key, k.fallback, k);
                cfg.set(name, k.key, k.fallback, k);
            }
        }
    }

    if (cfg.has("model", "g") && cfg.real("model", "g") > cfg.real("model", "g_max"))
        throw ConfigError("value of model.g out of range: must not exceed model.g_max");
    if (subcommand == "kernel" || subcommand == "dispersive") {
        if (cfg.real("model", "g") != 0.0)
            throw ConfigError("value of model.g out of range: the " + subcommand + " checks are defined at g = 0");
    }
    return cfg;
}

}  // namespace lab
