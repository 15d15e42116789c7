#ifndef FRICTION_LAB_CONFIG_HPP
#define FRICTION_LAB_CONFIG_HPP

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lab {

// Bad flags or config content; exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Kind { real, integer, flag, text, reals };

struct KeySpec {
    std::string key;
    Kind kind = Kind::real;
    std::string fallback;  // empty: required (text, reals) or no default
    bool required = false;
    std::optional<double> lo, hi;
    bool lo_open = false, hi_open = false;
    std::size_t length = 0;  // reals: exact element count, 0 = any
    std::string note;        // appended to range errors, e.g. "domain is delta < 1"
};

struct SectionSpec {
    std::string name;
    std::vector<KeySpec> keys;
};

const std::vector<std::string>& subcommands();
bool is_subcommand(const std::string& name);

// Every section known to the tool, with defaults resolved for `subcommand`.
std::vector<SectionSpec> schema(const std::string& subcommand);
// Sections consumed by the subcommand.
std::vector<std::string> sections_used(const std::string& subcommand);

class Config {
public:
    std::string subcommand;

    double real(const std::string& section, const std::string& key) const;
    long integer(const std::string& section, const std::string& key) const;
    bool flag(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key) const;
    std::vector<double> reals(const std::string& section, const std::string& key) const;
    bool has(const std::string& section, const std::string& key) const;

    // Resolved values of the sections the subcommand uses.
    nlohmann::json echo() const;

    void set(const std::string& section, const std::string& key, const std::string& raw, const KeySpec& spec);

private:
    struct Entry {
        std::string raw;
        Kind kind;
    };
    const Entry& entry(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, Entry>> values_;
};

// Strict parse: unknown sections or keys, malformed or out-of-range values and
// missing required fields raise ConfigError naming "section.key".
// `overrides` are "section.key=value" strings applied after the file.
Config parse_config(const std::string& subcommand, const std::string& path,
                    const std::vector<std::string>& overrides = {});

}  // namespace lab

#endif
