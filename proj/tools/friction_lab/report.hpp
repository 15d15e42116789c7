#ifndef FRICTION_LAB_REPORT_HPP
#define FRICTION_LAB_REPORT_HPP

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace lab {

// I/O failure; exit status 2, message carries the path.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 17 significant digits, lowercase exponent ("%.17g").
std::string format_number(double v);

// Header line, then one line per row. An empty `rows` gives a header-only file.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

struct Check {
    std::string name;
    double measured = 0.0;
    std::string criterion;  // e.g. "|measured - 0.5587| <= 1e-3"
    bool pass = false;
    nlohmann::json extra = nlohmann::json::object();
};

// Files and checks produced by one subcommand.
class RunReport {
public:
    explicit RunReport(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    void csv(const std::string& name, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
    void json(const std::string& name, const nlohmann::json& j);
    // Registers a file written by other code (snapshots).
    void file(const std::string& relative);

    // Throws std::logic_error when a check name repeats.
    Check& check(const std::string& name, double measured, const std::string& criterion, bool pass);
    bool all_passed() const;

    const std::vector<Check>& checks() const { return checks_; }
    const std::vector<std::string>& outputs() const { return outputs_; }
    nlohmann::json results = nlohmann::json::object();

private:
    std::filesystem::path dir_;
    std::vector<Check> checks_;
    std::vector<std::string> outputs_;
};

std::string utc_timestamp();

// Exclusive lockfile inside the output directory; created on construction,
// removed on destruction. A second concurrent run fails with OutputError.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path path_;
};

}  // namespace lab

#endif
