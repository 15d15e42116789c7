#include "report.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>

namespace lab {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    if (!out) throw OutputError("write failed for " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw OutputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw OutputError("write failed for " + path.string());
}

void RunReport::csv(const std::string& name, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows) {
    write_csv(dir_ / name, header, rows);
    file(name);
}

void RunReport::json(const std::string& name, const nlohmann::json& j) {
    write_json(dir_ / name, j);
    file(name);
}

void RunReport::file(const std::string& relative) {
    if (std::find(outputs_.begin(), outputs_.end(), relative) == outputs_.end()) outputs_.push_back(relative);
}

Check& RunReport::check(const std::string& name, double measured, const std::string& criterion, bool pass) {
    for (const auto& c : checks_)
        if (c.name == name) throw std::logic_error("check listed twice: " + name);
    checks_.push_back(Check{name, measured, criterion, pass, nlohmann::json::object()});
    return checks_.back();
}

bool RunReport::all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t secs = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

OutputLock::OutputLock(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
    path_ = dir / ".friction_lab.lock";
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        const int err = errno;
        path_.clear();
        if (err == EEXIST)
            throw OutputError("output directory " + dir.string() + " is locked by another run (" +
                              (dir / ".friction_lab.lock").string() + "; remove it if stale)");
        throw OutputError("cannot create lockfile in " + dir.string() + ": " + std::strerror(err));
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] const auto n = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

OutputLock::~OutputLock() {
    if (!path_.empty()) {
        std::error_code ec;
        fs::remove(path_, ec);
    }
}

}  // namespace lab
