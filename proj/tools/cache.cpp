#include "cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace rtl::cli {

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Holds an flock for the lifetime of the object.
class LockedFile {
public:
    LockedFile(const std::string& path, int flags, int lock) {
        fd_ = ::open(path.c_str(), flags, 0644);
        if (fd_ < 0) return;
        while (::flock(fd_, lock) != 0) {
            if (errno != EINTR) {
                ::close(fd_);
                fd_ = -1;
                return;
            }
        }
    }
    ~LockedFile() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
        }
    }
    LockedFile(const LockedFile&) = delete;
    LockedFile& operator=(const LockedFile&) = delete;

    int fd() const { return fd_; }

private:
    int fd_ = -1;
};

}  // namespace

ResultCache::ResultCache(std::string path, std::ostream& warnings)
    : path_(std::move(path)), warnings_(&warnings) {}

std::string ResultCache::fingerprint(const std::string& operation, const nlohmann::json& params) {
    // nlohmann objects keep keys sorted, so dump() is canonical.
    return nlohmann::json{{"version", kVersion}, {"operation", operation}, {"params", params}}.dump();
}

std::optional<nlohmann::json> ResultCache::lookup(const std::string& fingerprint) const {
    LockedFile lock(path_, O_RDONLY, LOCK_SH);
    if (lock.fd() < 0) return std::nullopt;
    std::ifstream in(path_);
    std::string line;
    std::size_t line_no = 0;
    std::optional<nlohmann::json> hit;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object() || !record.contains("fingerprint") ||
            !record.contains("payload") || !record["fingerprint"].is_string()) {
            *warnings_ << "warning: skipping corrupt cache line " << line_no << " in " << path_ << '\n';
            continue;
        }
        if (!hit && record["fingerprint"] == fingerprint) hit = record["payload"];
    }
    return hit;
}

void ResultCache::store(const std::string& fingerprint, const std::string& operation,
                        const nlohmann::json& payload) const {
    const std::string line = nlohmann::json{{"fingerprint", fingerprint},
                                            {"operation", operation},
                                            {"payload", payload},
                                            {"version", kVersion},
                                            {"timestamp", utc_timestamp()}}
                                 .dump() +
                             '\n';
    LockedFile lock(path_, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
    if (lock.fd() < 0) {
        *warnings_ << "warning: cannot write cache " << path_ << ": " << std::strerror(errno) << '\n';
        return;
    }
    std::size_t written = 0;
    while (written < line.size()) {
        const ssize_t n = ::write(lock.fd(), line.data() + written, line.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            *warnings_ << "warning: cache write failed: " << std::strerror(errno) << '\n';
            return;
        }
        written += static_cast<std::size_t>(n);
    }
}

}  // namespace rtl::cli
