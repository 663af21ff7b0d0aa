#pragma once

// Append-only JSONL result store. One record per line:
// {"fingerprint", "operation", "payload", "version", "timestamp"}.

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace rtl::cli {

inline constexpr const char* kVersion = "rtl-1.0.0";

class ResultCache {
public:
    ResultCache(std::string path, std::ostream& warnings);

    /// Canonical key: version, operation and parameters.
    static std::string fingerprint(const std::string& operation, const nlohmann::json& params);

    std::optional<nlohmann::json> lookup(const std::string& fingerprint) const;
    /// Appends under an exclusive flock so concurrent writers never tear lines.
    void store(const std::string& fingerprint, const std::string& operation,
               const nlohmann::json& payload) const;

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ostream* warnings_;
};

}  // namespace rtl::cli
