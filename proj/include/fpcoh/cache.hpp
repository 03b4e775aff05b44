#pragma once
// Flat-file result cache keyed by SHA-256 of the request.
#include <optional>
#include <string>

namespace fpcoh::survey {

inline constexpr const char* kCodeVersion = "fpcoh-1";

std::string sha256_hex(const std::string& data);

class ResultCache {
public:
    // Empty dir disables the cache.
    explicit ResultCache(std::string dir = {});

    bool enabled() const { return !dir_.empty(); }
    // Key from a canonical request string; the code version is mixed in.
    static std::string key(const std::string& request);
    std::optional<std::string> get(const std::string& key) const;
    // Writes to a temporary file and renames it into place.
    void put(const std::string& key, const std::string& content) const;

private:
    std::string dir_;
};

} // namespace fpcoh::survey
