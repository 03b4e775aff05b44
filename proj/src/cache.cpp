#include "fpcoh/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "fpcoh/errors.hpp"

namespace fpcoh::survey {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw ResourceError("sha256: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir))
{
    if (!dir_.empty()) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw ResourceError("cache: cannot create " + dir_ + ": " + ec.message());
    }
}

std::string ResultCache::key(const std::string& request)
{
    return sha256_hex(std::string(kCodeVersion) + "\n" + request);
}

std::optional<std::string> ResultCache::get(const std::string& key) const
{
    if (!enabled()) return std::nullopt;
    std::ifstream in(fs::path(dir_) / (key + ".json"), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ResultCache::put(const std::string& key, const std::string& content) const
{
    if (!enabled()) return;
    static std::atomic<unsigned> counter{0};
    std::ostringstream tmpname;
    tmpname << key << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
    fs::path tmp = fs::path(dir_) / tmpname.str();
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ResourceError("cache: cannot write " + tmp.string());
        out << content;
    }
    std::error_code ec;
    fs::rename(tmp, fs::path(dir_) / (key + ".json"), ec);
    if (ec) throw ResourceError("cache: rename failed: " + ec.message());
}

} // namespace fpcoh::survey
