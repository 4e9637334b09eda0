#include "steenrod/cache.hpp"

#include "json.hpp"

#include <cstdlib>
#include <unistd.h>
#include <fstream>
#include <iostream>
#include <sstream>

namespace steenrod {

namespace {

constexpr const char* kFormatVersion = "ext-cache/1";

std::string key_string(uint32_t p, int m, int n, const Tridegree& tri)
{
    std::ostringstream os;
    os << kFormatVersion << '|' << p << '|' << m << '|' << n << '|' << tri.s << '|' << tri.t
       << '|' << tri.w;
    return os.str();
}

std::string checksum_string(const std::string& key, size_t dim)
{
    std::ostringstream os;
    os << std::hex << fnv1a64(key + "|" + std::to_string(dim));
    return os.str();
}

}  // namespace

uint64_t fnv1a64(std::string_view data)
{
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

DimCache::DimCache(std::filesystem::path dir) : dir_(std::move(dir))
{
    if (!dir_.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) {
            std::cerr << "extcalc: cannot create cache dir " << dir_ << ": " << ec.message()
                      << "; caching disabled\n";
            dir_.clear();
        }
    }
}

std::filesystem::path DimCache::resolve_dir(const std::string& flag_value, bool disabled)
{
    if (disabled)
        return {};
    if (!flag_value.empty())
        return flag_value;
    if (const char* env = std::getenv("EXTCALC_CACHE_DIR"); env && *env)
        return env;
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return std::filesystem::path(xdg) / "extcalc";
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::filesystem::path(home) / ".cache" / "extcalc";
    return {};
}

std::optional<size_t> DimCache::load(uint32_t p, int m, int n, const Tridegree& tri) const
{
    if (!enabled())
        return std::nullopt;
    const std::string key = key_string(p, m, n, tri);
    auto path = dir_ / (std::to_string(fnv1a64(key)) + ".json");
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    try {
        nlohmann::json doc = nlohmann::json::parse(in);
        if (doc.at("schema").get<std::string>() != "cache-entry/1")
            return std::nullopt;  // version mismatch invalidates
        if (doc.at("key").get<std::string>() != key)
            return std::nullopt;  // hash collision
        size_t dim = doc.at("dim").get<size_t>();
        if (doc.at("checksum").get<std::string>() != checksum_string(key, dim)) {
            std::cerr << "extcalc: corrupt cache entry " << path << "; recomputing\n";
            return std::nullopt;
        }
        return dim;
    }
    catch (const std::exception& e) {
        std::cerr << "extcalc: unreadable cache entry " << path << " (" << e.what()
                  << "); recomputing\n";
        return std::nullopt;
    }
}

void DimCache::store(uint32_t p, int m, int n, const Tridegree& tri, size_t dim) const
{
    if (!enabled())
        return;
    const std::string key = key_string(p, m, n, tri);
    nlohmann::json doc{{"schema", "cache-entry/1"},
                       {"key", key},
                       {"dim", dim},
                       {"checksum", checksum_string(key, dim)}};
    auto path = dir_ / (std::to_string(fnv1a64(key)) + ".json");
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out)
            return;
        out << doc.dump(2) << '\n';
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);  // idempotent: same key, same value
    if (ec)
        std::filesystem::remove(tmp, ec);
}

DimLookup DimCache::lookup(uint32_t p, int m, int n) const
{
    if (!enabled())
        return plain_dim;
    return [this, p, m, n](KoszulContext& ctx, const Tridegree& tri) -> size_t {
        if (auto hit = load(p, m, n, tri))
            return *hit;
        size_t dim = ctx.ext_dimension(tri);
        store(p, m, n, tri, dim);
        return dim;
    };
}

}  // namespace steenrod
