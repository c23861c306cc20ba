#include "fabercone/cache.hpp"

#include <cstdlib>
#include <fstream>

#include "fabercone/json_io.hpp"

namespace fabercone {

namespace {
inline constexpr int kCacheVersion = 1;
}

ConeCache ConeCache::standard() {
    if (const char* env = std::getenv("FABERCONE_CACHE"); env && *env) return ConeCache{env};
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return ConeCache{std::filesystem::path(xdg) / "fabercone"};
    if (const char* home = std::getenv("HOME"); home && *home)
        return ConeCache{std::filesystem::path(home) / ".cache" / "fabercone"};
    return ConeCache{std::filesystem::temp_directory_path() / "fabercone-cache"};
}

std::string cone_cache_key(int g, int n, const std::string& mode, const ConeH& h) {
    const std::string content = cone_h_to_json(h).dump();
    return "cone_g" + std::to_string(g) + "_n" + std::to_string(n) + "_" + mode + "_" +
           fnv1a64_hex(content);
}

std::optional<ConeV> ConeCache::load(const std::string& key, const ConeH& check) const {
    const auto path = dir / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    Json j;
    try {
        in >> j;
        if (!j.is_object() || j.value("version", 0) != kCacheVersion || j.value("key", "") != key)
            return std::nullopt;
        ConeV cone = cone_v_from_json(j.at("payload"));
        if (cone.dim != check.dim) return std::nullopt;
        for (const auto& row : check.rows)
            if (!cone.satisfies(row)) return std::nullopt;
        return cone;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ConeCache::store(const std::string& key, const ConeV& payload) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;  // cache is best effort
    Json j;
    j["version"] = kCacheVersion;
    j["key"] = key;
    j["payload"] = cone_v_to_json(payload);
    const auto tmp = dir / (key + ".tmp");
    const auto path = dir / (key + ".json");
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << dump_json(j);
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace fabercone
