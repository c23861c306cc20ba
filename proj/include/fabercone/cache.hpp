#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "fabercone/cone.hpp"

namespace fabercone {

// On-disk cache of computed cones, keyed by a content hash of the
// generating inequality description so stale entries self-invalidate.
struct ConeCache {
    std::filesystem::path dir;

    // FABERCONE_CACHE, else $XDG_CACHE_HOME/fabercone, else
    // $HOME/.cache/fabercone.
    static ConeCache standard();

    // Loads and re-checks the payload against the inequality description
    // (row satisfaction only); a mismatch invalidates the entry.
    std::optional<ConeV> load(const std::string& key, const ConeH& check) const;
    void store(const std::string& key, const ConeV& payload) const;
};

std::string cone_cache_key(int g, int n, const std::string& mode, const ConeH& h);

}  // namespace fabercone
