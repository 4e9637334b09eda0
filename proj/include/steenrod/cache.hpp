#pragma once

#include "steenrod/ext_analysis.hpp"

#include <filesystem>

namespace steenrod {

/* On-disk cache of Ext dimensions, one JSON file per tridegree, content
 * addressed by a hash of the key (p,m,n,s,t,w,format version).  Loads
 * validate key and checksum; any mismatch or parse failure falls back to
 * recomputation with a warning on stderr.  Writes go through a temp file and
 * an atomic rename, so concurrent writers stay consistent. */
class DimCache {
public:
    explicit DimCache(std::filesystem::path dir);

    /* flag value first, then EXTCALC_CACHE_DIR, then the user cache dir;
     * empty result disables caching */
    static std::filesystem::path resolve_dir(const std::string& flag_value, bool disabled);

    bool enabled() const { return !dir_.empty(); }
    const std::filesystem::path& dir() const { return dir_; }

    std::optional<size_t> load(uint32_t p, int m, int n, const Tridegree& tri) const;
    void store(uint32_t p, int m, int n, const Tridegree& tri, size_t dim) const;

    /* DimLookup adapter: load, or compute through the context and store */
    DimLookup lookup(uint32_t p, int m, int n) const;

private:
    std::filesystem::path dir_;
};

uint64_t fnv1a64(std::string_view data);

}  // namespace steenrod
