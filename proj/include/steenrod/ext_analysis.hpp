#pragma once

#include "steenrod/koszul.hpp"

#include <functional>
#include <optional>
#include <string>

namespace steenrod {

/* Exact nonnegative-denominator fraction for the vanishing-line slope. */
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    static Rational of(int64_t num, int64_t den);
    bool operator<(const Rational& other) const;
    bool operator==(const Rational&) const = default;
    std::string str() const;
};

struct Violation {
    Tridegree tri;
    std::string witness;
};

struct AuditReport {
    std::string kind;
    uint32_t p = 2;
    int m = 0, n = 0;
    int64_t w_max = 0;
    int32_t s_max = -1;  // -1 when the audit has no Adams-range parameter
    bool pass = true;
    std::vector<Violation> violations;
    size_t slices_checked = 0;
    size_t classes_found = 0;
    std::optional<Rational> epsilon_max;
    std::optional<Tridegree> epsilon_witness;
    std::optional<std::string> note;
};

struct ExtEntry {
    Tridegree tri;
    size_t dim = 0;
};

/* Closed form of Example-style Ext over the exterior algebra itself:
 * #{(r_0..r_m) >= 0 : sum r_i = s, sum r_i (2p^i - 1) = t}. */
uint64_t baseline_ext_fp(uint32_t p, int m, int64_t s, int64_t t);

/* Hook for a persistent dimension cache: returns a cached dimension or
 * computes and records it. */
using DimLookup = std::function<size_t(KoszulContext&, const Tridegree&)>;
size_t plain_dim(KoszulContext& ctx, const Tridegree& tri);

/* Nonzero Ext dimensions for w <= w_max, s <= s_max; odd_only restricts to
 * odd topological degree.  Weight slices run on `jobs` workers and merge by
 * weight ascending, then algebraic degree descending. */
std::vector<ExtEntry> ext_table(uint32_t p, int m, int n, int64_t w_max, int32_t s_max,
                                bool odd_only, int jobs = 1,
                                const DimLookup& dim = plain_dim,
                                int64_t w_min = 0, int32_t s_min = 0);

AuditReport audit_exactness(uint32_t p, int n, int64_t w_max, int jobs = 1);
AuditReport audit_main_inequality(uint32_t p, int m, int n, int64_t w_max, int32_t s_max,
                                  int jobs = 1);
AuditReport audit_vanishing(uint32_t p, int m, int n, int64_t w_max, int32_t s_max, int jobs = 1);
AuditReport audit_degree_bounds(uint32_t p, int n, int64_t w_max);

}  // namespace steenrod
