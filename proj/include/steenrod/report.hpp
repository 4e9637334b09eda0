#pragma once

#include "steenrod/ext_analysis.hpp"

#include <string>
#include <vector>

namespace steenrod {

std::string audit_to_json_text(const AuditReport& report);
std::string audit_to_table(const AuditReport& report);

std::string ext_entries_to_json(uint32_t p, int m, int n, const std::vector<ExtEntry>& entries);
std::string ext_entries_to_csv(const std::vector<ExtEntry>& entries);

std::string basis_to_json(uint32_t p, int n, int64_t w, std::optional<int64_t> t,
                          const std::vector<Monomial>& monomials);
std::string basis_to_csv(const std::vector<Monomial>& monomials, uint32_t p);

/* Adams chart of the odd-class inventory: x = t-s, y = s.  The optional
 * overlay line passes through (line_x0, 0) with slope -1/eps.  Classes
 * outside the displayed window are never silently dropped: a footnote
 * counts them. */
struct ChartOptions {
    int32_t s_max = 10;
    int64_t x_min = -100;
    int64_t x_max = 10;
    int64_t line_x0 = 0;
    std::optional<Rational> eps;
    size_t max_width = 120;  // display columns for the x-axis
};

std::string ascii_chart(const std::vector<ExtEntry>& odd_classes, const ChartOptions& opt);
std::string svg_chart(const std::vector<ExtEntry>& odd_classes, const ChartOptions& opt);

}  // namespace steenrod
