#include "steenrod/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace steenrod {

namespace {

using nlohmann::json;

json tri_json(const Tridegree& tri)
{
    return json{{"s", tri.s}, {"t", tri.t}, {"w", tri.w}};
}

}  // namespace

std::string audit_to_json_text(const AuditReport& report)
{
    json doc{{"schema", "ext-audit/1"},
             {"kind", report.kind},
             {"p", report.p},
             {"m", report.m},
             {"n", report.n},
             {"w_max", report.w_max},
             {"pass", report.pass},
             {"slices_checked", report.slices_checked},
             {"classes_found", report.classes_found}};
    if (report.s_max >= 0)
        doc["s_max"] = report.s_max;
    doc["violations"] = json::array();
    for (const auto& v : report.violations)
        doc["violations"].push_back(json{{"tridegree", tri_json(v.tri)}, {"witness", v.witness}});
    if (report.epsilon_max) {
        doc["epsilon_max"] = json{{"num", report.epsilon_max->num},
                                  {"den", report.epsilon_max->den},
                                  {"text", report.epsilon_max->str()}};
        if (report.epsilon_witness)
            doc["epsilon_witness"] = tri_json(*report.epsilon_witness);
    }
    if (report.note)
        doc["note"] = *report.note;
    return doc.dump(2) + "\n";
}

std::string audit_to_table(const AuditReport& report)
{
    std::ostringstream os;
    os << "audit " << report.kind << "  p=" << report.p << " m=" << report.m
       << " n=" << report.n << " w_max=" << report.w_max;
    if (report.s_max >= 0)
        os << " s_max=" << report.s_max;
    os << '\n';
    os << "  slices checked: " << report.slices_checked << '\n';
    if (report.classes_found || report.kind == "vanishing" || report.kind == "mainineq")
        os << "  odd classes:    " << report.classes_found << '\n';
    if (report.epsilon_max) {
        os << "  epsilon_max:    " << report.epsilon_max->str();
        if (report.epsilon_witness)
            os << "   (witness s=" << report.epsilon_witness->s << " t=" << report.epsilon_witness->t
               << " w=" << report.epsilon_witness->w << ")";
        os << '\n';
    }
    if (report.note)
        os << "  note:           " << *report.note << '\n';
    if (report.violations.empty()) {
        os << "  verdict:        pass\n";
    }
    else {
        os << "  verdict:        FAIL (" << report.violations.size() << " violation(s))\n";
        for (const auto& v : report.violations)
            os << "    at (s=" << v.tri.s << ", t=" << v.tri.t << ", w=" << v.tri.w
               << "): " << v.witness << '\n';
    }
    return os.str();
}

std::string ext_entries_to_json(uint32_t p, int m, int n, const std::vector<ExtEntry>& entries)
{
    json doc{{"schema", "ext-report/1"}, {"p", p}, {"m", m}, {"n", n}};
    doc["entries"] = json::array();
    for (const auto& e : entries)
        doc["entries"].push_back(
            json{{"s", e.tri.s}, {"t", e.tri.t}, {"w", e.tri.w}, {"dim", e.dim}});
    return doc.dump(2) + "\n";
}

std::string ext_entries_to_csv(const std::vector<ExtEntry>& entries)
{
    std::ostringstream os;
    os << "s,t,w,dim\n";
    for (const auto& e : entries)
        os << e.tri.s << ',' << e.tri.t << ',' << e.tri.w << ',' << e.dim << '\n';
    return os.str();
}

std::string basis_to_json(uint32_t p, int n, int64_t w, std::optional<int64_t> t,
                          const std::vector<Monomial>& monomials)
{
    json doc{{"schema", "basis-report/1"}, {"p", p}, {"n", n}, {"w", w}};
    if (t)
        doc["t"] = *t;
    else
        doc["t"] = nullptr;
    doc["monomials"] = json::array();
    for (const auto& m : monomials)
        doc["monomials"].push_back(monomial_to_text(m));
    return doc.dump(2) + "\n";
}

std::string basis_to_csv(const std::vector<Monomial>& monomials, uint32_t p)
{
    std::ostringstream os;
    os << "monomial,degree,weight\n";
    for (const auto& m : monomials)
        os << monomial_to_text(m) << ',' << algebraic_degree(m, p) << ',' << weight(m, p) << '\n';
    return os.str();
}

namespace {

/* x-column of the overlay line at height s: line_x0 - eps*s, floored */
int64_t line_x_at(const ChartOptions& opt, int32_t s)
{
    const Rational& e = *opt.eps;
    int64_t num = e.num * s;
    int64_t q = num / e.den;
    if (num % e.den != 0 && num > 0)
        ++q;  // ceil for positive slope values: the line is at x <= line_x0 - q
    return opt.line_x0 - q;
}

}  // namespace

std::string ascii_chart(const std::vector<ExtEntry>& odd_classes, const ChartOptions& opt)
{
    int64_t x_min = opt.x_min, x_max = opt.x_max;
    if (x_max - x_min + 1 > int64_t(opt.max_width))
        x_min = x_max - int64_t(opt.max_width) + 1;

    size_t width = size_t(x_max - x_min + 1);
    std::vector<std::string> rows(size_t(opt.s_max) + 1, std::string(width, ' '));
    size_t outside = 0;

    if (opt.eps) {
        for (int32_t s = 0; s <= opt.s_max; ++s) {
            int64_t lx = line_x_at(opt, s);
            if (lx >= x_min && lx <= x_max)
                rows[size_t(s)][size_t(lx - x_min)] = '/';
        }
    }
    for (const auto& e : odd_classes) {
        int64_t x = e.tri.topological();
        int32_t s = e.tri.s;
        if (x < x_min || x > x_max || s < 0 || s > opt.s_max) {
            ++outside;
            continue;
        }
        char mark = e.dim > 9 ? '*' : char('0' + e.dim);
        char& cell = rows[size_t(s)][size_t(x - x_min)];
        cell = cell == '/' ? '@' : mark;
    }

    std::ostringstream os;
    os << "Adams chart (x = t-s, y = s); digits = odd-class dimensions";
    if (opt.eps)
        os << "; '/' = line through (" << opt.line_x0 << ",0) of slope -1/" << opt.eps->str();
    os << '\n';
    for (int32_t s = opt.s_max; s >= 0; --s) {
        os << (s < 10 ? " " : "") << s << " |";
        const std::string& row = rows[size_t(s)];
        size_t last = row.find_last_not_of(' ');
        os << (last == std::string::npos ? "" : row.substr(0, last + 1)) << '\n';
    }
    os << "   +" << std::string(width, '-') << '\n';
    os << "    x from " << x_min << " to " << x_max << '\n';
    if (outside)
        os << "note: " << outside << " class(es) outside the displayed window\n";
    return os.str();
}

std::string svg_chart(const std::vector<ExtEntry>& odd_classes, const ChartOptions& opt)
{
    const int cell = 12;
    const int margin = 40;
    int64_t x_min = opt.x_min, x_max = opt.x_max;
    int width = margin * 2 + int(x_max - x_min + 1) * cell;
    int height = margin * 2 + (opt.s_max + 1) * cell;
    auto px = [&](int64_t x) { return margin + int(x - x_min) * cell + cell / 2; };
    auto py = [&](int32_t s) { return height - margin - s * cell - cell / 2; };

    size_t outside = 0;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "  <line x1=\"" << margin << "\" y1=\"" << py(0) + cell << "\" x2=\"" << width - margin
       << "\" y2=\"" << py(0) + cell << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << py(0) + cell << "\" stroke=\"black\"/>\n";
    if (opt.eps) {
        /* the line eps*s + x = line_x0 from s=0 to s=s_max */
        double x0 = double(opt.line_x0);
        double x1 = double(opt.line_x0) - double(opt.eps->num) / double(opt.eps->den) * opt.s_max;
        os << "  <line x1=\"" << px(int64_t(x0)) << "\" y1=\"" << py(0) << "\" x2=\""
           << px(int64_t(x1)) << "\" y2=\"" << py(opt.s_max)
           << "\" stroke=\"red\" stroke-dasharray=\"4 2\"/>\n";
    }
    for (const auto& e : odd_classes) {
        int64_t x = e.tri.topological();
        int32_t s = e.tri.s;
        if (x < x_min || x > x_max || s < 0 || s > opt.s_max) {
            ++outside;
            continue;
        }
        os << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(s)
           << "\" r=\"4\" fill=\"steelblue\"/>\n";
        if (e.dim > 1)
            os << "  <text x=\"" << px(x) + 5 << "\" y=\"" << py(s) - 5 << "\" font-size=\"9\">"
               << e.dim << "</text>\n";
    }
    os << "  <text x=\"" << margin << "\" y=\"" << height - 8 << "\" font-size=\"10\">x = t-s in ["
       << x_min << ", " << x_max << "], y = s in [0, " << opt.s_max << "]</text>\n";
    if (outside)
        os << "  <text x=\"" << margin << "\" y=\"" << margin - 8 << "\" font-size=\"10\">note: "
           << outside << " class(es) outside the displayed window</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace steenrod
