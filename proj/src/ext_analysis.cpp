#include "steenrod/ext_analysis.hpp"

#include "steenrod/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace steenrod {

namespace {

int64_t ipow(int64_t base, int e)
{
    int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

bool is_odd(int64_t x)
{
    return ((x % 2) + 2) % 2 == 1;
}

/* distinct algebraic degrees of v-monomials with Adams degree s */
std::vector<int64_t> v_degree_set(uint32_t p, int m, int32_t s)
{
    std::set<int64_t> degs;
    for (const auto& v : v_monomials(m, s))
        degs.insert(v_algebraic_degree(v, p));
    return {degs.begin(), degs.end()};
}

std::string trimmed_text(const KoszulElement& x, size_t max_terms = 4)
{
    if (x.terms().size() <= max_terms)
        return koszul_to_text(x);
    KoszulElement head(x.p(), x.m(), x.n());
    size_t i = 0;
    for (const auto& [term, c] : x.terms()) {
        if (i++ == max_terms)
            break;
        head.add_term(term.v, term.mono, c);
    }
    std::ostringstream os;
    os << koszul_to_text(head) << " + ... (" << x.terms().size() << " terms)";
    return os.str();
}

}  // namespace

Rational Rational::of(int64_t num, int64_t den)
{
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

bool Rational::operator<(const Rational& other) const
{
    return num * other.den < other.num * den;
}

std::string Rational::str() const
{
    if (den == 1)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

uint64_t baseline_ext_fp(uint32_t p, int m, int64_t s, int64_t t)
{
    if (s < 0)
        return 0;
    uint64_t count = 0;
    for (const auto& v : v_monomials(m, int32_t(s)))
        if (v_algebraic_degree(v, p) == t)
            ++count;
    return count;
}

size_t plain_dim(KoszulContext& ctx, const Tridegree& tri)
{
    return ctx.ext_dimension(tri);
}

std::vector<ExtEntry> ext_table(uint32_t p, int m, int n, int64_t w_max, int32_t s_max,
                                bool odd_only, int jobs, const DimLookup& dim, int64_t w_min,
                                int32_t s_min)
{
    std::vector<int64_t> weights;
    for (int64_t w = w_min + (w_min % 2); w <= w_max; w += 2)
        weights.push_back(w);
    std::vector<std::vector<ExtEntry>> per_weight(weights.size());

    parallel_for(weights.size(), jobs, [&](size_t wi) {
        const int64_t w = weights[wi];
        KoszulContext ctx(p, m, n);
        auto table = basis_by_degree(p, n, w);
        std::vector<ExtEntry> found;
        for (int32_t s = s_min; s <= s_max; ++s) {
            std::set<int64_t> ts;
            for (int64_t vdeg : v_degree_set(p, m, s))
                for (const auto& [d, bucket] : table->buckets)
                    if (!odd_only || is_odd(d))
                        ts.insert(vdeg + d);
            for (int64_t t : ts) {
                size_t dm = dim(ctx, Tridegree{s, t, w});
                if (dm)
                    found.push_back(ExtEntry{Tridegree{s, t, w}, dm});
            }
        }
        /* weight ascending overall; algebraic degree descending inside */
        std::sort(found.begin(), found.end(), [](const ExtEntry& a, const ExtEntry& b) {
            if (a.tri.t != b.tri.t)
                return a.tri.t > b.tri.t;
            return a.tri.s < b.tri.s;
        });
        per_weight[wi] = std::move(found);
    });

    std::vector<ExtEntry> out;
    for (auto& chunk : per_weight)
        out.insert(out.end(), chunk.begin(), chunk.end());
    return out;
}

AuditReport audit_exactness(uint32_t p, int n, int64_t w_max, int jobs)
{
    AuditReport report;
    report.kind = "exactness";
    report.p = p;
    report.m = n;
    report.n = n;
    report.w_max = w_max;

    std::vector<int64_t> weights;
    for (int64_t w = 0; w <= w_max; w += 2)
        weights.push_back(w);
    std::vector<std::vector<Violation>> bad(weights.size());
    std::vector<size_t> checked(weights.size(), 0);

    parallel_for(weights.size(), jobs, [&](size_t wi) {
        const int64_t w = weights[wi];
        auto table = basis_by_degree(p, n, w);
        for (const auto& [t, bucket] : table->buckets) {
            if (!is_odd(t))
                continue;
            for (int k = 0; k <= n; ++k) {
                auto outgoing = qk_matrix(p, n, k, w, t);
                auto incoming = qk_matrix(p, n, k, w, t + 2 * ipow(p, k) - 1);
                ++checked[wi];
                size_t dim_ker = bucket.size() - rank(outgoing);
                size_t rank_im = rank(incoming);
                if (dim_ker != rank_im) {
                    std::ostringstream os;
                    os << "Q_" << k << " on (w=" << w << ", t=" << t << "): dim ker = " << dim_ker
                       << " but dim im = " << rank_im;
                    bad[wi].push_back(Violation{Tridegree{k, t, w}, os.str()});
                }
            }
        }
    });

    for (size_t wi = 0; wi < weights.size(); ++wi) {
        report.slices_checked += checked[wi];
        for (auto& v : bad[wi])
            report.violations.push_back(std::move(v));
    }
    report.pass = report.violations.empty();
    return report;
}

AuditReport audit_main_inequality(uint32_t p, int m, int n, int64_t w_max, int32_t s_max, int jobs)
{
    AuditReport report;
    report.kind = "mainineq";
    report.p = p;
    report.m = m;
    report.n = n;
    report.w_max = w_max;
    report.s_max = s_max;

    const int64_t min_w = 2 * ipow(p, n + 1);
    if (w_max < min_w)
        report.note = "no odd classes possible in range (w_max < 2p^{n+1})";

    auto records = ext_table(p, m, n, w_max, s_max, true, jobs);
    std::vector<std::vector<Violation>> bad(records.size());
    parallel_for(records.size(), jobs, [&](size_t i) {
        const auto& rec = records[i];
        KoszulContext ctx(p, m, n);
        auto eb = ctx.ext_basis(rec.tri);
        for (const auto& cls : eb.classes) {
            auto nr = ctx.normal_representation(cls);
            bool ok = nr.r_seq.back() == 0;
            for (size_t j = 0; j + 1 < nr.r_seq.size(); ++j)
                if (int64_t(nr.r_seq[j]) * 2 * ipow(p, n) * (int64_t(p) - 1) >
                    rec.tri.w - 2 * ipow(p, n + 1))
                    ok = false;
            if (!ok) {
                std::ostringstream os;
                os << "normal representation r = (";
                for (size_t j = 0; j < nr.r_seq.size(); ++j)
                    os << (j ? "," : "") << nr.r_seq[j];
                os << ") of " << trimmed_text(nr.cycle);
                bad[i].push_back(Violation{rec.tri, os.str()});
            }
        }
    });

    for (size_t i = 0; i < records.size(); ++i) {
        report.slices_checked += 1;
        report.classes_found += records[i].dim;
        for (auto& v : bad[i])
            report.violations.push_back(std::move(v));
    }
    report.pass = report.violations.empty();
    return report;
}

AuditReport audit_vanishing(uint32_t p, int m, int n, int64_t w_max, int32_t s_max, int jobs)
{
    AuditReport report;
    report.kind = "vanishing";
    report.p = p;
    report.m = m;
    report.n = n;
    report.w_max = w_max;
    report.s_max = s_max;

    const int64_t line_x = 1 - 2 * ipow(p, n + 1);
    const int64_t min_w = 2 * ipow(p, n + 1);
    if (w_max < min_w)
        report.note = "no odd classes possible in range (w_max < 2p^{n+1})";

    auto records = ext_table(p, m, n, w_max, s_max, true, jobs);
    for (const auto& rec : records) {
        ++report.slices_checked;
        report.classes_found += rec.dim;
        int64_t x = rec.tri.topological();
        if (x > line_x) {
            std::ostringstream os;
            os << rec.dim << " odd class(es) with t-s = " << x << " right of " << line_x;
            report.violations.push_back(Violation{rec.tri, os.str()});
        }
        if (rec.tri.s > 0) {
            Rational eps = Rational::of(line_x - x, rec.tri.s);
            if (!report.epsilon_max || eps < *report.epsilon_max) {
                report.epsilon_max = eps;
                report.epsilon_witness = rec.tri;
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

AuditReport audit_degree_bounds(uint32_t p, int n, int64_t w_max)
{
    AuditReport report;
    report.kind = "degrees";
    report.p = p;
    report.m = n;
    report.n = n;
    report.w_max = w_max;

    for (int64_t w = 0; w <= w_max; w += 2) {
        auto table = basis_by_degree(p, n, w);
        for (const auto& [t, bucket] : table->buckets) {
            if (!is_odd(t))
                continue;  // the bounds only constrain odd degrees
            for (const auto& mono : bucket) {
                ++report.slices_checked;
                bool ok = t >= -w + 1;
                /* p*t <= -(p-1)w + p(1 - 2p^n) in integers */
                if (int64_t(p) * t > -int64_t(p - 1) * w + int64_t(p) * (1 - 2 * ipow(p, n)))
                    ok = false;
                for (int ell = 1; ell <= int(mono.powers.max_index()) + 1; ++ell)
                    if (mixed_weight(mono, p, ell) > w - 2 * ipow(p, n + 1))
                        ok = false;
                if (!ok)
                    report.violations.push_back(
                        Violation{Tridegree{0, t, w}, monomial_to_text(mono)});
            }
        }
    }
    report.pass = report.violations.empty();
    return report;
}

}  // namespace steenrod
