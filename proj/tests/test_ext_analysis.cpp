#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "steenrod/ext_analysis.hpp"

using namespace steenrod;

TEST_CASE("baseline_ext_fp: pinned values and brute-force agreement")
{
    CHECK(baseline_ext_fp(2, 0, 0, 0) == 1);
    CHECK(baseline_ext_fp(7, 2, 0, 0) == 1);
    CHECK(baseline_ext_fp(3, 1, 2, 6) == 1);   // r = (1,1)
    CHECK(baseline_ext_fp(2, 2, 3, 3) == 1);   // r = (3,0,0)
    CHECK(baseline_ext_fp(3, 1, 2, 7) == 0);

    /* independent oracle: loop over all compositions directly */
    for (uint32_t p : {2u, 3u})
        for (int m : {0, 1, 2})
            for (int32_t s = 0; s <= 5; ++s) {
                std::map<int64_t, uint64_t> expected;
                std::vector<int32_t> r(size_t(m + 1), 0);
                auto rec = [&](auto&& self, size_t pos, int32_t rem) -> void {
                    if (pos == r.size() - 1) {
                        r[pos] = rem;
                        int64_t t = 0;
                        int64_t pw = 1;
                        for (size_t i = 0; i < r.size(); ++i) {
                            t += int64_t(r[i]) * (2 * pw - 1);
                            pw *= p;
                        }
                        ++expected[t];
                        return;
                    }
                    for (int32_t v = 0; v <= rem; ++v) {
                        r[pos] = v;
                        self(self, pos + 1, rem - v);
                    }
                };
                rec(rec, 0, s);
                for (const auto& [t, count] : expected)
                    CHECK(baseline_ext_fp(p, m, s, t) == count);
            }
}

TEST_CASE("ext_table matches ext_basis dimensions and is deterministic under jobs")
{
    auto table1 = ext_table(3, 1, 1, 36, 6, true, 1);
    auto table4 = ext_table(3, 1, 1, 36, 6, true, 4);
    REQUIRE(table1.size() == table4.size());
    for (size_t i = 0; i < table1.size(); ++i) {
        CHECK(table1[i].tri == table4[i].tri);
        CHECK(table1[i].dim == table4[i].dim);
    }
    KoszulContext ctx(3, 1, 1);
    for (const auto& e : table1) {
        CHECK(((e.tri.topological() % 2) + 2) % 2 == 1);
        CHECK(ctx.ext_basis(e.tri).dimension == e.dim);
    }
}

TEST_CASE("audit_exactness: proved ranges pass")
{
    auto r1 = audit_exactness(3, 1, 54, 2);
    CHECK(r1.pass);
    CHECK(r1.slices_checked > 0);

    auto r2 = audit_exactness(2, 2, 48, 2);
    CHECK(r2.pass);

    /* empty range is a trivial pass */
    auto r3 = audit_exactness(3, 1, 0);
    CHECK(r3.pass);
}

TEST_CASE("audit_main_inequality: m=0 vacuous behaviour and p=3 range")
{
    auto r0 = audit_main_inequality(3, 0, 1, 36, 6);
    CHECK(r0.pass);

    auto r1 = audit_main_inequality(3, 1, 1, 54, 8, 2);
    CHECK(r1.pass);
    CHECK(r1.classes_found > 0);

    /* w below 2p^{n+1} cannot carry odd classes */
    auto r2 = audit_main_inequality(3, 1, 1, 16, 6);
    CHECK(r2.pass);
    CHECK(r2.classes_found == 0);
    CHECK(r2.note.has_value());
}

TEST_CASE("audit_vanishing: p=3, m=n=1 sees the 2(p-1)^2 line")
{
    auto report = audit_vanishing(3, 1, 1, 54, 8, 2);
    CHECK(report.pass);
    CHECK(report.classes_found > 0);
    REQUIRE(report.epsilon_max.has_value());
    /* epsilon_max >= 8 on this range; the line through (1-2p^2, 0) */
    CHECK(!(*report.epsilon_max < Rational::of(8, 1)));

    /* the weak hypothesis at (2,2,2) on a small range */
    auto weak = audit_vanishing(2, 2, 2, 32, 6, 2);
    CHECK(weak.pass);

    /* ... and at (2,3,3), where only the weak form is available */
    auto weak33 = audit_vanishing(2, 3, 3, 36, 4, 2);
    CHECK(weak33.pass);

    /* degenerate range */
    auto vac = audit_vanishing(2, 1, 1, 4, 4);
    CHECK(vac.pass);
    CHECK(vac.classes_found == 0);
    CHECK(vac.note.has_value());
    CHECK(!vac.epsilon_max.has_value());
}

TEST_CASE("audit_vanishing is monotone under range restriction")
{
    auto big = audit_vanishing(3, 1, 1, 36, 6);
    auto small = audit_vanishing(3, 1, 1, 24, 6);
    CHECK(small.classes_found <= big.classes_found);
    CHECK(small.pass);
    CHECK(big.pass);
}

TEST_CASE("audit_degree_bounds: pinned ranges")
{
    auto r1 = audit_degree_bounds(3, 1, 108);
    CHECK(r1.pass);
    CHECK(r1.slices_checked > 0);

    auto r2 = audit_degree_bounds(2, 2, 96);
    CHECK(r2.pass);
}

TEST_CASE("Rational: normalization and ordering")
{
    CHECK(Rational::of(16, 2) == Rational::of(8, 1));
    CHECK(Rational::of(-3, -9) == Rational::of(1, 3));
    CHECK(Rational::of(17, 2).str() == "17/2");
    CHECK(Rational::of(8, 1).str() == "8");
    CHECK(Rational::of(7, 1) < Rational::of(15, 2));
    CHECK_THROWS(Rational::of(1, 0));
}

TEST_CASE("empirical epsilon at n=m=1 matches 2(p-1)^2 across primes")
{
    struct Case {
        uint32_t p;
        int64_t wmax;
        int32_t smax;
        int64_t expect;
    };
    for (auto c : {Case{2, 16, 6, 2}, Case{3, 54, 8, 8}, Case{5, 250, 6, 32}}) {
        auto rep = audit_vanishing(c.p, 1, 1, c.wmax, c.smax, 4);
        CHECK(rep.pass);
        REQUIRE(rep.epsilon_max.has_value());
        CHECK(*rep.epsilon_max == Rational::of(c.expect, 1));
    }
}

TEST_CASE("audits hold with m strictly below n")
{
    CHECK(audit_vanishing(2, 1, 2, 48, 8, 4).pass);
    CHECK(audit_main_inequality(2, 1, 2, 48, 8, 4).pass);
    CHECK(audit_vanishing(3, 0, 1, 54, 6, 2).pass);
    CHECK(audit_vanishing(3, 2, 2, 60, 6, 4).pass);
}
