#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "steenrod/chainmap.hpp"

using namespace steenrod;

namespace {

Seq S(std::vector<int32_t> v)
{
    return Seq(std::move(v));
}

ExponentSeq E(std::vector<int32_t> v)
{
    return ExponentSeq(std::move(v));
}

VPoly poly(uint32_t p, std::vector<std::pair<std::vector<int32_t>, uint32_t>> terms)
{
    VPoly out;
    out.p = p;
    for (auto& [mono, c] : terms)
        out.add(Seq(std::move(mono)), c);
    return out;
}

}  // namespace

TEST_CASE("majorizations: identity, one-step and all-zero-balls cases")
{
    /* S = R = (L): a single class of index 0 */
    auto same = majorizations(S({3}), S({3}), 3);
    REQUIRE(same.size() == 1);
    CHECK(same[0].index.is_zero());

    /* S=(2), R=(1,1): the only placement puts 0-balls everywhere; the 1-box
     * contributes locind(0,1) = e_1 */
    auto step = majorizations(S({2}), S({1, 1}), 5);
    REQUIRE(step.size() == 1);
    CHECK(step[0].index == E({1}));

    /* S=(L), arbitrary R: unique class with ind = (r_1, r_2, ...) */
    auto all0 = majorizations(S({3}), S({1, 0, 2}), 2);
    REQUIRE(all0.size() == 1);
    CHECK(all0[0].index == E({0, 2}));

    /* boxes are distinguishable: two classes, same index */
    auto two = majorizations(S({1, 1}), S({0, 2}), 3);
    REQUIRE(two.size() == 2);
    CHECK(two[0].index == E({1}));
    CHECK(two[1].index == E({1}));

    CHECK_THROWS(majorizations(S({1}), S({2}), 3));
}

TEST_CASE("lift_monomial: identity lift and the basic example")
{
    /* I = 0 lifts u^S to u^S */
    for (auto s : {S({2}), S({1, 1}), S({0, 0, 3})}) {
        auto lift = lift_monomial(ExponentSeq{}, s, 3);
        REQUIRE(lift.size() == 1);
        CHECK(lift[0].J.is_zero());
        CHECK(lift[0].R == s);
        CHECK(lift[0].coeff == 1);
    }

    /* I=(1), S=(1): P^(1) u^(1) + u^(0,1) */
    auto lift = lift_monomial(E({1}), S({1}), 3);
    REQUIRE(lift.size() == 2);
    CHECK(lift[0].J.is_zero());
    CHECK(lift[0].R == S({0, 1}));
    CHECK(lift[1].J == E({1}));
    CHECK(lift[1].R == S({1}));
}

TEST_CASE("verify_chain_map: pinned instances")
{
    CHECK(verify_chain_map(ExponentSeq{}, 2, 3, 1));
    CHECK(verify_chain_map(E({1}), 2, 3, 1));
    CHECK(verify_chain_map(E({2, 1}), 3, 2, 1));
}

TEST_CASE("verify_chain_map: exhaustive small range")
{
    for (uint32_t p : {2u, 3u})
        for (int n : {1, 2})
            for (int L : {1, 2})
                for (auto I : {ExponentSeq{}, E({1}), E({2}), E({0, 1}), E({1, 1})})
                    CHECK(verify_chain_map(I, L, p, n));
}

TEST_CASE("pi_action: identity and the degree-boundary formula")
{
    /* P^0 acts as the identity */
    for (auto r : {S({}), S({2}), S({1, 0, 1})}) {
        auto out = pi_action(ExponentSeq{}, r, 3);
        REQUIRE(out.terms.size() == 1);
        CHECK(out.terms.begin()->first == r);
        CHECK(out.terms.begin()->second == 1);
    }

    /* I=(1): v_1 -> v_0, v_2 -> 0 */
    CHECK(pi_action(E({1}), S({0, 1}), 3) == poly(3, {{{1}, 1}}));
    CHECK(pi_action(E({1}), S({0, 0, 1}), 3).is_zero());

    /* boundary case of the action: for x = v^R with deg(x) = -deg(P^I),
     * the image is v_0^{sum r_i} exactly when I = (r_1, r_2, ...) */
    for (uint32_t p : {2u, 3u}) {
        for (auto r : {S({0, 2}), S({1, 1}), S({2, 0, 1}), S({0, 1, 1})}) {
            ExponentSeq matching;
            for (size_t i = 1; i < r.c.size(); ++i)
                matching.set(i, r.c[i]);
            auto hit = pi_action(matching, r, p);
            REQUIRE(hit.terms.size() == 1);
            CHECK(hit.terms.begin()->first == S({int32_t(r.sum())}));
            CHECK(hit.terms.begin()->second == 1);

            /* other I of the same degree give zero */
            Monomial pm;
            pm.powers = matching;
            int64_t deg = -algebraic_degree(pm, p);
            for (int64_t j1 = 0; j1 * (2 * int64_t(p) - 2) <= deg; ++j1) {
                ExponentSeq other;
                if (j1)
                    other.set(1, int32_t(j1));
                int64_t rem = deg - j1 * (2 * int64_t(p) - 2);
                if (rem % (2 * int64_t(p) * p - 2) == 0 && rem > 0)
                    other.set(2, int32_t(rem / (2 * int64_t(p) * p - 2)));
                Monomial om;
                om.powers = other;
                if (algebraic_degree(om, p) != -deg || other == matching)
                    continue;
                CHECK(pi_action(other, r, p).is_zero());
            }
        }
    }

    /* degree reason: deg(x) + deg(P^I) < 0 gives zero */
    CHECK(pi_action(E({2}), S({0, 1}), 3).is_zero());
}

TEST_CASE("build_phi: the three pinned constructions")
{
    /* phi^0 = 1 with N = 0 */
    auto phi0 = build_phi(3, 1, 1, ExponentSeq{});
    CHECK(phi0.N == 0);
    CHECK(phi0.cycle == KoszulElement::term(3, 1, 1, VMonomial{{0, 0}}, Monomial{}));

    /* p=3, n=m=1, I=(1): P^(1) is already a cycle */
    auto phi1 = build_phi(3, 1, 1, E({1}));
    CHECK(phi1.N == 0);
    Monomial p1;
    p1.powers = E({1});
    CHECK(phi1.cycle == KoszulElement::term(3, 1, 1, VMonomial{{0, 0}}, p1));

    /* p=2, n=m=1, I=(2): v_0 P^(2) + v_1 P^(0,1) with N=1 */
    auto phi2 = build_phi(2, 1, 1, E({2}));
    CHECK(phi2.N == 1);
    CHECK(koszul_to_text(phi2.cycle) == "v[1,0]*P[2] + v[0,1]*P[0,1]");
    CHECK(differential(phi2.cycle).is_zero());
}

TEST_CASE("build_phi: cycles with the right leading term across a sample")
{
    struct Case {
        uint32_t p;
        int m, n;
        std::vector<int32_t> I;
    };
    for (const auto& c : {Case{3, 1, 1, {2}}, Case{3, 1, 1, {3}}, Case{3, 1, 1, {4}},
                          Case{2, 1, 1, {3}}, Case{2, 2, 2, {1, 1}}, Case{2, 1, 2, {0, 2}},
                          Case{5, 1, 1, {1}}}) {
        auto phi = build_phi(c.p, c.m, c.n, E(c.I));
        CHECK(differential(phi.cycle).is_zero());
        /* v_0-valuation is exactly N with coefficient P^I */
        int32_t min_v0 = INT32_MAX;
        for (const auto& [term, coeff] : phi.cycle.terms())
            min_v0 = std::min(min_v0, term.v.r[0]);
        CHECK(min_v0 == 0);  // the tail x_0 level is reached
        VMonomial leadv;
        leadv.r.assign(size_t(c.m + 1), 0);
        leadv.r[0] = phi.N;
        Monomial pi;
        pi.powers = E(c.I);
        auto it = phi.cycle.terms().find(KoszulTerm{leadv, pi});
        REQUIRE(it != phi.cycle.terms().end());
        CHECK(it->second == 1);
        for (const auto& [term, coeff] : phi.cycle.terms())
            CHECK(term.v.r[0] <= phi.N);
    }
}

TEST_CASE("phi_action: pinned values and the annihilation pattern")
{
    auto phi1 = build_phi(3, 1, 1, E({1}));
    CHECK(phi_action(phi1, S({0, 1})) == poly(3, {{{1}, 1}}));  // v_1 -> v_0
    CHECK(phi_action(phi1, S({2})).is_zero());                  // v_0^2 -> 0
    CHECK(phi_action(phi1, S({1})).is_zero());                  // v_0 -> 0

    auto phi2 = build_phi(2, 1, 1, E({2}));
    CHECK(phi_action(phi2, S({0, 2})) == poly(2, {{{3}, 1}}));  // v_1^2 -> v_0^3
    CHECK(phi_action(phi2, S({1, 1})).is_zero());               // v_0 v_1 -> 0
    CHECK(phi_action(phi2, S({2})).is_zero());                  // v_0^2 -> 0

    /* phi^0 is the identity on v_0-powers */
    auto phi0 = build_phi(2, 1, 1, ExponentSeq{});
    for (int32_t a = 0; a <= 3; ++a)
        CHECK(phi_action(phi0, S({a})) == poly(2, {{{a}, 1}}));

    /* outside the established range the operation refuses */
    CHECK_THROWS(phi_action(phi1, S({0, 2})));
}

TEST_CASE("class_action agrees with phi_action on the established range")
{
    for (auto& phi : {build_phi(3, 1, 1, E({2})), build_phi(2, 1, 1, E({2})),
                      build_phi(2, 2, 2, E({1, 1}))}) {
        Monomial pi;
        pi.powers = phi.I;
        int64_t window = -algebraic_degree(pi, phi.p);
        for (int32_t a = 0; a <= 2; ++a)
            for (int32_t b = 0; b <= 3; ++b) {
                Seq x;
                x.set(0, a);
                x.set(1, b);
                if (v_topological_degree(x, phi.p) > window)
                    continue;
                CHECK(class_action(phi.cycle, x) == phi_action(phi, x));
            }
    }
}

TEST_CASE("chain-level module structure: (v_i f)_* = v_i f_*")
{
    for (auto& phi : {build_phi(3, 1, 1, E({1})), build_phi(2, 1, 1, E({2})),
                      build_phi(2, 2, 2, E({1}))}) {
        for (int i = 0; i <= phi.m; ++i) {
            auto scaled = phi.cycle.times_v(i);
            CHECK(differential(scaled).is_zero());
            for (int32_t a = 0; a <= 2; ++a)
                for (int32_t b = 0; b <= 2; ++b) {
                    Seq x;
                    x.set(0, a);
                    x.set(1, b);
                    VPoly direct = class_action(scaled, x);
                    VPoly shifted;
                    shifted.p = phi.p;
                    for (const auto& [mono, c] : class_action(phi.cycle, x).terms) {
                        Seq s = mono;
                        s.set(size_t(i), s.get(size_t(i)) + 1);
                        shifted.add(s, c);
                    }
                    CHECK(direct == shifted);
                }
        }
    }
}

TEST_CASE("surjectivity_matrix: one-by-one base case")
{
    auto rep = surjectivity_matrix(3, 1, 1, 0, 0);
    REQUIRE(rep.index.size() == 1);
    CHECK(rep.pass);
    CHECK(rep.entries[0][0].scalar == 1);
    CHECK(rep.entries[0][0].v0_power == rep.phi_N[0]);
    auto csv = surj_to_csv(rep);
    CHECK(csv.find("# verdict: pass") != std::string::npos);
}

TEST_CASE("surjectivity_matrix: p=3, m=n=1, D=0 up to degree 20")
{
    auto rep = surjectivity_matrix(3, 1, 1, 0, 20, 2);
    /* degrees 0,4,...,20 with one (I, J) pair each */
    REQUIRE(rep.index.size() == 6);
    CHECK(rep.pass);
    for (size_t q = 0; q < 6; ++q) {
        CHECK(rep.entries[q][q].scalar == 1);
        CHECK(rep.entries[q][q].v0_power == rep.phi_N[q] + int64_t(q));
        for (size_t r = 0; r < q; ++r)
            CHECK(rep.entries[r][q].scalar == 0);
    }
    CHECK(rep.entries.size() == rep.index.size());
    for (const auto& row : rep.entries)
        CHECK(row.size() == rep.index.size());
}

TEST_CASE("pi_action degree bookkeeping")
{
    /* every output monomial sits in degree deg(input) + deg(P^I), and a
     * negative projected degree forces zero */
    for (uint32_t p : {2u, 3u}) {
        for (auto I : {E({1}), E({2}), E({0, 1}), E({1, 1})}) {
            Monomial pm;
            pm.powers = I;
            int64_t dI = algebraic_degree(pm, p);
            for (auto r : {S({1}), S({0, 1}), S({0, 2}), S({1, 1}), S({0, 0, 1}), S({0, 3})}) {
                auto out = pi_action(I, r, p);
                int64_t expected = v_topological_degree(r, p) + dI;
                if (expected < 0)
                    CHECK(out.is_zero());
                for (const auto& [mono, c] : out.terms)
                    CHECK(v_topological_degree(mono, p) == expected);
            }
        }
    }
}

TEST_CASE("phi_action pattern: v^I maps to a v0-power, peers map to zero")
{
    struct Case {
        uint32_t p;
        int m, n;
        std::vector<int32_t> I;
    };
    for (const auto& c : {Case{3, 1, 1, {2}}, Case{2, 1, 1, {3}}, Case{2, 2, 2, {1, 1}},
                          Case{2, 2, 2, {0, 2}}}) {
        auto phi = build_phi(c.p, c.m, c.n, E(c.I));
        Monomial pm;
        pm.powers = phi.I;
        int64_t D = -algebraic_degree(pm, c.p);

        /* all v_1..v_n monomials of topological degree D */
        std::vector<Seq> peers;
        std::vector<int32_t> cur(size_t(c.n), 0);
        auto rec = [&](auto&& self, int j, int64_t rem) -> void {
            if (j > c.n) {
                if (rem == 0) {
                    Seq x;
                    for (int i = 1; i <= c.n; ++i)
                        x.set(size_t(i), cur[size_t(i - 1)]);
                    peers.push_back(x);
                }
                return;
            }
            int64_t unit = 2;
            for (int i = 0; i < j; ++i)
                unit *= c.p;
            unit -= 2;
            for (int64_t e = 0; unit * e <= rem; ++e) {
                cur[size_t(j - 1)] = int32_t(e);
                self(self, j + 1, rem - unit * e);
                if (unit == 0)
                    break;
            }
            cur[size_t(j - 1)] = 0;
        };
        rec(rec, 1, D);

        Seq self_mono;
        for (size_t i = 0; i < phi.I.e.size(); ++i)
            self_mono.set(i + 1, phi.I.e[i]);
        bool saw_self = false;
        for (const auto& x : peers) {
            auto out = phi_action(phi, x);
            if (x == self_mono) {
                saw_self = true;
                REQUIRE(out.terms.size() == 1);
                CHECK(out.terms.begin()->first == S({int32_t(phi.N + phi.I.sum())}));
                CHECK(out.terms.begin()->second == 1);
            }
            else {
                CHECK(out.is_zero());
            }
        }
        CHECK(saw_self);
    }
}
