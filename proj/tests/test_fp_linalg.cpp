#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "steenrod/fp_linalg.hpp"

#include <algorithm>
#include <random>

using namespace steenrod;

namespace {

FpMatrix make(uint32_t p, std::vector<FpVec> rows, size_t cols)
{
    return FpMatrix::from_rows(p, rows, cols);
}

/* Valuation sequence of a vector for the exhaustive oracle: index of the
 * first block touched by the support (larger is better), or SIZE_MAX for
 * the zero vector. */
size_t leading_block(const FpVec& v, const std::vector<std::vector<size_t>>& blocks)
{
    for (size_t b = 0; b < blocks.size(); ++b)
        for (size_t c : blocks[b])
            if (v[c] != 0)
                return b;
    return SIZE_MAX;
}

}  // namespace

TEST_CASE("row_reduce: identity over F_3 is fixed")
{
    auto m = make(3, {{1, 0}, {0, 1}}, 2);
    auto rr = row_reduce(m);
    CHECK(rr.reduced == m);
    CHECK(rr.pivot_cols == std::vector<size_t>{0, 1});
}

TEST_CASE("row_reduce: dependent rows over F_5")
{
    auto m = make(5, {{1, 2}, {2, 4}}, 2);
    auto rr = row_reduce(m);
    CHECK(rr.reduced == make(5, {{1, 2}, {0, 0}}, 2));
    CHECK(rr.pivot_cols == std::vector<size_t>{0});
}

TEST_CASE("row_reduce: [[1,1],[1,2]] over F_2 reduces to the identity")
{
    /* hand elimination mod 2: r2 += r1 gives [[1,1],[0,1]], r1 += r2 gives I */
    auto rr = row_reduce(make(2, {{1, 1}, {1, 2}}, 2));
    CHECK(rr.reduced == make(2, {{1, 0}, {0, 1}}, 2));
    CHECK(rr.pivot_cols == std::vector<size_t>{0, 1});
}

TEST_CASE("kernel_basis: zero, injective and one-relation cases")
{
    CHECK(kernel_basis(FpMatrix(2, 3, 3)).size() == 3);
    CHECK(kernel_basis(make(3, {{1, 0}, {0, 1}}, 2)).empty());

    /* [[1,1]] over F_2: exhaustive check of all 4 vectors says the kernel is
     * {0, (1,1)} */
    auto kb = kernel_basis(make(2, {{1, 1}}, 2));
    REQUIRE(kb.size() == 1);
    CHECK(kb[0] == FpVec{1, 1});
}

TEST_CASE("solve_linear: basic cases")
{
    auto id = make(3, {{1, 0}, {0, 1}}, 2);
    CHECK(solve_linear(id, {2, 1}) == FpVec{2, 1});

    CHECK(!solve_linear(FpMatrix(3, 2, 2), {1, 0}).has_value());

    /* [[1,1],[0,1]] over F_3 with b=(2,1): exhaustive search over F_3^2 finds
     * the unique solution (1,1) */
    auto m = make(3, {{1, 1}, {0, 1}}, 2);
    auto x = solve_linear(m, {2, 1});
    REQUIRE(x.has_value());
    CHECK(*x == FpVec{1, 1});
}

TEST_CASE("row_reduce is idempotent and rank-nullity holds")
{
    std::mt19937 rng(20240811);
    for (uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 40; ++trial) {
            size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
            FpMatrix m(p, rows, cols);
            for (size_t r = 0; r < rows; ++r)
                for (size_t c = 0; c < cols; ++c)
                    m.set(r, c, rng() % p);
            auto rr = row_reduce(m);
            auto rr2 = row_reduce(rr.reduced);
            CHECK(rr2.reduced == rr.reduced);
            CHECK(rr2.pivot_cols == rr.pivot_cols);
            CHECK(rr.pivot_cols.size() + kernel_basis(m).size() == cols);
            CHECK(std::is_sorted(rr.pivot_cols.begin(), rr.pivot_cols.end()));

            /* kernel vectors really lie in the kernel */
            for (const auto& v : kernel_basis(m))
                CHECK(m.apply(v) == FpVec(rows, 0));

            /* solve_linear(m, m·x) succeeds and solves */
            FpVec x(cols);
            for (auto& e : x)
                e = rng() % p;
            FpVec b = m.apply(x);
            auto sol = solve_linear(m, b);
            REQUIRE(sol.has_value());
            CHECK(m.apply(*sol) == b);
        }
    }
}

TEST_CASE("valuation_maximize: empty boundary basis leaves the cycle unchanged")
{
    FpVec cycle{1, 2, 0};
    std::vector<std::vector<size_t>> blocks{{0}, {1}, {2}};
    CHECK(valuation_maximize(3, cycle, {}, blocks) == cycle);
}

TEST_CASE("valuation_maximize: a boundary cycle reduces to zero")
{
    /* cycle equals the boundary vector, so 0 is in the coset and has the
     * maximal (empty-support) valuation */
    FpVec b{1, 1, 0};
    auto r = valuation_maximize(2, b, {b}, {{0}, {1}, {2}});
    CHECK(r == FpVec{0, 0, 0});
}

TEST_CASE("valuation_maximize: raising the leading block over F_2")
{
    /* coordinates: block 0 = {0}, block 1 = {1,2}; adding the boundary clears
     * coordinate 0, moving the support into the better block */
    FpVec cycle{1, 1, 0};
    FpVec b{1, 0, 1};
    auto r = valuation_maximize(2, cycle, {b}, {{0}, {1, 2}});
    CHECK(r == FpVec{0, 1, 1});
}

TEST_CASE("valuation_maximize: exhaustive coset oracle")
{
    std::mt19937 rng(5);
    for (uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 120; ++trial) {
            size_t dim = 2 + rng() % 5;
            size_t nb = 1 + rng() % 3;  // coset size <= p^3
            std::vector<FpVec> bnd(nb, FpVec(dim, 0));
            for (auto& v : bnd)
                for (auto& e : v)
                    e = rng() % p;
            FpVec cycle(dim);
            for (auto& e : cycle)
                e = rng() % p;

            /* random block structure: contiguous groups */
            std::vector<std::vector<size_t>> blocks;
            size_t i = 0;
            while (i < dim) {
                size_t len = 1 + rng() % (dim - i);
                std::vector<size_t> blk;
                for (size_t j = 0; j < len; ++j)
                    blk.push_back(i + j);
                blocks.push_back(blk);
                i += len;
            }

            auto best = valuation_maximize(p, cycle, bnd, blocks);

            /* membership in the coset: best - cycle must solve the boundary system */
            FpMatrix bt(p, dim, nb);
            for (size_t c = 0; c < nb; ++c)
                for (size_t r = 0; r < dim; ++r)
                    bt.set(r, c, bnd[c][r]);
            FpVec diff(dim);
            for (size_t r = 0; r < dim; ++r)
                diff[r] = (best[r] + p - cycle[r]) % p;
            CHECK(solve_linear(bt, diff).has_value());

            /* enumerate the whole coset; nothing beats the result */
            size_t best_block = leading_block(best, blocks);
            size_t total = 1;
            for (size_t j = 0; j < nb; ++j)
                total *= p;
            for (size_t code = 0; code < total; ++code) {
                FpVec v = cycle;
                size_t cc = code;
                for (size_t j = 0; j < nb; ++j) {
                    uint32_t lam = cc % p;
                    cc /= p;
                    for (size_t r = 0; r < dim; ++r)
                        v[r] = uint32_t((v[r] + uint64_t(lam) * bnd[j][r]) % p);
                }
                CHECK(leading_block(v, blocks) <= best_block);
            }

            /* deterministic */
            CHECK(valuation_maximize(p, cycle, bnd, blocks) == best);
        }
    }
}
