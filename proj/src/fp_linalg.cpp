#include "steenrod/fp_linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace steenrod {

bool is_prime(uint32_t p)
{
    if (p < 2)
        return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

uint32_t inv_mod(uint32_t a, uint32_t p)
{
    a %= p;
    if (a == 0)
        throw std::domain_error("inv_mod: zero has no inverse");
    /* Fermat: a^(p-2) mod p */
    uint64_t base = a, result = 1;
    uint32_t e = p - 2;
    while (e) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return uint32_t(result);
}

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0)
{
    if (!is_prime(p))
        throw std::invalid_argument("FpMatrix: modulus must be prime");
}

FpMatrix FpMatrix::from_rows(uint32_t p, const std::vector<FpVec>& rows, size_t cols)
{
    FpMatrix m(p, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
        for (size_t c = 0; c < cols; ++c)
            m.a_[r * cols + c] = rows[r][c] % p;
    }
    return m;
}

FpVec FpMatrix::apply(const FpVec& x) const
{
    if (x.size() != cols_)
        throw std::invalid_argument("FpMatrix::apply: dimension mismatch");
    FpVec y(rows_, 0);
    for (size_t r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        const uint32_t* a = row(r);
        for (size_t c = 0; c < cols_; ++c)
            acc += uint64_t(a[c]) * x[c];
        y[r] = uint32_t(acc % p_);
    }
    return y;
}

namespace {

/* In-place Gauss-Jordan with columns visited in the order `col_order`.
 * Returns pivot positions as (row, col) pairs in visit order. */
std::vector<std::pair<size_t, size_t>> eliminate(FpMatrix& m, const std::vector<size_t>& col_order)
{
    const uint32_t p = m.p();
    std::vector<std::pair<size_t, size_t>> pivots;
    size_t next_row = 0;
    for (size_t c : col_order) {
        if (next_row >= m.rows())
            break;
        size_t pr = next_row;
        while (pr < m.rows() && m.at(pr, c) == 0)
            ++pr;
        if (pr == m.rows())
            continue;
        if (pr != next_row)
            for (size_t k = 0; k < m.cols(); ++k)
                std::swap(m.row(pr)[k], m.row(next_row)[k]);
        uint32_t inv = inv_mod(m.at(next_row, c), p);
        if (inv != 1) {
            uint32_t* rr = m.row(next_row);
            for (size_t k = 0; k < m.cols(); ++k)
                rr[k] = uint32_t(uint64_t(rr[k]) * inv % p);
        }
        const uint32_t* prow = m.row(next_row);
        for (size_t r = 0; r < m.rows(); ++r) {
            if (r == next_row)
                continue;
            uint32_t f = m.at(r, c);
            if (f == 0)
                continue;
            uint32_t* rr = m.row(r);
            uint64_t neg = p - f;
            for (size_t k = 0; k < m.cols(); ++k)
                rr[k] = uint32_t((rr[k] + neg * prow[k]) % p);
        }
        pivots.emplace_back(next_row, c);
        ++next_row;
    }
    return pivots;
}

std::vector<size_t> natural_order(size_t n)
{
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i)
        order[i] = i;
    return order;
}

}  // namespace

RowReduced row_reduce(const FpMatrix& m)
{
    FpMatrix work = m;
    auto pivots = eliminate(work, natural_order(m.cols()));
    std::vector<size_t> pivot_cols;
    pivot_cols.reserve(pivots.size());
    for (auto& [r, c] : pivots)
        pivot_cols.push_back(c);
    return RowReduced{std::move(work), std::move(pivot_cols)};
}

size_t rank(const FpMatrix& m)
{
    FpMatrix work = m;
    return eliminate(work, natural_order(m.cols())).size();
}

std::vector<FpVec> kernel_basis(const FpMatrix& m)
{
    RowReduced rr = row_reduce(m);
    const uint32_t p = m.p();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : rr.pivot_cols)
        is_pivot[c] = true;

    std::vector<FpVec> basis;
    for (size_t free_c = 0; free_c < m.cols(); ++free_c) {
        if (is_pivot[free_c])
            continue;
        FpVec v(m.cols(), 0);
        v[free_c] = 1;
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
            uint32_t coef = rr.reduced.at(i, free_c);
            if (coef)
                v[rr.pivot_cols[i]] = p - coef;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FpVec> solve_linear(const FpMatrix& m, const FpVec& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve_linear: dimension mismatch");
    const uint32_t p = m.p();
    FpMatrix aug(p, m.rows(), m.cols() + 1);
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c)
            aug.set(r, c, m.at(r, c));
        aug.set(r, m.cols(), b[r]);
    }
    auto pivots = eliminate(aug, natural_order(m.cols()));
    /* inconsistent iff some row is (0 ... 0 | nonzero) */
    for (size_t r = pivots.size(); r < aug.rows(); ++r)
        if (aug.at(r, m.cols()) != 0)
            return std::nullopt;
    FpVec x(m.cols(), 0);
    for (auto& [r, c] : pivots)
        x[c] = aug.at(r, m.cols());
    return x;
}

bool IncrementalRref::add(FpVec v)
{
    v = reduce(std::move(v));
    size_t piv = v.size();
    for (size_t c = 0; c < v.size(); ++c)
        if (v[c]) {
            piv = c;
            break;
        }
    if (piv == v.size())
        return false;
    uint32_t inv = inv_mod(v[piv], p_);
    if (inv != 1)
        for (auto& e : v)
            e = uint32_t(uint64_t(e) * inv % p_);
    /* clear the new pivot column in the stored rows */
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint32_t f = rows_[i][piv];
        if (!f)
            continue;
        uint64_t neg = p_ - f;
        for (size_t k = 0; k < v.size(); ++k)
            rows_[i][k] = uint32_t((rows_[i][k] + neg * v[k]) % p_);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

FpVec IncrementalRref::reduce(FpVec v) const
{
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint32_t f = v[pivots_[i]];
        if (!f)
            continue;
        uint64_t neg = p_ - f;
        for (size_t k = 0; k < v.size(); ++k)
            v[k] = uint32_t((v[k] + neg * rows_[i][k]) % p_);
    }
    return v;
}

bool IncrementalRref::contains(const FpVec& v) const
{
    FpVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](uint32_t e) { return e == 0; });
}

FpVec valuation_maximize(uint32_t p, const FpVec& cycle,
                         const std::vector<FpVec>& boundary_basis,
                         const std::vector<std::vector<size_t>>& blocks)
{
    const size_t dim = cycle.size();
    std::vector<size_t> order;
    order.reserve(dim);
    for (const auto& blk : blocks)
        for (size_t c : blk)
            order.push_back(c);
    {
        std::vector<bool> seen(dim, false);
        for (size_t c : order) {
            if (c >= dim || seen[c])
                throw std::invalid_argument("valuation_maximize: blocks must partition the coordinates");
            seen[c] = true;
        }
        if (order.size() != dim)
            throw std::invalid_argument("valuation_maximize: blocks must cover all coordinates");
    }

    if (boundary_basis.empty())
        return cycle;

    FpMatrix bmat = FpMatrix::from_rows(p, boundary_basis, dim);
    auto pivots = eliminate(bmat, order);

    FpVec result = cycle;
    for (auto& [r, c] : pivots) {
        uint32_t f = result[c];
        if (f == 0)
            continue;
        uint64_t neg = p - f;
        const uint32_t* brow = bmat.row(r);
        for (size_t k = 0; k < dim; ++k)
            result[k] = uint32_t((result[k] + neg * brow[k]) % p);
    }
    return result;
}

}  // namespace steenrod
