#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace steenrod {

using FpVec = std::vector<uint32_t>;

bool is_prime(uint32_t p);
uint32_t inv_mod(uint32_t a, uint32_t p);

/* Dense matrix over F_p, row-major.  Every entry is a residue in [0, p).
 * The modulus is carried on the value so that computations at different
 * primes can coexist in one process. */
class FpMatrix {
public:
    FpMatrix(uint32_t p, size_t rows, size_t cols);
    static FpMatrix from_rows(uint32_t p, const std::vector<FpVec>& rows, size_t cols);

    uint32_t p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = v % p_; }

    const uint32_t* row(size_t r) const { return a_.data() + r * cols_; }
    uint32_t* row(size_t r) { return a_.data() + r * cols_; }

    FpVec apply(const FpVec& x) const;  // m·x for a column vector x

    bool operator==(const FpMatrix&) const = default;

private:
    uint32_t p_;
    size_t rows_, cols_;
    std::vector<uint32_t> a_;
};

struct RowReduced {
    FpMatrix reduced;
    std::vector<size_t> pivot_cols;  // strictly increasing
};

/* Unique reduced row echelon form; rank = pivot_cols.size(). */
RowReduced row_reduce(const FpMatrix& m);

size_t rank(const FpMatrix& m);

/* Basis of {x : m·x = 0}; exactly cols - rank vectors, deterministic order. */
std::vector<FpVec> kernel_basis(const FpMatrix& m);

/* Some x with m·x = b, or nullopt when b is not in the column space.
 * Free coordinates of the solution are set to zero, so the result is
 * deterministic. */
std::optional<FpVec> solve_linear(const FpMatrix& m, const FpVec& b);

/* Row space accumulated one vector at a time, kept in reduced form.
 * add() reports whether the vector enlarged the span. */
class IncrementalRref {
public:
    explicit IncrementalRref(uint32_t p) : p_(p) {}
    bool add(FpVec v);
    FpVec reduce(FpVec v) const;
    bool contains(const FpVec& v) const;
    size_t rank() const { return rows_.size(); }

private:
    uint32_t p_;
    std::vector<FpVec> rows_;
    std::vector<size_t> pivots_;
};

/* Representative of cycle + span(boundary_basis) whose valuation sequence is
 * lexicographically maximal.  `blocks` partitions the coordinate indices into
 * valuation groups ordered worst-first: an element's valuation is the first
 * block its support touches, and later blocks are better.  Works by a single
 * row reduction of the boundaries with columns scanned in block order; the
 * reduced coset representative maximizes the position of its first nonzero
 * coordinate in that scan, hence the valuation sequence.  The zero vector
 * (empty support) counts as maximal. */
FpVec valuation_maximize(uint32_t p, const FpVec& cycle,
                         const std::vector<FpVec>& boundary_basis,
                         const std::vector<std::vector<size_t>>& blocks);

}  // namespace steenrod
