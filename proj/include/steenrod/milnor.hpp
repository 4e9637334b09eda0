#pragma once

#include "steenrod/fp_linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace steenrod {

/* Finitely supported sequence (i_1, i_2, ...) of nonnegative integers,
 * 1-indexed, stored without trailing zeros so that equality and ordering are
 * syntactic. */
struct ExponentSeq {
    std::vector<int32_t> e;

    ExponentSeq() = default;
    explicit ExponentSeq(std::vector<int32_t> entries);

    int32_t get(size_t idx1) const;          // 1-based
    void set(size_t idx1, int32_t value);    // trims trailing zeros
    bool is_zero() const { return e.empty(); }
    size_t max_index() const { return e.size(); }
    int64_t sum() const;

    auto operator<=>(const ExponentSeq&) const = default;
};

/* Strictly increasing set of Q-indices, as a bit mask (Q_j^2 = 0). */
struct QSet {
    uint64_t bits = 0;

    bool empty() const { return bits == 0; }
    bool contains(int j) const { return j >= 0 && j < 64 && (bits >> j & 1); }
    int count() const;
    int count_below(int j) const;  // #{e in the set : e < j}
    std::vector<int> indices() const;
    static QSet of(std::initializer_list<int> js);

    auto operator<=>(const QSet&) const = default;
};

/* Basis element P^I Q^E of the Steenrod algebra (or of A//E(n) when every
 * Q-index exceeds n). */
struct Monomial {
    ExponentSeq powers;
    QSet qs;

    bool is_unit() const { return powers.is_zero() && qs.empty(); }
    auto operator<=>(const Monomial&) const = default;
};

int64_t algebraic_degree(const Monomial& m, uint32_t p);  // homological, <= 0
int64_t weight(const Monomial& m, uint32_t p);
int64_t mixed_weight(const Monomial& m, uint32_t p, int ell);  // ell >= 1

bool in_quotient_basis(const Monomial& m, int n);  // all Q-indices > n

std::string monomial_to_text(const Monomial& m);
Monomial parse_monomial(std::string_view text);

/* F_p-linear combination of A//E(n) basis monomials. */
class Element {
public:
    Element(uint32_t p, int n);
    static Element monomial(uint32_t p, int n, const Monomial& m, uint32_t coeff = 1);

    uint32_t p() const { return p_; }
    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, uint32_t>& terms() const { return terms_; }

    void add_term(const Monomial& m, uint32_t coeff);
    void add(const Element& other, uint32_t scale = 1);
    Element negated() const;

    bool operator==(const Element&) const = default;

private:
    uint32_t p_;
    int n_;
    std::map<Monomial, uint32_t> terms_;  // nonzero coefficients only
};

std::string element_to_text(const Element& x);

/* Left action of Q_k on A//E(n) for 0 <= k <= n:
 *   Q_k · P^I = sum_{t>=1} P^{I - p^k e_{n+t-k}} Q_{n+t},
 * negative exponents dropped, extended right-linearly over the Q-part with
 * the transposition-parity sign.  Preserves the weight termwise. */
Element q_left_action(int k, const Element& x);

/* Left multiplication by Q_k for arbitrary k >= 0 (for k > n this keeps the
 * P^I Q_k term of the Milnor formula that the quotient kills otherwise). */
Element q_left_action_any(int k, const Element& x);

/* All A//E(n) monomials of weight w (and algebraic degree t when given), in
 * the canonical order: lexicographic on (i_1, i_2, ...), then on Q-indices. */
std::vector<Monomial> enumerate_basis(uint32_t p, int n, int64_t w,
                                      std::optional<int64_t> t = std::nullopt);

/* Weight slice of A//E(n) bucketed by algebraic degree; cached per (p,n,w). */
struct DegreeTable {
    std::map<int64_t, std::vector<Monomial>> buckets;
    size_t total = 0;

    const std::vector<Monomial>* bucket(int64_t t) const;
};
std::shared_ptr<const DegreeTable> basis_by_degree(uint32_t p, int n, int64_t w);

/* Matrix of Q_k from the (w, t) slice to the (w, t - (2p^k - 1)) slice of
 * A//E(n), in the canonical basis order on both sides. */
FpMatrix qk_matrix(uint32_t p, int n, int k, int64_t w, int64_t t);

}  // namespace steenrod
