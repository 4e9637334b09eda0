#pragma once

#include "steenrod/milnor.hpp"

#include <memory>
#include <mutex>

namespace steenrod {

/* v_0^{r_0} ... v_m^{r_m}; the exponent vector always has length m+1. */
struct VMonomial {
    std::vector<int32_t> r;

    int64_t adams() const;  // sum of exponents
    auto operator<=>(const VMonomial&) const = default;
};

/* Adams degree s, algebraic degree t, weight w.  The topological degree is
 * t - s.  Each v_i has bidegree (1, 2p^i - 1) and weight 0. */
struct Tridegree {
    int32_t s = 0;
    int64_t t = 0;
    int64_t w = 0;

    int64_t topological() const { return t - int64_t(s); }
    auto operator<=>(const Tridegree&) const = default;
};

int64_t v_algebraic_degree(const VMonomial& v, uint32_t p);

struct KoszulTerm {
    VMonomial v;
    Monomial mono;

    auto operator<=>(const KoszulTerm&) const = default;
};

/* Homogeneous element of (A//E(n))[v_0,...,v_m].  Inhomogeneous sums are
 * rejected at construction. */
class KoszulElement {
public:
    KoszulElement(uint32_t p, int m, int n);
    static KoszulElement term(uint32_t p, int m, int n, const VMonomial& v, const Monomial& mono,
                              uint32_t coeff = 1);

    uint32_t p() const { return p_; }
    int m() const { return m_; }
    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<KoszulTerm, uint32_t>& terms() const { return terms_; }
    std::optional<Tridegree> tridegree() const;

    void add_term(const VMonomial& v, const Monomial& mono, uint32_t coeff);
    void add(const KoszulElement& other, uint32_t scale = 1);
    KoszulElement times_v(int i) const;  // multiply by v_i

    bool operator==(const KoszulElement&) const = default;

private:
    uint32_t p_;
    int m_, n_;
    std::map<KoszulTerm, uint32_t> terms_;
};

/* d x = sum_i v_i (Q_i x); raises s by 1, preserves t and w. */
KoszulElement differential(const KoszulElement& x);

std::string koszul_to_text(const KoszulElement& x);
KoszulElement parse_koszul(uint32_t p, int m, int n, std::string_view text);

/* Ordered basis of one tridegree slice: pairs (v^R, monomial) with
 * sum r_i = s,  v-degree + monomial degree = t,  weight(monomial) = w,
 * ordered by R ascending lexicographically, then by monomial. */
struct SliceBasis {
    Tridegree tri;
    std::vector<KoszulTerm> items;
    std::map<KoszulTerm, size_t> index;

    size_t size() const { return items.size(); }
};

struct ExtClass {
    Tridegree tri;
    KoszulElement cycle;
    std::vector<int32_t> r_seq;  // valuation sequence of the stored representative
    Element leading;             // its x_{m+1} component
};

struct ExtBasis {
    size_t dimension = 0;
    std::vector<ExtClass> classes;
};

/* One tridegree of the Koszul complex with its two differential matrices. */
struct Slice {
    Tridegree tri;
    std::shared_ptr<const SliceBasis> basis;
    std::shared_ptr<const FpMatrix> differential_out;  // from tri to s+1
    std::shared_ptr<const FpMatrix> differential_in;   // from s-1 to tri
};

/* Lazily computed, memoized view of the complex (A//E(n))[v_0,...,v_m] for
 * one (p, m, n).  All public calls are safe from concurrent threads and
 * cache insertions are idempotent. */
class KoszulContext {
public:
    KoszulContext(uint32_t p, int m, int n);

    uint32_t p() const { return p_; }
    int m() const { return m_; }
    int n() const { return n_; }

    std::shared_ptr<const SliceBasis> slice_basis(const Tridegree& tri);
    std::shared_ptr<const FpMatrix> differential_matrix(const Tridegree& tri);
    Slice slice(const Tridegree& tri);

    size_t rank_out(const Tridegree& tri);
    size_t ext_dimension(const Tridegree& tri);
    ExtBasis ext_basis(const Tridegree& tri);

    /* Updates the representative so that (r_0,...,r_m) is lexicographically
     * maximal over the whole class; deterministic.  Throws if the cycle is a
     * boundary. */
    ExtClass normal_representation(const ExtClass& cls);

    KoszulElement from_vector(const SliceBasis& basis, const FpVec& vec) const;
    FpVec to_vector(const SliceBasis& basis, const KoszulElement& x) const;

    std::vector<FpVec> boundary_vectors(const Tridegree& tri);

private:
    uint32_t p_;
    int m_, n_;
    std::mutex mu_;
    std::map<Tridegree, std::shared_ptr<const SliceBasis>> bases_;
    std::map<Tridegree, std::shared_ptr<const FpMatrix>> dmats_;
    std::map<Tridegree, size_t> ranks_;
};

/* All exponent vectors (r_0,...,r_m) >= 0 with sum s, ascending lex. */
std::vector<VMonomial> v_monomials(int m, int32_t s);

/* Valuation data of a slice vector: r_seq is the lex-least v-exponent tuple
 * over the support (equivalently, the successive v_i-valuations of the
 * quotient coefficients), and leading collects the monomial coefficients at
 * exactly that v-monomial. */
void read_valuation(uint32_t p, int n, const SliceBasis& basis, const FpVec& vec,
                    std::vector<int32_t>& r_seq, Element& leading);

}  // namespace steenrod
