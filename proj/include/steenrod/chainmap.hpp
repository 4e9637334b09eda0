#pragma once

#include "steenrod/koszul.hpp"

namespace steenrod {

/* Sequence (c_0, c_1, ...) of nonnegative integers, 0-indexed, stored
 * without trailing zeros.  Used both for Koszul symbol exponents u^R and for
 * v-monomial exponents. */
struct Seq {
    std::vector<int32_t> c;

    Seq() = default;
    explicit Seq(std::vector<int32_t> entries);

    int32_t get(size_t i) const { return i < c.size() ? c[i] : 0; }
    void set(size_t i, int32_t value);
    int64_t sum() const;
    bool is_zero() const { return c.empty(); }
    size_t support_end() const { return c.size(); }

    auto operator<=>(const Seq&) const = default;
};

/* Topological degree of v^R, each v_i contributing 2p^i - 2. */
int64_t v_topological_degree(const Seq& r, uint32_t p);

/* Balls placed into linearly ordered labeled boxes; box label >= ball label.
 * Boxes come from R (first r_0 boxes labeled 0, ...), balls from S. */
struct Placement {
    std::vector<int32_t> box_labels;   // weakly increasing
    std::vector<int32_t> ball_labels;  // ball_labels[b] <= box_labels[b]
};

struct Majorization {
    Placement placement;
    ExponentSeq index;  // sum of local indices p^i e_j over boxes
};

/* Exhaustive, duplicate-free majorization classes from S to R.  Identical
 * balls are already identified by recording only the ball label per box.
 * The prime enters through the local indices p^i e_j. */
std::vector<Majorization> majorizations(const Seq& S, const Seq& R, uint32_t p);

struct LiftTerm {
    ExponentSeq J;
    Seq R;
    uint32_t coeff;
};

/* Image of u^S under the chain lift of P^I: sum of P^{I-ind(sigma)} u^R over
 * all targets R and classes sigma, negative exponents dropped. */
std::vector<LiftTerm> lift_monomial(const ExponentSeq& I, const Seq& S, uint32_t p);

/* Checks d(lift(u^S)) = lift(d(u^S)) for every u^S with sum L, coefficients
 * evaluated in A//E(n_trunc).  The Q-index support of the tested u^S is
 * capped at n_trunc + |I| + 2, beyond which the terms repeat shape. */
bool verify_chain_map(const ExponentSeq& I, int L, uint32_t p, int n_trunc);

/* Polynomial in v_0, v_1, ... over F_p. */
struct VPoly {
    uint32_t p = 2;
    std::map<Seq, uint32_t> terms;

    void add(const Seq& mono, uint32_t coeff);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const VPoly&) const = default;
};

std::string vpoly_to_text(const VPoly& poly);

/* (P^I)_*(v^R) = sum_S #{sigma in Maj(S,R) : ind(sigma) = I} v^S mod p. */
VPoly pi_action(const ExponentSeq& I, const Seq& R, uint32_t p);

/* Ext class with a cycle representative v_0^N P^I + v_0^{N-1} x_{N-1} + ...
 * + x_0, the x_i free of v_0. */
struct PhiMap {
    uint32_t p;
    int m, n;
    ExponentSeq I;
    int32_t N;
    KoszulElement cycle;
};

/* Inductive lifting: each step solves Q_0 x = -d^1 x_prev through the
 * exactness of the Q_0 action; N is the number of steps until d^1 vanishes.
 * The result is verified to be a d-cycle. */
PhiMap build_phi(uint32_t p, int m, int n, const ExponentSeq& I);

std::string phi_to_text(const PhiMap& phi);

/* v_0^N (P^I)_*(x) for x = v^R over v_0..v_n; only established when
 * deg(x) + deg(P^I) <= 0 topologically, and rejected outside that range. */
VPoly phi_action(const PhiMap& phi, const Seq& x);

/* Full induced action of the class on F_p[v_0..v_n] -> F_p[v_0..v_m]:
 * Q-terms of the cycle die in the exterior closure, pure P-terms act by
 * majorization counts, and v-variables beyond v_m are killed afterwards. */
VPoly class_action(const KoszulElement& cycle, const Seq& x);

struct SurjEntry {
    uint32_t scalar = 0;  // entry is scalar * v0^power; zero iff scalar == 0
    int64_t v0_power = 0;
};

struct SurjReport {
    uint32_t p;
    int m, n;
    int64_t D, k;
    std::vector<std::pair<ExponentSeq, ExponentSeq>> index;  // (I, J), proof order
    std::vector<int32_t> phi_N;                              // per column
    std::vector<std::vector<SurjEntry>> entries;             // [row][col]
    bool pass = false;
    std::string note;
};

/* Assembles the matrix of (v^J phi^I)_* against the Hom basis indexed by M
 * (by degree c, then lexicographically) up to input degree k, and checks it
 * is lower triangular with unit v_0-power diagonal. */
SurjReport surjectivity_matrix(uint32_t p, int m, int n, int64_t D, int64_t k, int jobs = 1);

std::string surj_to_csv(const SurjReport& report);

}  // namespace steenrod
