#include "steenrod/chainmap.hpp"

#include "steenrod/parallel.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace steenrod {

namespace {

int64_t ipow(int64_t base, int e)
{
    int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

}  // namespace

Seq::Seq(std::vector<int32_t> entries) : c(std::move(entries))
{
    for (int32_t v : c)
        if (v < 0)
            throw std::invalid_argument("Seq: negative entry");
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

void Seq::set(size_t i, int32_t value)
{
    if (value < 0)
        throw std::invalid_argument("Seq: negative entry");
    if (i >= c.size()) {
        if (value == 0)
            return;
        c.resize(i + 1, 0);
    }
    c[i] = value;
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

int64_t Seq::sum() const
{
    int64_t s = 0;
    for (int32_t v : c)
        s += v;
    return s;
}

int64_t v_topological_degree(const Seq& r, uint32_t p)
{
    int64_t d = 0;
    for (size_t i = 0; i < r.c.size(); ++i)
        d += int64_t(r.c[i]) * (2 * ipow(p, int(i)) - 2);
    return d;
}

namespace {

std::vector<int32_t> expand_boxes(const Seq& R)
{
    std::vector<int32_t> boxes;
    for (size_t label = 0; label < R.c.size(); ++label)
        for (int32_t i = 0; i < R.c[label]; ++i)
            boxes.push_back(int32_t(label));
    return boxes;
}

void add_locind(ExponentSeq& ind, int ball, int box, uint32_t p)
{
    int j = box - ball;
    if (j == 0)
        return;
    if (ball > 40)
        throw std::overflow_error("majorization: local index p^i overflows");
    int64_t unit = ipow(p, ball);
    int64_t next = int64_t(ind.get(size_t(j))) + unit;
    if (next > INT32_MAX)
        throw std::overflow_error("majorization: index entry overflows");
    ind.set(size_t(j), int32_t(next));
}

bool leq_componentwise(const ExponentSeq& a, const ExponentSeq& b)
{
    for (size_t j = 1; j <= a.max_index(); ++j)
        if (a.get(j) > b.get(j))
            return false;
    return true;
}

using AssignmentFn = std::function<void(const std::vector<int32_t>& balls, const ExponentSeq& ind)>;

/* Ball label per box, box by box.  `counts` (when non-null) constrains the
 * ball multiset to a fixed S; `budget` (when non-null) prunes assignments
 * whose index exceeds it componentwise. */
void enumerate_assignments(const std::vector<int32_t>& boxes, size_t b, uint32_t p,
                           std::vector<int32_t>* counts, const ExponentSeq* budget,
                           std::vector<int32_t>& balls, ExponentSeq& ind, const AssignmentFn& emit)
{
    if (b == boxes.size()) {
        emit(balls, ind);
        return;
    }
    for (int32_t ball = 0; ball <= boxes[b]; ++ball) {
        if (counts && (size_t(ball) >= counts->size() || (*counts)[size_t(ball)] == 0))
            continue;
        ExponentSeq saved = ind;
        add_locind(ind, ball, boxes[b], p);
        if (!budget || leq_componentwise(ind, *budget)) {
            if (counts)
                --(*counts)[size_t(ball)];
            balls.push_back(ball);
            enumerate_assignments(boxes, b + 1, p, counts, budget, balls, ind, emit);
            balls.pop_back();
            if (counts)
                ++(*counts)[size_t(ball)];
        }
        ind = std::move(saved);
    }
}

/* All sequences with the given sum and support in [0, max_label], ascending. */
std::vector<Seq> sequences_with_sum(int64_t L, int max_label)
{
    std::vector<Seq> out;
    std::vector<int32_t> cur(size_t(max_label) + 1, 0);
    auto rec = [&](auto&& self, size_t pos, int64_t rem) -> void {
        if (pos == cur.size()) {
            if (rem == 0)
                out.push_back(Seq(cur));
            return;
        }
        for (int64_t v = 0; v <= rem; ++v) {
            cur[pos] = int32_t(v);
            self(self, pos + 1, rem - v);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, L);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Majorization> majorizations(const Seq& S, const Seq& R, uint32_t p)
{
    if (S.sum() != R.sum())
        throw std::invalid_argument("majorizations: ball and box counts differ");
    auto boxes = expand_boxes(R);
    std::vector<int32_t> counts(S.c.begin(), S.c.end());

    std::vector<Majorization> out;
    std::vector<int32_t> balls;
    ExponentSeq ind;
    enumerate_assignments(boxes, 0, p, &counts, nullptr, balls, ind,
                          [&](const std::vector<int32_t>& bl, const ExponentSeq& ix) {
                              out.push_back(Majorization{Placement{boxes, bl}, ix});
                          });
    return out;
}

std::vector<LiftTerm> lift_monomial(const ExponentSeq& I, const Seq& S, uint32_t p)
{
    int64_t L = S.sum();
    int max_label = int(S.support_end()) + int(I.max_index());
    std::map<std::pair<ExponentSeq, Seq>, uint32_t> acc;
    for (const Seq& R : sequences_with_sum(L, max_label)) {
        auto boxes = expand_boxes(R);
        std::vector<int32_t> counts(S.c.begin(), S.c.end());
        std::vector<int32_t> balls;
        ExponentSeq ind;
        enumerate_assignments(boxes, 0, p, &counts, &I, balls, ind,
                              [&](const std::vector<int32_t>&, const ExponentSeq& ix) {
                                  /* J = I - ind(sigma), nonnegative by the budget prune */
                                  ExponentSeq J = I;
                                  for (size_t j = 1; j <= ix.max_index(); ++j)
                                      J.set(j, J.get(j) - ix.get(j));
                                  auto [it, fresh] = acc.emplace(std::make_pair(std::move(J), R), 0u);
                                  it->second = (it->second + 1) % p;
                              });
    }
    std::vector<LiftTerm> out;
    for (auto& [key, coeff] : acc)
        if (coeff)
            out.push_back(LiftTerm{key.first, key.second, coeff});
    return out;
}

bool verify_chain_map(const ExponentSeq& I, int L, uint32_t p, int n_trunc)
{
    if (L < 1)
        throw std::invalid_argument("verify_chain_map: L must be >= 1");
    /* labels beyond this bound only repeat the same cancellation shapes */
    int max_label = n_trunc + int(I.max_index()) + 2;

    for (const Seq& S : sequences_with_sum(L, max_label)) {
        std::map<Seq, Element> lhs, rhs;
        auto at = [&](std::map<Seq, Element>& side, const Seq& r) -> Element& {
            auto it = side.find(r);
            if (it == side.end())
                it = side.emplace(r, Element(p, n_trunc)).first;
            return it->second;
        };

        /* d(lift(u^S)): right multiplication by Q_i, which dies for i <= n */
        for (const LiftTerm& term : lift_monomial(I, S, p)) {
            for (size_t i = 0; i < term.R.support_end(); ++i) {
                if (term.R.get(i) == 0 || int(i) <= n_trunc)
                    continue;
                Seq r = term.R;
                r.set(i, r.get(i) - 1);
                Monomial mono;
                mono.powers = term.J;
                mono.qs = QSet::of({int(i)});
                at(lhs, r).add_term(mono, term.coeff);
            }
        }

        /* lift(d(u^S)): left multiplication by Q_i via the Milnor formula */
        for (size_t i = 0; i < S.support_end(); ++i) {
            if (S.get(i) == 0)
                continue;
            Seq s = S;
            s.set(i, s.get(i) - 1);
            for (const LiftTerm& term : lift_monomial(I, s, p)) {
                Monomial mono;
                mono.powers = term.J;
                Element img = q_left_action_any(int(i), Element::monomial(p, n_trunc, mono, term.coeff));
                if (!img.is_zero())
                    at(rhs, term.R).add(img);
            }
        }

        std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
        std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
        if (lhs != rhs)
            return false;
    }
    return true;
}

void VPoly::add(const Seq& mono, uint32_t coeff)
{
    coeff %= p;
    if (!coeff)
        return;
    auto it = terms.find(mono);
    if (it == terms.end()) {
        terms.emplace(mono, coeff);
        return;
    }
    it->second = (it->second + coeff) % p;
    if (!it->second)
        terms.erase(it);
}

std::string vpoly_to_text(const VPoly& poly)
{
    if (poly.terms.empty())
        return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [mono, coeff] : poly.terms) {
        if (!first_term)
            os << " + ";
        first_term = false;
        bool printed = false;
        if (coeff != 1) {
            os << coeff;
            printed = true;
        }
        for (size_t i = 0; i < mono.c.size(); ++i) {
            if (mono.c[i] == 0)
                continue;
            if (printed)
                os << '*';
            os << 'v' << i;
            if (mono.c[i] > 1)
                os << '^' << mono.c[i];
            printed = true;
        }
        if (!printed)
            os << '1';
    }
    return os.str();
}

VPoly pi_action(const ExponentSeq& I, const Seq& R, uint32_t p)
{
    VPoly out;
    out.p = p;
    auto boxes = expand_boxes(R);
    std::vector<int32_t> balls;
    ExponentSeq ind;
    enumerate_assignments(boxes, 0, p, nullptr, &I, balls, ind,
                          [&](const std::vector<int32_t>& bl, const ExponentSeq& ix) {
                              if (!(ix == I))
                                  return;
                              Seq s;
                              for (int32_t ball : bl)
                                  s.set(size_t(ball), s.get(size_t(ball)) + 1);
                              out.add(s, 1);
                          });
    return out;
}

PhiMap build_phi(uint32_t p, int m, int n, const ExponentSeq& I)
{
    if (m < 0 || n < 0 || m > n)
        throw std::invalid_argument("build_phi: need 0 <= m <= n");
    if (int(I.max_index()) > n)
        throw std::invalid_argument("build_phi: I must be supported in [1, n]");

    Monomial lead;
    lead.powers = I;
    const int64_t w = weight(lead, p);
    const int64_t deg_pi = algebraic_degree(lead, p);

    /* nonunit coefficients of weight w live in degrees >= -w + 1, so a
     * v-degree of (2p-2)k beyond deg(P^I) + w - 1 forces the level to zero */
    const int64_t max_steps = std::max<int64_t>(0, (deg_pi + w - 1) / (2 * int64_t(p) - 2)) + 2;

    using VSub = std::vector<int32_t>;  // exponents over v_1..v_m
    std::vector<std::map<VSub, Element>> levels;
    levels.push_back({{VSub(size_t(m), 0), Element::monomial(p, n, lead)}});

    auto table = basis_by_degree(p, n, w);
    int32_t N = -1;
    while (true) {
        std::map<VSub, Element> d1;
        for (const auto& [vsub, elem] : levels.back()) {
            for (int i = 1; i <= m; ++i) {
                Element img = q_left_action(i, elem);
                if (img.is_zero())
                    continue;
                VSub next = vsub;
                ++next[size_t(i - 1)];
                auto it = d1.find(next);
                if (it == d1.end())
                    d1.emplace(std::move(next), std::move(img));
                else
                    it->second.add(img);
            }
        }
        std::erase_if(d1, [](const auto& kv) { return kv.second.is_zero(); });
        if (d1.empty()) {
            N = int32_t(levels.size()) - 1;
            break;
        }
        if (int64_t(levels.size()) > max_steps)
            throw std::runtime_error("build_phi: lifting exceeded the degree-window bound");

        std::map<VSub, Element> next_level;
        for (const auto& [vsub, elem] : d1) {
            Element rhs = elem.negated();  // solve Q_0 x = -d^1 x_prev
            int64_t t = algebraic_degree(rhs.terms().begin()->first, p);
            const auto* dst = table->bucket(t);
            const auto* src = table->bucket(t + 1);
            if (!dst)
                throw std::logic_error("build_phi: target bucket missing");
            FpVec b(dst->size(), 0);
            for (const auto& [mono, c] : rhs.terms()) {
                auto pos = std::lower_bound(dst->begin(), dst->end(), mono);
                b[size_t(pos - dst->begin())] = c;
            }
            auto sol = solve_linear(qk_matrix(p, n, 0, w, t + 1), b);
            if (!sol)
                throw std::runtime_error("build_phi: no Q_0-preimage (contradicts exactness)");
            Element y(p, n);
            for (size_t i = 0; i < sol->size(); ++i)
                if ((*sol)[i])
                    y.add_term((*src)[i], (*sol)[i]);
            next_level.emplace(vsub, std::move(y));
        }
        levels.push_back(std::move(next_level));
    }

    KoszulElement cycle(p, m, n);
    for (size_t k = 0; k < levels.size(); ++k) {
        for (const auto& [vsub, elem] : levels[k]) {
            VMonomial v;
            v.r.push_back(N - int32_t(k));
            v.r.insert(v.r.end(), vsub.begin(), vsub.end());
            for (const auto& [mono, c] : elem.terms())
                cycle.add_term(v, mono, c);
        }
    }
    if (!differential(cycle).is_zero())
        throw std::logic_error("build_phi: assembled element is not a cycle");

    return PhiMap{p, m, n, I, N, std::move(cycle)};
}

std::string phi_to_text(const PhiMap& phi)
{
    std::ostringstream os;
    os << "# phi p=" << phi.p << " m=" << phi.m << " n=" << phi.n << " I=[";
    for (size_t i = 0; i < phi.I.e.size(); ++i) {
        if (i)
            os << ',';
        os << phi.I.e[i];
    }
    os << "] N=" << phi.N << '\n' << koszul_to_text(phi.cycle);
    return os.str();
}

VPoly phi_action(const PhiMap& phi, const Seq& x)
{
    Monomial lead;
    lead.powers = phi.I;
    if (v_topological_degree(x, phi.p) + algebraic_degree(lead, phi.p) > 0)
        throw std::invalid_argument("phi_action: deg(x) + deg(P^I) must be <= 0");
    VPoly base = pi_action(phi.I, x, phi.p);
    VPoly shifted;
    shifted.p = base.p;
    for (const auto& [mono, c] : base.terms) {
        Seq s = mono;
        s.set(0, s.get(0) + phi.N);
        shifted.add(s, c);
    }
    return shifted;
}

VPoly class_action(const KoszulElement& cycle, const Seq& x)
{
    const uint32_t p = cycle.p();
    const int m = cycle.m();
    VPoly out;
    out.p = p;
    for (const auto& [term, coeff] : cycle.terms()) {
        if (!term.mono.qs.empty())
            continue;  // dies in the exterior closure
        VPoly part = pi_action(term.mono.powers, x, p);
        for (const auto& [mono, c] : part.terms) {
            if (int(mono.support_end()) > m + 1)
                continue;  // v-variables beyond v_m are killed
            Seq s = mono;
            for (int i = 0; i <= m; ++i)
                if (term.v.r[size_t(i)])
                    s.set(size_t(i), s.get(size_t(i)) + term.v.r[size_t(i)]);
            out.add(s, uint32_t(uint64_t(c) * coeff % p));
        }
    }
    return out;
}

namespace {

/* Exponent vectors (e_1..e_len) with sum_j e_j (2p^j - 2) = deg, ascending. */
std::vector<ExponentSeq> monomials_of_degree(uint32_t p, int len, int64_t deg)
{
    std::vector<ExponentSeq> out;
    if (deg < 0)
        return out;
    if (len == 0) {
        if (deg == 0)
            out.emplace_back();
        return out;
    }
    std::vector<int32_t> cur(size_t(len), 0);
    auto rec = [&](auto&& self, int j, int64_t rem) -> void {
        if (j > len) {
            if (rem == 0)
                out.emplace_back(cur);
            return;
        }
        int64_t unit = 2 * ipow(p, j) - 2;
        for (int64_t e = 0; unit * e <= rem; ++e) {
            cur[size_t(j - 1)] = int32_t(e);
            self(self, j + 1, rem - unit * e);
        }
        cur[size_t(j - 1)] = 0;
    };
    rec(rec, 1, deg);
    std::sort(out.begin(), out.end());
    return out;
}

std::string entry_text(const SurjEntry& e)
{
    if (e.scalar == 0)
        return "0";
    if (e.v0_power == 0)
        return std::to_string(e.scalar);
    std::ostringstream os;
    if (e.scalar != 1)
        os << e.scalar << '*';
    os << "v0^" << e.v0_power;
    return os.str();
}

}  // namespace

SurjReport surjectivity_matrix(uint32_t p, int m, int n, int64_t D, int64_t k, int jobs)
{
    if (m < 0 || n < 0 || m > n)
        throw std::invalid_argument("surjectivity_matrix: need 0 <= m <= n");
    if (D % 2 != 0)
        throw std::invalid_argument("surjectivity_matrix: D must be even");

    SurjReport report;
    report.p = p;
    report.m = m;
    report.n = n;
    report.D = D;
    report.k = k;

    /* M ordered by degree c, then lexicographically on (I, J) */
    for (int64_t c = 0; c <= k; ++c) {
        auto is = monomials_of_degree(p, n, c);
        if (is.empty())
            continue;
        auto js = monomials_of_degree(p, m, c + D);
        for (const auto& I : is)
            for (const auto& J : js)
                report.index.emplace_back(I, J);
    }
    const size_t dim = report.index.size();
    report.entries.assign(dim, std::vector<SurjEntry>(dim));
    report.phi_N.assign(dim, 0);

    std::map<ExponentSeq, PhiMap> phis;
    for (const auto& [I, J] : report.index)
        if (!phis.count(I))
            phis.emplace(I, build_phi(p, m, n, I));
    for (size_t q = 0; q < dim; ++q)
        report.phi_N[q] = phis.at(report.index[q].first).N;

    std::map<std::pair<ExponentSeq, ExponentSeq>, size_t> row_of;
    for (size_t r = 0; r < dim; ++r)
        row_of.emplace(report.index[r], r);

    parallel_for(dim, jobs, [&](size_t q) {
        const auto& [I, J] = report.index[q];
        const PhiMap& phi = phis.at(I);
        ExponentSeq last_input;
        bool seen_any = false;
        for (size_t ri = 0; ri < dim; ++ri) {
            const auto& inp = report.index[ri].first;
            if (seen_any && inp == last_input)
                continue;  // image already distributed for this input monomial
            seen_any = true;
            last_input = inp;

            Seq x;
            for (size_t j = 0; j < inp.e.size(); ++j)
                x.set(j + 1, inp.e[j]);
            VPoly img = class_action(phi.cycle, x);
            for (const auto& [mono, cc] : img.terms) {
                int64_t a = mono.get(0);
                ExponentSeq jp;
                for (int i = 1; i <= m; ++i)
                    if (mono.get(size_t(i)))
                        jp.set(size_t(i), mono.get(size_t(i)));
                for (size_t j = 0; j < J.e.size(); ++j)
                    jp.set(j + 1, jp.get(j + 1) + J.e[j]);
                auto it = row_of.find(std::make_pair(inp, jp));
                if (it == row_of.end())
                    throw std::logic_error("surjectivity_matrix: image misses the Hom basis");
                SurjEntry& cell = report.entries[it->second][q];
                if (cell.scalar != 0 && cell.v0_power != a)
                    throw std::logic_error("surjectivity_matrix: mixed v0-powers in one entry");
                cell.scalar = uint32_t((cell.scalar + cc) % p);
                cell.v0_power = a;
            }
        }
    });

    report.pass = true;
    for (size_t q = 0; q < dim && report.pass; ++q) {
        for (size_t r = 0; r < q; ++r)
            if (report.entries[r][q].scalar != 0) {
                report.pass = false;
                report.note = "nonzero entry above the diagonal";
                break;
            }
        const SurjEntry& diag = report.entries[q][q];
        if (report.pass && diag.scalar != 1) {
            report.pass = false;
            report.note = "diagonal entry is not a unit v0-power";
        }
    }
    return report;
}

std::string surj_to_csv(const SurjReport& report)
{
    std::ostringstream os;
    os << "# surjectivity p=" << report.p << " m=" << report.m << " n=" << report.n
       << " D=" << report.D << " k=" << report.k << '\n';
    auto label = [](const std::pair<ExponentSeq, ExponentSeq>& ix) {
        std::ostringstream ls;
        ls << "I[";
        for (size_t i = 0; i < ix.first.e.size(); ++i) {
            if (i)
                ls << ';';
            ls << ix.first.e[i];
        }
        ls << "]J[";
        for (size_t i = 0; i < ix.second.e.size(); ++i) {
            if (i)
                ls << ';';
            ls << ix.second.e[i];
        }
        ls << ']';
        return ls.str();
    };
    os << "row";
    for (size_t q = 0; q < report.index.size(); ++q)
        os << ',' << label(report.index[q]);
    os << '\n';
    for (size_t r = 0; r < report.index.size(); ++r) {
        os << label(report.index[r]);
        for (size_t q = 0; q < report.index.size(); ++q)
            os << ',' << entry_text(report.entries[r][q]);
        os << '\n';
    }
    os << "# verdict: " << (report.pass ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace steenrod
