#include "steenrod/koszul.hpp"

#include <algorithm>
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

int64_t VMonomial::adams() const
{
    int64_t s = 0;
    for (int32_t x : r)
        s += x;
    return s;
}

int64_t v_algebraic_degree(const VMonomial& v, uint32_t p)
{
    int64_t t = 0;
    for (size_t i = 0; i < v.r.size(); ++i)
        t += int64_t(v.r[i]) * (2 * ipow(p, int(i)) - 1);
    return t;
}

KoszulElement::KoszulElement(uint32_t p, int m, int n) : p_(p), m_(m), n_(n)
{
    if (!is_prime(p))
        throw std::invalid_argument("KoszulElement: modulus must be prime");
    if (m < 0 || n < 0 || m > n)
        throw std::invalid_argument("KoszulElement: need 0 <= m <= n");
}

KoszulElement KoszulElement::term(uint32_t p, int m, int n, const VMonomial& v, const Monomial& mono,
                                  uint32_t coeff)
{
    KoszulElement x(p, m, n);
    x.add_term(v, mono, coeff);
    return x;
}

std::optional<Tridegree> KoszulElement::tridegree() const
{
    if (terms_.empty())
        return std::nullopt;
    const auto& [term, c] = *terms_.begin();
    Tridegree tri;
    tri.s = int32_t(term.v.adams());
    tri.t = v_algebraic_degree(term.v, p_) + algebraic_degree(term.mono, p_);
    tri.w = weight(term.mono, p_);
    return tri;
}

void KoszulElement::add_term(const VMonomial& v, const Monomial& mono, uint32_t coeff)
{
    coeff %= p_;
    if (coeff == 0)
        return;
    if (v.r.size() != size_t(m_ + 1))
        throw std::invalid_argument("KoszulElement: v-exponent vector must have length m+1");
    for (int32_t e : v.r)
        if (e < 0)
            throw std::invalid_argument("KoszulElement: negative v-exponent");
    if (!in_quotient_basis(mono, n_))
        throw std::invalid_argument("KoszulElement: monomial has a Q-index <= n");
    if (auto tri = tridegree()) {
        Tridegree mine{int32_t(v.adams()),
                       v_algebraic_degree(v, p_) + algebraic_degree(mono, p_), weight(mono, p_)};
        if (mine != *tri)
            throw std::invalid_argument("KoszulElement: inhomogeneous sum rejected");
    }
    KoszulTerm key{v, mono};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
        return;
    }
    it->second = (it->second + coeff) % p_;
    if (it->second == 0)
        terms_.erase(it);
}

void KoszulElement::add(const KoszulElement& other, uint32_t scale)
{
    if (other.p_ != p_ || other.m_ != m_ || other.n_ != n_)
        throw std::invalid_argument("KoszulElement::add: mixed (p, m, n)");
    for (const auto& [term, c] : other.terms_)
        add_term(term.v, term.mono, uint32_t(uint64_t(c) * scale % p_));
}

KoszulElement KoszulElement::times_v(int i) const
{
    if (i < 0 || i > m_)
        throw std::invalid_argument("KoszulElement::times_v: index out of range");
    KoszulElement out(p_, m_, n_);
    for (const auto& [term, c] : terms_) {
        VMonomial v = term.v;
        ++v.r[i];
        out.add_term(v, term.mono, c);
    }
    return out;
}

KoszulElement differential(const KoszulElement& x)
{
    KoszulElement out(x.p(), x.m(), x.n());
    for (const auto& [term, c] : x.terms()) {
        for (int i = 0; i <= x.m(); ++i) {
            Element qi = q_left_action(i, Element::monomial(x.p(), x.n(), term.mono, c));
            if (qi.is_zero())
                continue;
            VMonomial v = term.v;
            ++v.r[i];
            for (const auto& [mono, cc] : qi.terms())
                out.add_term(v, mono, cc);
        }
    }
    return out;
}

std::string koszul_to_text(const KoszulElement& x)
{
    if (x.is_zero())
        return "0";
    /* v-monomials in descending lex order (leading v_0-powers first),
     * monomials ascending within a v-group */
    std::map<VMonomial, std::vector<std::pair<Monomial, uint32_t>>> groups;
    for (const auto& [term, c] : x.terms())
        groups[term.v].emplace_back(term.mono, c);
    std::ostringstream os;
    bool first = true;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        std::string vtxt;
        {
            std::ostringstream vs;
            vs << "v[";
            for (size_t i = 0; i < it->first.r.size(); ++i) {
                if (i)
                    vs << ',';
                vs << it->first.r[i];
            }
            vs << ']';
            vtxt = vs.str();
        }
        for (const auto& [mono, c] : it->second) {
            if (!first)
                os << " + ";
            first = false;
            if (c != 1)
                os << c << '*';
            os << vtxt << '*' << monomial_to_text(mono);
        }
    }
    return os.str();
}

KoszulElement parse_koszul(uint32_t p, int m, int n, std::string_view text)
{
    KoszulElement out(p, m, n);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
    };
    skip_ws();
    if (text.substr(pos) == "0")
        return out;
    while (pos < text.size()) {
        skip_ws();
        uint32_t coeff = 1;
        if (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            uint64_t c = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
                c = c * 10 + uint64_t(text[pos++] - '0');
            coeff = uint32_t(c % p);
            skip_ws();
            if (pos >= text.size() || text[pos] != '*')
                throw std::invalid_argument("parse_koszul: expected * after coefficient");
            ++pos;
            skip_ws();
        }
        if (pos >= text.size() || text[pos] != 'v')
            throw std::invalid_argument("parse_koszul: expected v-monomial");
        ++pos;
        if (pos >= text.size() || text[pos] != '[')
            throw std::invalid_argument("parse_koszul: expected [");
        size_t close = text.find(']', pos);
        if (close == std::string_view::npos)
            throw std::invalid_argument("parse_koszul: unterminated v-monomial");
        VMonomial v;
        {
            std::string list(text.substr(pos + 1, close - pos - 1));
            std::istringstream ls(list);
            std::string item;
            while (std::getline(ls, item, ','))
                v.r.push_back(int32_t(std::stol(item)));
        }
        pos = close + 1;
        skip_ws();
        if (pos >= text.size() || text[pos] != '*')
            throw std::invalid_argument("parse_koszul: expected * after v-monomial");
        ++pos;
        skip_ws();
        size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '+')
            ++end;
        Monomial mono = parse_monomial(text.substr(pos, end - pos));
        pos = end;
        out.add_term(v, mono, coeff);
        skip_ws();
        if (pos == text.size())
            break;
        if (text[pos] != '+')
            throw std::invalid_argument("parse_koszul: expected +");
        ++pos;
    }
    return out;
}

std::vector<VMonomial> v_monomials(int m, int32_t s)
{
    std::vector<VMonomial> out;
    if (s < 0)
        return out;
    VMonomial cur;
    cur.r.assign(size_t(m + 1), 0);
    /* ascending lex on (r_0,...,r_m) */
    auto rec = [&](auto&& self, int pos, int32_t rem) -> void {
        if (pos == m) {
            cur.r[size_t(pos)] = rem;
            out.push_back(cur);
            cur.r[size_t(pos)] = 0;
            return;
        }
        for (int32_t v = 0; v <= rem; ++v) {
            cur.r[size_t(pos)] = v;
            self(self, pos + 1, rem - v);
        }
        cur.r[size_t(pos)] = 0;
    };
    rec(rec, 0, s);
    std::sort(out.begin(), out.end());
    return out;
}

KoszulContext::KoszulContext(uint32_t p, int m, int n) : p_(p), m_(m), n_(n)
{
    if (!is_prime(p))
        throw std::invalid_argument("KoszulContext: modulus must be prime");
    if (m < 0 || n < 0 || m > n)
        throw std::invalid_argument("KoszulContext: need 0 <= m <= n");
}

std::shared_ptr<const SliceBasis> KoszulContext::slice_basis(const Tridegree& tri)
{
    {
        std::scoped_lock lock(mu_);
        auto it = bases_.find(tri);
        if (it != bases_.end())
            return it->second;
    }
    auto basis = std::make_shared<SliceBasis>();
    basis->tri = tri;
    if (tri.s >= 0 && tri.w >= 0) {
        auto table = basis_by_degree(p_, n_, tri.w);
        for (const auto& v : v_monomials(m_, tri.s)) {
            const auto* bucket = table->bucket(tri.t - v_algebraic_degree(v, p_));
            if (!bucket)
                continue;
            for (const auto& mono : *bucket)
                basis->items.push_back(KoszulTerm{v, mono});
        }
        for (size_t i = 0; i < basis->items.size(); ++i)
            basis->index.emplace(basis->items[i], i);
    }
    std::scoped_lock lock(mu_);
    auto [it, inserted] = bases_.emplace(tri, basis);
    return it->second;
}

std::shared_ptr<const FpMatrix> KoszulContext::differential_matrix(const Tridegree& tri)
{
    {
        std::scoped_lock lock(mu_);
        auto it = dmats_.find(tri);
        if (it != dmats_.end())
            return it->second;
    }
    auto src = slice_basis(tri);
    auto dst = slice_basis(Tridegree{tri.s + 1, tri.t, tri.w});
    auto mat = std::make_shared<FpMatrix>(p_, dst->size(), src->size());
    for (size_t c = 0; c < src->size(); ++c) {
        const auto& term = src->items[c];
        for (int i = 0; i <= m_; ++i) {
            Element qi = q_left_action(i, Element::monomial(p_, n_, term.mono));
            if (qi.is_zero())
                continue;
            VMonomial v = term.v;
            ++v.r[i];
            for (const auto& [mono, cc] : qi.terms()) {
                auto it = dst->index.find(KoszulTerm{v, mono});
                if (it == dst->index.end())
                    throw std::logic_error("differential image misses the target slice");
                mat->set(it->second, c, (mat->at(it->second, c) + cc) % p_);
            }
        }
    }
    std::scoped_lock lock(mu_);
    auto [it, inserted] = dmats_.emplace(tri, mat);
    return it->second;
}

Slice KoszulContext::slice(const Tridegree& tri)
{
    Slice s;
    s.tri = tri;
    s.basis = slice_basis(tri);
    s.differential_out = differential_matrix(tri);
    s.differential_in = differential_matrix(Tridegree{tri.s - 1, tri.t, tri.w});
    return s;
}

size_t KoszulContext::rank_out(const Tridegree& tri)
{
    if (tri.s < 0)
        return 0;
    {
        std::scoped_lock lock(mu_);
        auto it = ranks_.find(tri);
        if (it != ranks_.end())
            return it->second;
    }
    size_t r = rank(*differential_matrix(tri));
    std::scoped_lock lock(mu_);
    ranks_.emplace(tri, r);
    return r;
}

size_t KoszulContext::ext_dimension(const Tridegree& tri)
{
    auto basis = slice_basis(tri);
    if (basis->size() == 0)
        return 0;
    size_t cycles = basis->size() - rank_out(tri);
    size_t boundaries = rank_out(Tridegree{tri.s - 1, tri.t, tri.w});
    return cycles - boundaries;
}

std::vector<FpVec> KoszulContext::boundary_vectors(const Tridegree& tri)
{
    std::vector<FpVec> out;
    if (tri.s <= 0)
        return out;
    auto din = differential_matrix(Tridegree{tri.s - 1, tri.t, tri.w});
    for (size_t c = 0; c < din->cols(); ++c) {
        FpVec v(din->rows(), 0);
        bool nonzero = false;
        for (size_t r = 0; r < din->rows(); ++r) {
            v[r] = din->at(r, c);
            nonzero |= v[r] != 0;
        }
        if (nonzero)
            out.push_back(std::move(v));
    }
    return out;
}

KoszulElement KoszulContext::from_vector(const SliceBasis& basis, const FpVec& vec) const
{
    KoszulElement x(p_, m_, n_);
    for (size_t i = 0; i < vec.size(); ++i)
        if (vec[i])
            x.add_term(basis.items[i].v, basis.items[i].mono, vec[i]);
    return x;
}

FpVec KoszulContext::to_vector(const SliceBasis& basis, const KoszulElement& x) const
{
    FpVec v(basis.size(), 0);
    for (const auto& [term, c] : x.terms()) {
        auto it = basis.index.find(term);
        if (it == basis.index.end())
            throw std::invalid_argument("to_vector: element lies outside the slice");
        v[it->second] = c;
    }
    return v;
}

void read_valuation(uint32_t p, int n, const SliceBasis& basis, const FpVec& vec,
                    std::vector<int32_t>& r_seq, Element& leading)
{
    /* basis items are sorted by v ascending, so the first nonzero coordinate
     * carries the lex-least v-exponent tuple over the support; reading off
     * the successive quotients x_1, ..., x_{m+1} gives exactly that tuple */
    r_seq.clear();
    leading = Element(p, n);
    size_t lead = vec.size();
    for (size_t i = 0; i < vec.size(); ++i)
        if (vec[i]) {
            lead = i;
            break;
        }
    if (lead == vec.size())
        return;
    const VMonomial& v0 = basis.items[lead].v;
    r_seq = v0.r;
    for (size_t i = lead; i < vec.size(); ++i) {
        if (!vec[i])
            continue;
        if (basis.items[i].v == v0)
            leading.add_term(basis.items[i].mono, vec[i]);
    }
}

ExtBasis KoszulContext::ext_basis(const Tridegree& tri)
{
    ExtBasis out;
    auto basis = slice_basis(tri);
    if (basis->size() == 0)
        return out;
    auto dout = differential_matrix(tri);
    auto cycles = kernel_basis(*dout);

    IncrementalRref span(p_);
    for (auto& b : boundary_vectors(tri))
        span.add(std::move(b));
    size_t boundary_rank = span.rank();

    for (auto& z : cycles) {
        if (!span.add(z))
            continue;
        ExtClass cls{tri, from_vector(*basis, z), {}, Element(p_, n_)};
        read_valuation(p_, n_, *basis, z, cls.r_seq, cls.leading);
        out.classes.push_back(std::move(cls));
    }
    out.dimension = span.rank() - boundary_rank;
    return out;
}

ExtClass KoszulContext::normal_representation(const ExtClass& cls)
{
    auto tri = cls.tri;
    auto basis = slice_basis(tri);
    FpVec vec = to_vector(*basis, cls.cycle);
    auto boundaries = boundary_vectors(tri);

    /* contiguous runs of equal v-exponent = valuation blocks, worst first */
    std::vector<std::vector<size_t>> blocks;
    for (size_t i = 0; i < basis->items.size(); ++i) {
        if (i == 0 || !(basis->items[i].v == basis->items[i - 1].v))
            blocks.emplace_back();
        blocks.back().push_back(i);
    }

    FpVec best = valuation_maximize(p_, vec, boundaries, blocks);
    if (std::all_of(best.begin(), best.end(), [](uint32_t e) { return e == 0; }))
        throw std::invalid_argument("normal_representation: cycle is a boundary");

    ExtClass out{tri, from_vector(*basis, best), {}, Element(p_, n_)};
    read_valuation(p_, n_, *basis, best, out.r_seq, out.leading);
    return out;
}

}  // namespace steenrod
