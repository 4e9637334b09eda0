#include "steenrod/milnor.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace steenrod {

ExponentSeq::ExponentSeq(std::vector<int32_t> entries) : e(std::move(entries))
{
    for (int32_t v : e)
        if (v < 0)
            throw std::invalid_argument("ExponentSeq: negative exponent");
    while (!e.empty() && e.back() == 0)
        e.pop_back();
}

int32_t ExponentSeq::get(size_t idx1) const
{
    if (idx1 == 0)
        throw std::invalid_argument("ExponentSeq is 1-indexed");
    return idx1 <= e.size() ? e[idx1 - 1] : 0;
}

void ExponentSeq::set(size_t idx1, int32_t value)
{
    if (idx1 == 0)
        throw std::invalid_argument("ExponentSeq is 1-indexed");
    if (value < 0)
        throw std::invalid_argument("ExponentSeq: negative exponent");
    if (idx1 > e.size()) {
        if (value == 0)
            return;
        e.resize(idx1, 0);
    }
    e[idx1 - 1] = value;
    while (!e.empty() && e.back() == 0)
        e.pop_back();
}

int64_t ExponentSeq::sum() const
{
    int64_t s = 0;
    for (int32_t v : e)
        s += v;
    return s;
}

int QSet::count() const
{
    return std::popcount(bits);
}

int QSet::count_below(int j) const
{
    if (j <= 0)
        return 0;
    if (j >= 64)
        return count();
    return std::popcount(bits & ((uint64_t(1) << j) - 1));
}

std::vector<int> QSet::indices() const
{
    std::vector<int> out;
    for (int j = 0; j < 64; ++j)
        if (bits >> j & 1)
            out.push_back(j);
    return out;
}

QSet QSet::of(std::initializer_list<int> js)
{
    QSet q;
    for (int j : js) {
        if (j < 0 || j >= 64)
            throw std::invalid_argument("QSet index out of range");
        q.bits |= uint64_t(1) << j;
    }
    return q;
}

namespace {

int64_t ipow(int64_t base, int e)
{
    int64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

}  // namespace

int64_t algebraic_degree(const Monomial& m, uint32_t p)
{
    int64_t d = 0;
    for (size_t j = 1; j <= m.powers.max_index(); ++j)
        d -= (2 * ipow(p, int(j)) - 2) * m.powers.get(j);
    for (int j : m.qs.indices())
        d -= 2 * ipow(p, j) - 1;
    return d;
}

int64_t weight(const Monomial& m, uint32_t p)
{
    int64_t w = 0;
    for (size_t j = 1; j <= m.powers.max_index(); ++j)
        w += 2 * ipow(p, int(j)) * m.powers.get(j);
    for (int j : m.qs.indices())
        w += 2 * ipow(p, j);
    return w;
}

int64_t mixed_weight(const Monomial& m, uint32_t p, int ell)
{
    if (ell < 1)
        throw std::invalid_argument("mixed_weight: ell must be >= 1");
    int64_t w = 0;
    for (size_t j = 1; j <= m.powers.max_index(); ++j) {
        int64_t unit = int64_t(j) < ell ? 2 * ipow(p, int(j)) : 2 * ipow(p, ell);
        w += unit * m.powers.get(j);
    }
    return w;
}

bool in_quotient_basis(const Monomial& m, int n)
{
    if (n < 0)
        return true;
    if (n >= 63)
        return m.qs.empty();
    return (m.qs.bits & ((uint64_t(1) << (n + 1)) - 1)) == 0;
}

std::string monomial_to_text(const Monomial& m)
{
    if (m.is_unit())
        return "1";
    std::ostringstream os;
    if (!m.powers.is_zero()) {
        os << "P[";
        for (size_t i = 0; i < m.powers.e.size(); ++i) {
            if (i)
                os << ',';
            os << m.powers.e[i];
        }
        os << ']';
    }
    if (!m.qs.empty()) {
        os << "Q{";
        auto idx = m.qs.indices();
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i)
                os << ',';
            os << idx[i];
        }
        os << '}';
    }
    return os.str();
}

namespace {

std::vector<int32_t> parse_int_list(std::string_view s, size_t& pos, char close)
{
    std::vector<int32_t> out;
    if (pos < s.size() && s[pos] == close) {  // empty list
        ++pos;
        return out;
    }
    while (true) {
        int32_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), value);
        if (ec != std::errc())
            throw std::invalid_argument("parse_monomial: expected integer");
        pos = size_t(ptr - s.data());
        out.push_back(value);
        if (pos >= s.size())
            throw std::invalid_argument("parse_monomial: unterminated list");
        if (s[pos] == ',') {
            ++pos;
            continue;
        }
        if (s[pos] == close) {
            ++pos;
            return out;
        }
        throw std::invalid_argument("parse_monomial: bad list separator");
    }
}

}  // namespace

Monomial parse_monomial(std::string_view text)
{
    Monomial m;
    size_t pos = 0;
    if (text == "1")
        return m;
    if (pos < text.size() && text[pos] == 'P') {
        ++pos;
        if (pos >= text.size() || text[pos] != '[')
            throw std::invalid_argument("parse_monomial: expected [");
        ++pos;
        m.powers = ExponentSeq(parse_int_list(text, pos, ']'));
    }
    if (pos < text.size() && text[pos] == 'Q') {
        ++pos;
        if (pos >= text.size() || text[pos] != '{')
            throw std::invalid_argument("parse_monomial: expected {");
        ++pos;
        auto idx = parse_int_list(text, pos, '}');
        int prev = -1;
        for (int32_t j : idx) {
            if (j <= prev)
                throw std::invalid_argument("parse_monomial: Q-indices must increase");
            prev = j;
            m.qs.bits |= uint64_t(1) << j;
        }
    }
    if (pos != text.size())
        throw std::invalid_argument("parse_monomial: trailing input");
    return m;
}

Element::Element(uint32_t p, int n) : p_(p), n_(n)
{
    if (!is_prime(p))
        throw std::invalid_argument("Element: modulus must be prime");
    if (n < 0)
        throw std::invalid_argument("Element: truncation level must be >= 0");
}

Element Element::monomial(uint32_t p, int n, const Monomial& m, uint32_t coeff)
{
    Element x(p, n);
    x.add_term(m, coeff);
    return x;
}

void Element::add_term(const Monomial& m, uint32_t coeff)
{
    coeff %= p_;
    if (coeff == 0)
        return;
    if (!in_quotient_basis(m, n_))
        throw std::invalid_argument("Element: monomial has a Q-index <= n");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
        return;
    }
    it->second = (it->second + coeff) % p_;
    if (it->second == 0)
        terms_.erase(it);
}

void Element::add(const Element& other, uint32_t scale)
{
    if (other.p_ != p_ || other.n_ != n_)
        throw std::invalid_argument("Element::add: mixed (p, n)");
    for (const auto& [m, c] : other.terms_)
        add_term(m, uint32_t(uint64_t(c) * scale % p_));
}

Element Element::negated() const
{
    Element out(p_, n_);
    for (const auto& [m, c] : terms_)
        out.add_term(m, p_ - c);
    return out;
}

std::string element_to_text(const Element& x)
{
    if (x.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        if (!first)
            os << " + ";
        first = false;
        if (c != 1)
            os << c << '*';
        os << monomial_to_text(m);
    }
    return os.str();
}

namespace {

/* Shared core of the two Q-action entry points.  For k <= n the quotient
 * kills the P^I Q_k term and every target index <= n; for k > n the full
 * Milnor formula applies. */
Element q_act(int k, const Element& x, bool full)
{
    const uint32_t p = x.p();
    const int n = x.n();
    Element out(p, n);
    for (const auto& [mono, c] : x.terms()) {
        if (full && k > n && !mono.qs.contains(k)) {
            Monomial t = mono;
            t.qs.bits |= uint64_t(1) << k;
            int sign = mono.qs.count_below(k) & 1;
            out.add_term(t, sign ? uint32_t(uint64_t(c) * (p - 1) % p) : c);
        }
        int64_t pk = ipow(p, k);
        size_t j_start = k <= n ? size_t(n + 1 - k) : 1;
        for (size_t j = j_start; j <= mono.powers.max_index(); ++j) {
            if (mono.powers.get(j) < pk)
                continue;
            int target = k + int(j);
            if (target >= 64 || mono.qs.contains(target))
                continue;
            Monomial t = mono;
            t.powers.set(j, int32_t(mono.powers.get(j) - pk));
            t.qs.bits |= uint64_t(1) << target;
            int sign = mono.qs.count_below(target) & 1;
            out.add_term(t, sign ? uint32_t(uint64_t(c) * (p - 1) % p) : c);
        }
    }
    return out;
}

}  // namespace

Element q_left_action(int k, const Element& x)
{
    if (k < 0 || k > x.n())
        throw std::invalid_argument("q_left_action: k must be in [0, n]");
    return q_act(k, x, false);
}

Element q_left_action_any(int k, const Element& x)
{
    if (k < 0)
        throw std::invalid_argument("q_left_action_any: k must be >= 0");
    return q_act(k, x, true);
}

namespace {

struct EnumState {
    uint32_t p;
    int n;
    std::vector<Monomial>* out;
};

/* P-exponents, position j descending so the weight budget shrinks fast.
 * rem is even by construction at every call with a solution. */
void enumerate_powers(const EnumState& st, int j, int64_t rem, ExponentSeq& acc, const QSet& qs)
{
    if (rem == 0) {
        Monomial m;
        m.powers = acc;
        m.qs = qs;
        st.out->push_back(std::move(m));
        return;
    }
    if (j < 1)
        return;
    int64_t unit = 2 * ipow(st.p, j);
    if (unit > rem) {
        enumerate_powers(st, j - 1, rem, acc, qs);
        return;
    }
    for (int64_t i = rem / unit; i >= 1; --i) {
        acc.set(size_t(j), int32_t(i));
        enumerate_powers(st, j - 1, rem - unit * i, acc, qs);
        acc.set(size_t(j), 0);
    }
    enumerate_powers(st, j - 1, rem, acc, qs);
}

/* Q-subset with exact remaining weight consumed by the P-part afterwards. */
void enumerate_qs(const EnumState& st, const std::vector<int>& qcand, size_t idx, int64_t rem, QSet qs,
                  ExponentSeq& acc)
{
    if (idx == qcand.size()) {
        int jmax = 0;
        while (2 * ipow(st.p, jmax + 1) <= rem)
            ++jmax;
        enumerate_powers(st, jmax, rem, acc, qs);
        return;
    }
    enumerate_qs(st, qcand, idx + 1, rem, qs, acc);
    int64_t qw = 2 * ipow(st.p, qcand[idx]);
    if (qw <= rem) {
        QSet with = qs;
        with.bits |= uint64_t(1) << qcand[idx];
        enumerate_qs(st, qcand, idx + 1, rem - qw, with, acc);
    }
}

}  // namespace

std::vector<Monomial> enumerate_basis(uint32_t p, int n, int64_t w, std::optional<int64_t> t)
{
    std::vector<Monomial> out;
    if (w < 0)
        return out;
    if (w == 0) {
        out.push_back(Monomial{});
    }
    else {
        std::vector<int> qcand;
        for (int j = n + 1; 2 * ipow(p, j) <= w && j < 64; ++j)
            qcand.push_back(j);
        EnumState st{p, n, &out};
        ExponentSeq acc;
        enumerate_qs(st, qcand, 0, w, QSet{}, acc);
    }
    std::sort(out.begin(), out.end());
    if (t) {
        std::erase_if(out, [&](const Monomial& m) { return algebraic_degree(m, p) != *t; });
    }
    return out;
}

const std::vector<Monomial>* DegreeTable::bucket(int64_t t) const
{
    auto it = buckets.find(t);
    return it == buckets.end() ? nullptr : &it->second;
}

std::shared_ptr<const DegreeTable> basis_by_degree(uint32_t p, int n, int64_t w)
{
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, int, int64_t>, std::shared_ptr<const DegreeTable>> cache;
    std::scoped_lock lock(mu);
    auto key = std::make_tuple(p, n, w);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    auto table = std::make_shared<DegreeTable>();
    for (const auto& m : enumerate_basis(p, n, w)) {
        table->buckets[algebraic_degree(m, p)].push_back(m);
        ++table->total;
    }
    cache.emplace(key, table);
    return table;
}

FpMatrix qk_matrix(uint32_t p, int n, int k, int64_t w, int64_t t)
{
    auto table = basis_by_degree(p, n, w);
    const auto* src = table->bucket(t);
    const auto* dst = table->bucket(t - (2 * ipow(p, k) - 1));
    size_t nsrc = src ? src->size() : 0;
    size_t ndst = dst ? dst->size() : 0;
    FpMatrix m(p, ndst, nsrc);
    if (!src || !dst)
        return m;
    std::map<Monomial, size_t> index;
    for (size_t i = 0; i < dst->size(); ++i)
        index.emplace((*dst)[i], i);
    for (size_t c = 0; c < src->size(); ++c) {
        Element img = q_left_action(k, Element::monomial(p, n, (*src)[c]));
        for (const auto& [mono, coeff] : img.terms()) {
            auto it = index.find(mono);
            if (it == index.end())
                throw std::logic_error("qk_matrix: image outside the target slice");
            m.set(it->second, c, coeff);
        }
    }
    return m;
}

}  // namespace steenrod
