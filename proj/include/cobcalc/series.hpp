#pragma once

// Sparse truncated graded multivariate Laurent/power series over Q.
//
// A series lives in a Ring: an ordered variable table plus truncation
// bounds. Positive-weight variables contribute weight*exponent to the
// "plus" degree, negative-weight ones (the ambient b_i) contribute
// |weight|*exponent to the b-weight. A term is retained iff
//   plus degree <= trunc_plus, b-weight <= trunc_minus, and every capped
//   variable stays within its cap.
// Only Laurent-flagged variables may carry negative exponents, and never
// below their floor (going below is an error, not a truncation).
//
// Both the b-weight and per-variable caps on power-series variables are
// additive non-negative filtrations, so truncating by them is exact.
// The plus degree is exact as long as no Laurent variable goes negative;
// rings that host Laurent computations use a large trunc_plus and rely on
// caps plus homogeneity instead.

#include "cobcalc/scalar.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cobcalc {

inline constexpr std::size_t kMaxVars = 40;

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an exact division fails; carries the offending monomial.
class DivisibilityError : public SeriesError {
public:
    DivisibilityError(const std::string& what, std::string witness)
        : SeriesError(what + " at " + witness), witness_(std::move(witness))
    {
    }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

struct Monomial {
    // Plain exponent sum; leading the comparison makes the default ordering
    // graded lexicographic, which is compatible with multiplication.
    std::int16_t degree = 0;
    std::array<std::int8_t, kMaxVars> exps{};

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

    int operator[](std::size_t i) const { return exps[i]; }

    void set(std::size_t i, int v)
    {
        if (v < -127 || v > 127) {
            throw SeriesError("exponent out of range");
        }
        degree = static_cast<std::int16_t>(degree + v - exps[i]);
        exps[i] = static_cast<std::int8_t>(v);
    }

    bool is_one() const { return degree == 0 && exps == std::array<std::int8_t, kMaxVars>{}; }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial m;
        m.degree = static_cast<std::int16_t>(a.degree + b.degree);
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            int e = a.exps[i] + b.exps[i];
            if (e < -127 || e > 127) {
                throw SeriesError("exponent overflow");
            }
            m.exps[i] = static_cast<std::int8_t>(e);
        }
        return m;
    }

    Monomial inverse() const
    {
        Monomial m;
        m.degree = static_cast<std::int16_t>(-degree);
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            m.exps[i] = static_cast<std::int8_t>(-exps[i]);
        }
        return m;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto e : m.exps) {
            h ^= static_cast<std::uint8_t>(e);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

struct Variable {
    std::string name;
    int weight = 1;
    std::optional<int> laurent_floor;
    std::optional<int> max_exp;

    friend bool operator==(const Variable&, const Variable&) = default;
};

class Ring {
public:
    enum class Admit { ok, truncated, underflow };

    Ring(std::vector<Variable> vars, int trunc_plus, int trunc_minus)
        : vars_(std::move(vars)), trunc_plus_(trunc_plus), trunc_minus_(trunc_minus)
    {
        if (vars_.size() > kMaxVars) {
            throw SeriesError("too many variables");
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (vars_[i].name == vars_[j].name) {
                    throw SeriesError("duplicate variable name " + vars_[i].name);
                }
            }
            if (vars_[i].weight == 0) {
                throw SeriesError("variable weight must be nonzero");
            }
            if (vars_[i].laurent_floor || vars_[i].max_exp) {
                bounded_.push_back(i);
            }
        }
    }

    std::size_t size() const { return vars_.size(); }
    const Variable& var(std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& vars() const { return vars_; }
    int trunc_plus() const { return trunc_plus_; }
    int trunc_minus() const { return trunc_minus_; }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].name == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t index(std::string_view name) const
    {
        auto i = find(name);
        if (!i) {
            throw SeriesError("unknown variable " + std::string(name));
        }
        return *i;
    }

    bool is_laurent(std::size_t i) const { return vars_[i].laurent_floor.has_value(); }

    int deg_plus(const Monomial& m) const
    {
        int d = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].weight > 0) {
                d += vars_[i].weight * m.exps[i];
            }
        }
        return d;
    }

    int b_weight(const Monomial& m) const
    {
        int d = 0;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].weight < 0) {
                d -= vars_[i].weight * m.exps[i];
            }
        }
        return d;
    }

    // Floors and caps only; the two degree bounds are checked by callers
    // that already know the degrees. Caps are ideals, so a capped-away term
    // is dropped before the floors are consulted.
    Admit admit_bounds(const Monomial& m) const
    {
        for (std::size_t i : bounded_) {
            if (vars_[i].max_exp && m.exps[i] > *vars_[i].max_exp) {
                return Admit::truncated;
            }
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            int e = m.exps[i];
            if (e < 0) {
                if (!vars_[i].laurent_floor || e < *vars_[i].laurent_floor) {
                    return Admit::underflow;
                }
            }
        }
        return Admit::ok;
    }

    Admit admit(const Monomial& m) const
    {
        Admit a = admit_bounds(m);
        if (a != Admit::ok) {
            return a;
        }
        if (deg_plus(m) > trunc_plus_ || b_weight(m) > trunc_minus_) {
            return Admit::truncated;
        }
        return Admit::ok;
    }

    friend bool operator==(const Ring& a, const Ring& b)
    {
        return a.vars_ == b.vars_ && a.trunc_plus_ == b.trunc_plus_ && a.trunc_minus_ == b.trunc_minus_;
    }

private:
    std::vector<Variable> vars_;
    int trunc_plus_;
    int trunc_minus_;
    std::vector<std::size_t> bounded_;
};

using RingPtr = std::shared_ptr<const Ring>;

// "b1^2 t^-1"; "1" for the unit monomial.
inline std::string describe_monomial(const Ring& ring, const Monomial& m)
{
    std::string out;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        int e = m[i];
        if (e == 0) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += ring.var(i).name;
        if (e != 1) {
            out += '^' + std::to_string(e);
        }
    }
    return out.empty() ? "1" : out;
}

inline RingPtr make_ring(std::vector<Variable> vars, int trunc_plus, int trunc_minus)
{
    return std::make_shared<const Ring>(std::move(vars), trunc_plus, trunc_minus);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

class Series {
public:
    using Term = std::pair<Monomial, Scalar>;

    explicit Series(RingPtr ring) : ring_(std::move(ring)) {}

    static Series constant(RingPtr ring, const Scalar& c)
    {
        return monomial(std::move(ring), Monomial{}, c);
    }

    static Series monomial(RingPtr ring, const Monomial& m, const Scalar& c)
    {
        Series s(std::move(ring));
        if (c != 0) {
            switch (s.ring_->admit(m)) {
            case Ring::Admit::ok:
                s.terms_.emplace_back(m, c);
                break;
            case Ring::Admit::truncated:
                break;
            case Ring::Admit::underflow:
                throw SeriesError("Laurent floor underflow");
            }
        }
        return s;
    }

    static Series variable(RingPtr ring, std::string_view name, int power = 1)
    {
        Monomial m;
        m.set(ring->index(name), power);
        return monomial(std::move(ring), m, Scalar(1));
    }

    // Combines duplicates, drops zeros and truncated terms.
    static Series from_terms(RingPtr ring, std::vector<Term> terms)
    {
        Series s(std::move(ring));
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        for (auto& t : terms) {
            if (!s.terms_.empty() && s.terms_.back().first == t.first) {
                s.terms_.back().second += t.second;
                continue;
            }
            if (!s.terms_.empty() && s.terms_.back().second == 0) {
                s.terms_.pop_back();
            }
            switch (s.ring_->admit(t.first)) {
            case Ring::Admit::ok:
                s.terms_.push_back(std::move(t));
                break;
            case Ring::Admit::truncated:
                break;
            case Ring::Admit::underflow:
                throw SeriesError("Laurent floor underflow");
            }
        }
        if (!s.terms_.empty() && s.terms_.back().second == 0) {
            s.terms_.pop_back();
        }
        return s;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coefficient(const Monomial& m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& k) { return t.first < k; });
        if (it != terms_.end() && it->first == m) {
            return it->second;
        }
        return 0;
    }

    Scalar constant_term() const { return coefficient(Monomial{}); }

    void check_same_ring(const Series& o) const
    {
        if (!same_ring(ring_, o.ring_)) {
            throw SeriesError("mismatched variable tables or truncation");
        }
    }

    Series operator-() const
    {
        Series r(*this);
        for (auto& t : r.terms_) {
            t.second = -t.second;
        }
        return r;
    }

    Series& operator+=(const Series& o) { return *this = combine(*this, o, 1); }
    Series& operator-=(const Series& o) { return *this = combine(*this, o, -1); }
    Series& operator*=(const Series& o);
    Series& operator*=(const Scalar& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) {
            t.second *= c;
        }
        return *this;
    }

    friend Series operator+(const Series& a, const Series& b) { return combine(a, b, 1); }
    friend Series operator-(const Series& a, const Series& b) { return combine(a, b, -1); }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, const Scalar& c) { return a *= c; }
    friend Series operator*(const Scalar& c, Series a) { return a *= c; }

    friend bool operator==(const Series& a, const Series& b)
    {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

private:
    static Series combine(const Series& a, const Series& b, int sign)
    {
        a.check_same_ring(b);
        Series r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.emplace_back(j->first, sign > 0 ? j->second : Scalar(-j->second));
                ++j;
            } else {
                Scalar c = sign > 0 ? Scalar(i->second + j->second) : Scalar(i->second - j->second);
                if (c != 0) {
                    r.terms_.emplace_back(i->first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        return r;
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

inline Series operator*(const Series& a, const Series& b)
{
    a.check_same_ring(b);
    const Ring& R = *a.ring();
    if (a.is_zero() || b.is_zero()) {
        return Series(a.ring());
    }
    const auto& at = a.terms();
    const auto& bt = b.terms();
    std::vector<int> adp(at.size()), abw(at.size()), bdp(bt.size()), bbw(bt.size());
    for (std::size_t i = 0; i < at.size(); ++i) {
        adp[i] = R.deg_plus(at[i].first);
        abw[i] = R.b_weight(at[i].first);
    }
    // Sort b's indices by plus degree so the inner loop can stop early.
    std::vector<std::size_t> order(bt.size());
    for (std::size_t j = 0; j < bt.size(); ++j) {
        order[j] = j;
        bdp[j] = R.deg_plus(bt[j].first);
        bbw[j] = R.b_weight(bt[j].first);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return bdp[x] < bdp[y]; });

    std::unordered_map<Monomial, Scalar, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(at.size() * bt.size(), 1u << 16));
    Scalar prod;
    const int tp = R.trunc_plus();
    const int tm = R.trunc_minus();
    for (std::size_t i = 0; i < at.size(); ++i) {
        for (std::size_t j : order) {
            if (adp[i] + bdp[j] > tp) {
                break;
            }
            if (abw[i] + bbw[j] > tm) {
                continue;
            }
            Monomial m = at[i].first * bt[j].first;
            switch (R.admit_bounds(m)) {
            case Ring::Admit::ok:
                break;
            case Ring::Admit::truncated:
                continue;
            case Ring::Admit::underflow:
                throw SeriesError("Laurent floor underflow in product");
            }
            mpq_mul(prod.get_mpq_t(), at[i].second.get_mpq_t(), bt[j].second.get_mpq_t());
            auto [it, inserted] = acc.try_emplace(m);
            if (inserted) {
                it->second = prod;
            } else {
                it->second += prod;
            }
        }
    }
    std::vector<Series::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (c != 0) {
            terms.emplace_back(m, std::move(c));
        }
    }
    return Series::from_terms(a.ring(), std::move(terms));
}

inline Series& Series::operator*=(const Series& o) { return *this = *this * o; }

inline Series pow(const Series& f, int n)
{
    if (n < 0) {
        throw SeriesError("pow: negative exponent, use mul_inverse");
    }
    Series result = Series::constant(f.ring(), 1);
    Series base = f;
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        n >>= 1;
        if (n > 0) {
            base *= base;
        }
    }
    return result;
}

// Applies `fn` to every term; terms mapped to nullopt are dropped.
inline Series transform_terms(const Series& f, RingPtr target,
                              const std::function<std::optional<Series::Term>(const Series::Term&)>& fn)
{
    std::vector<Series::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        if (auto r = fn(t)) {
            out.push_back(std::move(*r));
        }
    }
    return Series::from_terms(std::move(target), std::move(out));
}

// Coefficient of var^k as a series in the remaining variables.
inline Series coefficient_of(const Series& f, std::string_view var, int k)
{
    std::size_t idx = f.ring()->index(var);
    return transform_terms(f, f.ring(), [&](const Series::Term& t) -> std::optional<Series::Term> {
        if (t.first[idx] != k) {
            return std::nullopt;
        }
        Series::Term r = t;
        r.first.set(idx, 0);
        return r;
    });
}

// Terms whose exponent in var satisfies pred, unchanged.
inline Series filter_exponent(const Series& f, std::string_view var, const std::function<bool(int)>& pred)
{
    std::size_t idx = f.ring()->index(var);
    return transform_terms(f, f.ring(), [&](const Series::Term& t) -> std::optional<Series::Term> {
        if (!pred(t.first[idx])) {
            return std::nullopt;
        }
        return t;
    });
}

inline int min_exponent(const Series& f, std::string_view var)
{
    std::size_t idx = f.ring()->index(var);
    int m = 127;
    for (const auto& t : f.terms()) {
        m = std::min<int>(m, t.first[idx]);
    }
    return m;
}

inline int max_exponent(const Series& f, std::string_view var)
{
    std::size_t idx = f.ring()->index(var);
    int m = -128;
    for (const auto& t : f.terms()) {
        m = std::max<int>(m, t.first[idx]);
    }
    return m;
}

// Multiplies by var^k by shifting exponents.
inline Series shift(const Series& f, std::string_view var, int k)
{
    std::size_t idx = f.ring()->index(var);
    return transform_terms(f, f.ring(), [&](const Series::Term& t) -> std::optional<Series::Term> {
        Series::Term r = t;
        r.first.set(idx, t.first[idx] + k);
        return r;
    });
}

// f(c * var).
inline Series scale_variable(const Series& f, std::string_view var, const Scalar& c)
{
    std::size_t idx = f.ring()->index(var);
    return transform_terms(f, f.ring(), [&](const Series::Term& t) -> std::optional<Series::Term> {
        int e = t.first[idx];
        Scalar factor = 1;
        Integer num = c.get_num();
        Integer den = c.get_den();
        Integer pn, pd;
        mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        factor = e >= 0 ? Scalar(pn, pd) : Scalar(pd, pn);
        factor.canonicalize();
        return Series::Term{t.first, t.second * factor};
    });
}

// Sets the listed variables to zero (terms containing them vanish).
inline Series set_to_zero(const Series& f, const std::function<bool(std::size_t)>& which)
{
    const Ring& R = *f.ring();
    return transform_terms(f, f.ring(), [&](const Series::Term& t) -> std::optional<Series::Term> {
        for (std::size_t i = 0; i < R.size(); ++i) {
            if (t.first[i] != 0 && which(i)) {
                return std::nullopt;
            }
        }
        return t;
    });
}

inline Series derivative(const Series& f, std::string_view var)
{
    std::size_t idx = f.ring()->index(var);
    return transform_terms(f, f.ring(), [&](const Series::Term& t) -> std::optional<Series::Term> {
        int e = t.first[idx];
        if (e == 0) {
            return std::nullopt;
        }
        Series::Term r{t.first, t.second * e};
        r.first.set(idx, e - 1);
        return r;
    });
}

// Coefficient of var^-1, i.e. the residue of f d(var).
inline Series residue(const Series& f, std::string_view var) { return coefficient_of(f, var, -1); }

// (terms with var-degree <= 0, terms with var-degree > 0).
inline std::pair<Series, Series> split_t_parts(const Series& f, std::string_view var = "t")
{
    return {filter_exponent(f, var, [](int e) { return e <= 0; }),
            filter_exponent(f, var, [](int e) { return e > 0; })};
}

// Moves f into another ring by variable name (optionally renamed). Terms
// the target truncates are dropped; a variable missing from the target
// must not occur.
inline Series rebase(const Series& f, RingPtr target, const std::map<std::string, std::string>& renames = {})
{
    const Ring& src = *f.ring();
    std::vector<std::optional<std::size_t>> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        auto it = renames.find(src.var(i).name);
        const std::string& name = it == renames.end() ? src.var(i).name : it->second;
        map[i] = target->find(name);
    }
    std::vector<Series::Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < src.size(); ++i) {
            int e = t.first[i];
            if (e == 0) {
                continue;
            }
            if (!map[i]) {
                throw SeriesError("rebase: variable " + src.var(i).name + " has no counterpart");
            }
            m.set(*map[i], m[*map[i]] + e);
        }
        out.emplace_back(m, t.second);
    }
    return Series::from_terms(std::move(target), std::move(out));
}

// Monomial inverse as a one-term series (exponents negated).
inline Series monomial_inverse(const RingPtr& ring, const Series::Term& t)
{
    return Series::monomial(ring, t.first.inverse(), Scalar(1) / t.second);
}

// Multiplicative inverse. The lowest term (fewest power-series exponents,
// then smallest Laurent exponents) must be a unit scalar times a monomial
// in Laurent variables only; the rest must be topologically nilpotent under
// the ring's truncation.
inline Series mul_inverse(const Series& f)
{
    if (f.is_zero()) {
        throw SeriesError("mul_inverse: zero series");
    }
    const Ring& R = *f.ring();
    auto key = [&](const Monomial& m) {
        std::pair<int, std::vector<int>> k{0, {}};
        for (std::size_t i = 0; i < R.size(); ++i) {
            if (R.is_laurent(i)) {
                k.second.push_back(m[i]);
            } else {
                k.first += m[i];
            }
        }
        return k;
    };
    const Series::Term* lead = &f.terms().front();
    auto best = key(lead->first);
    for (const auto& t : f.terms()) {
        auto k = key(t.first);
        if (k < best) {
            best = std::move(k);
            lead = &t;
        }
    }
    if (best.first != 0) {
        throw SeriesError("mul_inverse: lowest term is not a unit");
    }
    Series lead_inv = monomial_inverse(f.ring(), *lead);
    Series r = f * lead_inv - Series::constant(f.ring(), 1);
    Series neg_r = -r;
    Series sum = Series::constant(f.ring(), 1);
    Series power = Series::constant(f.ring(), 1);
    for (int k = 0; k < 4096; ++k) {
        power *= neg_r;
        if (power.is_zero()) {
            return sum * lead_inv;
        }
        sum += power;
    }
    throw SeriesError("mul_inverse: correction does not vanish under truncation");
}

// Simultaneous substitution var -> series. Negative exponents of a bound
// Laurent variable use the inverse of its image.
inline Series substitute(const Series& f, const std::vector<std::pair<std::string, Series>>& bindings)
{
    const RingPtr& ring = f.ring();
    const Ring& R = *ring;
    std::vector<std::size_t> idx;
    for (const auto& [name, s] : bindings) {
        f.check_same_ring(s);
        std::size_t i = R.index(name);
        if (R.var(i).weight > 0 && !R.is_laurent(i) && s.constant_term() != 0) {
            throw SeriesError("substitute: order-0 image for power-series variable " + name);
        }
        idx.push_back(i);
    }
    std::map<std::vector<int>, std::vector<Series::Term>> groups;
    for (const auto& t : f.terms()) {
        std::vector<int> key(idx.size());
        Series::Term rest = t;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            key[k] = t.first[idx[k]];
            rest.first.set(idx[k], 0);
        }
        groups[key].push_back(std::move(rest));
    }
    std::map<std::pair<std::size_t, int>, Series> cache;
    std::vector<std::optional<Series>> inverses(idx.size());
    std::function<const Series&(std::size_t, int)> power = [&](std::size_t k, int e) -> const Series& {
        auto key = std::make_pair(k, e);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
        Series v(ring);
        if (e == 0) {
            v = Series::constant(ring, 1);
        } else if (e > 0) {
            v = power(k, e - 1) * bindings[k].second;
        } else {
            if (!inverses[k]) {
                inverses[k] = mul_inverse(bindings[k].second);
            }
            v = power(k, e + 1) * *inverses[k];
        }
        return cache.emplace(key, std::move(v)).first->second;
    };
    Series result(ring);
    for (auto& [key, rest] : groups) {
        Series prod = Series::from_terms(ring, std::move(rest));
        if (prod.is_zero()) {
            continue;
        }
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (key[k] != 0) {
                prod *= power(k, key[k]);
                if (prod.is_zero()) {
                    break;
                }
            }
        }
        result += prod;
    }
    return result;
}

inline Series substitute(const Series& f, const std::string& var, const Series& image)
{
    return substitute(f, {{var, image}});
}

// g with f(g) = var (and g(f) = var) at truncation. f must have no
// var-free terms and a unit linear coefficient.
inline Series compositional_inverse(const Series& f, const std::string& var)
{
    for (const auto& t : f.terms()) {
        if (t.first[f.ring()->index(var)] < 1) {
            throw SeriesError("compositional_inverse: nonzero constant term");
        }
    }
    Series a1 = coefficient_of(f, var, 1);
    if (a1.is_zero()) {
        throw SeriesError("compositional_inverse: zero linear coefficient");
    }
    Series a1_inv = mul_inverse(a1);
    Series x = Series::variable(f.ring(), var);
    Series g = x * a1_inv;
    for (int iter = 0; iter < 512; ++iter) {
        Series err = substitute(f, var, g) - x;
        if (err.is_zero()) {
            return g;
        }
        g -= err * a1_inv;
    }
    throw SeriesError("compositional_inverse: no convergence under truncation");
}

// q with f = q*g at truncation. Division is driven by the lowest term of g
// in the graded order. With `integral`, quotient coefficients must be
// integers.
inline Series exact_divide(const Series& f, const Series& g, bool integral = false)
{
    f.check_same_ring(g);
    if (g.is_zero()) {
        throw SeriesError("exact_divide: division by zero");
    }
    const RingPtr& ring = f.ring();
    const Series::Term& lead = g.terms().front();
    Monomial lead_inv = lead.first.inverse();
    Series q(ring);
    Series r = f;
    std::vector<Series::Term> qterms;
    for (long iter = 0; !r.is_zero(); ++iter) {
        if (iter > 200000) {
            throw SeriesError("exact_divide: remainder does not vanish");
        }
        const auto& [m, c] = r.terms().front();
        Monomial qm = m * lead_inv;
        Scalar qc = c / lead.second;
        auto admit = ring->admit(qm);
        if (admit == Ring::Admit::underflow || (integral && !is_integer(qc))) {
            throw DivisibilityError("not divisible", describe_monomial(*ring, m));
        }
        if (admit == Ring::Admit::truncated) {
            throw DivisibilityError("quotient leaves truncation", describe_monomial(*ring, m));
        }
        Series qt = Series::monomial(ring, qm, qc);
        r -= qt * g;
        qterms.emplace_back(qm, qc);
    }
    return Series::from_terms(ring, std::move(qterms));
}

} // namespace cobcalc
