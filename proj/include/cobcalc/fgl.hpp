#pragma once

// Universal formal group law in Hurewitz coordinates.
//
// Exponential B(s) = s + b1 s^2 + b2 s^3 + ..., with b_i of weight -i, and
// F(x,y) = B(B^-1(x) + B^-1(y)). Every series here is homogeneous of total
// weight 1 (or 0 for L-elements), so modulo b-weight > W it is a polynomial
// of degree <= W+1 in the main variables. Each one is built once in a small
// canonical ring of that degree and rebased into the caller's ring.

#include "cobcalc/render.hpp"
#include "cobcalc/series.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace cobcalc {

inline std::string b_name(int i) { return "b" + std::to_string(i); }

inline std::vector<Variable> b_variables(int W, const std::string& prefix = "b")
{
    std::vector<Variable> vars;
    for (int i = 1; i <= W; ++i) {
        vars.push_back({prefix + std::to_string(i), -i, std::nullopt, std::nullopt});
    }
    return vars;
}

// Main variables followed by b1..bW; b-weight truncation W.
inline RingPtr ambient_ring(std::vector<Variable> main, int trunc_plus, int W)
{
    auto bs = b_variables(W);
    main.insert(main.end(), bs.begin(), bs.end());
    return make_ring(std::move(main), trunc_plus, W);
}

inline Variable power_var(const std::string& name, std::optional<int> cap = std::nullopt)
{
    return {name, 1, std::nullopt, cap};
}

inline Variable laurent_var(const std::string& name, int floor, std::optional<int> cap = std::nullopt)
{
    return {name, 1, floor, cap};
}

// Ring of L-elements: b1..bW only.
inline RingPtr coefficient_ring(int W)
{
    static std::mutex mu;
    static std::map<int, RingPtr> cache;
    std::lock_guard lock(mu);
    auto& r = cache[W];
    if (!r) {
        r = ambient_ring({}, 0, W);
    }
    return r;
}

namespace detail {

enum class Canon { exp, log, omega, fgl, int_mul };

// Canonical univariate series live in {s, b...}; the FGL in {x, y, b...}.
inline const Series& canonical(Canon kind, int W, int n = 0)
{
    static std::mutex mu;
    static std::map<std::tuple<Canon, int, int>, Series> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(kind, W, n);
    if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
    }
    RingPtr sr = ambient_ring({power_var("s")}, W + 1, W);
    auto exp_s = [&] {
        Series s = Series::variable(sr, "s");
        Series b = s;
        for (int i = 1; i <= W; ++i) {
            b += Series::variable(sr, b_name(i)) * pow(s, i + 1);
        }
        return b;
    };
    Series value(sr);
    switch (kind) {
    case Canon::exp:
        value = exp_s();
        break;
    case Canon::log: {
        // Lock is held; compute directly rather than recursing.
        value = compositional_inverse(exp_s(), "s");
        break;
    }
    case Canon::omega:
        value = derivative(compositional_inverse(exp_s(), "s"), "s");
        break;
    case Canon::fgl: {
        RingPtr xy = ambient_ring({power_var("x"), power_var("y")}, W + 1, W);
        Series lg = compositional_inverse(exp_s(), "s");
        Series sum = rebase(lg, xy, {{"s", "x"}}) + rebase(lg, xy, {{"s", "y"}});
        value = substitute(rebase(exp_s(), xy, {{"s", "x"}}), "x", sum);
        break;
    }
    case Canon::int_mul: {
        Series lg = compositional_inverse(exp_s(), "s");
        value = substitute(exp_s(), "s", Scalar(n) * lg);
        break;
    }
    }
    return cache.emplace(key, std::move(value)).first->second;
}

inline Series transport(const Series& canon, const RingPtr& target, const std::map<std::string, std::string>& renames)
{
    return rebase(canon, target, renames);
}

} // namespace detail

// B(var) in ring R (R carries b1..b_W with W = R.trunc_minus()).
inline Series exponential(const RingPtr& R, const std::string& var)
{
    return detail::transport(detail::canonical(detail::Canon::exp, R->trunc_minus()), R, {{"s", var}});
}

// B^-1(var) = var + m1 var^2 + ...
inline Series logarithm(const RingPtr& R, const std::string& var)
{
    return detail::transport(detail::canonical(detail::Canon::log, R->trunc_minus()), R, {{"s", var}});
}

// Invariant form (B^-1)'(var) = sum [P^i] var^i.
inline Series invariant_form(const RingPtr& R, const std::string& var)
{
    return detail::transport(detail::canonical(detail::Canon::omega, R->trunc_minus()), R, {{"s", var}});
}

// F(x, y) with the given variable names.
inline Series universal_fgl(const RingPtr& R, const std::string& x = "x", const std::string& y = "y")
{
    return detail::transport(detail::canonical(detail::Canon::fgl, R->trunc_minus()), R, {{"x", x}, {"y", y}});
}

// [n]_F(var) = B(n B^-1(var)); negative n gives the formal inverse.
inline Series formal_int_mul(const RingPtr& R, const std::string& var, int n)
{
    return detail::transport(detail::canonical(detail::Canon::int_mul, R->trunc_minus(), n), R, {{"s", var}});
}

// a +_F b for arbitrary series a, b of positive order in R.
inline Series formal_sum(const Series& a, const Series& b)
{
    const RingPtr& R = a.ring();
    RingPtr xy = ambient_ring({power_var("x"), power_var("y")}, R->trunc_minus() + 1, R->trunc_minus());
    const Series& F = detail::canonical(detail::Canon::fgl, R->trunc_minus());
    // Expand F as sum over (i, j) of coefficient * a^i b^j.
    std::size_t ix = xy->index("x");
    std::size_t iy = xy->index("y");
    std::map<std::pair<int, int>, std::vector<Series::Term>> by_power;
    for (const auto& [m, c] : F.terms()) {
        Monomial rest = m;
        rest.set(ix, 0);
        rest.set(iy, 0);
        by_power[{m[ix], m[iy]}].emplace_back(rest, c);
    }
    std::vector<Series> apow{Series::constant(R, 1)};
    std::vector<Series> bpow{Series::constant(R, 1)};
    Series out(R);
    for (auto& [ij, terms] : by_power) {
        auto [i, j] = ij;
        while (static_cast<int>(apow.size()) <= i) {
            apow.push_back(apow.back() * a);
        }
        while (static_cast<int>(bpow.size()) <= j) {
            bpow.push_back(bpow.back() * b);
        }
        Series coef = rebase(Series::from_terms(xy, std::move(terms)), R);
        out += coef * apow[i] * bpow[j];
    }
    return out;
}

// Element of L as a homogeneous polynomial in b1..bW.
struct LazardElement {
    Series ambient;
    int dimension = 0;
    std::string provenance;

    LazardElement(Series a, int dim, std::string prov = {})
        : ambient(std::move(a)), dimension(dim), provenance(std::move(prov))
    {
    }

    friend bool operator==(const LazardElement& a, const LazardElement& b)
    {
        return a.dimension == b.dimension && a.ambient == b.ambient;
    }

    friend LazardElement operator+(const LazardElement& a, const LazardElement& b)
    {
        if (a.dimension != b.dimension) {
            throw SeriesError("sum of L-elements of different dimensions");
        }
        return {a.ambient + b.ambient, a.dimension, a.provenance + "+" + b.provenance};
    }

    friend LazardElement operator*(const LazardElement& a, const LazardElement& b)
    {
        return {a.ambient * b.ambient, a.dimension + b.dimension, a.provenance + "*" + b.provenance};
    }

    bool has_integer_coefficients() const
    {
        for (const auto& t : ambient.terms()) {
            if (!is_integer(t.second)) {
                return false;
            }
        }
        return true;
    }
};

inline void require_weight(int W, int dim)
{
    if (dim > W) {
        throw SeriesError("dimension " + std::to_string(dim) + " exceeds b-weight truncation " + std::to_string(W));
    }
}

// a_{i,j}: coefficient of x^i y^j in F.
inline LazardElement fgl_coefficient(int W, int i, int j)
{
    require_weight(W, i + j - 1);
    RingPtr xy = ambient_ring({power_var("x"), power_var("y")}, W + 1, W);
    Series F = universal_fgl(xy);
    Series c = coefficient_of(coefficient_of(F, "x", i), "y", j);
    return {rebase(c, coefficient_ring(W)), i + j - 1, "a" + std::to_string(i) + "," + std::to_string(j)};
}

// [P^n] = (n+1) * (coefficient of s^{n+1} in B^-1).
inline LazardElement pn_class(int W, int n)
{
    require_weight(W, n);
    const Series& lg = detail::canonical(detail::Canon::log, W);
    Series c = coefficient_of(lg, "s", n + 1) * Scalar(n + 1);
    return {rebase(c, coefficient_ring(W)), n, "P" + std::to_string(n)};
}

// pi_*(f) for P^n: coefficient of var^n in f * omega(var).
inline Series proj_pushforward(const Series& f, const std::string& var, int n)
{
    if (min_exponent(f, var) < 0) {
        throw SeriesError("proj_pushforward: argument has a pole");
    }
    return coefficient_of(f * invariant_form(f.ring(), var), var, n);
}

// Class of a degree-d hypersurface in P^n: pi_*([d]_F(x)).
inline LazardElement hypersurface_class(int W, int n, int d)
{
    if (n < 1 || d < 1) {
        throw SeriesError("hypersurface_class needs n >= 1 and d >= 1");
    }
    require_weight(W, n - 1);
    RingPtr R = ambient_ring({power_var("s")}, std::max(n, 1), W);
    Series v = proj_pushforward(formal_int_mul(R, "s", d), "s", n);
    return {rebase(v, coefficient_ring(W)), n - 1,
            "H(" + std::to_string(n) + "," + std::to_string(d) + ")"};
}

// Coefficient of the monomial prod b_i^{J_i}; J given as (index, exponent).
inline Scalar char_number(const LazardElement& u, const std::vector<std::pair<int, int>>& J)
{
    if (!u.has_integer_coefficients()) {
        throw SeriesError("char_number: ambient form is not integral");
    }
    const Ring& R = *u.ambient.ring();
    Monomial m;
    for (auto [i, e] : J) {
        auto idx = R.find(b_name(i));
        if (!idx) {
            return 0;
        }
        m.set(*idx, m[*idx] + e);
    }
    return u.ambient.coefficient(m);
}

// s-number: coefficient of m_d after rewriting b in logarithm coordinates
// m_i (B^-1(s) = s + sum m_i s^{i+1}).
inline Scalar s_number(const LazardElement& u)
{
    int d = u.dimension;
    if (d <= 0) {
        throw SeriesError("s_number: dimension must be positive");
    }
    int W = u.ambient.ring()->trunc_minus();
    require_weight(W, d);
    RingPtr sm = make_ring([&] {
        std::vector<Variable> v{power_var("s")};
        auto ms = b_variables(d, "m");
        v.insert(v.end(), ms.begin(), ms.end());
        return v;
    }(), d + 1, d);
    Series lg = Series::variable(sm, "s");
    for (int i = 1; i <= d; ++i) {
        lg += Series::variable(sm, "m" + std::to_string(i)) * Series::variable(sm, "s", i + 1);
    }
    Series ex = compositional_inverse(lg, "s");

    auto bm_vars = b_variables(d);
    auto ms = b_variables(d, "m");
    bm_vars.insert(bm_vars.end(), ms.begin(), ms.end());
    RingPtr bm = make_ring(bm_vars, 0, d);
    std::vector<std::pair<std::string, Series>> bindings;
    for (int i = 1; i <= d; ++i) {
        bindings.emplace_back(b_name(i), rebase(coefficient_of(ex, "s", i + 1), bm));
    }
    Series in_b = rebase(set_to_zero(u.ambient, [&](std::size_t i) { return -u.ambient.ring()->var(i).weight > d; }), bm);
    Series in_m = substitute(in_b, bindings);
    Monomial md;
    md.set(bm->index("m" + std::to_string(d)), 1);
    return in_m.coefficient(md);
}

// Every characteristic number divisible by p.
inline bool in_Ip(const LazardElement& u, long p)
{
    if (!u.has_integer_coefficients()) {
        throw SeriesError("in_Ip: ambient form is not integral");
    }
    for (const auto& t : u.ambient.terms()) {
        if (mpz_divisible_ui_p(t.second.get_num().get_mpz_t(), static_cast<unsigned long>(p)) == 0) {
            return false;
        }
    }
    return true;
}

inline long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

inline bool is_nu_r(const LazardElement& u, long p, int r)
{
    if (u.dimension != ipow(p, r) - 1) {
        throw SeriesError("is_nu_r: dimension must be p^r - 1");
    }
    if (!in_Ip(u, p)) {
        return false;
    }
    Scalar s = s_number(u);
    return s != 0 && p_valuation(s, static_cast<unsigned long>(p)) < 2;
}

// ---- Chow-level models of P^n and hypersurfaces -------------------------

inline void validate_reps(long p, const std::vector<long>& reps)
{
    if (p < 2) {
        throw std::invalid_argument("p must be a prime >= 2");
    }
    for (long d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            throw std::invalid_argument("p must be prime");
        }
    }
    if (static_cast<long>(reps.size()) != p - 1) {
        throw std::invalid_argument("need exactly p-1 representatives");
    }
    std::vector<bool> seen(static_cast<std::size_t>(p), false);
    for (long i : reps) {
        long r = ((i % p) + p) % p;
        if (r == 0 || seen[static_cast<std::size_t>(r)]) {
            throw std::invalid_argument("representatives must be distinct and nonzero mod p");
        }
        seen[static_cast<std::size_t>(r)] = true;
    }
}

inline Integer reps_product(const std::vector<long>& reps)
{
    Integer s = 1;
    for (long i : reps) {
        s *= i;
    }
    return s;
}

struct ChowModel {
    int n = 1;
    int d = 0; // 0: U = P^n itself

    int dim() const { return d == 0 ? n : n - 1; }
    long top_degree() const { return d == 0 ? 1 : d; }

    std::string name() const
    {
        return d == 0 ? "P" + std::to_string(n) : "H(" + std::to_string(n) + "," + std::to_string(d) + ")";
    }

    RingPtr ring(long p) const
    {
        int floor = -static_cast<int>((2 * dim() + 2) * (p - 1) + 2);
        return make_ring({laurent_var("t", floor), power_var("h", dim())}, 4 * n + 8, 0);
    }

    // c(T_U)(t).
    Series total_chern(const RingPtr& R) const
    {
        Series t = Series::variable(R, "t");
        Series h = Series::variable(R, "h");
        Series c = pow(t + h, n + 1) * Series::variable(R, "t", -1);
        if (d != 0) {
            c *= mul_inverse(t + Scalar(d) * h);
        }
        return c;
    }

    Scalar degree(const Series& f) const
    {
        Monomial top;
        top.set(f.ring()->index("h"), dim());
        return f.coefficient(top) * Scalar(top_degree());
    }
};

// prod_j c(-T_U)(i_j t).
inline Series chow_chern_che(const ChowModel& U, long p, const std::vector<long>& reps)
{
    validate_reps(p, reps);
    RingPtr R = U.ring(p);
    Series inv = mul_inverse(U.total_chern(R));
    Series out = Series::constant(R, 1);
    for (long i : reps) {
        out *= scale_variable(inv, "t", Scalar(i));
    }
    return out;
}

class EtaError : public SeriesError {
public:
    using SeriesError::SeriesError;
};

// eta_{p,reps}(U) = -deg(t^{-p dim U} component) / p, checked to lie in
// Z[1/prod reps].
inline Scalar eta(const ChowModel& U, long p, const std::vector<long>& reps)
{
    if (U.dim() <= 0) {
        throw SeriesError("eta needs dim U > 0");
    }
    Series che = chow_chern_che(U, p, reps);
    Scalar deg = U.degree(coefficient_of(che, "t", -static_cast<int>(p) * U.dim()));
    Scalar e = -deg / Scalar(p);
    if (!denominator_divides_power_of(e, reps_product(reps))) {
        throw EtaError("eta: p does not divide deg " + deg.get_str() + " for " + U.name());
    }
    return e;
}

} // namespace cobcalc
