#pragma once

// Cyclic group actions on B[[x]], B = L[[t]]/(g): the shift x -> x +_F t,
// invariant decomposition through the orbit product, and the confluent
// Vandermonde matrices used by the divisibility checks.

#include "cobcalc/quotient.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace cobcalc {

// ---- confluent Vandermonde matrices -------------------------------------

inline RingPtr symbol_ring(int r)
{
    std::vector<Variable> vars;
    for (int i = 1; i <= r; ++i) {
        vars.push_back(power_var("t" + std::to_string(i)));
    }
    return make_ring(std::move(vars), 120, 0);
}

struct ConfluentMatrix {
    std::vector<int> blocks;
    int width = 0;
    RingPtr ring;
    std::vector<std::vector<Series>> entries;

    int rows() const { return static_cast<int>(entries.size()); }
};

// Row (i, k) for block i and 0 <= k < n_i; column v = 1..m holds
// binom(v-1, k) t_i^{v-1-k}.
inline ConfluentMatrix build_matrix_A(const std::vector<int>& n, int m)
{
    if (m < 1 || n.empty()) {
        throw std::invalid_argument("build_matrix_A: need blocks and m >= 1");
    }
    ConfluentMatrix A{n, m, symbol_ring(static_cast<int>(n.size())), {}};
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 1) {
            throw std::invalid_argument("build_matrix_A: block sizes must be positive");
        }
        std::string ti = "t" + std::to_string(i + 1);
        for (int k = 0; k < n[i]; ++k) {
            std::vector<Series> row;
            for (int v = 1; v <= m; ++v) {
                if (v - 1 < k) {
                    row.emplace_back(A.ring);
                } else {
                    row.push_back(Series::variable(A.ring, ti, v - 1 - k) * Scalar(binomial(v - 1, k)));
                }
            }
            A.entries.push_back(std::move(row));
        }
    }
    return A;
}

// Fraction-free Gaussian elimination; every division is exact.
inline Series determinant(std::vector<std::vector<Series>> M, const RingPtr& ring)
{
    const std::size_t n = M.size();
    if (n == 0) {
        return Series::constant(ring, 1);
    }
    Series prev = Series::constant(ring, 1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && M[r][k].is_zero()) {
                ++r;
            }
            if (r == n) {
                return Series(ring);
            }
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                M[i][j] = exact_divide(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
            }
        }
        prev = M[k][k];
    }
    return sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
}

inline Series vandermonde_product(const RingPtr& ring, const std::vector<int>& n)
{
    Series out = Series::constant(ring, 1);
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Series diff = Series::variable(ring, "t" + std::to_string(i + 1)) -
                          Series::variable(ring, "t" + std::to_string(j + 1));
            out *= pow(diff, n[i] * n[j]);
        }
    }
    return out;
}

struct MinorReport {
    bool pass = true;
    int minors_checked = 0;
    std::string witness;
};

inline std::string describe_blocks(const std::vector<int>& n, int m)
{
    std::string s = "A(";
    for (std::size_t i = 0; i < n.size(); ++i) {
        s += (i ? "," : "") + std::to_string(n[i]);
    }
    return s + ";" + std::to_string(m) + ")";
}

// Square determinant equals the product; with `exhaustive`, every maximal
// minor of A(n; m) for N < m <= max_width (default N+2) is divisible by it.
inline MinorReport check_minor_determinant(const std::vector<int>& n, bool exhaustive, int max_width = -1)
{
    MinorReport rep;
    const int N = std::accumulate(n.begin(), n.end(), 0);
    ConfluentMatrix A = build_matrix_A(n, N);
    Series prod = vandermonde_product(A.ring, n);
    Series det = determinant(A.entries, A.ring);
    ++rep.minors_checked;
    if (det != prod) {
        rep.pass = false;
        rep.witness = "det " + describe_blocks(n, N) + " = " + to_text(det);
        return rep;
    }
    if (!exhaustive) {
        return rep;
    }
    const int top = max_width < 0 ? N + 2 : max_width;
    for (int m = N + 1; m <= top; ++m) {
        ConfluentMatrix Am = build_matrix_A(n, m);
        std::vector<bool> pick(static_cast<std::size_t>(m), false);
        std::fill(pick.begin(), pick.begin() + N, true);
        do {
            std::vector<std::vector<Series>> sub;
            for (const auto& row : Am.entries) {
                std::vector<Series> r;
                for (int v = 0; v < m; ++v) {
                    if (pick[static_cast<std::size_t>(v)]) {
                        r.push_back(row[static_cast<std::size_t>(v)]);
                    }
                }
                sub.push_back(std::move(r));
            }
            Series minor = determinant(std::move(sub), Am.ring);
            ++rep.minors_checked;
            try {
                Series q = exact_divide(minor, prod);
                if (q * prod != minor) {
                    throw DivisibilityError("product check", "");
                }
            } catch (const DivisibilityError&) {
                rep.pass = false;
                std::string colstr;
                for (int v = 0; v < m; ++v) {
                    if (pick[static_cast<std::size_t>(v)]) {
                        colstr += (colstr.empty() ? "" : ",") + std::to_string(v + 1);
                    }
                }
                rep.witness = "minor of " + describe_blocks(n, m) + " on columns " + colstr;
                return rep;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return rep;
}

// All compositions of N.
inline std::vector<std::vector<int>> compositions(int N)
{
    std::vector<std::vector<int>> out;
    if (N <= 0) {
        return out;
    }
    for (unsigned mask = 0; mask < (1u << (N - 1)); ++mask) {
        std::vector<int> c{1};
        for (int i = 0; i < N - 1; ++i) {
            if (mask & (1u << i)) {
                c.push_back(1);
            } else {
                ++c.back();
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

// ---- continuous automorphisms --------------------------------------------

class NonInvariantError : public SeriesError {
public:
    using SeriesError::SeriesError;
};

// x -> image over B; tracks the quotient context for reductions.
class ContinuousAutomorphism {
public:
    ContinuousAutomorphism(const FormalP& ctx, std::string var, Series image)
        : ctx_(ctx), var_(std::move(var)), image_(std::move(image))
    {
        Series l0 = coefficient_of(image_, var_, 0);
        if (l0.constant_term() != 0) {
            throw SeriesError("automorphism: constant term is not topologically nilpotent");
        }
        Series l1 = coefficient_of(image_, var_, 1);
        Scalar c = l1.constant_term();
        if (c == 0 || !is_p_integral(c, static_cast<unsigned long>(ctx.p())) ||
            p_valuation(c, static_cast<unsigned long>(ctx.p())) > 0) {
            throw SeriesError("automorphism: linear coefficient is not a unit");
        }
    }

    const std::string& var() const { return var_; }
    const Series& image() const { return image_; }
    const FormalP& context() const { return ctx_; }
    Series lambda(int j) const { return coefficient_of(image_, var_, j); }

    Series apply(const Series& f) const { return substitute(f, var_, image_); }

    // x -> x^{sigma tau}: apply tau's image inside sigma's.
    ContinuousAutomorphism then(const ContinuousAutomorphism& tau) const
    {
        return {ctx_, var_, substitute(tau.image_, var_, image_)};
    }

    ContinuousAutomorphism power(int k) const
    {
        ContinuousAutomorphism r{ctx_, var_, Series::variable(image_.ring(), var_)};
        for (int i = 0; i < k; ++i) {
            r = r.then(*this);
        }
        return r;
    }

private:
    FormalP ctx_;
    std::string var_;
    Series image_;
};

// x -> x +_F t.
inline ContinuousAutomorphism make_shift_automorphism(const FormalP& ctx, const std::string& var)
{
    const RingPtr& R = ctx.ring();
    return {ctx, var, formal_sum(Series::variable(R, var), Series::variable(R, ctx.var()))};
}

// prod_{i=0}^{p-1} x^{sigma^i}.
inline Series orbit_product(const ContinuousAutomorphism& sigma)
{
    const RingPtr& R = sigma.image().ring();
    Series x = Series::variable(R, sigma.var());
    Series out = x;
    Series cur = x;
    for (long i = 1; i < sigma.context().p(); ++i) {
        cur = sigma.apply(cur);
        out *= cur;
    }
    return out;
}

struct StripCertificate {
    int degree = 0;         // x-degree stripped
    int required_t = 0;     // (p-1) * degree
    int found_t = 0;        // min t-exponent of the reduced coefficient
};

struct Decomposition {
    Series psi;
    std::vector<StripCertificate> steps;
};

inline bool congruent_mod_formal_p(const Series& a, const Series& b, const FormalP& ctx)
{
    return normal_form(a - b, ctx).is_zero();
}

// psi with phi = psi(pi(x)), pi the orbit product; out_var must be a
// weight-p variable of the ring. Each stripping step certifies that the
// lowest coefficient is divisible by t^{(p-1)n}.
inline Decomposition invariant_decompose(const Series& phi, const ContinuousAutomorphism& sigma,
                                         const std::string& out_var)
{
    const FormalP& ctx = sigma.context();
    const RingPtr& R = phi.ring();
    const std::string& x = sigma.var();
    const std::string& t = ctx.var();
    const long p = ctx.p();
    if (!congruent_mod_formal_p(sigma.apply(phi), phi, ctx)) {
        throw NonInvariantError("invariant_decompose: input is not invariant under " + x + " -> " + to_text(sigma.image()));
    }
    Series pi = orbit_product(sigma);
    Series unit = shift(coefficient_of(pi, x, 1), t, -static_cast<int>(p - 1));
    Series unit_inv = mul_inverse(unit);
    Series y = Series::variable(R, out_var);

    Decomposition out{Series(R), {}};
    Series rem = normal_form(phi, ctx);
    Series pi_pow = Series::constant(R, 1);
    Series inv_pow = Series::constant(R, 1);
    Series y_pow = Series::constant(R, 1);
    int top = R->trunc_plus();
    for (int n = 0; n <= top && !rem.is_zero(); ++n) {
        if (n > 0) {
            pi_pow *= pi;
            inv_pow *= unit_inv;
            y_pow *= y;
        }
        Series alpha = normal_form(coefficient_of(rem, x, n), ctx);
        if (alpha.is_zero()) {
            continue;
        }
        StripCertificate cert{n, static_cast<int>(p - 1) * n, min_exponent(alpha, t)};
        out.steps.push_back(cert);
        if (cert.found_t < cert.required_t) {
            throw DivisibilityError("coefficient of " + x + "^" + std::to_string(n) + " not divisible by t^" +
                                        std::to_string(cert.required_t),
                                    to_text(alpha));
        }
        Series gamma = normal_form(shift(alpha, t, -cert.required_t) * inv_pow, ctx);
        out.psi += gamma * y_pow;
        rem = normal_form(rem - gamma * pi_pow, ctx);
    }
    if (!rem.is_zero()) {
        throw SeriesError("invariant_decompose: remainder left after stripping");
    }
    return out;
}

// ---- two-variable consequences -------------------------------------------

struct IntegralityVerdict {
    std::string coefficient;
    bool integral = true;
    std::string witness;
};

struct XYResult {
    RingPtr ring;
    Series G;
    std::vector<StripCertificate> steps;
    std::vector<IntegralityVerdict> verdicts;
    bool identity_holds = false;

    bool all_integral() const
    {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.integral; });
    }
};

// Per-coefficient integrality of f in the variables `vars`.
inline std::vector<IntegralityVerdict> coefficient_verdicts(const Series& f, const std::vector<std::string>& vars,
                                                            const FormalP& ctx)
{
    const Ring& R = *f.ring();
    std::vector<std::size_t> idx;
    for (const auto& v : vars) {
        idx.push_back(R.index(v));
    }
    std::map<std::vector<int>, std::vector<Series::Term>> groups;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> key;
        for (std::size_t i : idx) {
            key.push_back(m[i]);
        }
        groups[key].emplace_back(m, c);
    }
    std::vector<IntegralityVerdict> out;
    for (auto& [key, terms] : groups) {
        std::string name;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (key[k] != 0) {
                name += (name.empty() ? "" : " ") + vars[k] + (key[k] == 1 ? "" : "^" + std::to_string(key[k]));
            }
        }
        Reduction r = reduce_mod_formal_p(Series::from_terms(f.ring(), std::move(terms)), ctx);
        out.push_back({name.empty() ? "1" : name, r.integral, r.witness});
    }
    return out;
}

// G(u, v) with prod_i (x +_F y +_F [i]t) = G(pi(x), pi(y)).
inline XYResult prop_xy_series(long p, int D, int W)
{
    RingPtr R = ambient_ring({power_var("t"), power_var("x"), power_var("y"),
                              {"u", static_cast<int>(p), std::nullopt, std::nullopt},
                              {"v", static_cast<int>(p), std::nullopt, std::nullopt}},
                             D, W);
    FormalP ctx(R, p);
    auto sx = make_shift_automorphism(ctx, "x");
    auto sy = make_shift_automorphism(ctx, "y");
    Series pix = orbit_product(sx);
    Series lhs = substitute(pix, "x", universal_fgl(R, "x", "y"));
    Decomposition first = invariant_decompose(lhs, sx, "u");
    Decomposition second = invariant_decompose(first.psi, sy, "v");
    XYResult out{R, second.psi, first.steps, {}, false};
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    out.verdicts = coefficient_verdicts(second.psi, {"u", "v"}, ctx);
    Series piy = rebase(pix, R, {{"x", "y"}});
    Series back = substitute(second.psi, {{"u", pix}, {"v", piy}});
    out.identity_holds = congruent_mod_formal_p(back, lhs, ctx);
    return out;
}

struct TwistedResult {
    RingPtr ring;
    Series Falpha;
    std::vector<IntegralityVerdict> verdicts;
    bool unit_axiom = false;
    bool commutative = false;

    bool all_integral() const
    {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.integral; });
    }
};

// Ring for the twisted law: Laurent t; the law's arguments (u, v and any
// `extra`) capped at `cap` each; alpha and beta live in w, capped at the
// total degree those arguments can reach.
inline RingPtr twisted_ring(long p, int cap, int W, const std::vector<std::string>& extra = {})
{
    const int args = 2 + static_cast<int>(extra.size());
    const int P = static_cast<int>(p);
    std::vector<Variable> vars{laurent_var("t", -args * P * cap - 4), {"w", P, std::nullopt, args * cap},
                               {"u", P, std::nullopt, cap}, {"v", P, std::nullopt, cap}};
    for (const auto& e : extra) {
        vars.push_back({e, P, std::nullopt, cap});
    }
    return ambient_ring(std::move(vars), 1000, W);
}

// alpha(x) = x prod_{i=1}^{p-1} (x +_F [i]t) written in `var`.
inline Series alpha_series(const RingPtr& R, long p, const std::string& var)
{
    Series x = Series::variable(R, var);
    Series out = x;
    for (long i = 1; i < p; ++i) {
        out *= formal_sum(x, formal_int_mul(R, "t", static_cast<int>(i)));
    }
    return out;
}

// F^alpha(a, b) = alpha(F(beta(a), beta(b))); alpha and beta are in w.
inline Series twisted_sum(const Series& alpha, const Series& beta, const Series& a, const Series& b)
{
    return substitute(alpha, "w", formal_sum(substitute(beta, "w", a), substitute(beta, "w", b)));
}

inline TwistedResult twisted_fgl_alpha(long p, int cap, int W)
{
    RingPtr R = twisted_ring(p, cap, W);
    FormalP ctx(R, p);
    Series alpha = alpha_series(R, p, "w");
    Series beta = compositional_inverse(alpha, "w");
    Series u = Series::variable(R, "u");
    Series v = Series::variable(R, "v");
    TwistedResult out{R, twisted_sum(alpha, beta, u, v), {}, false, false};
    out.verdicts = coefficient_verdicts(out.Falpha, {"u", "v"}, ctx);
    out.unit_axiom = substitute(out.Falpha, "v", Series(R)) == u;
    out.commutative = rebase(out.Falpha, R, {{"u", "v"}, {"v", "u"}}) == out.Falpha;
    return out;
}

} // namespace cobcalc
