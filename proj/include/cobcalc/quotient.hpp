#pragma once

// Arithmetic modulo the formal p: g(t) = [p]_F(t)/t = p + c1 t + c2 t^2 + ...
//
// Reduction rewrites p*m -> -(c1 t + c2 t^2 + ...)*m, lowest t-degree first.
// Each c_j carries b-weight j, so every rewrite raises both the t-degree and
// the b-weight and the process stops at the b-weight truncation.

#include "cobcalc/fgl.hpp"
#include "cobcalc/json_io.hpp"

#include <optional>
#include <string>

namespace cobcalc {

class FormalP {
public:
    FormalP(RingPtr ring, long p, std::string var = "t")
        : ring_(std::move(ring)), p_(p), var_(std::move(var)), g_(ring_)
    {
        g_ = shift(formal_int_mul(ring_, var_, static_cast<int>(p_)), var_, -1);
        if (g_.constant_term() != p_) {
            throw SeriesError("formal p: constant term is not p");
        }
        tail_ = g_ - Series::constant(ring_, p_);
    }

    const RingPtr& ring() const { return ring_; }
    long p() const { return p_; }
    const std::string& var() const { return var_; }
    const Series& generator() const { return g_; }
    // g - p.
    const Series& tail() const { return *tail_; }

    int trunc_t() const
    {
        const Variable& v = ring_->var(ring_->index(var_));
        return v.max_exp ? *v.max_exp : ring_->trunc_plus();
    }

private:
    RingPtr ring_;
    long p_;
    std::string var_;
    Series g_;
    std::optional<Series> tail_;
};

struct Reduction {
    Series normal_form;
    bool integral = true;
    bool p_local = true;
    std::string witness; // first offending monomial when not integral
};

// Lowest-first digit reduction. Records the first non-p-local coefficient
// and the first surviving negative t-power; normal_form is only complete
// when `p_local`.
inline Reduction reduce_mod_formal_p(const Series& f, const FormalP& ctx)
{
    f.check_same_ring(ctx.generator());
    const RingPtr& R = f.ring();
    std::size_t ti = R->index(ctx.var());
    const long p = ctx.p();
    const auto up = static_cast<unsigned long>(p);
    Reduction out{Series(R), true, true, {}};
    std::vector<Series::Term> kept;
    Series current = f;
    while (!current.is_zero()) {
        int k = min_exponent(current, ctx.var());
        std::vector<Series::Term> carry;
        std::vector<Series::Term> rest;
        for (const auto& [m, c] : current.terms()) {
            if (m[ti] != k) {
                rest.emplace_back(m, c);
                continue;
            }
            if (!is_p_integral(c, up)) {
                if (out.integral) {
                    out.witness = describe_monomial(*R, m) + " has coefficient " + c.get_str();
                }
                out.integral = false;
                out.p_local = false;
                return out;
            }
            long r = residue_mod(c, p);
            Scalar q = (c - Scalar(r)) / Scalar(p);
            if (r != 0) {
                if (k < 0 && out.integral) {
                    out.integral = false;
                    out.witness = describe_monomial(*R, m) + " survives with digit " + std::to_string(r);
                }
                kept.emplace_back(m, Scalar(r));
            }
            if (q != 0) {
                carry.emplace_back(m, q);
            }
        }
        current = Series::from_terms(R, std::move(rest));
        if (!carry.empty()) {
            current -= Series::from_terms(R, std::move(carry)) * ctx.tail();
        }
    }
    out.normal_form = Series::from_terms(R, std::move(kept));
    return out;
}

inline Series normal_form(const Series& f, const FormalP& ctx)
{
    Reduction r = reduce_mod_formal_p(f, ctx);
    if (!r.p_local) {
        throw DivisibilityError("normal_form: input is not p-integral", r.witness);
    }
    return r.normal_form;
}

// Congruent modulo g to a series with p-local coefficients and no negative
// t-powers (cofactors p-local).
inline bool is_integral_mod_ideal(const Series& f, const FormalP& ctx)
{
    return reduce_mod_formal_p(f, ctx).integral;
}

// The unique Phi with t-degrees in [-N, 0] such that S - g*Phi has only
// positive t-degrees. Only the nonpositive part of S is read.
inline Series divide_by_formal_p(const Series& full, const FormalP& ctx)
{
    full.check_same_ring(ctx.generator());
    const std::string& t = ctx.var();
    Series S = split_t_parts(full, t).first;
    if (S.is_zero()) {
        return S;
    }
    const RingPtr& R = S.ring();
    const auto up = static_cast<unsigned long>(ctx.p());
    int N = -min_exponent(S, t);
    std::vector<Series> c;
    for (int i = 0; i <= N; ++i) {
        c.push_back(coefficient_of(ctx.generator(), t, i));
    }
    std::vector<std::optional<Series>> phi(static_cast<std::size_t>(N + 1));
    Series out(R);
    for (int k = N; k >= 0; --k) {
        Series rk = coefficient_of(S, t, -k);
        for (int i = 1; k + i <= N; ++i) {
            rk -= c[static_cast<std::size_t>(i)] * *phi[static_cast<std::size_t>(k + i)];
        }
        for (const auto& [m, coef] : rk.terms()) {
            if (p_valuation(coef, up) < 1) {
                throw DivisibilityError("t^" + std::to_string(-k) + " coefficient not divisible by p",
                                        describe_monomial(*R, m));
            }
        }
        Series pk = rk * (Scalar(1) / Scalar(ctx.p()));
        out += shift(pk, t, -k);
        phi[static_cast<std::size_t>(k)] = std::move(pk);
    }
    return out;
}

inline Json quotient_to_json(const Series& f, const FormalP& ctx)
{
    Json j;
    j["generator_prime"] = ctx.p();
    j["trunc_t"] = ctx.trunc_t();
    j["representative"] = to_json(normal_form(f, ctx));
    return j;
}

} // namespace cobcalc
