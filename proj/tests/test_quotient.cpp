#include "cobcalc/quotient.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cobcalc;

namespace {

constexpr int W = 6;

RingPtr power_t(int D = 10) { return ambient_ring({power_var("t")}, D, W); }
RingPtr laurent_t(int D = 10) { return ambient_ring({laurent_var("t", -8)}, D, W); }

Series var(const RingPtr& R, const std::string& n, int e = 1) { return Series::variable(R, n, e); }
Series cst(const RingPtr& R, long n, long d = 1) { return Series::constant(R, make_scalar(n, d)); }

// Random integer series in t, b1, b2 with t-degrees in [lo, hi].
Series random_series(const RingPtr& R, std::mt19937& rng, int lo, int hi, int terms)
{
    std::uniform_int_distribution<int> te(lo, hi);
    std::uniform_int_distribution<int> be(0, 2);
    std::uniform_int_distribution<int> c(-7, 7);
    Series out(R);
    for (int i = 0; i < terms; ++i) {
        out += cst(R, c(rng)) * var(R, "t", te(rng)) * var(R, "b1", be(rng)) * var(R, "b2", be(rng) % 2);
    }
    return out;
}

} // namespace

TEST(FormalP, GeneratorShape)
{
    for (long p : {2L, 3L, 5L}) {
        RingPtr R = power_t();
        FormalP ctx(R, p);
        EXPECT_EQ(ctx.generator().constant_term(), p);
        EXPECT_EQ(ctx.generator() * var(R, "t"), formal_int_mul(R, "t", static_cast<int>(p)));
    }
}

TEST(NormalForm, Examples)
{
    RingPtr R = power_t();
    FormalP ctx(R, 2);
    EXPECT_TRUE(normal_form(ctx.generator(), ctx).is_zero());
    EXPECT_EQ(normal_form(var(R, "t"), ctx), var(R, "t"));
    Series two = normal_form(cst(R, 2), ctx);
    EXPECT_EQ(two.constant_term(), 0);
    EXPECT_EQ(two, normal_form(-ctx.tail(), ctx));
    for (const auto& [m, c] : two.terms()) {
        EXPECT_TRUE(c >= 0 && c < 2);
    }
}

TEST(NormalForm, Idempotent)
{
    RingPtr R = power_t();
    std::mt19937 rng(11);
    for (long p : {2L, 3L}) {
        FormalP ctx(R, p);
        for (int i = 0; i < 5; ++i) {
            Series f = random_series(R, rng, 0, 4, 6);
            Series nf = normal_form(f, ctx);
            EXPECT_EQ(normal_form(nf, ctx), nf);
        }
    }
}

TEST(NormalForm, RespectsRingStructure)
{
    RingPtr R = power_t();
    std::mt19937 rng(21);
    for (long p : {2L, 3L, 5L}) {
        FormalP ctx(R, p);
        for (int i = 0; i < 5; ++i) {
            Series a = random_series(R, rng, 0, 4, 5);
            Series b = random_series(R, rng, 0, 4, 5);
            Series na = normal_form(a, ctx);
            Series nb = normal_form(b, ctx);
            EXPECT_EQ(normal_form(a + b, ctx), normal_form(na + nb, ctx));
            EXPECT_EQ(normal_form(a * b, ctx), normal_form(na * nb, ctx));
        }
    }
}

TEST(NormalForm, IdealMultiplesVanish)
{
    RingPtr R = power_t();
    std::mt19937 rng(4);
    FormalP ctx(R, 3);
    for (int i = 0; i < 5; ++i) {
        Series f = random_series(R, rng, 0, 4, 5);
        Series h = random_series(R, rng, 0, 3, 4);
        EXPECT_EQ(normal_form(f + h * ctx.generator(), ctx), normal_form(f, ctx));
        EXPECT_TRUE(normal_form(h * ctx.generator(), ctx).is_zero());
    }
}

TEST(NormalForm, LaurentQuotientIsFaithful)
{
    // Power series f reduce to zero in the Laurent ring exactly when they
    // do in the power-series ring.
    RingPtr P = power_t(8);
    RingPtr L = laurent_t(8);
    FormalP cp(P, 2);
    FormalP cl(L, 2);
    std::mt19937 rng(8);
    for (int i = 0; i < 5; ++i) {
        Series h = random_series(P, rng, 0, 3, 4);
        Series f = h * cp.generator();
        EXPECT_TRUE(normal_form(rebase(f, L), cl).is_zero());
        Series e = f + var(P, "t", 2);
        EXPECT_EQ(rebase(normal_form(e, cp), L), normal_form(rebase(e, L), cl));
    }
}

TEST(Integrality, Examples)
{
    RingPtr R = laurent_t();
    FormalP ctx(R, 2);
    Series half = ctx.generator() * make_scalar(1, 2);
    EXPECT_EQ(coefficient_of(half, "t", 1), var(R, "b1"));
    EXPECT_TRUE(is_integral_mod_ideal(half, ctx));
    EXPECT_FALSE(is_integral_mod_ideal(cst(R, 1, 2), ctx));
    EXPECT_TRUE(is_integral_mod_ideal(var(R, "t") * make_scalar(1, 3), ctx));
    EXPECT_FALSE(is_integral_mod_ideal(var(R, "t", -1), ctx));
    // 2 t^-1 = g t^-1 - (c1 + c2 t + ...): integral.
    EXPECT_TRUE(is_integral_mod_ideal(cst(R, 2) * var(R, "t", -1), ctx));
}

TEST(Integrality, InvariantUnderIdealMultiples)
{
    RingPtr R = laurent_t();
    std::mt19937 rng(13);
    for (long p : {2L, 3L}) {
        FormalP ctx(R, p);
        for (int i = 0; i < 6; ++i) {
            Series f = random_series(R, rng, -2, 3, 4);
            Series h = random_series(R, rng, -2, 2, 3);
            EXPECT_EQ(is_integral_mod_ideal(f + h * ctx.generator(), ctx), is_integral_mod_ideal(f, ctx));
        }
    }
}

TEST(DivideByFormalP, Examples)
{
    RingPtr R = laurent_t();
    FormalP ctx(R, 3);
    EXPECT_EQ(divide_by_formal_p(ctx.generator(), ctx), cst(R, 1));
    Series c1 = coefficient_of(ctx.generator(), "t", 1);
    EXPECT_EQ(divide_by_formal_p(cst(R, 3) * var(R, "t", -1) + c1, ctx), var(R, "t", -1));
    EXPECT_THROW(divide_by_formal_p(cst(R, 1), ctx), DivisibilityError);
    try {
        divide_by_formal_p(cst(R, 1), ctx);
    } catch (const DivisibilityError& e) {
        EXPECT_NE(std::string(e.what()).find("t^0"), std::string::npos);
    }
}

TEST(DivideByFormalP, Uniqueness)
{
    RingPtr R = laurent_t();
    std::mt19937 rng(99);
    for (long p : {2L, 3L, 5L}) {
        FormalP ctx(R, p);
        for (int i = 0; i < 6; ++i) {
            Series H = random_series(R, rng, -4, 0, 6);
            Series S = split_t_parts(H * ctx.generator()).first;
            EXPECT_EQ(divide_by_formal_p(S, ctx), H);
        }
    }
}
