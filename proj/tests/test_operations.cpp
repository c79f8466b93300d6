#include "cobcalc/operations.hpp"
#include "cobcalc/render.hpp"

#include <gtest/gtest.h>

using namespace cobcalc;

namespace {

Series var(const RingPtr& R, const std::string& n, int e = 1) { return Series::variable(R, n, e); }
Series cst(const RingPtr& R, long n) { return Series::constant(R, n); }
Series b(const RingPtr& R, int i, int e = 1) { return Series::variable(R, b_name(i), e); }

WorkSpec small(int W = 4, int zcap = 4) { return {W, 1, zcap, std::nullopt, false}; }

Series nonpositive(const Series& f) { return split_t_parts(f).first; }

// F(x, y) rebuilt from B and its compositional inverse.
Series fgl_by_composition(const RingPtr& R, const std::string& x, const std::string& y)
{
    Series s = var(R, x);
    Series B = s;
    for (int i = 1; i <= R->trunc_minus(); ++i) {
        B += b(R, i) * pow(s, i + 1);
    }
    Series lx = compositional_inverse(B, x);
    Series ly = rebase(lx, R, {{x, y}});
    return substitute(B, x, lx + ly);
}

} // namespace

TEST(Descriptor, SteenrodGammaPrimeTwo)
{
    OperationDescriptor st = quillen_steenrod(2, {1}, small());
    const RingPtr& R = st.ring();
    // Oracle: x * F(x, t) with F from direct composition, in a power-series ring.
    RingPtr P = ambient_ring({power_var("x"), power_var("t")}, 4, 4);
    Series want = var(P, "x") * fgl_by_composition(P, "x", "t");
    Series got = rebase(filter_exponent(st.gamma(), "t", [](int k) { return k <= 3; }), P);
    EXPECT_EQ(got, want);
    EXPECT_EQ(st.c(), var(R, "t"));
    Series g2 = coefficient_of(st.gamma(), "x", 2);
    EXPECT_EQ(filter_exponent(g2, "t", [](int k) { return k <= 2; }),
              cst(R, 1) + cst(R, 2) * b(R, 1) * var(R, "t") + (cst(R, 3) * b(R, 2) - cst(R, 2) * b(R, 1, 2)) * var(R, "t", 2));
    EXPECT_EQ(coefficient_of(coefficient_of(st.gamma(), "x", 3), "t", 1), cst(R, 3) * b(R, 2) - cst(R, 2) * b(R, 1, 2));
}

TEST(Descriptor, GammaVanishesAtRepresentativeRoots)
{
    // gamma(x) = x prod (x +_F [i]t) vanishes at x = [-i](t).
    for (auto [p, reps] : std::vector<std::pair<long, std::vector<long>>>{{2, {1}}, {2, {-1}}, {3, {1, -1}}}) {
        OperationDescriptor st = quillen_steenrod(p, reps, small());
        const RingPtr& R = st.ring();
        for (long i : reps) {
            Series root = formal_int_mul(R, "t", static_cast<int>(-i));
            EXPECT_TRUE(substitute(st.gamma(), "x", root).is_zero()) << p << " " << i;
        }
    }
}

TEST(Descriptor, LeadingCoefficient)
{
    for (long p : {2L, 3L, 5L}) {
        for (const auto& reps : {canonical_reps(p), symmetric_reps(p)}) {
            OperationDescriptor st = quillen_steenrod(p, reps, small());
            const RingPtr& R = st.ring();
            Series prod = cst(R, 1);
            for (long i : reps) {
                prod *= formal_int_mul(R, "t", static_cast<int>(i));
            }
            EXPECT_EQ(st.c(), prod);
            EXPECT_EQ(coefficient_of(st.c(), "t", static_cast<int>(p - 1)).constant_term(), Scalar(st.reps_product()));
            EXPECT_EQ(min_exponent(st.c(), "t"), p - 1);
            EXPECT_FALSE(st.is_stable());
        }
    }
}

TEST(Descriptor, InvalidRepresentatives)
{
    EXPECT_THROW(quillen_steenrod(3, {1, 4}, small()), std::invalid_argument);
    EXPECT_THROW(quillen_steenrod(2, {2}, small()), std::invalid_argument);
    EXPECT_THROW(quillen_steenrod(4, {1, 2, 3}, small()), std::invalid_argument);
}

TEST(Descriptor, RepresentativeGrids)
{
    EXPECT_EQ(symmetric_reps(2), std::vector<long>{-1});
    EXPECT_EQ(symmetric_reps(5), (std::vector<long>{1, -1, 2, -2}));
    for (long p : {2L, 3L, 5L, 7L}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
            auto r = random_reps(p, seed);
            EXPECT_NO_THROW(validate_reps(p, r));
            EXPECT_EQ(r, random_reps(p, seed));
        }
    }
}

TEST(CoefficientMap, TwistedExponentialLowTerms)
{
    // b~1 = (c b1 + g2)/c^2 and b~2 = (c b2 + 2 b1 g2 + g3)/c^3, read off
    // gamma(B(s/c)) by hand.
    for (auto [p, reps] : std::vector<std::pair<long, std::vector<long>>>{{2, {1}}, {3, {1, 2}}, {5, {1, -1, 2, -2}}}) {
        OperationDescriptor st = quillen_steenrod(p, reps, small());
        const RingPtr& R = st.ring();
        Series c = st.c();
        Series ci = mul_inverse(c);
        Series g2 = coefficient_of(st.gamma(), "x", 2);
        Series g3 = coefficient_of(st.gamma(), "x", 3);
        EXPECT_EQ(st.b_tilde(1), (c * b(R, 1) + g2) * ci * ci);
        EXPECT_EQ(st.b_tilde(2), (c * b(R, 2) + cst(R, 2) * b(R, 1) * g2 + g3) * ci * ci * ci);
    }
}

TEST(CoefficientMap, SpotValuePrimeTwo)
{
    OperationDescriptor st = quillen_steenrod(2, {1}, small());
    const RingPtr& R = st.ring();
    Series want = var(R, "t", -2) + cst(R, 3) * b(R, 1) * var(R, "t", -1) + cst(R, 3) * b(R, 2) - cst(R, 2) * b(R, 1, 2);
    EXPECT_EQ(nonpositive(st.b_tilde(1)), want);
}

TEST(CoefficientMap, IdentityAndIntegrality)
{
    RingPtr R = work_ring(2, small());
    OperationDescriptor id = make_multiplicative("id", var(R, "x"));
    EXPECT_TRUE(id.is_stable());
    for (int i = 1; i <= 4; ++i) {
        EXPECT_EQ(id.b_tilde(i), b(R, i));
    }
    Series e = lift(pn_class(4, 2), R) * var(R, "z") + var(R, "z", 3);
    EXPECT_EQ(apply(id, e), e);

    // reps {1,-1} at p = 3 have product -1: the descriptor is integral.
    OperationDescriptor st = quillen_steenrod(3, {1, -1}, small());
    for (int i = 1; i <= 4; ++i) {
        for (const auto& [m, c] : st.b_tilde(i).terms()) {
            EXPECT_TRUE(is_integer(c));
        }
    }
}

TEST(Apply, FirstChernClassAndProjectiveLine)
{
    OperationDescriptor st = quillen_steenrod(2, {1}, small());
    const RingPtr& R = st.ring();
    Series z = var(R, "z");
    EXPECT_EQ(apply(st, z), rebase(st.gamma(), R, {{"x", "z"}}));
    EXPECT_EQ(apply(st, cst(R, 1)), cst(R, 1));
    Series P1 = lift(pn_class(4, 1), R);
    Series want = cst(R, -2) * var(R, "t", -2) - cst(R, 6) * b(R, 1) * var(R, "t", -1) -
                  (cst(R, 6) * b(R, 2) - cst(R, 4) * b(R, 1, 2));
    EXPECT_EQ(nonpositive(apply(st, P1)), want);
    EXPECT_EQ(apply(st, P1), cst(R, -2) * st.b_tilde(1));
}

TEST(Apply, IsARingHomomorphism)
{
    OperationDescriptor st = quillen_steenrod(3, {1, 2}, small());
    const RingPtr& R = st.ring();
    Series u = lift(pn_class(4, 1), R) + var(R, "z");
    Series v = lift(pn_class(4, 2), R) * var(R, "z") - cst(R, 3);
    EXPECT_EQ(apply(st, u * v), apply(st, u) * apply(st, v));
    EXPECT_EQ(apply(st, u + v), apply(st, u) + apply(st, v));
}

TEST(Apply, FormalGroupLawMorphism)
{
    // F must be complete inside the z-caps (a_ij has b-weight i+j-1).
    WorkSpec two{5, 2, 3, std::nullopt, false};
    for (auto [p, reps] : std::vector<std::pair<long, std::vector<long>>>{{2, {1}}, {3, {1, -1}}}) {
        OperationDescriptor st = quillen_steenrod(p, reps, two);
        Series F = universal_fgl(st.ring(), "z1", "z2");
        EXPECT_EQ(apply(st, F), substitute(st.gamma(), "x", F));
    }
    OperationDescriptor ln = landweber_novikov(two);
    Series F = universal_fgl(ln.ring(), "z1", "z2");
    EXPECT_EQ(apply(ln, F), substitute(ln.gamma(), "x", F));
}

TEST(LandweberNovikov, TotalOperation)
{
    OperationDescriptor ln = landweber_novikov(small(3, 4));
    const RingPtr& R = ln.ring();
    EXPECT_TRUE(ln.is_stable());
    EXPECT_EQ(ln.b_tilde(1), b(R, 1) + var(R, "bp1"));
    Series z = var(R, "z");
    EXPECT_EQ(apply(ln, z), z + var(R, "bp1") * z * z + var(R, "bp2") * pow(z, 3) + var(R, "bp3") * pow(z, 4));
    std::map<std::string, std::string> to_dual;
    for (int i = 1; i <= 3; ++i) {
        to_dual[b_name(i)] = bp_name(i);
    }
    for (int n = 1; n <= 3; ++n) {
        Series u = lift(pn_class(3, n), R);
        Series image = apply(ln, u);
        // bp -> 0 is the identity; b -> 0 is the Hurewitz map in bp-coordinates.
        Series no_dual = set_to_zero(image, [&](std::size_t i) { return R->var(i).name.rfind("bp", 0) == 0; });
        EXPECT_EQ(no_dual, u);
        EXPECT_EQ(chow_trace(image), rebase(u, R, to_dual));
    }
}

// Inputs keep G(e) within the b-weight bound: H lowers b-weight.
TEST(Compose, SteenrodAfterLandweberNovikov)
{
    WorkSpec spec{3, 1, 3, -14, true};
    OperationDescriptor H = quillen_steenrod(2, {1}, spec);
    OperationDescriptor G = landweber_novikov(spec);
    OperationDescriptor HG = compose(H, G);
    const RingPtr& R = H.ring();
    for (const Series& e : {lift(pn_class(3, 1), R), lift(pn_class(3, 2), R), lift(pn_class(3, 1), R) * var(R, "z"), var(R, "z", 2)}) {
        EXPECT_EQ(apply(HG, e), apply(H, apply(G, e)));
    }
}

TEST(SymmetricOperation, SpotValues)
{
    OperationDescriptor st = quillen_steenrod(2, {1}, small());
    const RingPtr& R = st.ring();
    SymmetricResult r = symmetric_operation(st, lift(pn_class(4, 1), R));
    EXPECT_EQ(r.phi, var(R, "t", -2) + cst(R, 2) * b(R, 1) * var(R, "t", -1));
    EXPECT_EQ(nonpositive(r.defect),
              cst(R, 2) * var(R, "t", -2) + cst(R, 6) * b(R, 1) * var(R, "t", -1) + cst(R, 6) * b(R, 2));
    EXPECT_GT(min_exponent(r.remainder, "t"), 0);
}

TEST(SymmetricOperation, EmbeddingsAndUnit)
{
    for (long p : {2L, 3L, 5L}) {
        OperationDescriptor st = quillen_steenrod(p, canonical_reps(p), small());
        const RingPtr& R = st.ring();
        EXPECT_TRUE(symmetric_operation(st, cst(R, 1)).phi.is_zero());
        for (int k = 1; k <= 4; ++k) {
            EXPECT_TRUE(symmetric_operation(st, var(R, "z", k)).phi.is_zero()) << p << " z^" << k;
        }
    }
}

TEST(SymmetricOperation, DefectIsDivisibleOnMixedInputs)
{
    for (long p : {2L, 3L}) {
        for (const auto& reps : {canonical_reps(p), symmetric_reps(p), random_reps(p, 5)}) {
            OperationDescriptor st = quillen_steenrod(p, reps, small());
            const RingPtr& R = st.ring();
            Series e = cst(R, 3) * lift(pn_class(4, 2), R) - lift(pn_class(4, 1), R) * var(R, "z") + var(R, "z", 2);
            SymmetricResult r = symmetric_operation(st, e);
            EXPECT_LE(max_exponent(r.phi, "t"), 0);
            // Oracle: g * phi reproduces the nonpositive part of the defect.
            const Series& g = st.formal_p().generator();
            EXPECT_EQ(nonpositive(g * r.phi), nonpositive(r.defect));
        }
    }
}

TEST(SymmetricOperation, NonDivisibleInputIsReported)
{
    // A "defect" that is not divisible: the triangular solve must refuse it.
    OperationDescriptor st = quillen_steenrod(3, {1, 2}, small());
    const RingPtr& R = st.ring();
    EXPECT_THROW(divide_by_formal_p(var(R, "t", -3), st.formal_p()), DivisibilityError);
}

TEST(Slice, ValuesAndLinearity)
{
    OperationDescriptor st = quillen_steenrod(2, {1}, small());
    const RingPtr& R = st.ring();
    Series phi = symmetric_operation(st, lift(pn_class(4, 1), R)).phi;
    EXPECT_EQ(slice(st, phi, var(R, "t", 2)), cst(R, 1));
    Series q1 = var(R, "t") + b(R, 1);
    Series q2 = cst(R, 3) * var(R, "t", 2);
    EXPECT_EQ(slice(st, phi, q1 + q2), slice(st, phi, q1) + slice(st, phi, q2));
    Series phz = symmetric_operation(st, var(R, "z")).phi;
    EXPECT_TRUE(slice(st, phz, q1).is_zero());
}

TEST(ChowTrace, Basics)
{
    OperationDescriptor st = quillen_steenrod(3, {1, 2}, small());
    const RingPtr& R = st.ring();
    Series z = var(R, "z");
    for (int n = 1; n <= 4; ++n) {
        EXPECT_TRUE(chow_trace(lift(pn_class(4, n), R)).is_zero());
    }
    EXPECT_EQ(chow_trace(z), z);
    EXPECT_TRUE(chow_trace(z * lift(pn_class(4, 1), R)).is_zero());
    // st^{t^{-(p-1)k}}(z^k) = reps_product^k z^k.
    for (int k = 1; k <= 3; ++k) {
        Series got = st_slice(st, var(R, "z", k), var(R, "t", -2 * k));
        EXPECT_EQ(got, Scalar(ipow(2, k)) * var(R, "z", k));
    }
}

TEST(OmegaChe, ZeroBundleAndLineBundle)
{
    OperationDescriptor st = quillen_steenrod(2, {1}, small());
    const RingPtr& R = st.ring();
    EXPECT_EQ(omega_che(st, {}), cst(R, 1));
    Series z = var(R, "z");
    EXPECT_EQ(omega_che(st, {z}), formal_sum(z, var(R, "t")));
}

TEST(OmegaChe, MinusTangentOfProjectiveLineMatchesChow)
{
    // -T = O - 2 O(1); on P^1, h^2 = 0.
    for (auto [p, reps] : std::vector<std::pair<long, std::vector<long>>>{{2, {1}}, {3, {1, 2}}, {3, {1, -1}}}) {
        OperationDescriptor st = quillen_steenrod(p, reps, small());
        const RingPtr& R = st.ring();
        Series z = var(R, "z");
        Series che = chow_trace(omega_che(st, {Series(R)}, {z, z}));
        Series ours = filter_exponent(che, "z", [](int k) { return k <= 1; });
        Series chow = chow_chern_che(ChowModel{1, 0}, p, reps);
        Series theirs = rebase(chow, R, {{"h", "z"}});
        EXPECT_EQ(filter_exponent(ours, "t", [&](int k) { return k >= min_exponent(chow, "t"); }), theirs);
    }
}

TEST(TomDieck, UnitFirstChernClassAndPower)
{
    for (long p : {2L, 3L}) {
        OperationDescriptor sq = tom_dieck_descriptor(p, small());
        const RingPtr& R = sq.ring();
        const FormalP& ctx = sq.formal_p();
        SqResult one = tom_dieck_sq(sq, cst(R, 1));
        EXPECT_TRUE(one.integral);
        EXPECT_EQ(one.value, cst(R, 1));
        SqResult z = tom_dieck_sq(sq, var(R, "z"));
        EXPECT_TRUE(z.integral);
        EXPECT_EQ(z.value, normal_form(rebase(sq.gamma(), R, {{"x", "z"}}), ctx));
        Series P2 = lift(pn_class(4, 2), R);
        SqResult s = tom_dieck_sq(sq, P2);
        EXPECT_TRUE(s.integral) << s.witness;
        EXPECT_EQ(coefficient_of(s.value, "t", 0), coefficient_of(normal_form(pow(P2, static_cast<int>(p)), ctx), "t", 0));
    }
}
