#pragma once

// Multiplicative operations on the cellular models L[[z1..zl]]: a descriptor
// is the power series gamma(x); coefficients of L move along the twisted
// exponential b~_i = [s^{i+1}] gamma(B(s/c)), c = gamma'(0), and a first
// Chern class z goes to gamma(z).

#include "cobcalc/quotient.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cobcalc {

// Shape of the ring an operation computes in.
struct WorkSpec {
    int W = 6;        // b-weight truncation
    int zvars = 1;    // number of P^infinity factors
    int zcap = 6;     // cap on each z exponent
    std::optional<int> tfloor;
    bool dual = false; // adds bp1..bpW, the Landweber-Novikov parameters
};

inline std::string z_name(int zvars, int j) { return zvars == 1 ? "z" : "z" + std::to_string(j); }

inline std::string bp_name(int i) { return "bp" + std::to_string(i); }

inline bool is_b_variable(const Variable& v)
{
    return v.weight < 0 && v.name.size() > 1 && v.name[0] == 'b' && v.name[1] != 'p';
}

inline int default_tfloor(long p, int W) { return -static_cast<int>(p * (W + 2)) - 2; }

// {t, x, s, z.., bp.., b..}. x hosts gamma, s the twisted exponential.
inline RingPtr work_ring(long p, const WorkSpec& spec)
{
    if (spec.zvars < 0 || spec.zcap < 1 || spec.W < 0) {
        throw std::invalid_argument("work_ring: bad shape");
    }
    int xcap = std::max(spec.zcap, spec.W + 1);
    std::vector<Variable> vars{laurent_var("t", spec.tfloor.value_or(default_tfloor(p, spec.W))),
                               power_var("x", xcap), power_var("s", spec.W + 1)};
    for (int j = 1; j <= spec.zvars; ++j) {
        vars.push_back(power_var(z_name(spec.zvars, j), spec.zcap));
    }
    if (spec.dual) {
        auto bp = b_variables(spec.W, "bp");
        vars.insert(vars.end(), bp.begin(), bp.end());
    }
    return ambient_ring(std::move(vars), 1000, spec.W);
}

enum class Target { laurent, quotient, dual };

inline const char* target_name(Target t)
{
    switch (t) {
    case Target::laurent:
        return "laurent";
    case Target::quotient:
        return "quotient";
    case Target::dual:
        return "dual";
    }
    return "?";
}

class OperationDescriptor {
public:
    OperationDescriptor(std::string name, Series gamma, Target target, long p = 0, std::vector<long> reps = {})
        : name_(std::move(name)), ring_(gamma.ring()), gamma_(std::move(gamma)), c_(ring_), target_(target), p_(p),
          reps_(std::move(reps))
    {
        if (!coefficient_of(gamma_, "x", 0).is_zero()) {
            throw SeriesError("descriptor: gamma has a constant term");
        }
        c_ = coefficient_of(gamma_, "x", 1);
        if (c_.is_zero()) {
            throw SeriesError("descriptor: gamma has no linear term");
        }
        Series y = substitute(exponential(ring_, "s"), "s", Series::variable(ring_, "s") * mul_inverse(c_));
        Series twisted = substitute(gamma_, "x", y);
        for (int i = 1; i <= ring_->trunc_minus(); ++i) {
            bindings_.emplace_back(b_name(i), coefficient_of(twisted, "s", i + 1));
        }
        if (p_ != 0) {
            formal_p_ = std::make_shared<const FormalP>(ring_, p_);
        }
    }

    const std::string& name() const { return name_; }
    const RingPtr& ring() const { return ring_; }
    const Series& gamma() const { return gamma_; }
    // gamma'(0).
    const Series& c() const { return c_; }
    Target target() const { return target_; }
    long p() const { return p_; }
    const std::vector<long>& reps() const { return reps_; }
    Integer reps_product() const { return cobcalc::reps_product(reps_); }

    // b~_i, i = 1..W.
    const Series& b_tilde(int i) const { return bindings_.at(static_cast<std::size_t>(i - 1)).second; }
    const std::vector<std::pair<std::string, Series>>& coefficient_bindings() const { return bindings_; }

    const FormalP& formal_p() const
    {
        if (!formal_p_) {
            throw SeriesError("descriptor " + name_ + " has no prime");
        }
        return *formal_p_;
    }

    bool is_stable() const { return c_ == Series::constant(ring_, 1); }

private:
    std::string name_;
    RingPtr ring_;
    Series gamma_;
    Series c_;
    Target target_;
    long p_;
    std::vector<long> reps_;
    std::vector<std::pair<std::string, Series>> bindings_;
    std::shared_ptr<const FormalP> formal_p_;
};

inline OperationDescriptor make_multiplicative(std::string name, Series gamma, Target target = Target::laurent)
{
    return OperationDescriptor(std::move(name), std::move(gamma), target);
}

inline std::string reps_label(const std::vector<long>& reps)
{
    std::string s = "{";
    for (std::size_t k = 0; k < reps.size(); ++k) {
        s += (k ? "," : "") + std::to_string(reps[k]);
    }
    return s + "}";
}

// gamma = x * prod_j (x +_F [i_j](t)).
inline OperationDescriptor quillen_steenrod(long p, const std::vector<long>& reps, const WorkSpec& spec = {},
                                            Target target = Target::laurent)
{
    validate_reps(p, reps);
    RingPtr R = work_ring(p, spec);
    Series x = Series::variable(R, "x");
    Series gamma = x;
    for (long i : reps) {
        gamma *= formal_sum(x, formal_int_mul(R, "t", static_cast<int>(i)));
    }
    std::string name = (target == Target::quotient ? "Sq" : "St") + reps_label(reps);
    return OperationDescriptor(std::move(name), std::move(gamma), target, p, reps);
}

// gamma = x + bp1 x^2 + bp2 x^3 + ...
inline OperationDescriptor landweber_novikov(WorkSpec spec = {})
{
    spec.dual = true;
    RingPtr R = work_ring(2, spec);
    Series x = Series::variable(R, "x");
    Series gamma = x;
    for (int i = 1; i <= spec.W; ++i) {
        gamma += Series::variable(R, bp_name(i)) * pow(x, i + 1);
    }
    return OperationDescriptor("S^Tot", std::move(gamma), Target::dual);
}

inline std::vector<long> canonical_reps(long p)
{
    std::vector<long> reps;
    for (long i = 1; i < p; ++i) {
        reps.push_back(i);
    }
    return reps;
}

// {-1} for p = 2, {1,-1,2,-2,...} otherwise.
inline std::vector<long> symmetric_reps(long p)
{
    if (p == 2) {
        return {-1};
    }
    std::vector<long> reps;
    for (long i = 1; 2 * i < p; ++i) {
        reps.push_back(i);
        reps.push_back(-i);
    }
    return reps;
}

// Each residue r shifted by a random multiple of p in [-2p, 2p].
inline std::vector<long> random_reps(long p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(p));
    std::uniform_int_distribution<long> k(-2, 2);
    std::vector<long> reps;
    for (long r = 1; r < p; ++r) {
        reps.push_back(r + p * k(rng));
    }
    return reps;
}

// The tom Dieck operation: representatives 1..p-1, results read in B.
inline OperationDescriptor tom_dieck_descriptor(long p, const WorkSpec& spec = {})
{
    return quillen_steenrod(p, canonical_reps(p), spec, Target::quotient);
}

// ---- evaluation ------------------------------------------------------------

inline Series lift(const LazardElement& u, const RingPtr& R) { return rebase(u.ambient, R); }

// phi^(u): u evaluated at b~.
inline Series coefficient_map(const OperationDescriptor& op, const Series& u)
{
    u.check_same_ring(op.gamma());
    return substitute(u, op.coefficient_bindings());
}

inline Series gamma_at(const OperationDescriptor& op, const std::string& var)
{
    return rebase(op.gamma(), op.ring(), {{"x", var}});
}

// G(sum u_a z^a) = sum phi^(u_a) prod gamma(z_j)^{a_j}.
inline Series apply(const OperationDescriptor& op, const Series& e)
{
    e.check_same_ring(op.gamma());
    auto bindings = op.coefficient_bindings();
    for (std::size_t i = 0; i < op.ring()->size(); ++i) {
        const std::string& name = op.ring()->var(i).name;
        if (name[0] == 'z') {
            bindings.emplace_back(name, gamma_at(op, name));
        }
    }
    return substitute(e, bindings);
}

// gamma_{H o G}(x) = phi_H(gamma_G)(gamma_H(x)).
inline OperationDescriptor compose(const OperationDescriptor& H, const OperationDescriptor& G)
{
    Series g = rebase(G.gamma(), H.ring());
    Series gamma = substitute(coefficient_map(H, g), "x", H.gamma());
    return OperationDescriptor(H.name() + "o" + G.name(), std::move(gamma), H.target(), H.p(), H.reps());
}

// ---- symmetric operations ---------------------------------------------------

struct SymmetricResult {
    Series phi;       // t-degrees <= 0
    Series defect;    // e^p - St(e)
    Series remainder; // defect - g*phi, t-degrees > 0
};

inline SymmetricResult symmetric_operation(const OperationDescriptor& st, const Series& e)
{
    const FormalP& ctx = st.formal_p();
    Series S = pow(e, static_cast<int>(st.p())) - apply(st, e);
    Series phi = divide_by_formal_p(S, ctx);
    Series rem = S - ctx.generator() * phi;
    if (!rem.is_zero() && min_exponent(rem, "t") <= 0) {
        throw DivisibilityError("symmetric operation: remainder has t-degree " +
                                    std::to_string(min_exponent(rem, "t")),
                                describe_monomial(*rem.ring(), split_t_parts(rem).first.terms().front().first));
    }
    if (!phi.is_zero() && max_exponent(phi, "t") > 0) {
        throw SeriesError("symmetric operation: positive t-power in result");
    }
    return {std::move(phi), std::move(S), std::move(rem)};
}

inline Series omega_t(const OperationDescriptor& op) { return invariant_form(op.ring(), "t"); }

// Res_{t=0} q * f * omega_t / t.
inline Series slice(const OperationDescriptor& op, const Series& f, const Series& q)
{
    return coefficient_of(q * f * omega_t(op), "t", 0);
}

// b_i -> 0 (the classifying map of the additive law).
inline Series chow_trace(const Series& f)
{
    const Ring& R = *f.ring();
    return set_to_zero(f, [&](std::size_t i) { return is_b_variable(R.var(i)); });
}

// st^f(e): Chow trace of Res f * St(e) * omega_t / t.
inline Series st_slice(const OperationDescriptor& st, const Series& e, const Series& f)
{
    return chow_trace(slice(st, apply(st, e), f));
}

// prod over roots of prod_j (root +_F [i_j](t)); `virtual_roots` enter
// inverted.
inline Series omega_che(const OperationDescriptor& st, const std::vector<Series>& roots,
                        const std::vector<Series>& virtual_roots = {})
{
    const RingPtr& R = st.ring();
    auto factor = [&](const Series& root) {
        Series out = Series::constant(R, 1);
        for (long i : st.reps()) {
            out *= formal_sum(root, formal_int_mul(R, "t", static_cast<int>(i)));
        }
        return out;
    };
    Series out = Series::constant(R, 1);
    for (const Series& r : roots) {
        out *= factor(r);
    }
    for (const Series& r : virtual_roots) {
        out *= mul_inverse(factor(r));
    }
    return out;
}

struct SqResult {
    Series value; // normal form in B
    bool integral = true;
    std::string witness;
};

// Apply gamma_Sq in the Laurent ring, then certify the reduction has no
// negative t-powers and no p-denominators.
inline SqResult tom_dieck_sq(const OperationDescriptor& sq, const Series& e)
{
    Reduction r = reduce_mod_formal_p(apply(sq, e), sq.formal_p());
    return {std::move(r.normal_form), r.integral, std::move(r.witness)};
}

} // namespace cobcalc
