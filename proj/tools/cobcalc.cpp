// cobcalc: command-line front end.
//
// Exit codes: 0 success, 1 a verification suite failed, 2 bad arguments,
// 3 a divisibility or integrality check was falsified.

#include "cobcalc/cobcalc.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cobcalc;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kBadArgs = 2;
constexpr int kFalsified = 3;

struct RunConfig {
    long p = 2;
    std::string reps_text;
    int deg = 8;
    int bweight = 8;
    std::optional<int> tfloor;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string out;

    bool json() const { return format == "json"; }

    std::vector<long> reps() const
    {
        std::vector<long> r;
        if (reps_text.empty()) {
            r = canonical_reps(p);
        } else {
            std::stringstream ss(reps_text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    r.push_back(std::stol(item, &used));
                    if (used != item.size()) {
                        throw std::invalid_argument(item);
                    }
                } catch (const std::exception&) {
                    throw std::invalid_argument("--reps: not an integer: '" + item + "'");
                }
            }
        }
        validate_reps(p, r);
        return r;
    }

    WorkSpec spec() const { return {bweight, 1, deg, tfloor, false}; }
};

class Falsified : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VerifyFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--p", cfg.p, "prime (default 2)");
    sub->add_option("--reps", cfg.reps_text, "representatives, comma separated (default 1..p-1)");
    sub->add_option("--deg", cfg.deg, "variable degree / z cap (default 8, env COBCALC_DEG)");
    sub->add_option("--bweight", cfg.bweight, "b-weight truncation (default 8)");
    sub->add_option("--tfloor", cfg.tfloor, "lowest t exponent of Laurent contexts");
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized suites (default 1)");
    sub->add_option("--out", cfg.out, "write output to FILE");
}

class Output {
public:
    explicit Output(const RunConfig& cfg)
    {
        if (!cfg.out.empty()) {
            file_.open(cfg.out);
            if (!file_) {
                throw std::invalid_argument("cannot open --out file " + cfg.out);
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_series(std::ostream& os, const RunConfig& cfg, const Series& f)
{
    if (cfg.json()) {
        os << to_json(f).dump() << "\n";
    } else {
        os << to_text(f) << "\n";
    }
}

// ---- fgl ------------------------------------------------------------------

struct FglArgs {
    std::string what;
    int n = 2;
    int i = 1;
    int j = 1;
};

int cmd_fgl(const RunConfig& cfg, const FglArgs& a)
{
    if (cfg.deg < 1) {
        throw std::invalid_argument("--deg must be positive");
    }
    // Coefficients are homogeneous, so b-weight never exceeds the degree.
    const int W = std::min(cfg.bweight, cfg.deg);
    Output out(cfg);
    std::ostream& os = out.stream();
    if (a.what == "a_ij") {
        if (a.i < 0 || a.j < 0 || a.i + a.j < 1) {
            throw std::invalid_argument("a_ij needs i, j >= 0 and i + j >= 1");
        }
        emit_series(os, cfg, fgl_coefficient(std::max(cfg.bweight, a.i + a.j - 1), a.i, a.j).ambient);
        return 0;
    }
    if (a.what == "F") {
        RingPtr R = ambient_ring({power_var("x"), power_var("y")}, cfg.deg, W);
        emit_series(os, cfg, universal_fgl(R));
        return 0;
    }
    RingPtr R = ambient_ring({power_var("t")}, cfg.deg, W);
    if (a.what == "[n]") {
        emit_series(os, cfg, formal_int_mul(R, "t", a.n));
    } else if (a.what == "inverse") {
        emit_series(os, cfg, formal_int_mul(R, "t", -1));
    } else if (a.what == "omega") {
        emit_series(os, cfg, invariant_form(R, "t"));
    } else {
        throw std::invalid_argument("--what must be one of F, [n], a_ij, omega, inverse");
    }
    return 0;
}

// ---- class ----------------------------------------------------------------

// Partitions of n as (part, multiplicity), largest part first.
void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<std::pair<int, int>> as_monomial(const std::vector<int>& parts)
{
    std::vector<std::pair<int, int>> J;
    for (int k : parts) {
        if (!J.empty() && J.back().first == k) {
            ++J.back().second;
        } else {
            J.emplace_back(k, 1);
        }
    }
    return J;
}

std::string monomial_name(const std::vector<std::pair<int, int>>& J)
{
    std::string s;
    for (const auto& [i, e] : J) {
        s += (s.empty() ? "" : "*") + b_name(i) + (e == 1 ? "" : "^" + std::to_string(e));
    }
    return s.empty() ? "1" : s;
}

int cmd_class(const RunConfig& cfg, const std::string& kind, int n, int d)
{
    LazardElement u = [&] {
        if (kind == "Pn") {
            if (n < 0) {
                throw std::invalid_argument("--n must be >= 0");
            }
            return pn_class(std::max(cfg.bweight, n), n);
        }
        if (n < 2 || d < 1) {
            throw std::invalid_argument("hypersurface needs --n >= 2 and --d >= 1");
        }
        return hypersurface_class(std::max(cfg.bweight, n - 1), n, d);
    }();
    const std::string name = kind == "Pn" ? "P" + std::to_string(n) : "H(" + std::to_string(n) + "," + std::to_string(d) + ")";
    std::optional<Scalar> s;
    if (u.dimension > 0) {
        s = s_number(u);
    }
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(u.dimension, u.dimension, cur, parts);
    Json chi = Json::object();
    for (const auto& P : parts) {
        auto J = as_monomial(P);
        chi[monomial_name(J)] = char_number(u, J).get_str();
    }
    bool in_ideal = u.dimension > 0 && in_Ip(u, cfg.p);
    std::optional<int> nu_r;
    for (int r = 1; ipow(cfg.p, r) - 1 <= u.dimension; ++r) {
        if (ipow(cfg.p, r) - 1 == u.dimension) {
            nu_r = r;
        }
    }
    std::optional<bool> is_projective;
    if (kind != "Pn") {
        is_projective = u.ambient == pn_class(std::max(cfg.bweight, n - 1), u.dimension).ambient;
    }
    Output out(cfg);
    std::ostream& os = out.stream();
    if (cfg.json()) {
        Json j;
        j["class"] = name;
        j["dimension"] = u.dimension;
        j["ambient"] = to_json(u.ambient);
        j["s_number"] = s ? Json(s->get_str()) : Json(nullptr);
        j["char_numbers"] = chi;
        j["p"] = cfg.p;
        j["in_Ip"] = in_ideal;
        if (nu_r) {
            j["nu_r"] = {{"r", *nu_r}, {"value", is_nu_r(u, cfg.p, *nu_r)}};
        }
        if (is_projective) {
            j["equals_projective_space"] = *is_projective;
        }
        os << j.dump() << "\n";
        return 0;
    }
    os << "class: " << name << "\n";
    os << "ambient: " << to_text(u.ambient) << "\n";
    os << "dimension: " << u.dimension << "\n";
    if (is_projective) {
        os << "equals P" << u.dimension << ": " << (*is_projective ? "true" : "false") << "\n";
    }
    os << "s: " << (s ? s->get_str() : "undefined") << "\n";
    for (const auto& [mono, value] : chi.items()) {
        os << "chi[" << mono << "]: " << value.get<std::string>() << "\n";
    }
    os << "in I(" << cfg.p << "): " << (in_ideal ? "true" : "false") << "\n";
    if (nu_r) {
        os << "nu_" << *nu_r << "(p=" << cfg.p << "): " << (is_nu_r(u, cfg.p, *nu_r) ? "true" : "false") << "\n";
    }
    return 0;
}

// ---- op -------------------------------------------------------------------

Series read_element(const std::string& text, const RingPtr& R)
{
    bool is_file = text.size() > 5 && text.substr(text.size() - 5) == ".json";
    if (!text.empty() && text[0] == '@') {
        is_file = true;
    }
    if (!is_file) {
        return parse_element(text, R);
    }
    std::ifstream in(text[0] == '@' ? text.substr(1) : text);
    if (!in) {
        throw std::invalid_argument("cannot read element file " + text);
    }
    Json j = Json::parse(in);
    return rebase(series_from_json(j), R);
}

int cmd_op(const RunConfig& cfg, const std::string& which, const std::string& input, const std::string& q_text)
{
    if (cfg.deg < 1 || cfg.bweight < 0) {
        throw std::invalid_argument("bad truncation bounds");
    }
    if (which == "ln") {
        OperationDescriptor ln = landweber_novikov(cfg.spec());
        Output out(cfg);
        emit_series(out.stream(), cfg, apply(ln, read_element(input, ln.ring())));
        return 0;
    }
    if (which == "sq") {
        OperationDescriptor sq = tom_dieck_descriptor(cfg.p, cfg.spec());
        SqResult r = tom_dieck_sq(sq, read_element(input, sq.ring()));
        if (!r.integral) {
            throw Falsified("Sq: not integral mod the formal p: " + r.witness);
        }
        Output out(cfg);
        emit_series(out.stream(), cfg, r.value);
        return 0;
    }
    OperationDescriptor st = quillen_steenrod(cfg.p, cfg.reps(), cfg.spec());
    Series e = read_element(input, st.ring());
    Output out(cfg);
    std::ostream& os = out.stream();
    if (which == "st") {
        emit_series(os, cfg, apply(st, e));
        return 0;
    }
    SymmetricResult r = [&] {
        try {
            return symmetric_operation(st, e);
        } catch (const DivisibilityError& err) {
            throw Falsified(err.what());
        }
    }();
    if (which == "phi") {
        std::optional<int> low;
        if (!r.remainder.is_zero()) {
            low = min_exponent(r.remainder, "t");
        }
        if (cfg.json()) {
            Json j;
            j["phi"] = to_json(r.phi);
            j["certificate"] = {{"remainder_zero", r.remainder.is_zero()},
                                {"remainder_min_t", low ? Json(*low) : Json(nullptr)}};
            os << j.dump() << "\n";
        } else {
            os << to_text(r.phi) << "\n";
            os << "certificate: remainder " << (low ? "has t-degrees >= " + std::to_string(*low) : "is zero") << "\n";
        }
        return 0;
    }
    if (which == "slice") {
        Series q = parse_element(q_text, st.ring());
        if (!q.is_zero() && min_exponent(q, "t") < 0) {
            throw std::invalid_argument("--q must be a power series in t");
        }
        emit_series(os, cfg, slice(st, r.phi, q));
        return 0;
    }
    throw std::invalid_argument("unknown operation " + which);
}

// ---- eta ------------------------------------------------------------------

ChowModel parse_model(const std::string& text)
{
    int n = 0;
    int d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "P%d%c", &n, &tail) == 1 && n >= 1) {
        return {n, 0};
    }
    if (std::sscanf(text.c_str(), "H(%d,%d)%c", &n, &d, &tail) == 2 && n >= 2 && d >= 1) {
        return {n, d};
    }
    throw std::invalid_argument("--U must be Pn (n >= 1) or H(n,d)");
}

int cmd_eta(const RunConfig& cfg, const std::string& U_text)
{
    ChowModel U = parse_model(U_text);
    std::vector<long> reps = cfg.reps();
    Scalar e = [&] {
        try {
            return eta(U, cfg.p, reps);
        } catch (const EtaError& err) {
            throw Falsified(err.what());
        }
    }();
    long r = residue_mod(e, cfg.p);
    Output out(cfg);
    std::ostream& os = out.stream();
    if (cfg.json()) {
        Json j{{"U", U.name()}, {"p", cfg.p}, {"reps", reps}, {"eta", e.get_str()}, {"mod_p", r}};
        os << j.dump() << "\n";
    } else {
        os << e.get_str() << "\n";
        os << "mod " << cfg.p << ": " << r << "\n";
    }
    return 0;
}

// ---- verify ---------------------------------------------------------------

// Without --p the whole prime grid runs; --bweight and --deg replace the
// grid defaults (6) only when given.
int cmd_verify(const RunConfig& cfg, const CLI::App& sub, const std::string& suite, VerifyConfig vc)
{
    auto given = [&](const char* flag) { return sub.get_option(flag)->count() > 0; };
    if (given("--p")) {
        vc.primes = {cfg.p};
    }
    if (given("--reps")) {
        vc.reps = cfg.reps();
    }
    if (given("--bweight")) {
        vc.W = cfg.bweight;
    }
    if (given("--deg")) {
        vc.zcap = cfg.deg;
    }
    vc.seed = cfg.seed;
    std::vector<std::pair<std::string, Suite>> run;
    if (suite == "all") {
        run = suites();
    } else if (auto s = find_suite(suite)) {
        run.emplace_back(suite, *s);
    } else {
        std::string names;
        for (const auto& [n, _] : suites()) {
            names += " " + n;
        }
        throw std::invalid_argument("unknown suite " + suite + "; known:" + names + " all");
    }
    Output out(cfg);
    std::ostream& os = out.stream();
    std::optional<std::string> first_failure;
    for (const auto& [name, fn] : run) {
        for (const Report& rep : fn(vc)) {
            if (cfg.json()) {
                os << to_json(rep).dump() << "\n";
            } else {
                os << rep.prop << " p=" << (rep.p ? std::to_string(rep.p) : "-") << " reps=" << reps_label(rep.reps)
                   << ": pass " << rep.passed() << " fail " << rep.failed() << "\n";
                for (const auto& c : rep.cases) {
                    os << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.input;
                    if (!c.detail.is_null()) {
                        os << "  " << c.detail.dump();
                    }
                    if (!c.witness.empty()) {
                        os << "  witness: " << c.witness;
                    }
                    os << "\n";
                }
            }
            if (const CaseResult* f = rep.first_failure(); f && !first_failure) {
                first_failure = rep.prop + " p=" + std::to_string(rep.p) + " " + f->input + ": " + f->witness;
            }
        }
    }
    if (first_failure) {
        throw VerifyFailed(*first_failure);
    }
    return 0;
}

int default_deg()
{
    if (const char* env = std::getenv("COBCALC_DEG")) {
        try {
            int d = std::stoi(env);
            if (d >= 2) {
                return d;
            }
        } catch (const std::exception&) {
        }
        std::cerr << "cobcalc: ignoring invalid COBCALC_DEG='" << env << "'\n";
    }
    return 8;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cobcalc: formal group laws, Steenrod and symmetric operations on cellular cobordism models"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.deg = default_deg();

    CLI::App* fgl = app.add_subcommand("fgl", "universal formal group law data");
    add_common(fgl, cfg);
    FglArgs fa;
    fgl->add_option("--what", fa.what, "F, [n], a_ij, omega or inverse")->required();
    fgl->add_option("--n", fa.n, "n for [n]");
    fgl->add_option("--i", fa.i, "i for a_ij");
    fgl->add_option("--j", fa.j, "j for a_ij");

    CLI::App* cls = app.add_subcommand("class", "classes of P^n and hypersurfaces");
    add_common(cls, cfg);
    std::string kind;
    int cn = 1;
    int cd = 1;
    cls->add_option("kind", kind, "Pn or hypersurface")->required()->check(CLI::IsMember({"Pn", "hypersurface"}));
    cls->add_option("--n", cn, "n");
    cls->add_option("--d", cd, "hypersurface degree");

    CLI::App* op = app.add_subcommand("op", "apply st, sq, phi, ln or slice to an element");
    add_common(op, cfg);
    std::string which;
    std::string input;
    std::string q_text = "1";
    op->add_option("which", which, "st, sq, phi, ln or slice")->required()->check(CLI::IsMember({"st", "sq", "phi", "ln", "slice"}));
    op->add_option("--input", input, "element (P1, H(3,3), z^2, 2*P1*z + z, ...) or a JSON file")->required();
    op->add_option("--q", q_text, "power series in t for slice (default 1)");

    CLI::App* et = app.add_subcommand("eta", "eta invariant of P^n or a hypersurface");
    add_common(et, cfg);
    std::string U;
    et->add_option("--U", U, "Pn or H(n,d)")->required();

    CLI::App* ver = app.add_subcommand("verify", "run a property suite (or all)");
    add_common(ver, cfg);
    std::string suite = "all";
    VerifyConfig vc;
    ver->add_option("suite", suite, "suite name or all");
    ver->add_option("--maxN", vc.maxN, "largest N for minors (default 6)");
    ver->add_option("--blocks", vc.blocks, "minors: one composition, e.g. 2,1")->delimiter(',');
    ver->add_option("--width", vc.width, "minors: check maximal minors up to this many columns");
    ver->add_option("--r", vc.r, "exponent r for il3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }

    try {
        if (*fgl) {
            return cmd_fgl(cfg, fa);
        }
        if (*cls) {
            return cmd_class(cfg, kind, cn, cd);
        }
        if (*op) {
            return cmd_op(cfg, which, input, q_text);
        }
        if (*et) {
            return cmd_eta(cfg, U);
        }
        return cmd_verify(cfg, *ver, suite, vc);
    } catch (const Falsified& e) {
        std::cerr << "falsified: " << e.what() << "\n";
        return kFalsified;
    } catch (const VerifyFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    }
}
