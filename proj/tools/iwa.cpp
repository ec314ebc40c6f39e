#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "iwa/error.hpp"
#include "iwa/json_io.hpp"
#include "iwa/pollack.hpp"
#include "iwa/qpn_lab.hpp"
#include "iwa/verify.hpp"

using namespace iwa;

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kNotDivisible = 2, kUnbounded = 3, kMalformed = 64, kInternal = 70 };

struct RunConfig {
    int p = 3;
    int k = 2;
    int n = 2;
    int N = 40;
    long eps = 1;
    uint64_t seed = 1;
    std::string in = "-";
    std::string out = "-";
    std::string sign = "+";
    int m = 1;
    std::string character = "0,1,1,0";
    std::string suite = "all";
    std::string rep = "zero-slot";
    std::string pm_out;
    int64_t floor = 0;
    int s_min = 2;
    bool random = false;
    bool with_twists = true;
};

[[noreturn]] void bad_input(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

unsigned thread_cap() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("IWA_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) bad_input("IWA_THREADS must be a positive integer");
        threads = std::min<unsigned>(threads, static_cast<unsigned>(v));
    }
    return threads;
}

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void check_params(const RunConfig& c) {
    if (!is_odd_prime(c.p)) bad_input("--p must be an odd prime");
    if (c.k < 2) bad_input("--k must be >= 2");
    if (c.n < 1) bad_input("--n must be >= 1");
    if (c.eps % c.p == 0) bad_input("--eps must be prime to p");
}

void check_crt_precision(int cap, int n) {
    if (cap < n + 10)
        bad_input("precision N = " + std::to_string(cap) + " is below n + 10 = " + std::to_string(n + 10));
}

Sign parse_sign(const std::string& s) {
    if (s == "+" || s == "plus") return Sign::Plus;
    if (s == "-" || s == "minus") return Sign::Minus;
    bad_input("--sign must be + or -");
}

CharacterSpec parse_character(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        try {
            return decode_character(Json::parse(text));
        } catch (const Json::exception& e) {
            bad_input(std::string("--char: ") + e.what());
        }
    }
    std::stringstream ss(text);
    std::string part;
    std::vector<long> v;
    while (std::getline(ss, part, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stol(part, &used));
            if (used != part.size()) bad_input("--char: not an integer: " + part);
        } catch (const std::logic_error&) {
            bad_input("--char: not an integer: " + part);
        }
    }
    if (v.size() < 2 || v.size() > 4) bad_input("--char expects d,m[,e[,r]] or a JSON object");
    CharacterSpec chi;
    chi.d = static_cast<int>(v[0]);
    chi.m = static_cast<int>(v[1]);
    chi.e = v.size() > 2 ? v[2] : 1;
    chi.r = v.size() > 3 ? static_cast<int>(v[3]) : 0;
    return chi;
}

// Optional flags must agree with the file contents when given.
void check_against(const CLI::App& app, const char* flag, long given, long actual, const char* what) {
    if (app.count(flag) && given != actual)
        bad_input(std::string(flag) + " = " + std::to_string(given) + " disagrees with the input's " + what + " = " +
                  std::to_string(actual));
}

void check_pair_flags(const CLI::App& app, const RunConfig& c, int p, int n, int k, long eps) {
    check_against(app, "--p", c.p, p, "p");
    check_against(app, "--n", c.n, n, "n");
    check_against(app, "--k", c.k, k, "k");
    check_against(app, "--eps", c.eps, eps, "eps");
}

int cmd_decompose(const CLI::App& app, const RunConfig& c) {
    const AdmissiblePair pair = decode_pair(read_json(c.in));
    check_pair_flags(app, c, pair.prime(), pair.level(), pair.k, pair.eps);
    check_crt_precision(scalar_cap(pair.L1.proto()), pair.level());
    write_json(c.out, encode(decompose(pair, {c.floor})));
    return kOk;
}

int cmd_compose(const CLI::App& app, const RunConfig& c) {
    PMDecomposition pm = [&] {
        if (c.random) {
            check_params(c);
            SplitMix64 rng(c.seed);
            return random_pm(c.p, c.n, c.k, c.eps, c.N, rng);
        }
        return decode_pm(read_json(c.in));
    }();
    if (!c.random) check_pair_flags(app, c, pm.prime(), pm.level(), pm.k, pm.eps);
    if (!c.pm_out.empty()) write_json(c.pm_out, encode(pm));
    write_json(c.out, encode(compose(pm, c.with_twists)));
    return kOk;
}

int cmd_admissible(const CLI::App& app, const RunConfig& c) {
    const AdmissiblePair pair = decode_pair(read_json(c.in));
    check_pair_flags(app, c, pair.prime(), pair.level(), pair.k, pair.eps);
    const auto report = check_admissible(pair, c.s_min, {thread_cap()});
    Json failures = Json::array();
    size_t informational = 0;
    for (const auto& e : report.entries) {
        if (e.informational) ++informational;
        if (!e.passed && !e.informational) failures.push_back(encode(e.chi));
    }
    write_json(c.out, {{"passed", report.all_passed()},
                       {"checked", report.checked},
                       {"failures", report.failures},
                       {"informational", informational},
                       {"used_canonical_lift", report.used_canonical_lift},
                       {"failing_characters", failures}});
    return report.all_passed() ? kOk : kCheckFailed;
}

template <class S>
Json divide_element(const GroupRingElem<S>& f, const RunConfig& c) {
    check_crt_precision(scalar_cap(f.proto()), f.level());
    QuotientRep rep;
    if (c.rep == "zero-slot")
        rep = QuotientRep::ZeroSlot;
    else if (c.rep == "low-degree")
        rep = QuotientRep::LowDegree;
    else
        bad_input("--rep must be zero-slot or low-degree");
    if (c.m < 1) bad_input("--m must be >= 1");
    return encode(divide_exact(f, c.m, rep));
}

int cmd_divide(const RunConfig& c) {
    const Json j = read_json(c.in);
    write_json(c.out, j.value("ring", "") == "quad" ? divide_element(decode_quad_element(j), c)
                                                    : divide_element(decode_base_element(j), c));
    return kOk;
}

int cmd_eval(const RunConfig& c) {
    const Json j = read_json(c.in);
    const CharacterSpec chi = parse_character(c.character);
    if (j.value("ring", "") == "quad") {
        const auto f = decode_quad_element(j);
        validate_character(f.prime(), f.level(), chi);
        write_json(c.out, encode(eval_char(f, chi)));
    } else {
        const auto f = decode_base_element(j);
        validate_character(f.prime(), f.level(), chi);
        write_json(c.out, encode(eval_char(f, chi)));
    }
    return kOk;
}

int cmd_halflog(const RunConfig& c, int twist) {
    check_params(c);
    const HalfLogParams params{c.p, c.k, c.n, parse_sign(c.sign), c.eps, c.N};
    if (twist < 0 || twist > c.k - 2) bad_input("--twist must lie in [0, k-2]");
    write_json(c.out, encode(log_trunc_twisted(params, twist)));
    return kOk;
}

int cmd_halflog_zeros(const RunConfig& c) {
    check_params(c);
    const auto scan = vanishing_locus({c.p, c.k, c.n, parse_sign(c.sign), c.eps, c.N}, {thread_cap()});
    Json zeros = Json::array();
    for (const auto& chi : scan.zeros) zeros.push_back(encode(chi));
    write_json(c.out, zeros);
    return scan.matches ? kOk : kCheckFailed;
}

int cmd_qpn_dims(const RunConfig& c) {
    if (!is_odd_prime(c.p) || c.n < 1) bad_input("qpn dims needs an odd prime p and n >= 1");
    const DimsTable t = dims_table(c.p, c.n);
    Json j = {{"p", t.p},
              {"n", t.n},
              {"Qplus", t.q_plus},
              {"Qminus", t.q_minus},
              {"Rplus", t.r_plus},
              {"Rminus", t.r_minus},
              {"formula_plus", t.formula.plus},
              {"formula_minus", t.formula.minus},
              {"coincide_plus", t.coincide_plus},
              {"coincide_minus", t.coincide_minus}};
    if (c.n >= 2) {
        const USpaceReport u = u_space_dim(c.p, c.n);
        j["U"] = u.dim;
        j["U_crt_count"] = u.crt_count;
        j["U_count_upto_half"] = u.count_upto_half;
    } else {
        j["U"] = nullptr;
    }
    write_json(c.out, j);
    return kOk;
}

int cmd_qpn_verify(const RunConfig& c) {
    VerifyConfig v;
    v.p = c.p;
    v.n = c.n;
    v.seed = c.seed;
    if (!is_odd_prime(c.p) || c.n < 1) bad_input("qpn verify needs an odd prime p and n >= 1");
    const Json report = run_suite("dims", v);
    write_json(c.out, report);
    return report["passed"].get<bool>() ? kOk : kCheckFailed;
}

int cmd_verify(const CLI::App& app, const RunConfig& c) {
    VerifyConfig v;
    if (app.count("--p")) v.p = c.p;
    if (app.count("--k")) v.k = c.k;
    if (app.count("--n")) v.n = c.n;
    if (app.count("--eps")) v.eps = c.eps;
    v.cap = c.N;
    v.seed = c.seed;
    v.scan.threads = thread_cap();
    RunConfig effective = c;
    effective.p = v.p;
    effective.k = v.k;
    effective.n = v.n;
    effective.eps = v.eps;
    check_params(effective);
    check_crt_precision(v.cap, v.n);
    const Json report = run_suite(c.suite, v);
    write_json(c.out, report);
    return report["passed"].get<bool>() ? kOk : kCheckFailed;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotDecomposable:
        case ErrorKind::NotDivisible:
            return kNotDivisible;
        case ErrorKind::UnboundedResult:
            return kUnbounded;
        case ErrorKind::MalformedInput:
        case ErrorKind::ShapeMismatch:
        case ErrorKind::BadLevel:
        case ErrorKind::BadConductor:
        case ErrorKind::TrivialCharacter:
        case ErrorKind::BadIndex:
        case ErrorKind::InvalidResidue:
        case ErrorKind::DegenerateInput:
        case ErrorKind::HypothesisViolated:
            return kMalformed;
        default:
            return kInternal;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-level Iwasawa algebra computations: plus/minus decompositions, half-logarithms, "
                 "cyclotomic evaluation and Q(zeta_{p^n}) linear algebra"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig c;
    app.add_option("--p", c.p, "odd prime");
    app.add_option("--k", c.k, "weight k >= 2");
    app.add_option("--n", c.n, "level n >= 1");
    app.add_option("--N", c.N, "p-adic precision cap");
    app.add_option("--eps", c.eps, "epsilon(p), prime to p");
    app.add_option("--seed", c.seed, "seed for randomized commands");
    app.add_option("--in", c.in, "input JSON file, - for stdin");
    app.add_option("--out", c.out, "output JSON file, - for stdout");

    auto* decompose_cmd = app.add_subcommand("decompose", "split (L_alpha, L_-alpha) into (L^+, L^-)");
    decompose_cmd->add_option("--floor", c.floor, "valuation floor for L^+- coefficients");
    auto* compose_cmd = app.add_subcommand("compose", "build (L_alpha, L_-alpha) from (L^+, L^-)");
    compose_cmd->add_flag("--random", c.random, "draw L^+- from --seed instead of reading --in");
    compose_cmd->add_option("--pm-out", c.pm_out, "also write the (L^+, L^-) input");
    compose_cmd->add_flag("!--no-twists", c.with_twists, "omit the twisted images");
    auto* admissible_cmd = app.add_subcommand("admissible", "check the interpolation law at every character");
    admissible_cmd->add_option("--smin", c.s_min, "smallest conductor index counted as a failure");
    auto* divide_cmd = app.add_subcommand("divide", "exact division by Phi_m(gamma)");
    divide_cmd->add_option("--m", c.m, "level of Phi_m");
    divide_cmd->add_option("--rep", c.rep, "quotient representative: zero-slot or low-degree");
    auto* eval_cmd = app.add_subcommand("eval", "evaluate at the character chi^r theta");
    eval_cmd->add_option("--char", c.character, "d,m,e,r or {\"d\",\"m\",\"e\",\"r\"}");
    int twist = 0;
    auto* halflog_cmd = app.add_subcommand("halflog", "truncated half-logarithm log^+- as a group-ring element");
    halflog_cmd->add_option("--sign", c.sign, "+ or -");
    halflog_cmd->add_option("--twist", twist, "twist exponent r in [0, k-2]");
    auto* zeros_cmd = app.add_subcommand("halflog-zeros", "characters at which log^+- vanishes");
    zeros_cmd->add_option("--sign", c.sign, "+ or -");
    auto* qpn_cmd = app.add_subcommand("qpn", "linear algebra in Q(zeta_{p^n})");
    qpn_cmd->require_subcommand(1);
    auto* qpn_dims = qpn_cmd->add_subcommand("dims", "dimension table of the plus/minus subspaces");
    auto* qpn_verify = qpn_cmd->add_subcommand("verify", "invariant suite for the plus/minus subspaces");
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", c.suite, "all|lin|padic|dims|vanish|roundtrip|admissible")
        ->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kMalformed;
    }

    try {
        if (*decompose_cmd) return cmd_decompose(app, c);
        if (*compose_cmd) return cmd_compose(app, c);
        if (*admissible_cmd) return cmd_admissible(app, c);
        if (*divide_cmd) return cmd_divide(c);
        if (*eval_cmd) return cmd_eval(c);
        if (*halflog_cmd) return cmd_halflog(c, twist);
        if (*zeros_cmd) return cmd_halflog_zeros(c);
        if (*qpn_dims) return cmd_qpn_dims(c);
        if (*qpn_verify) return cmd_qpn_verify(c);
        if (*verify_cmd) return cmd_verify(app, c);
    } catch (const Error& e) {
        std::cerr << "iwa: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "iwa: internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
