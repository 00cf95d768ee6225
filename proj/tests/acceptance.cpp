// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The first argument is the path to the coreinv CLI binary (needed by
// the determinism criterion); without it that criterion is reported as FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coreinv/block4.hpp"
#include "coreinv/instance_gen.hpp"
#include "coreinv/pierce.hpp"
#include "coreinv/suite.hpp"

using namespace coreinv;
namespace fs = std::filesystem;

namespace {

const Tolerance tol;  // atol 1e-12, rtol 1e-9

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

// Deterministic instance derivation shared by criteria 1-3: seed s gives the
// dimension, the rank and the generator sub-seed.
ComplexMatrix instance_from_seed(std::uint64_t s, int* n_out = nullptr) {
    Rng rng(rng::mix64(s + 1));
    const int n = rng.uniform_int(1, 8);
    const int r = rng.uniform_int(0, n);
    if (n_out) *n_out = n;
    return gen_core_invertible(n, r, rng.next_u64());
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
}

void criterion_1_and_2() {
    const auto t0 = std::chrono::steady_clock::now();
    double max_axiom_residual = 0.0;
    double max_route_error = 0.0;
    int bad_axioms = 0;
    int bad_routes = 0;
    for (std::uint64_t s = 0; s < 500; ++s) {
        const ComplexMatrix a = instance_from_seed(s);
        const ComplexMatrix x = core_inverse(a, tol);
        const auto rep = verify_axioms(InverseKind::Core, a, x, tol);
        max_axiom_residual = std::max(max_axiom_residual, rep.max_residual);
        if (rep.max_residual > 1e-9) ++bad_axioms;
        const double err = relative_error(x, core_inverse_via_projection(a, tol));
        max_route_error = std::max(max_route_error, err);
        if (err > 1e-8) ++bad_routes;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, "core-axiom suite (500 instances, residual <= 1e-9, < 10 s)",
           bad_axioms == 0 && seconds < 10.0,
           "max residual " + fmt(max_axiom_residual) + ", " + fmt(seconds) + " s");
    report(2, "route agreement core vs projection (rel error <= 1e-8)", bad_routes == 0,
           "max relative error " + fmt(max_route_error));
}

void criterion_3() {
    double max_err = 0.0;
    int bad = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        int n = 0;
        const ComplexMatrix a = instance_from_seed(s, &n);
        const ComplexMatrix expected = core_inverse(a, tol);
        const ComplexMatrix mp = moore_penrose(a, tol);
        const ComplexMatrix proj = ComplexMatrix::identity(n) - mp * a;
        const ComplexMatrix gi = group_inverse(a, tol);
        Rng rng(rng::mix64(s ^ 0x1357));
        for (int k = 0; k < 3; ++k) {
            ComplexMatrix w(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) w(i, j) = rng.cgaussian();
            const ComplexMatrix candidate = gi * a * (mp + proj * w);
            const double err = relative_error(candidate, expected);
            max_err = std::max(max_err, err);
            if (err > 1e-8) ++bad;
        }
    }
    report(3, "(1,3)-choice invariance (200 x 3, rel error <= 1e-8)", bad == 0,
           "max relative error " + fmt(max_err));
}

SuiteCounts run_counts(const std::string& suite, int instances) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.seed = 0;
    cfg.instances = instances;
    cfg.dim_lo = 1;
    cfg.dim_hi = 8;
    cfg.tol = tol;
    return run_single_suite(suite, cfg).counts;
}

std::string counts_detail(const SuiteCounts& c) {
    return "pass " + std::to_string(c.pass) + ", fail " + std::to_string(c.fail) +
           ", not_met " + std::to_string(c.not_met) + ", ambiguous " +
           std::to_string(c.ambiguous);
}

void criterion_4() {
    bool ok = true;
    std::string detail;
    for (const char* suite : {"lem2.1", "lem2.2", "lem3.1", "lem3.3"}) {
        const SuiteCounts c = run_counts(suite, 300);
        const bool suite_ok = c.fail == 0 && c.pass >= 295;
        ok = ok && suite_ok;
        detail += std::string(suite) + " [" + counts_detail(c) + "] ";
    }
    report(4, "lemma suites 2.1/2.2/3.1/3.3 (300 each, zero failures)", ok, detail);
}

void criterion_5() {
    bool ok = true;
    std::string detail;
    for (const char* suite : {"thm2.4", "cor2.5", "thm2.6", "cor2.7", "thm3.4", "cor3.5"}) {
        const SuiteCounts c = run_counts(suite, 500);
        const bool suite_ok = c.fail == 0 && c.ambiguous < 10 && c.not_met == 0;
        ok = ok && suite_ok;
        detail += std::string(suite) + " [" + counts_detail(c) + "] ";
    }
    report(5, "biconditional suites (500 each, 100% non-ambiguous agreement, ambiguous < 2%)",
           ok, detail);
}

void criterion_6() {
    const SuiteCounts c = run_counts("lem3.2", 300);
    report(6, "orthogonal-sum suite (300, a+b core invertible with verified axioms)",
           c.pass == 300, counts_detail(c));
}

void criterion_7() {
    double max_group = 0.0, max_core = 0.0, max_conclusion = 0.0;
    int bad = 0;
    for (std::uint64_t s = 0; s < 300; ++s) {
        Rng rng(rng::derive_seed(7, 23, s));
        const int n = rng.uniform_int(1, 8);
        const auto [p, a] = gen_lemma_2_3_instance(n, rng.next_u64());
        const ComplexMatrix tg = triangular_group_inverse(p, a, tol);
        const ComplexMatrix tc = triangular_core_inverse(p, a, tol);
        const double eg = relative_error(tg, group_inverse(a, tol));
        const double ec = relative_error(tc, core_inverse(a, tol));
        const ComplexMatrix q = ComplexMatrix::identity(n) - p;
        const double concl = zero_residual(p * tc * q, frobenius_norm(tc));
        max_group = std::max(max_group, eg);
        max_core = std::max(max_core, ec);
        max_conclusion = std::max(max_conclusion, concl);
        if (eg > 1e-8 || ec > 1e-8 || concl > 1e-9) ++bad;
    }
    report(7, "triangular formulas (300, agreement <= 1e-8, conclusion residual <= 1e-9)",
           bad == 0,
           "max group " + fmt(max_group) + ", core " + fmt(max_core) + ", conclusion " +
               fmt(max_conclusion));
}

void criterion_8() {
    double max_form = 0.0;
    double max_group_identity = 0.0;
    int bad = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng rng(rng::derive_seed(8, 41, s));
        const int n = rng.uniform_int(1, 8);
        const auto [b, c] = gen_antidiag_pair(n, rng.next_u64());
        ComplexMatrix q(2 * n, 2 * n);
        place(q, 0, n, b);
        place(q, n, 0, c);
        const ComplexMatrix direct = core_inverse(q, tol);
        const ComplexMatrix stated = antidiag_core_inverse(b, c, tol);
        // Pre-simplification form from the proof.
        const ComplexMatrix cb_sharp = group_inverse(c * b, tol);
        const ComplexMatrix bc_sharp = group_inverse(b * c, tol);
        ComplexMatrix proof_form(2 * n, 2 * n);
        place(proof_form, 0, n, b * cb_sharp * c * core_inverse(c, tol));
        place(proof_form, n, 0, c * bc_sharp * b * core_inverse(b, tol));
        const double e1 = relative_error(stated, direct);
        const double e2 = relative_error(proof_form, direct);
        // Proof identity for the group inverse of Q.
        ComplexMatrix qsharp(2 * n, 2 * n);
        place(qsharp, 0, n, b * cb_sharp);
        place(qsharp, n, 0, c * bc_sharp);
        const double e3 = relative_error(qsharp, group_inverse(q, tol));
        max_form = std::max({max_form, e1, e2});
        max_group_identity = std::max(max_group_identity, e3);
        if (e1 > 1e-8 || e2 > 1e-8 || e3 > 1e-8) ++bad;
    }
    report(8, "anti-diagonal formulas (200, both forms vs direct <= 1e-8, Q^# identity)",
           bad == 0,
           "max form error " + fmt(max_form) + ", group identity " + fmt(max_group_identity));
}

void criterion_9() {
    const SuiteCounts c42 = run_counts("thm4.2", 200);
    const SuiteCounts c44 = run_counts("thm4.4", 200);
    bool ok = c42.fail == 0 && c42.not_met == 0 && c44.fail == 0 && c44.not_met == 0;

    // Fixed instance A = D = [0], B = C = [1]: M is the 2x2 involution.
    BlockMatrix2x2 swap{ComplexMatrix{{0.0}}, ComplexMatrix{{1.0}}, ComplexMatrix{{1.0}},
                        ComplexMatrix{{0.0}}};
    const auto v_swap_42 = check_thm_4_2(swap, tol);
    const auto v_swap_44 = check_thm_4_4(swap, tol);
    const ComplexMatrix m_swap = assemble_block2x2(swap);
    const bool swap_ok =
        v_swap_42.pass() && v_swap_44.pass() &&
        frobenius_norm(core_inverse(m_swap, tol) - m_swap) <= 1e-12 &&
        frobenius_norm(antidiag_core_inverse(swap.b, swap.c, tol) - m_swap) <= 1e-12;

    // Fixed instance A = D = [2], B = C = [0]: M = diag(2, 2).
    BlockMatrix2x2 diag{ComplexMatrix{{2.0}}, ComplexMatrix{{0.0}}, ComplexMatrix{{0.0}},
                        ComplexMatrix{{2.0}}};
    const auto v_diag = check_thm_4_2(diag, tol);
    const ComplexMatrix m_diag_core = core_inverse(assemble_block2x2(diag), tol);
    const bool diag_ok =
        v_diag.pass() && check_thm_4_4(diag, tol).pass() &&
        frobenius_norm(m_diag_core - ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}) <= 1e-12;

    ok = ok && swap_ok && diag_ok;
    report(9, "block theorems 4.2/4.4 (200 each + fixed instances)", ok,
           "thm4.2 [" + counts_detail(c42) + "] thm4.4 [" + counts_detail(c44) + "] fixed " +
               (swap_ok && diag_ok ? "ok" : "mismatch"));
}

void criterion_10() {
    double worst = 0.0;

    const ComplexMatrix a{{1.0, 1.0}, {0.0, 0.0}};
    worst = std::max(
        worst, frobenius_norm(core_inverse(a, tol) - ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));

    const ComplexMatrix t24_a{{2.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix t24_b{{0.0, 0.0}, {1.0, 3.0}};
    const auto v = check_thm_2_4(t24_a, t24_b, tol);
    const bool thm_ok = v.hypotheses_met && v.side1 && v.side2;
    worst = std::max(worst, frobenius_norm(v.witnesses.at("b_pi") -
                                           ComplexMatrix{{1.0, 0.0}, {-1.0 / 3.0, 0.0}}));
    worst = std::max(worst, frobenius_norm(v.witnesses.at("a_pi") -
                                           ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}));

    const ComplexMatrix q{{0.0, 1.0}, {2.0, 0.0}};
    const ComplexMatrix q_expected{{0.0, 0.5}, {1.0, 0.0}};
    worst = std::max(worst, frobenius_norm(core_inverse(q, tol) - q_expected));
    worst = std::max(worst, frobenius_norm(antidiag_core_inverse(ComplexMatrix{{1.0}},
                                                                 ComplexMatrix{{2.0}}, tol) -
                                           q_expected));

    report(10, "worked-example regression (absolute error <= 1e-12)", thm_ok && worst <= 1e-12,
           "max absolute error " + fmt(worst));
}

void criterion_11(const char* cli_path) {
    if (!cli_path) {
        report(11, "report determinism (CLI path missing)", false,
               "pass the CLI path as argv[1]");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / "coreinv_acceptance";
    fs::create_directories(dir);
    const fs::path r1 = dir / "report1.json";
    const fs::path r2 = dir / "report2.json";
    const std::string base = std::string(cli_path) + " suite all --instances 100 --seed 1";
    const int e1 = std::system((base + " --report " + r1.string() + " 2>/dev/null").c_str());
    const int e2 = std::system((base + " --report " + r2.string() + " 2>/dev/null").c_str());
    auto strip_duration = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        // Remove the single top-level duration line; everything else must be
        // byte-identical.
        return std::regex_replace(ss.str(), std::regex(",\\s*\"duration_ms\": [^\\n}]*"), "");
    };
    const std::string s1 = strip_duration(r1);
    const std::string s2 = strip_duration(r2);
    const bool ok = e1 == 0 && e2 == 0 && !s1.empty() && s1 == s2;
    report(11, "suite report determinism (byte-identical minus duration)", ok,
           ok ? std::to_string(s1.size()) + " bytes compared equal"
              : "exit codes " + std::to_string(e1) + "/" + std::to_string(e2) + ", " +
                    (s1 == s2 ? "equal" : "different"));
    std::error_code ec;
    fs::remove_all(dir, ec);
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11(argc > 1 ? argv[1] : nullptr);
    std::printf("%s: %d criterion failure(s)\n",
                failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures);
    return failures == 0 ? 0 : 1;
}
