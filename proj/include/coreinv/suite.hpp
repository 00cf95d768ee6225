#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coreinv/instance_gen.hpp"
#include "coreinv/pierce.hpp"
#include "coreinv/theorems.hpp"

namespace coreinv {

struct SuiteConfig {
    std::string suite = "all";
    std::uint64_t seed = 0;
    int dim_lo = 1;
    int dim_hi = 8;
    int instances = 100;
    Tolerance tol{1e-12, 1e-9};
};

struct InstanceRecord {
    int index = 0;
    std::uint64_t seed = 0;
    TheoremVerdict verdict;
};

struct SuiteCounts {
    int pass = 0;
    int fail = 0;
    int not_met = 0;
    int ambiguous = 0;

    void add(Outcome o) {
        switch (o) {
            case Outcome::Pass: ++pass; break;
            case Outcome::Fail: ++fail; break;
            case Outcome::HypothesesNotMet: ++not_met; break;
            case Outcome::Ambiguous: ++ambiguous; break;
        }
    }
};

struct SuiteRun {
    std::string suite;
    std::vector<InstanceRecord> results;
    SuiteCounts counts;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<SuiteRun> runs;
    SuiteCounts total;
    double duration_ms = 0.0;
};

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> ids = {
        "thm2.4", "cor2.5", "thm2.6", "cor2.7", "lem3.1", "lem3.2", "lem3.3", "thm3.4",
        "cor3.5", "lem2.1", "lem2.2", "lem2.3", "lem4.1", "thm4.2", "thm4.4"};
    return ids;
}

inline bool suite_known(const std::string& name) {
    if (name == "all") return true;
    for (const auto& s : all_suites())
        if (s == name) return true;
    return false;
}

/// Generates and checks one instance of the named suite.
inline TheoremVerdict run_suite_instance(const std::string& suite, int n, std::uint64_t seed,
                                         const Tolerance& tol) {
    if (suite == "thm2.4") {
        auto [a, b] = gen_thm_2_4_instance(n, seed);
        return check_thm_2_4(a, b, tol);
    }
    if (suite == "cor2.5") {
        auto [a, b] = gen_double_commuting_pair(n, seed);
        return check_cor_2_5(a, b, tol);
    }
    if (suite == "thm2.6") {
        auto [a, b] = gen_thm_2_6_instance(n, seed);
        return check_thm_2_6(a, b, tol);
    }
    if (suite == "cor2.7") {
        auto [a, b] = gen_cor_2_7_instance(n, seed);
        return check_cor_2_7(a, b, tol);
    }
    if (suite == "lem3.1") {
        auto [a, b] = gen_double_commuting_pair(n, seed);
        return check_lemma_3_1(a, b, tol);
    }
    if (suite == "lem3.2") {
        auto [a, b] = gen_orthogonal_pair(n, seed);
        return check_lemma_3_2(a, b, tol);
    }
    if (suite == "lem3.3") {
        auto [a, b] = gen_double_commuting_pair(n, seed);
        return check_lemma_3_3(a, b, tol);
    }
    if (suite == "thm3.4") {
        auto [a, b] = gen_double_commuting_pair(n, seed);
        return check_thm_3_4(a, b, tol);
    }
    if (suite == "cor3.5") {
        auto [a, b] = gen_double_commuting_pair(n, seed);
        return check_cor_3_5(a, b, tol);
    }
    if (suite == "lem2.1") {
        auto [p, a] = gen_lemma_2_1_instance(n, seed);
        return check_lemma_2_1(p, a, tol);
    }
    if (suite == "lem2.2") {
        auto [a, b] = gen_lemma_2_2_instance(n, seed);
        return check_lemma_2_2(a, b, tol);
    }
    if (suite == "lem2.3") {
        auto [p, a] = gen_lemma_2_3_instance(n, seed);
        return check_lemma_2_3(p, a, tol);
    }
    if (suite == "lem4.1") {
        auto [b, c] = gen_antidiag_pair(n, seed);
        return check_lemma_4_1(b, c, tol);
    }
    if (suite == "thm4.2") return check_thm_4_2(gen_block4_instance(n, seed), tol);
    if (suite == "thm4.4") return check_thm_4_4(gen_block4_instance(n, seed), tol);
    throw Error("unknown suite: " + suite);
}

inline SuiteRun run_single_suite(const std::string& suite, const SuiteConfig& cfg) {
    SuiteRun run;
    run.suite = suite;
    const std::uint64_t family = rng::fnv1a(suite);
    run.results.reserve(cfg.instances);
    for (int i = 0; i < cfg.instances; ++i) {
        const std::uint64_t seed = rng::derive_seed(cfg.seed, family, i);
        Rng r(seed);
        const int n = r.uniform_int(cfg.dim_lo, cfg.dim_hi);
        InstanceRecord rec;
        rec.index = i;
        rec.seed = seed;
        rec.verdict = run_suite_instance(suite, n, r.next_u64(), cfg.tol);
        run.counts.add(rec.verdict.outcome());
        run.results.push_back(std::move(rec));
    }
    return run;
}

inline SuiteReport run_suites(const SuiteConfig& cfg) {
    if (!suite_known(cfg.suite)) throw Error("unknown suite: " + cfg.suite);
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.config = cfg;
    const std::vector<std::string> names =
        cfg.suite == "all" ? all_suites() : std::vector<std::string>{cfg.suite};
    for (const auto& name : names) {
        rep.runs.push_back(run_single_suite(name, cfg));
        const SuiteCounts& c = rep.runs.back().counts;
        rep.total.pass += c.pass;
        rep.total.fail += c.fail;
        rep.total.not_met += c.not_met;
        rep.total.ambiguous += c.ambiguous;
    }
    rep.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace detail {

inline nlohmann::ordered_json counts_to_json(const SuiteCounts& c) {
    nlohmann::ordered_json j;
    j["pass"] = c.pass;
    j["fail"] = c.fail;
    j["not_met"] = c.not_met;
    j["ambiguous"] = c.ambiguous;
    return j;
}

inline nlohmann::ordered_json run_to_json(const SuiteRun& run, const SuiteConfig& cfg) {
    nlohmann::ordered_json j;
    j["suite"] = run.suite;
    j["seed"] = cfg.seed;
    j["dims"] = {cfg.dim_lo, cfg.dim_hi};
    j["instances"] = cfg.instances;
    j["rtol"] = cfg.tol.rtol;
    j["atol"] = cfg.tol.atol;
    auto results = nlohmann::ordered_json::array();
    for (const InstanceRecord& rec : run.results) {
        nlohmann::ordered_json r;
        r["index"] = rec.index;
        r["seed"] = rec.seed;
        nlohmann::ordered_json hyp;
        for (const NamedResidual& h : rec.verdict.hypotheses) {
            hyp[h.name] = {{"ok", h.ok}, {"residual", h.residual}};
        }
        r["hypotheses"] = std::move(hyp);
        if (rec.verdict.hypotheses_met) {
            r["side1"] = rec.verdict.side1;
            if (rec.verdict.biconditional)
                r["side2"] = rec.verdict.side2;
            else
                r["side2"] = nullptr;
        } else {
            r["side1"] = nullptr;
            r["side2"] = nullptr;
        }
        r["pass"] = rec.verdict.pass();
        r["max_residual"] = rec.verdict.max_residual;
        results.push_back(std::move(r));
    }
    j["results"] = std::move(results);
    j["aggregate"] = counts_to_json(run.counts);
    return j;
}

}  // namespace detail

/// Stable-key-order JSON serialization; byte-identical for identical
/// invocations except for the top-level duration_ms field.
inline nlohmann::ordered_json report_to_json(const SuiteReport& rep) {
    if (rep.runs.size() == 1 && rep.config.suite != "all") {
        nlohmann::ordered_json j = detail::run_to_json(rep.runs.front(), rep.config);
        j["duration_ms"] = rep.duration_ms;
        return j;
    }
    nlohmann::ordered_json j;
    j["suite"] = "all";
    j["seed"] = rep.config.seed;
    j["dims"] = {rep.config.dim_lo, rep.config.dim_hi};
    j["instances"] = rep.config.instances;
    j["rtol"] = rep.config.tol.rtol;
    j["atol"] = rep.config.tol.atol;
    auto suites = nlohmann::ordered_json::array();
    for (const SuiteRun& run : rep.runs) suites.push_back(detail::run_to_json(run, rep.config));
    j["suites"] = std::move(suites);
    j["aggregate"] = detail::counts_to_json(rep.total);
    j["duration_ms"] = rep.duration_ms;
    return j;
}

}  // namespace coreinv
