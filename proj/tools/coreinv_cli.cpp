// coreinv: batch front end for the generalized-inverse toolkit.
//
//   inv    <mp|group|drazin|core|core-proj> <matrix-file>   compute an inverse
//   check  <ep|projection|core-invertible|nilpotent> <file> predicate + residuals
//   suite  <id|all> --instances N --seed S --dims LO..HI    theorem suites -> JSON
//   block  <thm4.2|thm4.4|cor4.3|lem4.1> --blocks A B C D   block-matrix checks
//   gen    --family F --out DIR                             emit instances + manifest
//
// Exit codes: 0 success/true, 1 false or failing suite, 2 usage/parse error,
// 3 requested inverse does not exist.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coreinv/block4.hpp"
#include "coreinv/matrix_io.hpp"
#include "coreinv/pierce.hpp"
#include "coreinv/suite.hpp"

namespace {

using namespace coreinv;

struct DimRange {
    int lo = 1;
    int hi = 8;
};

DimRange parse_dims(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) throw ParseError("dims must look like LO..HI");
    DimRange d;
    try {
        d.lo = std::stoi(text.substr(0, pos));
        d.hi = std::stoi(text.substr(pos + 2));
    } catch (const std::exception&) {
        throw ParseError("dims must look like LO..HI");
    }
    if (d.lo < 1 || d.hi < d.lo) throw ParseError("dims range is empty or non-positive");
    return d;
}

nlohmann::ordered_json verdict_to_json(const TheoremVerdict& v) {
    nlohmann::ordered_json j;
    j["theorem"] = v.theorem_id;
    nlohmann::ordered_json hyp;
    for (const auto& h : v.hypotheses) hyp[h.name] = {{"ok", h.ok}, {"residual", h.residual}};
    j["hypotheses"] = std::move(hyp);
    j["hypotheses_met"] = v.hypotheses_met;
    if (v.hypotheses_met) {
        j["side1"] = v.side1;
        if (v.biconditional)
            j["side2"] = v.side2;
        else
            j["side2"] = nullptr;
    }
    nlohmann::ordered_json cond;
    for (const auto& c : v.conditions) cond[c.name] = {{"ok", c.ok}, {"residual", c.residual}};
    j["conditions"] = std::move(cond);
    nlohmann::ordered_json norms;
    for (const auto& [name, w] : v.witnesses) norms[name] = frobenius_norm(w);
    j["witness_norms"] = std::move(norms);
    j["ambiguous"] = v.ambiguous;
    j["pass"] = v.pass();
    j["max_residual"] = v.max_residual;
    return j;
}

int cmd_inv(const std::string& kind, const std::string& input,
            const std::optional<std::string>& output, const Tolerance& tol) {
    MatrixFormat format = MatrixFormat::Text;
    const ComplexMatrix a = read_matrix_file(input, &format);
    ComplexMatrix x;
    try {
        if (kind == "mp") {
            x = moore_penrose(a, tol);
        } else if (kind == "group") {
            x = group_inverse(a, tol);
        } else if (kind == "drazin") {
            const auto [inv, index] = drazin_inverse(a, tol);
            x = inv;
            std::cerr << "index " << index << "\n";
        } else if (kind == "core") {
            x = core_inverse(a, tol);
        } else {
            x = core_inverse_via_projection(a, tol);
        }
    } catch (const NotGroupInvertibleError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NotCoreInvertibleError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const SingularError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    if (output)
        write_matrix_file(*output, x, format);
    else
        write_matrix(std::cout, x, format);
    return 0;
}

int cmd_check(const std::string& predicate, const std::string& input, const Tolerance& tol) {
    const ComplexMatrix a = read_matrix_file(input);
    bool verdict = false;
    std::vector<std::pair<std::string, double>> diagnostics;
    if (predicate == "ep") {
        verdict = is_ep(a, tol);
        const GroupDecision gd = group_decision(a, tol);
        diagnostics.emplace_back("rank(A)", gd.rank_a);
        diagnostics.emplace_back("rank(A^2)", gd.rank_a2);
        diagnostics.emplace_back("rank([A|A*])", rank(hcat(a, conj_transpose(a)), tol));
    } else if (predicate == "projection") {
        verdict = is_projection(a, tol);
        const double np = frobenius_norm(a);
        diagnostics.emplace_back("idempotency_residual", zero_residual(a * a - a, np * np));
        diagnostics.emplace_back("hermitian_residual",
                                 zero_residual(conj_transpose(a) - a, np));
    } else if (predicate == "core-invertible") {
        const CoreDecision d = core_decision(a, tol);
        verdict = d.invertible;
        diagnostics.emplace_back("rank(A)", d.rank_a);
        diagnostics.emplace_back("rank(A^2)", d.rank_a2);
        diagnostics.emplace_back("max_axiom_residual", d.max_axiom_residual);
    } else {
        const double residual = nilpotency_residual(a, tol);
        verdict = residual <= tol.zero_threshold();
        diagnostics.emplace_back("power_residual", residual);
    }
    std::cout << (verdict ? "true" : "false") << "\n";
    for (const auto& [name, value] : diagnostics) std::cout << name << " = " << value << "\n";
    return verdict ? 0 : 1;
}

int cmd_suite(const SuiteConfig& cfg, const std::optional<std::string>& report_path) {
    const SuiteReport rep = run_suites(cfg);
    const nlohmann::ordered_json j = report_to_json(rep);
    if (report_path) {
        std::ofstream out(*report_path);
        if (!out) throw ParseError("cannot open report file: " + *report_path);
        out << j.dump(2) << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    for (const SuiteRun& run : rep.runs)
        std::cerr << run.suite << ": pass " << run.counts.pass << ", fail " << run.counts.fail
                  << ", not_met " << run.counts.not_met << ", ambiguous "
                  << run.counts.ambiguous << "\n";
    return rep.total.fail == 0 ? 0 : 1;
}

int cmd_block(const std::string& theorem, const std::vector<std::string>& block_files,
              const std::string& matrix_file, int split, const Tolerance& tol) {
    BlockMatrix2x2 blocks;
    if (!block_files.empty()) {
        blocks.a = read_matrix_file(block_files[0]);
        blocks.b = read_matrix_file(block_files[1]);
        blocks.c = read_matrix_file(block_files[2]);
        blocks.d = read_matrix_file(block_files[3]);
    } else {
        if (split <= 0) throw ParseError("either --blocks or a matrix file with --split n");
        blocks = split_block2x2(read_matrix_file(matrix_file), split);
    }
    TheoremVerdict v;
    if (theorem == "thm4.2") v = check_thm_4_2(blocks, tol);
    else if (theorem == "thm4.4") v = check_thm_4_4(blocks, tol);
    else if (theorem == "cor4.3") v = permuted_variant(blocks, tol);
    else v = check_lemma_4_1(blocks.b, blocks.c, tol);
    std::cout << verdict_to_json(v).dump(2) << "\n";
    return v.pass() ? 0 : 1;
}

int cmd_gen(const std::string& family, const GenConfig& cfg, const Tolerance& tol,
            const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::uint64_t family_tag = rng::fnv1a(family);
    nlohmann::ordered_json manifest;
    manifest["family"] = family;
    manifest["seed"] = cfg.seed;
    manifest["dims"] = {cfg.dim_lo, cfg.dim_hi};
    manifest["ranks"] = {cfg.rank_lo, cfg.rank_hi};
    manifest["instances"] = cfg.count;
    auto results = nlohmann::ordered_json::array();

    for (int i = 0; i < cfg.count; ++i) {
        const std::uint64_t seed = rng::derive_seed(cfg.seed, family_tag, i);
        Rng r(seed);
        const int n = r.uniform_int(cfg.dim_lo, cfg.dim_hi);
        auto draw_rank = [&] {
            const int lo = std::min(cfg.rank_lo, n);
            const int hi = std::min(cfg.rank_hi, n);
            return r.uniform_int(lo, hi);
        };
        const std::uint64_t sub = r.next_u64();
        nlohmann::ordered_json entry;
        entry["index"] = i;
        entry["seed"] = seed;
        entry["n"] = n;
        entry["files"] = nlohmann::ordered_json::array();
        auto save = [&](const std::string& suffix, const ComplexMatrix& m) {
            const std::string name = family + "_" + std::to_string(i) + "_" + suffix + ".mat";
            write_matrix_file((fs::path(out_dir) / name).string(), m, MatrixFormat::Text);
            entry["files"].push_back(name);
        };
        TheoremVerdict verdict;
        if (family == "core") {
            const ComplexMatrix a = gen_core_invertible(n, draw_rank(), sub);
            save("a", a);
            const auto rep = verify_axioms(InverseKind::Core, a, core_inverse(a, tol), tol);
            for (const auto& ax : rep.axioms)
                verdict.hypotheses.push_back({ax.name, true, ax.residual});
            verdict.hypotheses_met = rep.ok;
        } else if (family == "ep") {
            const ComplexMatrix a = gen_ep(n, draw_rank(), sub);
            save("a", a);
            verdict.hypotheses.push_back({"is_ep", is_ep(a, tol), 0.0});
            verdict.hypotheses_met = verdict.hypotheses.back().ok;
        } else if (family == "commuting") {
            const auto [a, b] = gen_double_commuting_pair(n, sub);
            save("a", a);
            save("b", b);
            verdict = check_thm_3_4(a, b, tol);
        } else if (family == "thm2.4") {
            const auto [a, b] = gen_thm_2_4_instance(n, sub);
            save("a", a);
            save("b", b);
            verdict = check_thm_2_4(a, b, tol);
        } else if (family == "orthogonal") {
            const auto [a, b] = gen_orthogonal_pair(n, sub);
            save("a", a);
            save("b", b);
            verdict = check_lemma_3_2(a, b, tol);
        } else if (family == "block4") {
            const BlockMatrix2x2 m = gen_block4_instance(n, sub);
            save("A", m.a);
            save("B", m.b);
            save("C", m.c);
            save("D", m.d);
            verdict = check_thm_4_2(m, tol);
        } else {
            throw ParseError("unknown family: " + family);
        }
        nlohmann::ordered_json hyp;
        for (const auto& h : verdict.hypotheses)
            hyp[h.name] = {{"ok", h.ok}, {"residual", h.residual}};
        entry["hypotheses"] = std::move(hyp);
        results.push_back(std::move(entry));
    }
    manifest["results"] = std::move(results);
    std::ofstream out(fs::path(out_dir) / "manifest.json");
    out << manifest.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized-inverse toolkit for dense complex square matrices"};
    app.require_subcommand(1);

    double atol = 1e-12;
    double rtol = 1e-9;
    app.add_option("--atol", atol, "absolute tolerance")->capture_default_str();
    app.add_option("--rtol", rtol, "relative tolerance")->capture_default_str();

    auto* inv = app.add_subcommand("inv", "compute a generalized inverse");
    std::string inv_kind, inv_input;
    std::optional<std::string> inv_output;
    inv->add_option("kind", inv_kind, "mp|group|drazin|core|core-proj")
        ->required()
        ->check(CLI::IsMember({"mp", "group", "drazin", "core", "core-proj"}));
    inv->add_option("input", inv_input, "matrix file (text or JSON)")->required();
    inv->add_option("-o,--output", inv_output, "output file (default: stdout)");

    auto* check = app.add_subcommand("check", "evaluate a predicate");
    std::string check_predicate, check_input;
    check->add_option("predicate", check_predicate, "ep|projection|core-invertible|nilpotent")
        ->required()
        ->check(CLI::IsMember({"ep", "projection", "core-invertible", "nilpotent"}));
    check->add_option("input", check_input, "matrix file")->required();

    auto* suite = app.add_subcommand("suite", "run a theorem verification suite");
    std::string suite_name;
    int suite_instances = 100;
    std::uint64_t suite_seed = 0;
    std::string suite_dims = "1..8";
    std::optional<std::string> suite_report;
    suite->add_option("name", suite_name, "suite id or 'all'")->required();
    suite->add_option("--instances", suite_instances, "instances per suite")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    suite->add_option("--seed", suite_seed, "master seed")->capture_default_str();
    suite->add_option("--dims", suite_dims, "dimension range LO..HI")->capture_default_str();
    suite->add_option("--report", suite_report, "write the JSON report to this path");

    auto* block = app.add_subcommand("block", "check a 2x2 block matrix theorem");
    std::string block_theorem, block_matrix;
    std::vector<std::string> block_files;
    int block_split = 0;
    block->add_option("theorem", block_theorem, "thm4.2|thm4.4|cor4.3|lem4.1")
        ->required()
        ->check(CLI::IsMember({"thm4.2", "thm4.4", "cor4.3", "lem4.1"}));
    block->add_option("--blocks", block_files, "four matrix files A B C D")->expected(4);
    block->add_option("matrix", block_matrix, "one 2n x 2n matrix file");
    block->add_option("--split", block_split, "block size n for a single-file input");

    auto* gen = app.add_subcommand("gen", "emit generated instances and a manifest");
    std::string gen_family, gen_out = "instances", gen_dims = "1..8";
    std::optional<std::string> gen_ranks;
    int gen_instances = 10;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", gen_family, "core|ep|commuting|thm2.4|orthogonal|block4")
        ->required()
        ->check(CLI::IsMember({"core", "ep", "commuting", "thm2.4", "orthogonal", "block4"}));
    gen->add_option("--instances", gen_instances, "instance count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();
    gen->add_option("--dims", gen_dims, "dimension range LO..HI")->capture_default_str();
    gen->add_option("--ranks", gen_ranks, "rank range LO..HI, clipped to the dimension");
    gen->add_option("--out", gen_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        const Tolerance tol(atol, rtol);
        if (*inv) return cmd_inv(inv_kind, inv_input, inv_output, tol);
        if (*check) return cmd_check(check_predicate, check_input, tol);
        if (*suite) {
            if (!suite_known(suite_name)) {
                std::cerr << "unknown suite: " << suite_name << "\n";
                return 2;
            }
            const DimRange dims = parse_dims(suite_dims);
            SuiteConfig cfg;
            cfg.suite = suite_name;
            cfg.seed = suite_seed;
            cfg.instances = suite_instances;
            cfg.dim_lo = dims.lo;
            cfg.dim_hi = dims.hi;
            cfg.tol = tol;
            return cmd_suite(cfg, suite_report);
        }
        if (*block) {
            if (!block_files.empty() && !block_matrix.empty())
                throw ParseError("--blocks and a matrix file are mutually exclusive");
            if (block_files.empty() && block_matrix.empty())
                throw ParseError("either --blocks A B C D or a matrix file with --split n");
            return cmd_block(block_theorem, block_files, block_matrix, block_split, tol);
        }
        if (*gen) {
            const DimRange dims = parse_dims(gen_dims);
            GenConfig cfg;
            cfg.seed = gen_seed;
            cfg.count = gen_instances;
            cfg.dim_lo = dims.lo;
            cfg.dim_hi = dims.hi;
            if (gen_ranks) {
                const auto pos = gen_ranks->find("..");
                if (pos == std::string::npos) throw ParseError("ranks must look like LO..HI");
                cfg.rank_lo = std::stoi(gen_ranks->substr(0, pos));
                cfg.rank_hi = std::stoi(gen_ranks->substr(pos + 2));
                if (cfg.rank_lo < 0 || cfg.rank_hi < cfg.rank_lo)
                    throw ParseError("rank range is empty or negative");
            }
            return cmd_gen(gen_family, cfg, tol, gen_out);
        }
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
