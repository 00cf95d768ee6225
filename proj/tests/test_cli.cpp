#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "coreinv/matrix_io.hpp"
#include "test_helpers.hpp"

// Behavioral tests against the built binary; the path arrives in COREINV_CLI.

namespace fs = std::filesystem;
using namespace coreinv;
using test_helpers::near;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliFixture {
public:
    CliFixture() {
        const char* cli = std::getenv("COREINV_CLI");
        REQUIRE(cli != nullptr);
        cli_ = cli;
        dir_ = fs::temp_directory_path() / ("coreinv_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    ~CliFixture() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    CliResult run(const std::string& args) const {
        const fs::path out = dir_ / "stdout.txt";
        const fs::path err = dir_ / "stderr.txt";
        const std::string cmd = cli_ + " " + args + " > " + out.string() + " 2> " + err.string();
        const int status = std::system(cmd.c_str());
        CliResult r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    fs::path write(const std::string& name, const std::string& contents) const {
        const fs::path p = dir_ / name;
        std::ofstream f(p);
        f << contents;
        return p;
    }

    const fs::path& dir() const { return dir_; }

private:
    std::string cli_;
    fs::path dir_;
};

}  // namespace

TEST_CASE_METHOD(CliFixture, "inv core computes and errors with the documented codes") {
    const auto diag = write("diag2_0.mat", "2 2\n2 0\n0 0\n");
    const auto ok = run("inv core " + diag.string());
    CHECK(ok.exit_code == 0);
    std::stringstream ss(ok.out);
    CHECK(near(read_matrix(ss), ComplexMatrix{{0.5, 0.0}, {0.0, 0.0}}, 1e-12));

    const auto nilp = write("nilpotent.mat", "2 2\n0 1\n0 0\n");
    const auto bad = run("inv core " + nilp.string());
    CHECK(bad.exit_code == 3);
    CHECK(bad.err.find("rank(A)=1, rank(A^2)=0") != std::string::npos);
}

TEST_CASE_METHOD(CliFixture, "inv mp reproduces the worked example") {
    const auto ones_row = write("ones_row.mat", "2 2\n1 1\n0 0\n");
    const auto r = run("inv mp " + ones_row.string());
    REQUIRE(r.exit_code == 0);
    std::stringstream ss(r.out);
    CHECK(near(read_matrix(ss), ComplexMatrix{{0.5, 0.0}, {0.5, 0.0}}, 1e-12));
}

TEST_CASE_METHOD(CliFixture, "inv preserves the input format") {
    const auto jin = write("m.json", matrix_to_json(ComplexMatrix{{2.0}}).dump());
    const auto r = run("inv core " + jin.string());
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["rows"] == 1);
    CHECK(near(matrix_from_json(parsed), ComplexMatrix{{0.5}}, 1e-12));
}

TEST_CASE_METHOD(CliFixture, "inv drazin reports the index on stderr") {
    const auto nilp = write("nilpotent.mat", "2 2\n0 1\n0 0\n");
    const auto r = run("inv drazin " + nilp.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("index 2") != std::string::npos);
}

TEST_CASE_METHOD(CliFixture, "check exit codes and verdicts") {
    const auto diag = write("diag2_0.mat", "2 2\n2 0\n0 0\n");
    const auto ep = run("check ep " + diag.string());
    CHECK(ep.exit_code == 0);
    CHECK(ep.out.find("true") == 0);

    const auto ones_row = write("ones_row.mat", "2 2\n1 1\n0 0\n");
    const auto not_ep = run("check ep " + ones_row.string());
    CHECK(not_ep.exit_code == 1);
    CHECK(not_ep.out.find("false") == 0);

    const auto half = write("half.mat", "2 2\n0.5 0.5\n0.5 0.5\n");
    CHECK(run("check projection " + half.string()).exit_code == 0);

    CHECK(run("check nilpotent " + ones_row.string()).exit_code == 1);
    const auto nilp = write("nilpotent.mat", "2 2\n0 1\n0 0\n");
    CHECK(run("check nilpotent " + nilp.string()).exit_code == 0);
}

TEST_CASE_METHOD(CliFixture, "usage errors exit with 2") {
    CHECK(run("inv wrongkind foo.mat").exit_code == 2);
    CHECK(run("suite thm4.2 --instances 0").exit_code == 2);
    CHECK(run("suite nosuchsuite").exit_code == 2);
    CHECK(run("check ep /definitely/not/a/file.mat").exit_code == 2);
    const auto garbled = write("garbled.mat", "2 2\n1 2\n3 oops\n");
    CHECK(run("inv core " + garbled.string()).exit_code == 2);
}

TEST_CASE_METHOD(CliFixture, "suite writes a report and succeeds with zero failures") {
    const fs::path report = dir() / "report.json";
    const auto r =
        run("suite lem3.2 --instances 10 --seed 3 --dims 2..5 --report " + report.string());
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["suite"] == "lem3.2");
    CHECK(j["aggregate"]["fail"] == 0);
    CHECK(j["results"].size() == 10);
}

TEST_CASE_METHOD(CliFixture, "suite reports are deterministic modulo duration") {
    const fs::path r1 = dir() / "r1.json";
    const fs::path r2 = dir() / "r2.json";
    REQUIRE(run("suite all --instances 4 --seed 1 --report " + r1.string()).exit_code == 0);
    REQUIRE(run("suite all --instances 4 --seed 1 --report " + r2.string()).exit_code == 0);
    auto strip = [](const fs::path& p) {
        auto j = nlohmann::ordered_json::parse(slurp(p));
        j.erase("duration_ms");
        return j.dump();
    };
    CHECK(strip(r1) == strip(r2));
}

TEST_CASE_METHOD(CliFixture, "block subcommand accepts four files or one split file") {
    const auto a = write("A.mat", "1 1\n0\n");
    const auto b = write("B.mat", "1 1\n1\n");
    const auto fourfile = run("block thm4.2 --blocks " + a.string() + " " + b.string() + " " +
                              b.string() + " " + a.string());
    CHECK(fourfile.exit_code == 0);
    const auto j = nlohmann::json::parse(fourfile.out);
    CHECK(j["pass"] == true);

    const auto m = write("M.mat", "2 2\n0 1\n1 0\n");
    const auto split = run("block thm4.2 " + m.string() + " --split 1");
    CHECK(split.exit_code == 0);

    CHECK(run("block thm4.2 " + m.string()).exit_code == 2);  // missing --split
    const auto lem = run("block lem4.1 " + m.string() + " --split 1");
    CHECK(lem.exit_code == 0);
}

TEST_CASE_METHOD(CliFixture, "gen emits matrix files and a manifest") {
    const fs::path out = dir() / "generated";
    const auto r = run("gen --family thm2.4 --instances 3 --seed 11 --dims 2..4 --out " +
                       out.string());
    REQUIRE(r.exit_code == 0);
    // rank range is clipped to the drawn dimension
    const fs::path ranked = dir() / "ranked";
    const auto r2 = run("gen --family core --instances 4 --seed 5 --dims 2..3 --ranks 2..9 "
                        "--out " + ranked.string());
    REQUIRE(r2.exit_code == 0);
    const auto ranked_manifest = nlohmann::json::parse(slurp(ranked / "manifest.json"));
    for (const auto& entry : ranked_manifest["results"]) CHECK(entry["n"].get<int>() >= 2);
    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    CHECK(manifest["family"] == "thm2.4");
    REQUIRE(manifest["results"].size() == 3);
    for (const auto& entry : manifest["results"]) {
        for (const auto& file : entry["files"]) {
            const fs::path p = out / file.get<std::string>();
            CHECK(fs::exists(p));
            CHECK_NOTHROW(read_matrix_file(p.string()));
        }
        for (const auto& [name, h] : entry["hypotheses"].items()) CHECK(h["ok"] == true);
    }
}
