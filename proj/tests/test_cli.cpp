#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "shiftkms/analysis.hpp"
#include "shiftkms/errors.hpp"
#include "shiftkms/spec_io.hpp"

using namespace shiftkms;
using nlohmann::ordered_json;

namespace {

const char* kGoldenDoc = R"({"type":"sft","matrix":[[1,1],[1,0]]})";

RunFlags quiet() {
    RunFlags f;
    f.timestamp = false;
    f.samples = 50;
    return f;
}

const ordered_json& section(const AnalysisReport& r, const std::string& name) {
    for (const auto& [n, s] : r.results)
        if (n == name) return s;
    FAIL("missing section " << name);
    static ordered_json none;
    return none;
}

std::string error_of(const std::string& doc) {
    try {
        parse_spec_text(doc);
    } catch (const InvalidInput& e) {
        return e.what();
    }
    return "";
}

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args, const std::string& stdin_text) {
    const std::string input = std::string(SHIFTKMS_TEST_TMP) + "/cli_input.json";
    std::ofstream(input) << stdin_text;
    const std::string cmd = std::string(SHIFTKMS_CLI) + " " + args + " < " + input + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("parsing the documented input kinds") {
        const auto golden = parse_spec_text(kGoldenDoc);
        REQUIRE(golden.subshift);
        CHECK(golden.subshift->kind_name() == "sft");
        CHECK(golden.zero_one->to_rows() == std::vector<std::vector<int>>{{1, 1}, {1, 0}});

        const auto beta = parse_spec_text(R"({"type":"beta","beta":1.8392867552,"digit_depth":64})");
        CHECK(beta.subshift->kind_name() == "beta");
        CHECK(beta.subshift->alphabet_size() == 2);
        CHECK_FALSE(beta.zero_one);

        const auto f = parse_spec_text(R"({"type":"forbidden","alphabet":2,"words":[[1,1],[1,1]]})");
        CHECK(f.subshift->as<ForbiddenShift>()->words.size() == 1);
        CHECK(f.canonical["words"] == ordered_json::parse("[[1,1]]"));

        const auto m = parse_spec_text(R"({"type":"matrix","matrix":[[0,2],[3,0]]})");
        CHECK(m.matrix);
        CHECK_FALSE(m.zero_one);
        CHECK(parse_spec_text(R"({"type":"full","alphabet":3})").zero_one->dim() == 3);
    }

    TEST_CASE("diagnostics name the offending field") {
        CHECK(error_of(R"({"type":"sft","matrix":[[1,0],[1,0]]})").find("column 2 is zero") != std::string::npos);
        CHECK(error_of(R"({"type":"sft","matrix":[[0,0],[1,1]]})").find("row 1 is zero") != std::string::npos);
        CHECK(error_of(R"({"type":"sft","matrix":[[1,2],[1,0]]})").rfind("matrix:", 0) == 0);
        CHECK(error_of(R"({"type":"forbidden","alphabet":2,"words":[[1,3]]})").rfind("words[0][1]:", 0) == 0);
        CHECK(error_of(R"({"type":"beta","beta":1.0})").rfind("beta:", 0) == 0);
        CHECK(error_of(R"({"type":"beta","beta":"x"})").rfind("beta:", 0) == 0);
        CHECK(error_of(R"({"type":"full"})").rfind("alphabet:", 0) == 0);
        CHECK(error_of(R"({"type":"full","alphabet":2,"colour":1})").rfind("colour:", 0) == 0);
        CHECK(error_of(R"({"type":"cellular"})").rfind("type:", 0) == 0);
        CHECK(error_of(R"({"alphabet":2})").rfind("type:", 0) == 0);
        CHECK(error_of("[1, 2").rfind("document:", 0) == 0);
    }

    TEST_CASE("reports") {
        const auto input = parse_spec_text(kGoldenDoc);
        const auto report = run("all", input, quiet());
        const double log_phi = std::log(std::numbers::phi);
        CHECK(report.results.size() == 7);
        CHECK(report.results.front().first == "entropy");
        CHECK(report.results.back().first == "resolvent");
        CHECK(section(report, "kms")["beta"].get<double>() == doctest::Approx(log_phi).epsilon(1e-12));
        // Cross-command consistency.
        CHECK(section(report, "kms")["beta"] == section(report, "entropy")["exact"]);
        CHECK(section(report, "bracket")["width"].get<double>() == 0.0);
        CHECK(section(report, "krieger")["class_counts"] == ordered_json::parse("[2,2,2,2,2,2,2,2]"));
        CHECK(section(report, "variational")["violations"].get<int>() == 0);
        CHECK(section(report, "entropy")["parameters"]["n_max"] == 30);
        CHECK(report.invariant_failures.empty());
        CHECK_FALSE(report.provenance.contains("timestamp"));

        const auto parry = run("parry", parse_spec_text(R"({"type":"full","alphabet":2})"), quiet());
        CHECK(section(parry, "parry")["p"] == ordered_json::parse("[[0.5,0.5],[0.5,0.5]]"));
        CHECK(section(parry, "parry")["pi"] == ordered_json::parse("[0.5,0.5]"));
    }

    TEST_CASE("reports round-trip and are deterministic") {
        const auto input = parse_spec_text(R"({"type":"sft","matrix":[[1,1,0],[0,1,1],[1,0,1]]})");
        const auto a = run("all", input, quiet());
        const auto b = run("all", input, quiet());
        CHECK(a.dump() == b.dump());
        const auto back = AnalysisReport::from_json(ordered_json::parse(a.dump()));
        CHECK(back == a);
        CHECK(back.dump() == a.dump());
        // Big word counts survive as exact decimal strings.
        RunFlags f = quiet();
        f.max_n = 70;
        const auto big = run("entropy", parse_spec_text(R"({"type":"full","alphabet":2})"), f);
        CHECK(section(big, "entropy")["theta"][69] == "1180591620717411303424");
        CHECK(AnalysisReport::from_json(ordered_json::parse(big.dump())) == big);
    }

    TEST_CASE("sections that do not apply") {
        const auto beta = parse_spec_text(R"({"type":"beta","beta":1.7,"digit_depth":128})");
        CHECK_THROWS_AS(run("kms", beta, quiet()), InvalidInput);
        const auto all = run("all", beta, quiet());
        CHECK(all.results.size() == 3);  // entropy, krieger, bracket
        CHECK_FALSE(all.warnings.empty());
        const auto krieger = run("krieger", beta, quiet());
        CHECK(section(krieger, "krieger")["sofic_detected"] == false);

        const auto weighted = parse_spec_text(R"({"type":"matrix","matrix":[[0,2],[3,0]]})");
        const auto kms = run("kms", weighted, quiet());
        CHECK(section(kms, "kms")["beta"].get<double>() == doctest::Approx(0.5 * std::log(6.0)));
        CHECK_THROWS_AS(run("parry", weighted, quiet()), InvalidInput);
        CHECK_THROWS_AS(run("dance", weighted, quiet()), InvalidInput);
    }

    TEST_CASE("reducible inputs") {
        const auto input = parse_spec_text(R"({"type":"sft","matrix":[[1,1,0],[0,1,1],[0,1,1]]})");
        CHECK_THROWS_AS(run("kms", input, quiet()), PreconditionViolation);
        RunFlags f = quiet();
        f.reducible_mode = true;
        const auto r = run("kms", input, f);
        CHECK(section(r, "kms")["bracket"][0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(section(r, "kms")["bracket"][1].get<double>() == doctest::Approx(std::log(2.0)));
        CHECK(section(r, "kms")["temperature_sign"]["sign"] == "mixed");
        CHECK_FALSE(r.warnings.empty());
    }

    TEST_CASE("command-line exit codes and output") {
        const auto ok = run_cli("kms --no-timestamp", kGoldenDoc);
        CHECK(ok.status == 0);
        const auto doc = ordered_json::parse(ok.out);
        CHECK(doc["results"]["kms"]["beta"].get<double>() == doctest::Approx(std::log(std::numbers::phi)));

        const auto again = run_cli("kms --no-timestamp", kGoldenDoc);
        CHECK(again.out == ok.out);
        CHECK(ordered_json::parse(run_cli("kms", kGoldenDoc).out)["provenance"].contains("timestamp"));

        CHECK(run_cli("kms", R"({"type":"sft","matrix":[[1,0],[1,0]]})").status == 1);
        CHECK(run_cli("kms", "not json").status == 1);
        CHECK(run_cli("nonsense", kGoldenDoc).status == 1);
        CHECK(run_cli("kms", R"({"type":"sft","matrix":[[1,1,0],[0,1,1],[0,1,1]]})").status == 1);
        CHECK(run_cli("kms --reducible-mode", R"({"type":"sft","matrix":[[1,1,0],[0,1,1],[0,1,1]]})").status == 0);
        CHECK(run_cli("variational --samples 20 --seed 3 --kernel scalar", kGoldenDoc).status == 0);
        CHECK(run_cli("bracket --max-n 12 --depth 8", R"({"type":"forbidden","alphabet":2,"words":[[1,1]]})").status == 0);
    }
}
