// Contract tests for the command-line driver: the documented invocations,
// exit codes, and byte-determinism of the JSON reports.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::ordered_json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = std::string(CLI_TMPDIR) + "/cli_test_out.json";
    std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " --out " + out_path +
                      " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    std::remove(out_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("verify: named checks and exit codes") {
    auto pole = run_cli("verify --lemma trefoil-pole --p 5");
    CHECK(pole.exit_code == 0);
    json doc = json::parse(pole.output);
    CHECK(doc["command"] == "verify");
    CHECK(doc["results"][0]["status"] == "ok");
    CHECK(doc["results"][0]["longitude_valuation_at_infinity"]["valuation"] == -6);

    auto klein = run_cli("verify --lemma klein-irr --p 2");
    CHECK(klein.exit_code == 0);
    CHECK(json::parse(klein.output)["results"][0]["status"] == "ok");

    auto inapplicable = run_cli("verify --lemma torus-char2 --phi 0,1,-1,0 --p 3");
    CHECK(inapplicable.exit_code == 0);
    CHECK(json::parse(inapplicable.output)["results"][0]["status"] == "inapplicable");

    CHECK(run_cli("verify --lemma no-such-check --p 2").exit_code == 2);
    CHECK(run_cli("verify").exit_code == 2);
}

TEST_CASE("census: coverage, informational reports, bounds") {
    auto klein = run_cli("census --group klein --q 3");
    CHECK(klein.exit_code == 0);
    json doc = json::parse(klein.output);
    auto& r = doc["results"][0];
    CHECK(r["uncovered"].empty());
    CHECK(r["coverage"] == "enforced");
    CHECK(r["sl2_count"] == 24);
    CHECK(r["conjugation_consistency"]["consistent"] == true);

    auto trefoil = run_cli("census --group trefoil --q 4");
    CHECK(trefoil.exit_code == 0);
    CHECK(json::parse(trefoil.output)["results"][0]["uncovered"].empty());

    auto glued = run_cli("census --group glued --phi 0,1,-1,0 --q 2");
    CHECK(glued.exit_code == 0);
    CHECK(json::parse(glued.output)["results"][0]["coverage"] == "informational");

    CHECK(run_cli("census --group klein --q 6").exit_code == 2);   // not a prime power
    CHECK(run_cli("census --group glued --q 2").exit_code == 2);   // missing --phi
    setenv("SL2CV_WORK_BOUND", "10", 1);
    CHECK(run_cli("census --group klein --q 5").exit_code == 3);
    unsetenv("SL2CV_WORK_BOUND");
}

TEST_CASE("detect: verdicts and case mismatch") {
    auto s2 = run_cli("detect --phi 0,1,-1,0 --surface S2 --p 2");
    CHECK(s2.exit_code == 0);
    json doc = json::parse(s2.output);
    CHECK(doc["results"][0]["verdict"] == "detected");
    bool witness_seen = false;
    for (auto& entry : doc["results"][0]["curves"])
        if (entry["verdict"] == "witness-negative") {
            witness_seen = true;
            CHECK(entry["witness_valuation"] == -2);
        }
    CHECK(witness_seen);

    auto s5 = run_cli("detect --phi 1,0,-6,1 --surface S5 --p 3");
    CHECK(s5.exit_code == 0);
    json s5doc = json::parse(s5.output);
    CHECK(s5doc["results"][0]["verdict"] == "not-detected");
    CHECK(s5doc["results"][0]["certification"] == "finite-field-census");

    CHECK(run_cli("detect --phi 1,0,0,1 --surface S2 --p 3").exit_code == 4);
    CHECK(run_cli("detect --phi 1,1,1,1 --surface S1 --p 3").exit_code == 2);  // det != 1
}

TEST_CASE("detect-s4 and conjecture-probe") {
    auto det = run_cli("detect-s4 --q 4 --u 3 --v 1 --p 7");
    CHECK(det.exit_code == 0);
    json doc = json::parse(det.output);
    CHECK(doc["results"][0]["verdict"] == "detected");
    CHECK(doc["results"][0]["at_t"]["valuation"] == 0);

    auto off = run_cli("detect-s4 --q 4 --u 4 --v 1 --p 7");
    CHECK(json::parse(off.output)["results"][0]["verdict"] == "not-detected");

    auto probe = run_cli("conjecture-probe --q 3 --r 2 --p 5");
    CHECK(probe.exit_code == 0);
    json pd = json::parse(probe.output);
    CHECK(pd["results"][0]["verdict"].is_null());  // no claim for r > 1
    CHECK(pd["results"][0]["valuations"].size() >= 5);

    auto r1 = run_cli("conjecture-probe --q 2 --r 1 --p 5");
    CHECK(json::parse(r1.output)["results"][0]["verdict"] == "detected");

    CHECK(run_cli("conjecture-probe --q 4 --r 2 --p 5").exit_code == 2);  // gcd != 1
}

TEST_CASE("reports are byte-deterministic") {
    for (const char* args : {"verify --lemma klein-red --p 3", "census --group klein --q 4",
                             "detect-s4 --q 3 --u 2 --v 1 --p 5"}) {
        auto a = run_cli(args);
        auto b = run_cli(args);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.output == b.output);
        CHECK(!a.output.empty());
    }
}
