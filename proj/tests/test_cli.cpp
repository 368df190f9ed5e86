#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

const char* cli_path() {
    const char* p = std::getenv("TDMECH_CLI");
    REQUIRE_MESSAGE(p != nullptr, "TDMECH_CLI must point at the command-line binary");
    return p;
}

const char* models_dir() {
    const char* p = std::getenv("TDMECH_MODELS");
    REQUIRE_MESSAGE(p != nullptr, "TDMECH_MODELS must point at the model configs");
    return p;
}

RunResult run(const std::string& args) {
    std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string model(const std::string& name) { return std::string(models_dir()) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/" + name;
    std::ofstream os(path);
    os << content;
    return path;
}

}  // namespace

TEST_CASE("validate accepts the stock models") {
    for (const char* name : {"rank1.json", "shared_mode.json", "harmonic.json", "rank1_forced.json"}) {
        RunResult r = run("validate --model " + model(name));
        CHECK(r.status == 0);
        json j = json::parse(r.out);
        CHECK(j["ok"] == true);
        CHECK(j["results"]["max_b_residual"].get<double>() <= 1e-12);
    }
    json j = json::parse(run("validate --model " + model("rank1.json")).out);
    CHECK(j["results"]["rank"] == 1);
}

TEST_CASE("validate rejects a rank-varying model") {
    std::string path = write_temp("tdmech_cli_rankvar.json", R"({
        "m": 1,
        "a": [[[{"coeff": "1", "exps": [0, 1]}]]],
        "b": [[]],
        "c": [],
        "domain": {"t": [0.0, 1.0], "q": [[0.0, 1.0]]}
    })");
    RunResult r = run("validate --model " + path);
    CHECK(r.status == 1);
    json j = json::parse(r.out);
    CHECK(j["ok"] == false);
    CHECK(j["error"]["type"] == "model-validation");
}

TEST_CASE("split reports") {
    json sym = json::parse(run("split --model " + model("shared_mode.json")).out);
    CHECK(sym["ok"] == true);
    CHECK(sym["results"]["symbolic"] == true);
    CHECK(sym["results"]["identities_exact"] == true);
    REQUIRE(sym["results"]["constraints"].size() == 2);
    CHECK(sym["results"]["constraints"][0] == "(1/2)*p1 + (-1/2)*p2");

    json pw = json::parse(run("split --model " + model("scaled_rank1.json")).out);
    CHECK(pw["ok"] == true);
    CHECK(pw["results"]["symbolic"] == false);
    CHECK(pw["results"]["max_identity_residual"].get<double>() <= 1e-9);
}

TEST_CASE("split accepts inline sigma1") {
    std::string s1 = R"([[[],[]],[[],[{"coeff":"1","exps":[0,0,0]}]]])";
    RunResult r = run("split --model " + model("rank1.json") + " --sigma1 '" + s1 + "'");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["results"]["sigma1"][1][1].size() == 1);

    // sigma1 violating a*sigma1 = 0 is a failed check, not bad input
    std::string bad = R"([[[{"coeff":"1","exps":[0,0,0]}],[]],[[],[]]])";
    RunResult rb = run("split --model " + model("rank1.json") + " --sigma1 '" + bad + "'");
    CHECK(rb.status == 1);
    json jb = json::parse(rb.out);
    CHECK(jb["error"]["type"] == "check-failed");
}

TEST_CASE("simulate writes a trajectory and a report") {
    std::string csv = "/tmp/tdmech_cli_osc.csv";
    RunResult r = run("simulate --model " + model("harmonic.json") +
                      " --initial '{\"t\":0,\"q\":[1],\"p\":[0]}' --step 0.001 --t-end 1 --out " + csv);
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["results"]["samples"] == 1001);
    CHECK(j["results"]["constraint_drift"].get<double>() <= 1e-12);
    double e0 = j["results"]["energy_initial"].get<double>();
    double e1 = j["results"]["energy_final"].get<double>();
    CHECK(std::abs(e0 - 0.5) <= 1e-12);
    CHECK(std::abs(e1 - e0) <= 1e-9);

    std::ifstream is(csv);
    REQUIRE(is.good());
    std::string line, last;
    std::getline(is, line);
    CHECK(line == "t,q1,p1");
    while (std::getline(is, line))
        if (!line.empty()) last = line;
    std::istringstream ls(last);
    double t, q1;
    char comma;
    ls >> t >> comma >> q1;
    CHECK(t == doctest::Approx(1.0));
    CHECK(q1 == doctest::Approx(std::cos(1.0)).epsilon(1e-6));
    std::remove(csv.c_str());
}

TEST_CASE("simulate flags constraint drift") {
    RunResult r = run("simulate --model " + model("rank1.json") +
                      " --initial '{\"t\":0,\"q\":[0,0],\"p\":[1,1]}' --step 0.001 --t-end 0.1");
    CHECK(r.status == 1);
    json j = json::parse(r.out);
    CHECK(j["ok"] == false);
    CHECK(j["results"]["constraint_drift"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("lagrange-check passes on true flows") {
    RunResult r = run("lagrange-check --model " + model("rank1.json") +
                      " --initial '{\"t\":0,\"q\":[0,0],\"p\":[1,0]}' --step 0.001 --t-end 1");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["results"]["lagrange_residual"].get<double>() <= 1e-4);
    CHECK(j["results"]["gauge_residual"].get<double>() <= 1e-4);
    CHECK(j["results"]["momentum_residual"].get<double>() <= 1e-4);
}

TEST_CASE("classify reports class tags") {
    json j = json::parse(run("classify --model " + model("rank1.json")).out);
    CHECK(j["ok"] == true);
    CHECK(j["results"]["mode"] == "symbolic");
    REQUIRE(j["results"]["classes"].size() == 1);
    CHECK(j["results"]["classes"][0] == "first");
    CHECK(j["results"]["generators"][0] == "(1)*p2");

    json sh = json::parse(run("classify --model " + model("shared_mode.json")).out);
    CHECK(sh["results"]["classes"] == json::array({"first", "first"}));
    REQUIRE(sh["results"]["relations"].size() == 1);
}

TEST_CASE("kt subcommand reports nilpotency and homology") {
    RunResult r = run("kt --model " + model("rank1.json") + " --K 4 --D 2 --seed 7");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["results"]["nilpotent"] == true);
    REQUIRE(j["results"]["homology"].size() == 4);
    CHECK(j["results"]["homology"][0]["h_dim"] == 3);
    for (int k = 1; k <= 3; ++k) CHECK(j["results"]["homology"][k]["h_dim"] == 0);
}

TEST_CASE("kt output is deterministic for a fixed seed") {
    std::string args = "kt --model " + model("shared_mode.json") + " --K 4 --D 2 --seed 7";
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.status == 0);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
    REQUIRE(!a.out.empty());

    RunResult c = run("kt --model " + model("shared_mode.json") + " --K 4 --D 2 --seed 8");
    CHECK(c.status == 0);  // different seed still verifies, params differ
}

TEST_CASE("brst subcommand renders and verifies the charge") {
    RunResult r = run("brst --model " + model("rank1.json") + " --K 1");
    CHECK(r.status == 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["results"]["charge"] == "(1)*p2*cb[2,1]^1");
    CHECK(j["results"]["verified"] == true);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("validate").status == 2);
    CHECK(run("validate --model " + model("rank1.json") + " --no-such-flag").status == 2);
    CHECK(run("no-such-subcommand").status == 2);

    std::string broken = write_temp("tdmech_cli_broken.json", "{ this is not json");
    RunResult r = run("validate --model " + broken);
    CHECK(r.status == 2);
    json j = json::parse(r.out);
    CHECK(j["error"]["type"] == "bad-input");

    RunResult ri = run("simulate --model " + model("harmonic.json") + " --initial '{\"t\":0,\"q\":[1]}'");
    CHECK(ri.status == 2);
}

TEST_CASE("missing model file is bad input") {
    RunResult r = run("validate --model /tmp/tdmech_cli_does_not_exist.json");
    CHECK(r.status != 0);
    json j = json::parse(r.out);
    CHECK(j["ok"] == false);
}
