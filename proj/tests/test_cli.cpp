#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "tight/generators.hpp"
#include "tight/io.hpp"

using namespace tight;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(TIGHT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture_dir() {
    static std::string dir = [] {
        std::string d = "cli_fixtures";
        if (std::system(("mkdir -p " + d).c_str()) != 0) FAIL("cannot create fixture dir");
        auto write = [&](const std::string& name, const SimplicialComplex& c) {
            std::ofstream out(d + "/" + name);
            out << render_complex(c);
        };
        write("bs3.cplx", boundary_simplex(3));
        write("bs4.cplx", boundary_simplex(4));
        write("octahedron.cplx", cross_polytope(2));
        write("crosspoly3.cplx", cross_polytope(3));
        write("sum02.cplx", connected_sum(0, 2));
        std::ofstream bad(d + "/bad.cplx");
        bad << "1 1 2\n";
        std::ofstream json(d + "/bs3.json");
        json << "{\"facets\": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}\n";
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("exit code matrix") {
    auto dir = fixture_dir();
    CHECK(run("tight " + dir + "/bs4.cplx --field 2").exit_code == 0);
    CHECK(run("tight " + dir + "/octahedron.cplx --field 2").exit_code == 0);  // decided: not tight
    CHECK(run("tight " + dir + "/bs4.cplx --badflag").exit_code == 2);
    CHECK(run("nonsense-subcommand").exit_code == 2);
    CHECK(run("tight " + dir + "/missing.cplx").exit_code == 3);
    CHECK(run("tight " + dir + "/bad.cplx").exit_code == 3);
    CHECK(run("tight " + dir + "/bs4.cplx --method fptd --field q").exit_code == 4);
}

TEST_CASE("tight reports") {
    auto dir = fixture_dir();
    auto r = run("tight " + dir + "/bs4.cplx --field 2 --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "tight");
    CHECK(j["algorithm"] == "poly3");
    CHECK(j["mu1"] == "0/1");
    CHECK(j["beta1"] == 0);

    auto nt = run("tight " + dir + "/octahedron.cplx --field 2 --json --certificate");
    auto jn = nlohmann::json::parse(nt.out);
    CHECK(jn["verdict"] == "not_tight");
    CHECK(jn["reason"] == "NOT_2_NEIGHBOURLY");
    CHECK(jn["certificate"]["witness"]["W"].size() == 2);
    CHECK(jn["certificate"]["witness"]["k"] == 0);
}

TEST_CASE("golden stability: reports are byte-identical across runs") {
    auto dir = fixture_dir();
    std::vector<std::string> cases = {
        "tight " + dir + "/bs3.cplx --field 2 --json --certificate",
        "tight " + dir + "/bs4.cplx --field 2 --json --certificate",
        "tight " + dir + "/octahedron.cplx --field 2 --json --certificate",
        "tight " + dir + "/crosspoly3.cplx --field q --json --certificate",
        "tight " + dir + "/sum02.cplx --field 2 --json --certificate",
    };
    for (const auto& c : cases) {
        auto a = run(c);
        auto b = run(c);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("embedded golden report") {
    auto dir = fixture_dir();
    auto r = run("tight " + dir + "/bs4.cplx --field 2 --json");
    const std::string expected = R"({
  "algorithm": "poly3",
  "beta1": 0,
  "field": "F2",
  "input": {
    "dimension": 3,
    "f_vector": [
      5,
      10,
      10,
      5
    ],
    "two_neighbourly": true,
    "vertices": 5
  },
  "mu1": "0/1",
  "verdict": "tight"
}
)";
    CHECK(r.out == expected);
}

TEST_CASE("json input format and roundtrip") {
    auto dir = fixture_dir();
    auto a = run("info " + dir + "/bs3.cplx");
    auto b = run("info " + dir + "/bs3.json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    auto c = parse_complex(dir + "/bs3.cplx");
    std::ofstream rt(dir + "/bs3_rt.cplx");
    rt << render_complex(c);
    rt.close();
    auto c2 = parse_complex(dir + "/bs3_rt.cplx");
    CHECK(c.same_complex(c2));
}

TEST_CASE("auto verdicts equal brute verdicts through the CLI") {
    auto dir = fixture_dir();
    for (const std::string& f : {"bs3.cplx", "bs4.cplx", "octahedron.cplx", "sum02.cplx"}) {
        auto a = nlohmann::json::parse(
            run("tight " + dir + "/" + f + " --field 2 --method auto --json").out);
        auto b = nlohmann::json::parse(
            run("tight " + dir + "/" + f + " --field 2 --method brute --json").out);
        CHECK(a["verdict"] == b["verdict"]);
    }
}

TEST_CASE("other subcommands") {
    auto dir = fixture_dir();
    auto info = run("info " + dir + "/octahedron.cplx");
    CHECK(info.exit_code == 0);
    CHECK(info.out.find("f-vector:        (6,12,8)") != std::string::npos);

    auto hom = run("homology " + dir + "/bs4.cplx --field 2 --integral");
    CHECK(hom.exit_code == 0);
    CHECK(hom.out.find("beta_3(F2) = 1") != std::string::npos);
    CHECK(hom.out.find("H_3(Z) = Z^1") != std::string::npos);

    auto sig = run("sigma " + dir + "/bs3.cplx");
    CHECK(sig.out.find("sigma_0 = -1/1") != std::string::npos);
    auto sigf = run("sigma " + dir + "/bs3.cplx --method fpt");
    CHECK(sigf.out.find("sigma_0 = -1/1") != std::string::npos);

    auto mu = run("mu " + dir + "/bs4.cplx");
    CHECK(mu.out.find("mu_1 = 0/1") != std::string::npos);

    auto tw = run("treewidth " + dir + "/bs4.cplx --graph dual --strategy exact_small");
    CHECK(tw.exit_code == 0);
    CHECK(tw.out.find("width:      4") != std::string::npos);
    CHECK(tw.out.find("valid:      yes") != std::string::npos);

    auto gen_out = run("gen moebius_torus7");
    CHECK(gen_out.exit_code == 0);
    CHECK(gen_out.out.find("0 1 3") != std::string::npos);
    CHECK(run("gen nonsense").exit_code == 3);
    CHECK(run("gen boundary_simplex 3 4 5").exit_code == 3);
}
