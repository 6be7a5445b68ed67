#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(NFIH_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string map(const std::string& name) { return std::string(NFIH_DATA) + "/maps/" + name + ".map"; }
std::string cx(const std::string& name) { return std::string(NFIH_DATA) + "/complexes/" + name + ".json"; }

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("analyze") {
    auto r = run("analyze " + map("example32"));
    CHECK(r.code == 0);
    CHECK(has(r.out, "Sing(F): {x*y + x = 0}"));
    CHECK(has(r.out, "Sing(F) factors: x = 0; y + 1 = 0"));
    CHECK(has(r.out, "K_0(F): {alpha^2 + beta = 0}"));
    CHECK(has(r.out, "S_F (real): {alpha = 0, beta >= 0}"));
    CHECK(has(r.out, "alpha = 0 [confirmed]"));
    CHECK(has(run("analyze " + map("identity")).out, "summary: Proper; all sets empty"));
    CHECK(has(run("analyze " + map("xy")).out, "summary: NonProper; S_F: {alpha = 0}"));
}

TEST_CASE("ih") {
    auto r = run("ih " + cx("pinched_torus") + " --perversity zero");
    CHECK(r.code == 0);
    CHECK(has(r.out, "H: (1, 1, 1)"));
    CHECK(has(r.out, "IH^(0) [closed]: (1, 0, 1)"));
    CHECK(has(run("ih " + cx("torus")).out, "H: (1, 2, 1)"));
    auto s = run("ih " + cx("suspended_torus") + " --duality --invariance");
    CHECK(s.code == 0);
    CHECK(has(s.out, "duality ordinary: FAIL"));
    CHECK(has(s.out, "duality (0, 0) / (0, 1): PASS"));
    CHECK(has(s.out, "duality (0, 1) / (0, 0): PASS"));
    CHECK_FALSE(has(s.out, "invariance (0, 0): FAIL"));
    auto d = run("ih " + cx("disk") + " --variant relative --subdivide 2");
    CHECK(d.code == 0);
    CHECK(has(d.out, "IH^(0) [relative]: (0, 0, 1)"));
}

TEST_CASE("harness") {
    auto a = run("harness " + map("automorphism"));
    CHECK(a.code == 0);
    CHECK(has(a.out, "H: (1, 0, 0, 0, 0)"));
    CHECK(has(a.out, "consistency: consistent"));
    auto x = run("harness " + map("xy") + " --subdivide 0");
    CHECK(x.code == 0);
    CHECK(has(x.out, "IH_2 = 1"));
    CHECK(has(x.out, "consistency: consistent"));
    auto e = run("harness " + map("example32"));
    CHECK(e.code == 0);
    CHECK(has(e.out, "outside theorem hypotheses"));
    CHECK(has(e.out, "consistency: no verdict"));
}

TEST_CASE("example32 and selftest") {
    auto r = run("example32");
    CHECK(r.code == 0);
    CHECK(has(r.out, "total sheets: 4"));
    CHECK(has(r.out, "gluing pairs: 1-2 3-4"));
    CHECK(has(r.out, "singular codimension: 1"));
    auto s = run("selftest");
    CHECK(s.code == 0);
    CHECK_FALSE(has(s.out, "FAIL"));
}

TEST_CASE("exit codes") {
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("analyze " + map("bad_syntax")).code == 1);
    CHECK(run("analyze /nonexistent/file.map").code == 1);
    CHECK(run("ih " + cx("malformed")).code == 1);
    CHECK(run("ih " + cx("torus") + " --perversity custom:1").code == 1);
    CHECK(run("ih " + cx("torus") + " --format yaml").code == 1);
    CHECK(run("ih " + cx("bad_boundary")).code == 2);
    CHECK(run("harness " + map("unsupported")).code == 2);
    CHECK(run("harness " + map("automorphism") + " --complex " + cx("pinched_torus")).code == 3);
}

TEST_CASE("json output is deterministic and carries the seed") {
    const std::string args = "harness " + map("xy") + " --subdivide 0 --format json --seed 5";
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["seed"] == 5);
    CHECK(j["consistency"] == "consistent");
    auto e = nlohmann::json::parse(run("example32 --format json").out);
    CHECK(e["total_sheets"] == 4);
    CHECK(e["gluing_pairs"] == nlohmann::json::array({{1, 2}, {3, 4}}));
    auto an = run("analyze " + map("example32") + " --format json");
    CHECK(an.out == run("analyze " + map("example32") + " --format json").out);
    CHECK(nlohmann::json::parse(an.out)["sf_real"]["text"] == "{alpha = 0, beta >= 0}");
}

TEST_CASE("text trailer") {
    auto r = run("analyze " + map("identity") + " --seed 7");
    CHECK(has(r.out, "# nfih version=1.0.0 seed=7 command=analyze"));
}
