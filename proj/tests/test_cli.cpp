#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shimorin/cli.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "shimorin_lab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = shimorin::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("help and bad input exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"classify", "--help"}).code == 0);
    CHECK(run({"classify", "--p", "2"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"mn", "--measure", "{bad", "--N", "4"}).code == 2);
    CHECK(run({"mn", "--measure", "power:1,-1.5", "--N", "4"}).code == 2);
    CHECK(run({"classify", "--p", "0.5", "--q", "2"}).code == 2);
    CHECK(run({"region", "--c", "3"}).code == 2);
}

TEST_CASE("mn prints the Lebesgue sequence") {
    auto r = run({"mn", "--measure", "lebesgue", "--N", "16"});
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 18);
    CHECK(l[0] == "n,m_n");
    CHECK(l[1] == "0,1");
    CHECK(l[2] == "1,0.75");
}

TEST_CASE("classify reports clause labels") {
    auto r = run({"classify", "--measure", "lebesgue", "--p", "1", "--q", "3/2"});
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[1].find("bounded,a") != std::string::npos);
    auto j = run({"classify", "--measure", "lebesgue", "--p", "4/3", "--q", "4", "--format", "json"});
    REQUIRE(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["verdict"] == "critical-line-interior");
}

TEST_CASE("region grid CSV") {
    auto r = run({"region", "--c", "2", "--resolution", "8"});
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    CHECK(l[0] == "inv_p,inv_q,verdict,clause");
    CHECK(l.size() == 65);
}

TEST_CASE("output is deterministic") {
    std::vector<std::string> args{"kernel-norm", "--measure", "nu_alpha:1.5", "--p", "3", "--abs-z", "0.5", "0.9"};
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out)[0] == "abs_z,norm,envelope_lower,envelope_upper");
}

TEST_CASE("verify suites pass on a point mass") {
    auto r = run({"verify", "--suite", "kernel", "--measure", "delta1"});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    for (const auto& c : doc["checks"]) CHECK(c["violations"] == 0);
}
