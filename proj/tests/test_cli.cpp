#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "../tools/cli.hpp"
#include "banach/dyadic.hpp"
#include "banach/error.hpp"
#include "banach/streams.hpp"

using json = nlohmann::ordered_json;
namespace cli = banach::cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    Run r = run(args);
    INFO(r.err);
    return json::parse(r.out);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli examples") {
    json g = run_json({"gadget", "--g", "1,1,0;0"});
    CHECK(g["output"]["h1"] == 0);
    CHECK(g["output"]["verified"] == true);

    Run h = run({"metric", "banach-h", "--space", "interval", "--pair", "halving", "--x", "1/2^1", "--level", "10"});
    CHECK(h.code == cli::kOk);
    CHECK(h.out.find("H(x) = 1 ") != std::string::npos);
    CHECK(h.out.find("via-G-inverse") != std::string::npos);

    Run o = run({"oracle", "llpomin", "--seq", "1,0,1,0,0;0", "--fuel", "32"});
    CHECK(o.code == cli::kOk);
    CHECK(o.out == "Found(1)\n");
}

TEST_CASE("report schema has a stable key order") {
    json j = run_json({"oracle", "mu", "--seq", "1,0,0;0"});
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"op", "input", "output", "fuel", "depth", "level", "violations",
                                           "elapsed_ms"});
    CHECK(j["op"] == "oracle mu");
    CHECK(j["fuel"] == 256);
    CHECK(j["depth"].is_null());
    CHECK(j["output"]["value"] == 1);
}

TEST_CASE("bijection serializes as sorted triples") {
    json j = run_json({"banach-nat", "--pair", "succ", "--n", "4"});
    CHECK(j["output"]["bijection"] == json::parse(R"([[0,1,"via-f0"],[1,0,"via-f1-inverse"],[2,3,"via-f0"],[3,2,"via-f1-inverse"]])"));
    CHECK(j["depth"] == 16);
}

TEST_CASE("determinism modulo elapsed time") {
    std::vector<std::vector<std::string>> cmds{
        {"corpus", "gadget", "--cases", "10", "--seed", "7"},
        {"metric", "modulus", "--level", "6"},
        {"range", "bound", "--f", "sq", "--n", "10", "--fuel", "64"},
        {"metric", "banach-h", "--space", "cantor", "--pair", "padding", "--x", "repeat:10", "--level", "12"},
    };
    for (const auto& c : cmds) {
        json a = run_json(c), b = run_json(c);
        a.erase("elapsed_ms");
        b.erase("elapsed_ms");
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("diagram text mode matches the golden layout") {
    Run r = run({"diagram", "--g", "1,1,0;1"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == slurp(GOLDEN_DIR "/chains_zero_at_2.txt"));
}

TEST_CASE("exit code contract") {
    CHECK(run({"oracle", "mu0", "--seq", ";1", "--fuel", "8"}).code == cli::kExhausted);
    CHECK(run({"range", "verify", "--f", "mul:2", "--aux", "const:1", "--n", "8", "--fuel", "64"}).code ==
          cli::kVerifyFailed);
    CHECK(run({"range", "verify", "--f", "id", "--aux", "const:1", "--n", "8"}).code == cli::kOk);
    CHECK(run({"range", "refute", "--pad", "4"}).code == cli::kVerifyFailed);
    CHECK(run({"metric", "preimage", "--x", "3/2^2", "--level", "4"}).code == cli::kExhausted);
    CHECK(run({"oracle", "lpo", "--seq", "1,x;0"}).code == cli::kParseError);
    CHECK(run({"oracle", "bogus", "--seq", "1;0"}).code == cli::kParseError);
    CHECK(run({"--fuel", "0", "oracle", "lpo", "--seq", "1;0"}).code == cli::kParseError);
    CHECK(run({"metric", "range", "--x", "1/3"}).code == cli::kParseError);
    CHECK(run({}).code == cli::kParseError);
    CHECK(run({"--help"}).code == cli::kOk);
    Run e = run({"oracle", "lpo", "--seq", "1,x;0"});
    CHECK(e.err.find("position 2") != std::string::npos);
    CHECK(e.err.find("expected") != std::string::npos);
}

TEST_CASE("property: malformed literals always exit 3") {
    std::mt19937_64 rng(77);
    const std::string alphabet = "0123456789,;x/^- ";
    int tested = 0;
    while (tested < 300) {
        std::string s;
        std::size_t len = rng() % 8 + 1;
        for (std::size_t i = 0; i < len; ++i) s += alphabet[rng() % alphabet.size()];
        // Keep only strings outside the sequence grammar.
        auto rejects = [&](auto parse) {
            try {
                parse(s);
                return false;
            } catch (const banach::ParseError&) {
                return true;
            }
        };
        bool bad_seq = rejects([](const std::string& t) { banach::parse_seq(t); });
        bool bad_dyadic = rejects([](const std::string& t) { banach::Dyadic::parse(t); });
        if (!bad_seq || !bad_dyadic) continue;
        ++tested;
        CAPTURE(s);
        CHECK(run({"oracle", "lpo", "--seq", s}).code == cli::kParseError);
        CHECK(run({"metric", "range", "--x", s}).code == cli::kParseError);
        CHECK(run({"metric", "range", "--space", "cantor", "--pair", "padding", "--x", s}).code == cli::kParseError);
    }
}

TEST_CASE("fuel defaults from the environment") {
    setenv("BANACH_FUEL", "12", 1);
    json j = run_json({"oracle", "mu0", "--seq", ";1"});
    CHECK(j["output"]["bound"] == 12);
    CHECK(j["fuel"] == 12);
    CHECK(run_json({"--fuel", "20", "oracle", "mu0", "--seq", ";1"})["fuel"] == 20);
    setenv("BANACH_FUEL", "ten", 1);
    CHECK(run({"oracle", "mu0", "--seq", ";1"}).code == cli::kParseError);
    unsetenv("BANACH_FUEL");
}

TEST_CASE("every subcommand runs") {
    CHECK(run({"range", "beta-to-rho", "--f", "mul:2", "--b", "id", "--n", "6"}).out == "chi: 1 0 1 0 1 0 1\n");
    CHECK(run({"range", "rho-to-beta", "--f", "mul:2", "--chi", "even", "--n", "4"}).out ==
          "beta: Found(0) Found(0) Found(1) Found(0) Found(2)\n");
    CHECK(run({"reduce", "llpomin-from-lpo", "--seq", "1,1,0;1", "--promise"}).out == "Found(0)\n");
    CHECK(run({"reduce", "grilliot", "--seq", ";1", "--promise"}).out == "Found(1)\n");
    CHECK(run({"reduce", "via-wkl", "--seq", "1,0;0", "--depth", "8"}).out == "1\n");
    CHECK(run({"reduce", "llpo-via-lpo", "--seq", "1,0,1,0;0", "--promise"}).out == "Found(1)\n");
    CHECK(run({"gadget", "--g", "1,1,1,0;0"}).out.find("h(1) = 1") == 0);
    CHECK(run({"metric", "range", "--x", "3/2^2", "--level", "6"}).out == "DefinitelyOut(2)\n");
    CHECK(run({"metric", "modulus", "--level", "5"}).out == "M: 0 1 2 3 4 5\n");
    CHECK(run({"metric", "preimage", "--x", "1/2^2", "--level", "4"}).out == "p_4 = 1/2^1\n");
    CHECK(run({"metric", "range", "--space", "cantor", "--pair", "padding", "--x", "1,1;1"}).out.find("DefinitelyOut") ==
          0);
    CHECK(run({"metric", "banach-h", "--space", "cantor", "--pair", "padding", "--x", "sigma:2", "--level", "8"})
              .out.find("via-F  stage 1") != std::string::npos);
    CHECK(run({"metric", "banach-h", "--space", "cantor", "--pair", "preimage", "--w", "1,0;1"}).code == cli::kOk);
    CHECK(run({"metric", "banach-h", "--space", "interval", "--pair", "padding"}).code != cli::kOk);
    CHECK(run({"decode", "--code", "constant", "--x", "3/2^2"}).out == "f(x)(4) = 1/2^1\n");
    json d = run_json({"decode", "--code", "identity", "--x", "3/2^2"});
    banach::Dyadic v = banach::Dyadic::parse(d["output"]["value"].get<std::string>());
    CHECK(!((v - banach::Dyadic(3, 2)).abs() > banach::Dyadic::pow2neg(4)));
    CHECK(d["output"]["consistent"] == true);
    for (const char* suite : {"reductions", "translators", "chains", "gadget", "preimage"}) {
        Run r = run({"corpus", suite, "--cases", "5"});
        CAPTURE(suite);
        CHECK(r.code == cli::kOk);
    }
    CHECK(run({"corpus", "nope"}).code == cli::kParseError);
}
