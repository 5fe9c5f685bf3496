#include <doctest.h>

#include <random>
#include <thread>

#include "banach/streams.hpp"
#include "oracles.hpp"

using namespace banach;

TEST_CASE("prefix expands literals and identity") {
    CHECK(prefix(identity_seq(), 3) == std::vector<nat>{0, 1, 2});
    CHECK(prefix(parse_seq("1,0,1;0").seq(), 5) == std::vector<nat>{1, 0, 1, 0, 0});
    CHECK(prefix(constant_seq(4), 0).empty());
}

TEST_CASE("sequence literal grammar") {
    UltimatelyConstantSeq u = parse_seq("3,14,15;9");
    CHECK(u.prefix == std::vector<nat>{3, 14, 15});
    CHECK(u.tail == 9);
    CHECK(u.str() == "3,14,15;9");
    CHECK(parse_seq(";1").prefix.empty());
    for (const char* bad : {"", "1,2", "1,,2;0", "1;", "a;0", "1;0;0", "-1;0", "1, 2;0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_seq(bad), ParseError);
    }
    try {
        parse_seq("1,x;0");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
        CHECK(e.kind() == "parse-error");
    }
}

TEST_CASE("fuel must be positive") {
    CHECK_THROWS_AS(Fuel(0), Error);
    CHECK(Fuel(1).bound() == 1);
}

TEST_CASE("lpo examples") {
    CHECK(lpo(parse_seq("1,0,1;1").seq(), Fuel(16)) == OracleResult::found(0));
    CHECK(lpo(constant_seq(1), Fuel(16), true) == OracleResult::found(1));
    CHECK(lpo(constant_seq(1), Fuel(16)) == OracleResult::exhausted(16));
}

TEST_CASE("mu0 and mu examples") {
    CHECK(mu0(parse_seq("1,1,0;1").seq(), Fuel(8)) == OracleResult::found(2));
    CHECK(mu0(constant_seq(0), Fuel(8)) == OracleResult::found(0));
    CHECK(mu0(constant_seq(1), Fuel(4)) == OracleResult::exhausted(4));
    CHECK(mu(parse_seq("1,0,0;0").seq(), Fuel(8)) == OracleResult::found(1));
    CHECK(mu(constant_seq(0), Fuel(8)) == OracleResult::found(0));
    CHECK(mu(LazySeq([](nat n) -> nat { return n >= 5 ? 0 : 1; }), Fuel(16)) == OracleResult::found(5));
}

TEST_CASE("oracle result accessors") {
    CHECK(OracleResult::found(3).str() == "Found(3)");
    CHECK(OracleResult::exhausted(8).str() == "Exhausted(8)");
    CHECK_THROWS_AS(OracleResult::exhausted(8).value(), ExhaustedError);
}

TEST_CASE("diagonal examples") {
    auto zeros = diagonal([](nat) { return constant_seq(0); });
    auto ones = diagonal([](nat) { return constant_seq(1); });
    CHECK(prefix(zeros, 8) == std::vector<nat>(8, 1));
    CHECK(prefix(ones, 8) == std::vector<nat>(8, 0));
    auto par = [](nat m) { return LazySeq([m](nat n) { return (m + n) % 2; }); };
    LazySeq g = diagonal(par);
    for (nat k = 0; k <= 64; ++k) {
        CHECK(g(k) == 1);
        CHECK(g(k) != par(k)(k));
    }
}

namespace {

LazySeq random_seq(std::mt19937_64& rng, nat len, nat hi) {
    std::vector<nat> v(len);
    for (auto& x : v) x = std::uniform_int_distribution<nat>(0, hi)(rng);
    return from_prefix(v, std::uniform_int_distribution<nat>(0, 1)(rng));
}

}  // namespace

TEST_CASE("property: oracles agree with brute force and are fuel monotone") {
    std::mt19937_64 rng(11);
    for (int c = 0; c < 400; ++c) {
        LazySeq s = random_seq(rng, 40, c % 3 == 0 ? 30 : 4);
        for (nat f : {nat{1}, nat{5}, nat{17}, nat{64}}) {
            auto z = oracle::least_zero(s, f);
            OracleResult m = mu(s, Fuel(f)), m0 = mu0(s, Fuel(f)), l = lpo(s, Fuel(f));
            if (z) {
                CHECK(m == OracleResult::found(*z));
                REQUIRE(m0.is_found());
                CHECK(s(m0.value()) == 0);
                CHECK(m.value() <= m0.value());
                CHECK(l == OracleResult::found(0));
                CHECK(mu(s, Fuel(f * 3)) == m);
                CHECK(lpo(s, Fuel(f * 3)) == l);
            } else {
                CHECK(m == OracleResult::exhausted(f));
                CHECK(m0 == OracleResult::exhausted(f));
                CHECK(l == OracleResult::exhausted(f));
            }
        }
    }
}

TEST_CASE("property: diagonal avoids every enumerated sequence") {
    std::mt19937_64 rng(5);
    std::vector<LazySeq> e;
    for (int i = 0; i < 50; ++i) e.push_back(random_seq(rng, 60, 3));
    LazySeq g = diagonal([&](nat m) { return e[m]; });
    for (nat k = 0; k < 50; ++k) CHECK(g(k) != std::min<nat>(1, e[k](k)));
}

TEST_CASE("streams memoize and are thread safe") {
    std::atomic<int> calls{0};
    LazySeq s([&](nat n) {
        ++calls;
        return n * 3;
    });
    CHECK(s(7) == 21);
    CHECK(s(7) == 21);
    CHECK(calls == 1);
    CHECK(s((nat{1} << 40) + 1) == 3 * ((nat{1} << 40) + 1));
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t)
        ts.emplace_back([&] {
            for (nat n = 0; n < 2000; ++n) REQUIRE(s(n) == 3 * n);
        });
    for (auto& t : ts) t.join();
    CHECK(s.cached() >= 2000);
    CHECK(calls <= 2000 * 4 + 2);
}

TEST_CASE("cache limit bounds memo size without changing values") {
    set_cache_limit(10);
    LazySeq s([](nat n) { return n + 1; });
    for (nat n = 0; n < 100; ++n) CHECK(s(n) == n + 1);
    CHECK(s.cached() == 10);
    set_cache_limit(0);
}
