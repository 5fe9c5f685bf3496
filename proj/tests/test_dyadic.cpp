#include <doctest.h>

#include <random>

#include "banach/dyadic.hpp"

using namespace banach;

TEST_CASE("dyadic parse and print") {
    CHECK(Dyadic::parse("3/2^2") == Dyadic(3, 2));
    CHECK(Dyadic::parse("1/2^1").str() == "1/2^1");
    CHECK(Dyadic::parse("4/2^3").str() == "1/2^1");
    CHECK(Dyadic::parse("5").str() == "5");
    CHECK(Dyadic::parse("0/2^7").str() == "0");
    CHECK(Dyadic::parse("017/2^05") == Dyadic(17, 5));
    CHECK(Dyadic::parse("089") == Dyadic(89, 0));
    for (const char* bad : {"", "1/2", "1/3^2", "x", "1/2^", "1/2^x", "-1/2^1", "1 /2^1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Dyadic::parse(bad), ParseError);
    }
}

TEST_CASE("dyadic arithmetic is exact") {
    Dyadic a = Dyadic::parse("3/2^2"), b = Dyadic::parse("1/2^3");
    CHECK(a + b == Dyadic(7, 3));
    CHECK(a - b == Dyadic(5, 3));
    CHECK(a * b == Dyadic(3, 5));
    CHECK(b - a == -(a - b));
    CHECK((b - a).abs() == a - b);
    CHECK(a.half() == Dyadic(3, 3));
    CHECK(a.twice() == Dyadic(3, 1));
    CHECK(b < a);
    CHECK(Dyadic::pow2neg(200) > Dyadic(0));
    CHECK(Dyadic::pow2neg(200) + Dyadic::pow2neg(200) == Dyadic::pow2neg(199));
}

TEST_CASE("below_pow2 is the largest n with |d| < 2^-n") {
    CHECK(!Dyadic(0).below_pow2());
    CHECK(*Dyadic::pow2neg(3).below_pow2() == 2);
    CHECK(*Dyadic(3, 4).below_pow2() == 2);
    CHECK(*Dyadic(1).below_pow2() == -1);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Dyadic d(BigInt(rng() % 5000 + 1), rng() % 20);
        long long n = *d.below_pow2();
        // 2^-n is a power of two, so compare via shifts on the exponent.
        auto p = [](long long k) { return k >= 0 ? Dyadic::pow2neg(k) : Dyadic(BigInt(1) << -k, 0); };
        CHECK(d < p(n));
        CHECK(!(d < p(n + 1)));
    }
}

TEST_CASE("property: ring laws on random dyadics") {
    std::mt19937_64 rng(13);
    auto rnd = [&] { return Dyadic(BigInt(static_cast<long long>(rng() % 2001) - 1000), rng() % 12); };
    for (int i = 0; i < 500; ++i) {
        Dyadic a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Dyadic(0));
        CHECK((a < b) == (b - a).sign() > 0);
        CHECK(Dyadic::parse((a.abs()).str()) == a.abs());
    }
}
