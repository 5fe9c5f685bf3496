#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "banach/banach_nat.hpp"
#include "banach/corpus.hpp"
#include "oracles.hpp"

using namespace banach;

namespace {

LazySeq lit(const char* s) { return parse_seq(s).seq(); }

bool brute_member(const BoundedInjPair& p, const Bits& s) { return oracle::banach_member(p.f0, p.f1, p.b0, p.b1, s); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("tree_member examples") {
    BoundedInjPair id = identity_pair();
    CHECK(tree_member(id, Bits{0}));
    CHECK(tree_member(id, Bits{1}));
    CHECK(tree_member(id, Bits{}));
    CHECK(tree_member(gadget_llpo(lit("1,1,0;0")), Bits{}));
    BoundedInjPair g = gadget_llpo(lit("1,1,0;0"));
    for (nat len = 6; len <= 10; ++len) {
        for (nat code = 0; code < (nat{1} << len); ++code) {
            Bits s(len);
            for (nat i = 0; i < len; ++i) s[i] = (code >> i) & 1;
            if (tree_member(g, s)) CHECK(s[1] == 0);
        }
    }
}

TEST_CASE("gadget pair values") {
    BoundedInjPair a = gadget_llpo(constant_seq(1));
    CHECK(a.f0(5) == 3);
    CHECK(a.f1(5) == 5);
    BoundedInjPair b = gadget_llpo(lit("1,1,0;0"));
    CHECK(b.f0(5) == 3);
    CHECK(b.f1(5) == 7);
    CHECK(b.f0(7) == 7);
    CHECK(b.f1(7) == 9);
    BoundedInjPair c = gadget_llpo(lit("1,1,1,0;0"));
    CHECK(c.f0(5) == 3);
    CHECK(c.f1(5) == 5);
    for (nat n = 0; n < 20; n += 2) {
        CHECK(c.f0(n) == n + 2);
        CHECK(c.f1(n) == n);
    }
    CHECK(c.f0(1) == 0);
    CHECK(c.f1(1) == 1);
}

TEST_CASE("gadget reads only g(0..n)") {
    std::mt19937_64 rng(2);
    for (nat s = 0; s < 12; ++s) {
        Rng r(s);
        LazySeq base = random_gadget_g(r, s);
        for (nat n = 0; n < 30; ++n) {
            // Perturb g beyond n and compare.
            LazySeq alt([base, n](nat k) { return k <= n ? base(k) : (base(k) == 0 ? 5 : 0); });
            BoundedInjPair p = gadget_llpo(base), q = gadget_llpo(alt);
            CHECK(p.f0(n) == q.f0(n));
            CHECK(p.f1(n) == q.f1(n));
        }
    }
}

TEST_CASE("property: gadget injective with sound bounds") {
    for (nat s = 0; s < 64; ++s) {
        Rng rng(s + 100);
        BoundedInjPair p = gadget_llpo(random_gadget_g(rng, s));
        std::set<nat> v0, v1;
        for (nat n = 0; n < 128; ++n) {
            CHECK(v0.insert(p.f0(n)).second);
            CHECK(v1.insert(p.f1(n)).second);
        }
        for (nat n = 0; n < 100; ++n) {
            auto w0 = oracle::least_witness(p.f0, n, 256);
            auto w1 = oracle::least_witness(p.f1, n, 256);
            if (w0) CHECK(*w0 <= p.b0(n));
            if (w1) CHECK(*w1 <= p.b1(n));
        }
        CHECK_NOTHROW(BoundedInjPair::checked(p.f0, p.f1, p.b0, p.b1, 128));
    }
}

TEST_CASE("checked rejects broken pairs") {
    CHECK_THROWS_WITH_AS(BoundedInjPair::checked(constant_seq(0), identity_seq(), identity_seq(), identity_seq(), 8),
                         doctest::Contains("invalid-pair"), Error);
    LazySeq late([](nat n) { return n < 4 ? n + 10 : n - 4; });
    CHECK_THROWS_AS(BoundedInjPair::checked(late, identity_seq(), identity_seq(), identity_seq(), 16), Error);
}

TEST_CASE("property: tree_member matches the verbatim clauses") {
    Rng rng(17);
    for (int c = 0; c < 80; ++c) {
        BoundedInjPair p = random_monotone_pair(rng, 40);
        for (int k = 0; k < 60; ++k) {
            Bits s(uniform(rng, 0, 14));
            for (auto& x : s) x = uniform(rng, 0, 1);
            CHECK(tree_member(p, s) == brute_member(p, s));
            // Downward closure.
            if (tree_member(p, s))
                for (nat l = 0; l < s.size(); ++l) CHECK(tree_member(p, Bits(s.begin(), s.begin() + l)));
        }
    }
    for (nat s = 0; s < 8; ++s) {
        BoundedInjPair g = gadget_llpo(from_prefix(std::vector<nat>(s, 1), 0));
        for (nat code = 0; code < 1024; ++code) {
            Bits b(10);
            for (nat i = 0; i < 10; ++i) b[i] = (code >> i) & 1;
            CHECK(tree_member(g, b) == brute_member(g, b));
        }
    }
}

TEST_CASE("property: banach tree search equals exhaustive leftmost member") {
    Rng rng(23);
    for (int c = 0; c < 40; ++c) {
        BoundedInjPair p = random_monotone_pair(rng, 30);
        auto want = oracle::leftmost_member([&](const Bits& s) { return brute_member(p, s); }, 12);
        auto got = wkl_search(banach_tree(p), 12);
        CHECK(got == want);
    }
    for (nat s = 0; s < 10; ++s) {
        BoundedInjPair g = gadget_llpo(from_prefix(std::vector<nat>(s, 1), 0));
        auto want = oracle::leftmost_member([&](const Bits& b) { return brute_member(g, b); }, 12);
        CHECK(wkl_search(banach_tree(g), 12) == want);
    }
}

TEST_CASE("path_to_bijection examples") {
    BoundedInjPair id = identity_pair();
    for (std::uint8_t bit : {0, 1}) {
        PartialBijection h = path_to_bijection(id, Bits(8, bit));
        CHECK(h.size() == 8);
        for (nat n = 0; n < 8; ++n) CHECK(h.at(n) == n);
    }
    BoundedInjPair sp = succ_pair();
    PartialBijection h = banach_bijection_nat(sp, 10);
    for (nat n = 0; n < 10; ++n) {
        CHECK(h.at(n) == (n % 2 == 0 ? n + 1 : n - 1));
        CHECK(h.forward.at(n).tag == (n % 2 == 0 ? BijTag::via_f0 : BijTag::via_f1_inverse));
    }
    CHECK_THROWS_WITH_AS(path_to_bijection(sp, Bits{1}), doctest::Contains("ill-defined-at"), Error);
}

TEST_CASE("banach_bijection_nat examples") {
    PartialBijection id = banach_bijection_nat(identity_pair(), 8);
    for (nat n = 0; n < 8; ++n) CHECK(id.at(n) == n);
    CHECK(banach_bijection_nat(gadget_llpo(lit("1,1,0;0")), 16).at(1) == 0);
    CHECK(banach_bijection_nat(gadget_llpo(lit("1,1,1,0;0")), 16).at(1) == 1);
    CHECK_THROWS_AS(banach_bijection_nat(identity_pair(), 8, 4), Error);
    BoundedInjPair bad{constant_seq(0), constant_seq(0), constant_seq(0), constant_seq(0), 0};
    CHECK(!verify_banach(bad, banach_bijection_nat(bad, 4), 4).ok());
    CHECK_THROWS_AS(BoundedInjPair::checked(bad.f0, bad.f1, bad.b0, bad.b1, 4), Error);
}

TEST_CASE("chain_trace examples") {
    ChainClassification c = chain_trace(identity_pair(), 5, Side::A, Fuel(64));
    CHECK(c.origin == ChainOrigin::unresolved);
    CHECK(c.cycle);
    ChainClassification a = chain_trace(succ_pair(), 4, Side::A, Fuel(64));
    CHECK(a.origin == ChainOrigin::a_source);
    CHECK(a.source == 0);
    CHECK(a.steps.size() == 5);
    ChainClassification b = chain_trace(succ_pair(), 3, Side::A, Fuel(64));
    CHECK(b.origin == ChainOrigin::b_source);
    CHECK(b.source == 0);
    CHECK(chain_trace(succ_pair(), 40, Side::A, Fuel(8)).origin == ChainOrigin::unresolved);
}

TEST_CASE("verify_banach examples") {
    BoundedInjPair id = identity_pair();
    CHECK(verify_banach(id, banach_bijection_nat(id, 16), 16).ok());
    PartialBijection swap = banach_bijection_nat(id, 16);
    swap.forward[0] = {1, BijTag::via_f0};
    swap.forward[1] = {0, BijTag::via_f0};
    BanachReport r = verify_banach(id, swap, 16);
    REQUIRE(!r.ok());
    CHECK(r.violations.front().kind == "banach-condition");
    CHECK(r.violations.front().m == 0);
    CHECK(r.violations.front().n == 1);
    BoundedInjPair g = gadget_llpo(lit("1,1,0;0"));
    CHECK(verify_banach(g, banach_bijection_nat(g, 16), 16).ok());
}

TEST_CASE("property: tree bijection agrees with chain directions") {
    Rng rng(31);
    int done = 0;
    while (done < 30) {
        BoundedInjPair p = random_monotone_pair(rng, 200);
        if (!chains_resolve(p, 32, 256)) continue;
        ++done;
        PartialBijection h = banach_bijection_nat(p, 32);
        CHECK(verify_banach(p, h, 32).ok());
        for (nat a = 0; a < 32; ++a) {
            ChainOrigin o = chain_trace(p, a, Side::A, Fuel(256)).origin;
            CHECK(h.forward.at(a).tag == (o == ChainOrigin::b_source ? BijTag::via_f1_inverse : BijTag::via_f0));
        }
    }
}

TEST_CASE("unbounded composition matches hand bounds") {
    Rng rng(41);
    for (int c = 0; c < 20; ++c) {
        BoundedInjPair p = random_monotone_pair(rng, 100);
        PartialBijection want = banach_bijection_nat(p, 24);
        PartialBijection got = banach_bijection_nat_unbounded(p.f0, p.f1, 24, Fuel(400));
        for (nat n = 0; n < 24; ++n) {
            CHECK(got.at(n) == want.at(n));
            CHECK(got.forward.at(n).tag == want.forward.at(n).tag);
        }
    }
    CHECK(banach_bijection_nat_unbounded(identity_seq(), identity_seq(), 8, Fuel(32)).at(3) == 3);
}

TEST_CASE("diagram matches committed goldens") {
    CHECK(render_chain_diagram(gadget_llpo(constant_seq(1)), 10) == slurp(GOLDEN_DIR "/chains_no_zero.txt"));
    CHECK(render_chain_diagram(gadget_llpo(lit("1,1,0;1")), 10) == slurp(GOLDEN_DIR "/chains_zero_at_2.txt"));
    CHECK(render_chain_diagram(gadget_llpo(lit("1,1,1,0;1")), 10) == slurp(GOLDEN_DIR "/chains_zero_at_3.txt"));
    std::string full = render_chain_diagram(identity_pair(), 6);
    std::string id = full.substr(full.find('\n'));
    CHECK(id.find('<') == std::string::npos);
    CHECK(id.find('>') == std::string::npos);
    CHECK(render_chain_diagram(gadget_llpo(lit("1,1,0;0")), 10) == render_chain_diagram(gadget_llpo(lit("1,1,0;0")), 10));
    CHECK_THROWS_AS(render_chain_diagram(identity_pair(), 3), Error);
}
