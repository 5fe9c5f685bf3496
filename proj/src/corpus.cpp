#include "banach/corpus.hpp"

#include <set>

#include "banach/metric.hpp"
#include "banach/omniscience.hpp"
#include "banach/ranges.hpp"

namespace banach {

nat uniform(Rng& rng, nat lo, nat hi) { return std::uniform_int_distribution<nat>(lo, hi)(rng); }

PromiseInput random_promise_input(Rng& rng, nat fuel) {
    PromiseInput in;
    in.first_zero = uniform(rng, 0, fuel - 1);
    for (nat i = 0; i < in.first_zero; ++i) in.prefix.push_back(uniform(rng, 1, 9));
    in.prefix.push_back(0);
    std::vector<nat> tail;
    for (nat i = 0; i < 64; ++i) tail.push_back(uniform(rng, 0, 2));
    auto pre = std::make_shared<const std::vector<nat>>(in.prefix);
    auto tl = std::make_shared<const std::vector<nat>>(std::move(tail));
    in.seq = LazySeq([pre, tl](nat n) { return n < pre->size() ? (*pre)[n] : (*tl)[(n - pre->size()) % tl->size()]; });
    return in;
}

LazySeq random_llpo_input(Rng& rng, nat len, nat& parity) {
    parity = uniform(rng, 0, 1);
    std::vector<nat> v(len, 0);
    for (nat i = 0; i < len; ++i)
        if (i % 2 != parity && uniform(rng, 0, 2) == 0) v[i] = uniform(rng, 1, 5);
    nat other = 1 - parity;
    nat slot = other + 2 * uniform(rng, 0, (len - 1 - other) / 2);
    if (v[slot] == 0) v[slot] = 1;
    return from_prefix(std::move(v), 0);
}

LazySeq random_gadget_g(Rng& rng, nat s) {
    std::vector<nat> v;
    for (nat i = 0; i < s; ++i) v.push_back(uniform(rng, 1, 3));
    v.push_back(0);
    for (nat i = 0; i < 32; ++i) v.push_back(uniform(rng, 0, 2));
    return from_prefix(std::move(v), uniform(rng, 0, 1));
}

namespace {

LazySeq greedy_injection(Rng& rng, nat table, nat max_offset) {
    std::set<nat> used;
    auto vals = std::make_shared<std::vector<nat>>();
    nat top = 0;
    for (nat n = 0; n < table; ++n) {
        nat v = n + uniform(rng, 0, max_offset);
        while (used.count(v)) ++v;
        used.insert(v);
        vals->push_back(v);
        top = std::max(top, v);
    }
    nat shift = top + 1 - table;
    return LazySeq([vals, shift](nat n) { return n < vals->size() ? (*vals)[n] : n + shift; });
}

}  // namespace

BoundedInjPair random_monotone_pair(Rng& rng, nat table) {
    LazySeq f0 = greedy_injection(rng, table, 3);
    LazySeq f1 = greedy_injection(rng, table, 3);
    return BoundedInjPair{f0, f1, identity_seq(), identity_seq(), 0};
}

bool chains_resolve(const BoundedInjPair& p, nat n, nat fuel) {
    for (nat a = 0; a < n; ++a)
        if (chain_trace(p, a, Side::A, Fuel(fuel)).origin == ChainOrigin::unresolved) return false;
    return true;
}

BoundedFunction random_bounded_function(Rng& rng, nat table, nat span) {
    BoundedFunction bf;
    for (nat t = 0; t < table; ++t) bf.table.push_back(uniform(rng, 0, span - 1));
    bf.offset = span;
    std::vector<nat> least(span, table);
    for (nat t = table; t-- > 0;) least[bf.table[t]] = t;
    std::vector<nat> bound(span);
    for (nat n = 0; n < span; ++n)
        bound[n] = least[n] < table ? least[n] + uniform(rng, 0, 4) : uniform(rng, 0, 2 * table);
    auto tab = std::make_shared<const std::vector<nat>>(bf.table);
    nat off = bf.offset;
    bf.f = LazySeq([tab, off](nat t) { return t < tab->size() ? (*tab)[t] : t + off; });
    // Indices past span have no witness, so any bound is valid there.
    auto bd = std::make_shared<const std::vector<nat>>(std::move(bound));
    bf.b = LazySeq([bd](nat n) -> nat { return n < bd->size() ? (*bd)[n] : 0; });
    return bf;
}

std::vector<std::string> suite_names() { return {"reductions", "translators", "chains", "gadget", "preimage"}; }

namespace {

void note(SuiteResult& r, std::string msg) {
    ++r.failures;
    if (r.notes.size() < 10) r.notes.push_back(std::move(msg));
}

void suite_reductions(SuiteResult& r, Rng& rng) {
    Fuel fuel(256);
    Realizer via_lpo = llpo_from_lpo(lpo_exact(true));
    Realizer via_llpo = llpomin_from_llpo(llpo_exact(0));
    Realizer lifted = llpo_from_llpomin(llpomin_exact(0));
    Realizer ref = llpomin_exact(0);
    for (nat i = 0; i < r.cases; ++i) {
        PromiseInput in = random_promise_input(rng, fuel.bound());
        OracleResult want = OracleResult::found(in.first_zero % 2);
        if (via_lpo(in.seq, fuel) != want) note(r, "llpo_from_lpo case " + std::to_string(i));
        if (via_llpo(in.seq, fuel) != want) note(r, "llpomin_from_llpo case " + std::to_string(i));
        if (ref(in.seq, fuel) != want) note(r, "llpomin case " + std::to_string(i));
        if (grilliot_lpo(ref, in.seq, fuel) != OracleResult::found(0)) note(r, "grilliot case " + std::to_string(i));
        nat parity = 0;
        LazySeq ll = random_llpo_input(rng, 64, parity);
        if (lifted(ll, fuel) != OracleResult::found(parity)) note(r, "llpo_from_llpomin case " + std::to_string(i));
    }
}

void suite_translators(SuiteResult& r, Rng& rng) {
    const nat span = 129;
    for (nat i = 0; i < r.cases; ++i) {
        BoundedFunction bf = random_bounded_function(rng, 160, span);
        std::vector<nat> chi(span, 0);
        for (nat t = 0; t < bf.table.size(); ++t) chi[bf.table[t]] = 1;
        LazySeq rho = t_beta_to_rho(bf.f, bf.b);
        OracleSeq beta = t_rho_to_beta(bf.f, rho, Fuel(512));
        for (nat n = 0; n < span; ++n) {
            if (rho(n) != chi[n]) note(r, "beta->rho case " + std::to_string(i) + " n=" + std::to_string(n));
            OracleResult w = beta(n);
            if (chi[n] && !(w.is_found() && bf.f(w.value()) == n))
                note(r, "rho->beta case " + std::to_string(i) + " n=" + std::to_string(n));
        }
    }
}

void suite_chains(SuiteResult& r, Rng& rng) {
    nat done = 0;
    while (done < r.cases) {
        BoundedInjPair p = random_monotone_pair(rng, 600);
        if (!chains_resolve(p, 64, 512)) continue;
        ++done;
        PartialBijection h = banach_bijection_nat(p, 64);
        for (nat a = 0; a < 64; ++a) {
            ChainClassification c = chain_trace(p, a, Side::A, Fuel(512));
            BijTag want = c.origin == ChainOrigin::b_source ? BijTag::via_f1_inverse : BijTag::via_f0;
            if (h.forward.at(a).tag != want) note(r, "pair " + std::to_string(done) + " element " + std::to_string(a));
        }
        if (!verify_banach(p, h, 64).ok()) note(r, "verify_banach pair " + std::to_string(done));
    }
}

void suite_gadget(SuiteResult& r, Rng& rng) {
    for (nat i = 0; i < r.cases; ++i) {
        nat s = uniform(rng, 0, 64);
        PartialBijection h = banach_bijection_nat(gadget_llpo(random_gadget_g(rng, s)), 32);
        if (h.at(1) != s % 2) note(r, "gadget s=" + std::to_string(s));
    }
}

void suite_preimage(SuiteResult& r, Rng& rng) {
    for (nat i = 0; i < r.cases; ++i) {
        nat s = uniform(rng, 0, 32);
        LazySeq w = random_gadget_g(rng, s);
        LazySeq bits([w](nat n) -> nat { return w(n) == 0 ? 0 : 1; });
        if (preimage_gadget_bit(bits, s + 4) != s % 2) note(r, "preimage s=" + std::to_string(s));
    }
}

}  // namespace

SuiteResult run_suite(const std::string& name, std::uint64_t seed, nat cases) {
    SuiteResult r;
    r.name = name;
    r.cases = cases;
    Rng rng(seed);
    if (name == "reductions")
        suite_reductions(r, rng);
    else if (name == "translators")
        suite_translators(r, rng);
    else if (name == "chains")
        suite_chains(r, rng);
    else if (name == "gadget")
        suite_gadget(r, rng);
    else if (name == "preimage")
        suite_preimage(r, rng);
    else
        throw Error("unknown-suite", "no suite named '" + name + "'");
    return r;
}

}  // namespace banach
