#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "banach/banach_nat.hpp"
#include "banach/streams.hpp"

namespace banach {

using Rng = std::mt19937_64;

// Uniform in [lo, hi].
nat uniform(Rng& rng, nat lo, nat hi);

struct PromiseInput {
    LazySeq seq;
    std::vector<nat> prefix;  // entries 0..first_zero
    nat first_zero = 0;
};

// Positive entries before a zero at a uniform position below fuel, then a
// random 0/1/2 tail.
PromiseInput random_promise_input(Rng& rng, nat fuel);

// Zero on every even or every odd position (chosen at random) with at least
// one nonzero on the other parity below len.  parity receives the all-zero side.
LazySeq random_llpo_input(Rng& rng, nat len, nat& parity);

// g with no zero before s, g(s) = 0, random tail.
LazySeq random_gadget_g(Rng& rng, nat s);

// f0, f1 injective with f_i(n) >= n, so the identity is a valid bound.
// Values below table are assigned greedily; above it f is a shift.
BoundedInjPair random_monotone_pair(Rng& rng, nat table);

// True when every A-element below n traces to a source within fuel.
bool chains_resolve(const BoundedInjPair& p, nat n, nat fuel);

struct BoundedFunction {
    LazySeq f;
    LazySeq b;               // a valid bounding function
    std::vector<nat> table;  // f on [0, table.size()); f(t) = t + offset beyond
    nat offset = 0;
};

// Values below span, so the range on [0, span) is decided by the table.
BoundedFunction random_bounded_function(Rng& rng, nat table, nat span);

struct SuiteResult {
    std::string name;
    nat cases = 0;
    nat failures = 0;
    std::vector<std::string> notes;
    bool ok() const { return failures == 0; }
};

std::vector<std::string> suite_names();
// Throws Error("unknown-suite").
SuiteResult run_suite(const std::string& name, std::uint64_t seed, nat cases);

}  // namespace banach
