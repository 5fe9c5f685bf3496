#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "banach/streams.hpp"

namespace banach {

// Outputs are Found(bit) or Exhausted.
struct Realizer {
    std::string name;
    std::function<OracleResult(const LazySeq&, Fuel)> apply;

    OracleResult operator()(const LazySeq& s, Fuel fuel) const { return apply(s, fuel); }
};

struct Reduction {
    std::string name;
    std::function<LazySeq(const LazySeq&)> pre;
    std::function<nat(nat, const LazySeq&)> post;
};

Realizer compose_reduction(const Reduction& red, const Realizer& rq);

// Valuewise h(0)=1, h(n)=0 otherwise.
LazySeq zero_indicator(const LazySeq& s);
// J: constant 1 after the first zero.
LazySeq freeze_after_zero(const LazySeq& s);
// The three-case functional feeding an LPO realizer.
LazySeq lpo_preprocess(const LazySeq& h);
// w(n) = 1 - (n mod 2).
nat flip_parity(nat n);

// Reference realizers.  A promise makes the realizer answer on inputs where
// it would otherwise have to search forever.
Realizer lpo_exact(bool promise_no_zero = false);
Realizer llpomin_exact(std::optional<nat> promised_bit = std::nullopt);
// Answers k with s(2n+k)=0 for all n, judged from the first nonzero entry.
// All-zero inputs get default_bit, or Exhausted without one.
Realizer llpo_exact(std::optional<nat> default_bit = std::nullopt);

OracleResult llpomin(const LazySeq& s, Fuel fuel);

Reduction reduction_llpo_from_llpomin();
Reduction reduction_llpomin_from_llpo();
Reduction reduction_llpomin_from_lpo();

Realizer llpo_from_llpomin(const Realizer& r);
Realizer llpomin_from_llpo(const Realizer& s);
// Realizes LLPOmin; lift with llpo_from_llpomin for LLPO.
Realizer llpo_from_lpo(const Realizer& l);

// g_n(m) = 1 if m < 1 + r + 2n, else 0.
LazySeq grilliot_g(nat r, nat n);

// R must answer on the all-ones sequence (give it a promised bit).  LPO
// convention: Found(0) iff h has a zero.  Without promise_no_zero, h with no
// zero below fuel yields Exhausted.
OracleResult grilliot_lpo(const Realizer& r, const LazySeq& h, Fuel fuel, bool promise_no_zero = false);

using Bits = std::vector<std::uint8_t>;

std::string bits_str(const Bits& b);

struct TreePredicate {
    std::function<bool(const Bits&)> member;
    // Optional fast path: member(sigma + bit) given member(sigma).
    std::function<bool(const Bits&, std::uint8_t)> extend;
    // Optional pruning: false only if sigma has no member extension of the
    // given length.  Never changes which path is returned.
    std::function<bool(const Bits&, nat)> viable;
};

// Leftmost member of length depth, or nullopt.  Throws Error("not-a-tree")
// when a non-member node is seen to have a member child.
std::optional<Bits> wkl_search(const TreePredicate& t, nat depth);

TreePredicate llpomin_tree(const LazySeq& s);
nat llpomin_via_wkl(const LazySeq& s, nat depth);

}  // namespace banach
