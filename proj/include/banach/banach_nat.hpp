#pragma once

#include <map>
#include <string>
#include <vector>

#include "banach/omniscience.hpp"
#include "banach/streams.hpp"

namespace banach {

// f0 maps side A to side B, f1 maps B to A.  b_i bounds the preimage search
// for f_i: if n is in the range of f_i then f_i(t)=n for some t <= b_i(n).
struct BoundedInjPair {
    LazySeq f0, f1, b0, b1;
    nat verified_prefix = 0;

    // Checks injectivity and bound soundness on [0, verify); throws
    // Error("invalid-pair") with the offending index.
    static BoundedInjPair checked(LazySeq f0, LazySeq f1, LazySeq b0, LazySeq b1, nat verify);
};

BoundedInjPair identity_pair();
// f0(n) = f1(n) = n+1, bounds the identity.
BoundedInjPair succ_pair();
BoundedInjPair gadget_llpo(const LazySeq& g);

// Least t <= bound(n) with f(t)=n.
std::optional<nat> bounded_preimage(const LazySeq& f, const LazySeq& bound, nat n);

bool tree_member(const BoundedInjPair& p, const Bits& sigma);
TreePredicate banach_tree(const BoundedInjPair& p);

enum class BijTag { via_f0, via_f1_inverse };
std::string to_string(BijTag t);

struct BijEntry {
    nat value;
    BijTag tag;
};

struct PartialBijection {
    std::map<nat, BijEntry> forward;

    bool contains(nat m) const { return forward.count(m) != 0; }
    nat at(nat m) const;
    std::size_t size() const { return forward.size(); }
};

PartialBijection path_to_bijection(const BoundedInjPair& p, const Bits& path);

// depth 0 selects the default 4*n_max.  Domain is [0, n_max).
PartialBijection banach_bijection_nat(const BoundedInjPair& p, nat n_max, nat depth = 0);

// Bounds come from bounding_b; an exhausted search bounds by fuel-1.
BoundedInjPair pair_with_search_bounds(const LazySeq& f0, const LazySeq& f1, Fuel fuel);
PartialBijection banach_bijection_nat_unbounded(const LazySeq& f0, const LazySeq& f1, nat n_max, Fuel fuel,
                                                nat depth = 0);

enum class Side { A, B };
enum class ChainOrigin { a_source, b_source, unresolved };
std::string to_string(ChainOrigin o);

struct ChainStep {
    Side side;
    nat element;
};

struct ChainClassification {
    ChainOrigin origin = ChainOrigin::unresolved;
    nat source = 0;              // the source element when resolved
    std::vector<ChainStep> steps;  // start first, then each backward step
    bool cycle = false;
    nat fuel_used = 0;
};

ChainClassification chain_trace(const BoundedInjPair& p, nat start, Side side, Fuel fuel);

struct BanachViolation {
    std::string kind;  // not-injective, banach-condition, missing-preimage
    nat m = 0;
    nat n = 0;
};

struct BanachReport {
    std::vector<BanachViolation> violations;
    bool ok() const { return violations.empty(); }
};

BanachReport verify_banach(const BoundedInjPair& p, const PartialBijection& h, nat n_max);

// Two arrow rows over the column order ..., 4, 2, 0, 1, 3, ... with B on top
// and A below.  Byte-for-byte deterministic.
std::string render_chain_diagram(const BoundedInjPair& p, nat width);

}  // namespace banach
