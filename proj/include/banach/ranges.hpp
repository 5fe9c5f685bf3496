#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "banach/streams.hpp"

namespace banach {

enum class AuxKind { rho, beta };

enum class RangeViolationKind { rho_forward, rho_backward, beta_missing_witness, beta_false_witness };

std::string to_string(RangeViolationKind k);

struct RangeViolation {
    nat index;
    RangeViolationKind kind;
    bool operator==(const RangeViolation& o) const { return index == o.index && kind == o.kind; }
};

struct RangeAuxReport {
    nat checked_up_to = 0;
    std::vector<RangeViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Checks indices 0..n_max.  Soundness is one-sided: only violations provable
// from f(0..fuel-1) are reported.
RangeAuxReport verify_range_aux(const LazySeq& f, const LazySeq& aux, AuxKind kind, nat n_max, Fuel fuel);

// Found(t) entries of a bounding sequence must be genuine witnesses f(t)=n;
// Found(0) on an index with no witness below fuel is tolerated only when
// allow_zero_default is set (the rho->beta translator uses it for chi(n)=0).
RangeAuxReport verify_bound_witnesses(const LazySeq& f, const OracleSeq& bounds, nat n_max, Fuel fuel,
                                      bool allow_zero_default);

LazySeq t_beta_to_rho(const LazySeq& f, const LazySeq& b);
OracleSeq t_rho_to_beta(const LazySeq& f, const LazySeq& chi, Fuel fuel);
OracleSeq bounding_b(const LazySeq& f, Fuel fuel);

// Cantor pairing; families are encoded as f(<i,n>) = f_i(n).
nat pair_index(nat i, nat n);
std::pair<nat, nat> unpair_index(nat k);
LazySeq family_member(const LazySeq& family, nat i);
LazySeq make_family(std::function<nat(nat, nat)> fin);

enum class TranslateDirection { beta_to_rho, rho_to_beta };

// Result indexed by <i,n>.  beta->rho entries are always Found(chi_i(n)).
OracleSeq translate_family(const LazySeq& f, const LazySeq& aux, TranslateDirection dir, Fuel fuel);

using Translator = std::function<LazySeq(const LazySeq&, const LazySeq&)>;

struct TranslatorCounterexample {
    LazySeq f2;
    LazySeq g2;
    nat b = 0;
    nat failure_index = 0;
    nat first_zero = 0;
};

// Throws Error("refutation-failed") when T answers differently on the probed
// pair, i.e. T inspected more than the neighbourhood it was given.
TranslatorCounterexample refute_total_translator(const Translator& T, nat pad);

}  // namespace banach
