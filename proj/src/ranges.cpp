#include "banach/ranges.hpp"

#include <cmath>
#include <optional>

namespace banach {

namespace {

// Least t < fuel with f(t) = n.
std::optional<nat> least_witness(const LazySeq& f, nat n, nat fuel) {
    for (nat t = 0; t < fuel; ++t)
        if (f(t) == n) return t;
    return std::nullopt;
}

}  // namespace

std::string to_string(RangeViolationKind k) {
    switch (k) {
        case RangeViolationKind::rho_forward: return "rho-forward";
        case RangeViolationKind::rho_backward: return "rho-backward";
        case RangeViolationKind::beta_missing_witness: return "beta-missing-witness";
        case RangeViolationKind::beta_false_witness: return "beta-false-witness";
    }
    return "?";
}

RangeAuxReport verify_range_aux(const LazySeq& f, const LazySeq& aux, AuxKind kind, nat n_max, Fuel fuel) {
    RangeAuxReport rep;
    rep.checked_up_to = n_max;
    for (nat n = 0; n <= n_max; ++n) {
        auto w = least_witness(f, n, fuel.bound());
        nat a = aux(n);
        if (kind == AuxKind::rho) {
            if (a > 0 && !w) rep.violations.push_back({n, RangeViolationKind::rho_backward});
            if (a == 0 && w) rep.violations.push_back({n, RangeViolationKind::rho_forward});
        } else if (w && *w > a) {
            rep.violations.push_back({n, RangeViolationKind::beta_missing_witness});
        }
    }
    return rep;
}

RangeAuxReport verify_bound_witnesses(const LazySeq& f, const OracleSeq& bounds, nat n_max, Fuel fuel,
                                      bool allow_zero_default) {
    RangeAuxReport rep;
    rep.checked_up_to = n_max;
    for (nat n = 0; n <= n_max; ++n) {
        OracleResult r = bounds(n);
        auto w = least_witness(f, n, fuel.bound());
        if (r.is_found()) {
            bool genuine = f(r.value()) == n;
            if (!genuine && !(allow_zero_default && r.value() == 0 && !w))
                rep.violations.push_back({n, RangeViolationKind::beta_false_witness});
        } else if (w) {
            rep.violations.push_back({n, RangeViolationKind::beta_missing_witness});
        }
    }
    return rep;
}

LazySeq t_beta_to_rho(const LazySeq& f, const LazySeq& b) {
    return LazySeq([f, b](nat n) -> nat {
        nat bound = b(n);
        for (nat t = 0;; ++t) {
            if (f(t) == n) return 1;
            if (t == bound) return 0;
        }
    });
}

OracleSeq t_rho_to_beta(const LazySeq& f, const LazySeq& chi, Fuel fuel) {
    nat fb = fuel.bound();
    return OracleSeq([f, chi, fb](nat n) {
        if (chi(n) == 0) return OracleResult::found(0);
        auto w = least_witness(f, n, fb);
        return w ? OracleResult::found(*w) : OracleResult::exhausted(fb);
    });
}

OracleSeq bounding_b(const LazySeq& f, Fuel fuel) {
    return OracleSeq([f, fuel](nat n) {
        LazySeq z([f, n](nat m) -> nat { return f(m) == n ? 0 : 1; });
        return mu0(z, fuel);
    });
}

nat pair_index(nat i, nat n) {
    nat s = i + n;
    return s * (s + 1) / 2 + n;
}

std::pair<nat, nat> unpair_index(nat k) {
    nat w = static_cast<nat>((std::sqrt(8.0L * static_cast<long double>(k) + 1.0L) - 1.0L) / 2.0L);
    while (w * (w + 1) / 2 > k) --w;
    while ((w + 1) * (w + 2) / 2 <= k) ++w;
    nat n = k - w * (w + 1) / 2;
    return {w - n, n};
}

LazySeq family_member(const LazySeq& family, nat i) {
    return LazySeq([family, i](nat n) { return family(pair_index(i, n)); });
}

LazySeq make_family(std::function<nat(nat, nat)> fin) {
    return LazySeq([fin = std::move(fin)](nat k) {
        auto [i, n] = unpair_index(k);
        return fin(i, n);
    });
}

OracleSeq translate_family(const LazySeq& f, const LazySeq& aux, TranslateDirection dir, Fuel fuel) {
    return OracleSeq([f, aux, dir, fuel](nat k) {
        auto [i, n] = unpair_index(k);
        LazySeq fi = family_member(f, i);
        LazySeq ai = family_member(aux, i);
        if (dir == TranslateDirection::beta_to_rho) return OracleResult::found(t_beta_to_rho(fi, ai)(n));
        return t_rho_to_beta(fi, ai, fuel)(n);
    });
}

TranslatorCounterexample refute_total_translator(const Translator& T, nat pad) {
    LazySeq f1 = constant_seq(1);
    LazySeq g2([](nat n) -> nat { return n <= 1 ? 1 : 0; });
    nat b = T(f1, g2)(0);
    nat ones = std::max(b, pad);
    LazySeq f2([ones](nat n) -> nat { return n <= ones ? 1 : 0; });
    nat b2 = T(f2, g2)(0);
    if (b2 != b)
        throw Error("refutation-failed",
                    "translator answered " + std::to_string(b) + " on f1 but " + std::to_string(b2) + " on f2", b2);
    TranslatorCounterexample cx{f2, g2, b, 0, ones + 1};
    return cx;
}

}  // namespace banach
