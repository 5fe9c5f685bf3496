#include "banach/omniscience.hpp"

namespace banach {

Realizer compose_reduction(const Reduction& red, const Realizer& rq) {
    return Realizer{red.name + "(" + rq.name + ")", [red, rq](const LazySeq& x, Fuel fuel) {
                        OracleResult r = rq(red.pre(x), fuel);
                        if (r.is_exhausted()) return r;
                        return OracleResult::found(red.post(r.value(), x));
                    }};
}

LazySeq zero_indicator(const LazySeq& s) {
    return LazySeq([s](nat n) -> nat { return s(n) == 0 ? 1 : 0; });
}

LazySeq freeze_after_zero(const LazySeq& s) {
    return LazySeq([s](nat n) -> nat {
        for (nat t = 0; t < n; ++t)
            if (s(t) == 0) return 1;
        return s(n);
    });
}

LazySeq lpo_preprocess(const LazySeq& h) {
    return LazySeq([h](nat n) -> nat {
        for (nat t = 0; t <= n; ++t)
            if (h(t) == 0) return t % 2 == 0 ? 0 : 1;
        return 1;
    });
}

nat flip_parity(nat n) { return 1 - n % 2; }

Realizer lpo_exact(bool promise_no_zero) {
    return Realizer{promise_no_zero ? "lpo-exact-promise" : "lpo-exact",
                    [promise_no_zero](const LazySeq& s, Fuel fuel) { return lpo(s, fuel, promise_no_zero); }};
}

Realizer llpomin_exact(std::optional<nat> promised_bit) {
    return Realizer{promised_bit ? "llpomin-exact-promise" : "llpomin-exact",
                    [promised_bit](const LazySeq& s, Fuel fuel) {
                        OracleResult r = llpomin(s, fuel);
                        if (r.is_exhausted() && promised_bit) return OracleResult::found(*promised_bit);
                        return r;
                    }};
}

Realizer llpo_exact(std::optional<nat> default_bit) {
    return Realizer{"llpo-exact", [default_bit](const LazySeq& s, Fuel fuel) {
                        for (nat t = 0; t < fuel.bound(); ++t)
                            if (s(t) != 0) return OracleResult::found(flip_parity(t));
                        if (default_bit) return OracleResult::found(*default_bit);
                        return OracleResult::exhausted(fuel.bound());
                    }};
}

OracleResult llpomin(const LazySeq& s, Fuel fuel) {
    OracleResult r = mu0(s, fuel);
    if (r.is_exhausted()) return r;
    return OracleResult::found(r.value() % 2);
}

Reduction reduction_llpo_from_llpomin() {
    return Reduction{"llpo-from-llpomin", zero_indicator, [](nat b, const LazySeq&) { return flip_parity(b); }};
}

Reduction reduction_llpomin_from_llpo() {
    return Reduction{"llpomin-from-llpo", [](const LazySeq& s) { return zero_indicator(freeze_after_zero(s)); },
                     [](nat b, const LazySeq&) { return flip_parity(b); }};
}

Reduction reduction_llpomin_from_lpo() {
    return Reduction{"llpomin-from-lpo", lpo_preprocess, [](nat b, const LazySeq&) { return b; }};
}

Realizer llpo_from_llpomin(const Realizer& r) { return compose_reduction(reduction_llpo_from_llpomin(), r); }
Realizer llpomin_from_llpo(const Realizer& s) { return compose_reduction(reduction_llpomin_from_llpo(), s); }
Realizer llpo_from_lpo(const Realizer& l) { return compose_reduction(reduction_llpomin_from_lpo(), l); }

LazySeq grilliot_g(nat r, nat n) {
    return LazySeq([r, n](nat m) -> nat { return m < 1 + r + 2 * n ? 1 : 0; });
}

OracleResult grilliot_lpo(const Realizer& r, const LazySeq& h, Fuel fuel, bool promise_no_zero) {
    // g_i has its first zero at 1 + r + 2i, so R needs a little more room
    // than the search over h.
    Fuel inner(2 * fuel.bound() + 2);
    OracleResult rf = r(constant_seq(1), inner);
    if (rf.is_exhausted()) return rf;
    nat rv = rf.value();

    LazySeq jh = constant_seq(1);
    OracleResult z = mu0(h, fuel);
    if (z.is_found())
        jh = grilliot_g(rv, z.value());
    else if (!promise_no_zero)
        return z;

    OracleResult rj = r(jh, inner);
    if (rj.is_exhausted()) return rj;
    nat diff = rj.value() > rv ? rj.value() - rv : rv - rj.value();
    return OracleResult::found(1 - std::min<nat>(diff, 1));
}

std::string bits_str(const Bits& b) {
    std::string s;
    for (auto v : b) s += static_cast<char>('0' + v);
    return s;
}

namespace {

bool is_member(const TreePredicate& t, Bits& sigma, std::uint8_t bit) {
    if (t.extend) return t.extend(sigma, bit);
    sigma.push_back(bit);
    bool m = t.member(sigma);
    sigma.pop_back();
    return m;
}

void check_rejected(const TreePredicate& t, Bits& sigma) {
    for (std::uint8_t c = 0; c < 2; ++c) {
        sigma.push_back(c);
        bool m = t.member(sigma);
        sigma.pop_back();
        if (m) {
            Bits child = sigma;
            child.push_back(c);
            throw Error("not-a-tree", "member " + bits_str(child) + " has a non-member parent", child.size());
        }
    }
}

}  // namespace

std::optional<Bits> wkl_search(const TreePredicate& t, nat depth) {
    Bits sigma;
    if (!t.member(sigma)) return std::nullopt;
    // next[k]: the next child bit to try at level k.
    std::vector<std::uint8_t> next{0};
    next.reserve(depth + 1);
    while (true) {
        if (sigma.size() == depth) {
            for (std::size_t k = 0; k < sigma.size(); ++k)
                if (!t.member(Bits(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(k + 1))))
                    throw Error("not-a-tree", "prefix of " + bits_str(sigma) + " is not a member", k + 1);
            return sigma;
        }
        std::size_t lvl = sigma.size();
        if (next[lvl] < 2) {
            std::uint8_t c = next[lvl]++;
            if (is_member(t, sigma, c)) {
                sigma.push_back(c);
                if (t.viable && !t.viable(sigma, depth)) {
                    sigma.pop_back();
                    continue;
                }
                next.push_back(0);
            } else {
                sigma.push_back(c);
                check_rejected(t, sigma);
                sigma.pop_back();
            }
            continue;
        }
        if (sigma.empty()) return std::nullopt;
        sigma.pop_back();
        next.pop_back();
    }
}

TreePredicate llpomin_tree(const LazySeq& s) {
    auto member = [s](const Bits& sigma) {
        if (sigma.empty()) return true;
        for (std::size_t i = 1; i < sigma.size(); ++i)
            if (sigma[i] != 1) return false;
        nat n = sigma.size() - 1;
        for (nat t = 0; t <= n; ++t)
            if (s(t) == 0) return t % 2 == sigma[0];
        return true;
    };
    return TreePredicate{member, {}, {}};
}

nat llpomin_via_wkl(const LazySeq& s, nat depth) {
    if (depth == 0) throw Error("invalid-depth", "depth must be at least 1");
    auto path = wkl_search(llpomin_tree(s), depth);
    if (!path) throw Error("no-path", "the tree for s has no member of length " + std::to_string(depth), depth);
    return (*path)[0];
}

}  // namespace banach
