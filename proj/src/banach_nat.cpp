#include "banach/banach_nat.hpp"

#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "banach/ranges.hpp"

namespace banach {

namespace {

void check_injection(const LazySeq& f, const LazySeq& b, nat verify, const char* name) {
    std::unordered_map<nat, nat> least;
    for (nat t = 0; t < verify; ++t) {
        auto [it, fresh] = least.emplace(f(t), t);
        if (!fresh)
            throw Error("invalid-pair",
                        std::string(name) + " is not injective: " + std::to_string(it->second) + " and " +
                            std::to_string(t) + " share a value",
                        t);
    }
    for (nat n = 0; n < verify; ++n) {
        auto it = least.find(n);
        if (it != least.end() && it->second > b(n))
            throw Error("invalid-pair", std::string(name) + " bound too small at " + std::to_string(n), n);
    }
}

// forced(m): 0 free, 1 means sigma(m)=0 by clause (i), 2 means sigma(m)=1 by
// clause (ii).  Clause (ii) uses the least f1-witness.
nat forced_value(const BoundedInjPair& p, nat m) {
    auto t = bounded_preimage(p.f1, p.b1, m);
    if (!t) return 1;
    if (!bounded_preimage(p.f0, p.b0, *t)) return 2;
    return 0;
}

struct TreeCache {
    explicit TreeCache(const BoundedInjPair& pr)
        : p(pr), forced([pr](nat m) { return forced_value(pr, m); }),
          succ([pr](nat m) { return pr.f1(pr.f0(m)); }) {}

    BoundedInjPair p;
    LazySeq forced;
    LazySeq succ;

    struct Window {
        std::vector<nat> comp;     // component id per index
        std::vector<int> required;  // per component: -1 free, 0/1 forced, 2 conflict
    };
    std::mutex mu;
    std::unordered_map<nat, std::shared_ptr<const Window>> windows;

    std::shared_ptr<const Window> window(nat d) {
        {
            std::lock_guard<std::mutex> lock(mu);
            if (auto it = windows.find(d); it != windows.end()) return it->second;
        }
        std::vector<nat> parent(d);
        std::iota(parent.begin(), parent.end(), nat{0});
        auto find = [&](nat x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (nat m = 0; m < d; ++m) {
            nat n = succ(m);
            if (n < d && n != m) parent[find(m)] = find(n);
        }
        auto w = std::make_shared<Window>();
        w->comp.resize(d);
        w->required.assign(d, -1);
        for (nat m = 0; m < d; ++m) {
            nat c = find(m);
            w->comp[m] = c;
            nat f = forced(m);
            if (f == 0) continue;
            int want = f == 1 ? 0 : 1;
            int& r = w->required[c];
            if (r == -1)
                r = want;
            else if (r != want)
                r = 2;
        }
        std::lock_guard<std::mutex> lock(mu);
        return windows.emplace(d, std::move(w)).first->second;
    }
};

bool member_with(TreeCache& c, const Bits& sigma) {
    nat len = sigma.size();
    for (nat m = 0; m < len; ++m) {
        nat f = c.forced(m);
        if (f == 1 && sigma[m] != 0) return false;
        if (f == 2 && sigma[m] != 1) return false;
    }
    // Clauses (iii) and (iv), indexed by m so the pair scan is linear.
    for (nat m = 0; m < len; ++m) {
        nat n = c.succ(m);
        if (n >= len) continue;
        if (sigma[m] == 0 && sigma[n] == 1) return false;
        if (sigma[n] == 0 && sigma[m] == 1) return false;
    }
    return true;
}

bool extend_with(TreeCache& c, const Bits& sigma, std::uint8_t bit) {
    nat k = sigma.size();
    nat f = c.forced(k);
    if ((f == 1 && bit != 0) || (f == 2 && bit != 1)) return false;
    nat n = c.succ(k);
    if (n < k && sigma[n] != bit) return false;
    for (nat m = 0; m < k; ++m)
        if (c.succ(m) == k && sigma[m] != bit) return false;
    return true;
}

bool viable_with(TreeCache& c, const Bits& sigma, nat depth) {
    auto w = c.window(depth);
    std::vector<int> req = w->required;
    for (nat m = 0; m < sigma.size() && m < depth; ++m) {
        int& r = req[w->comp[m]];
        if (r == -1)
            r = sigma[m];
        else if (r != sigma[m])
            return false;
    }
    for (nat m = 0; m < depth; ++m)
        if (req[w->comp[m]] == 2) return false;
    return true;
}

}  // namespace

BoundedInjPair BoundedInjPair::checked(LazySeq f0, LazySeq f1, LazySeq b0, LazySeq b1, nat verify) {
    check_injection(f0, b0, verify, "f0");
    check_injection(f1, b1, verify, "f1");
    return BoundedInjPair{std::move(f0), std::move(f1), std::move(b0), std::move(b1), verify};
}

BoundedInjPair identity_pair() {
    return BoundedInjPair{identity_seq(), identity_seq(), identity_seq(), identity_seq(), 0};
}

BoundedInjPair succ_pair() {
    LazySeq s([](nat n) { return n + 1; });
    return BoundedInjPair{s, s, identity_seq(), identity_seq(), 0};
}

BoundedInjPair gadget_llpo(const LazySeq& g) {
    // Least t <= n-2 with g(t)=0, if any.
    auto first_zero = [g](nat n) -> std::optional<nat> {
        for (nat t = 0; t + 2 <= n; ++t)
            if (g(t) == 0) return t;
        return std::nullopt;
    };
    LazySeq f0([first_zero](nat n) -> nat {
        if (n % 2 == 0) return n + 2;
        if (n == 1) return 0;
        auto s = first_zero(n);
        if (!s) return n - 2;
        if (*s % 2 == 0) return *s == n - 3 ? n - 2 : n;
        return *s == n - 2 ? n - 2 : n;
    });
    LazySeq f1([first_zero](nat n) -> nat {
        if (n % 2 == 0 || n == 1) return n;
        auto s = first_zero(n);
        if (!s) return n;
        if (*s % 2 == 0) return n + 2;
        return *s == n - 2 ? n : n + 2;
    });
    LazySeq b0([](nat n) { return n + 2; });
    return BoundedInjPair{f0, f1, b0, identity_seq(), 0};
}

std::optional<nat> bounded_preimage(const LazySeq& f, const LazySeq& bound, nat n) {
    nat b = bound(n);
    for (nat t = 0;; ++t) {
        if (f(t) == n) return t;
        if (t == b) return std::nullopt;
    }
}

bool tree_member(const BoundedInjPair& p, const Bits& sigma) {
    TreeCache c(p);
    return member_with(c, sigma);
}

TreePredicate banach_tree(const BoundedInjPair& p) {
    auto c = std::make_shared<TreeCache>(p);
    return TreePredicate{[c](const Bits& s) { return member_with(*c, s); },
                         [c](const Bits& s, std::uint8_t bit) { return extend_with(*c, s, bit); },
                         [c](const Bits& s, nat depth) { return viable_with(*c, s, depth); }};
}

std::string to_string(BijTag t) { return t == BijTag::via_f0 ? "via-f0" : "via-f1-inverse"; }

nat PartialBijection::at(nat m) const {
    auto it = forward.find(m);
    if (it == forward.end()) throw Error("out-of-domain", "h is undefined at " + std::to_string(m), m);
    return it->second.value;
}

PartialBijection path_to_bijection(const BoundedInjPair& p, const Bits& path) {
    PartialBijection h;
    for (nat n = 0; n < path.size(); ++n) {
        if (path[n] == 0) {
            h.forward.emplace(n, BijEntry{p.f0(n), BijTag::via_f0});
            continue;
        }
        auto t = bounded_preimage(p.f1, p.b1, n);
        if (!t) throw Error("ill-defined-at", "path selects f1-inverse at " + std::to_string(n) + " but no witness", n);
        h.forward.emplace(n, BijEntry{*t, BijTag::via_f1_inverse});
    }
    return h;
}

PartialBijection banach_bijection_nat(const BoundedInjPair& p, nat n_max, nat depth) {
    if (depth == 0) depth = 4 * n_max;
    if (depth < n_max) throw Error("invalid-depth", "depth must be at least n_max", depth);
    auto path = wkl_search(banach_tree(p), depth);
    if (!path) throw Error("no-path", "the tree has no member of length " + std::to_string(depth), depth);
    path->resize(n_max);
    return path_to_bijection(p, *path);
}

BoundedInjPair pair_with_search_bounds(const LazySeq& f0, const LazySeq& f1, Fuel fuel) {
    auto bound = [fuel](const LazySeq& f) {
        OracleSeq b = bounding_b(f, fuel);
        nat last = fuel.bound() - 1;
        return LazySeq([b, last](nat n) {
            OracleResult r = b(n);
            return r.is_found() ? r.value() : last;
        });
    };
    return BoundedInjPair{f0, f1, bound(f0), bound(f1), 0};
}

PartialBijection banach_bijection_nat_unbounded(const LazySeq& f0, const LazySeq& f1, nat n_max, Fuel fuel,
                                                nat depth) {
    return banach_bijection_nat(pair_with_search_bounds(f0, f1, fuel), n_max, depth);
}

std::string to_string(ChainOrigin o) {
    switch (o) {
        case ChainOrigin::a_source: return "A-source";
        case ChainOrigin::b_source: return "B-source";
        case ChainOrigin::unresolved: return "unresolved";
    }
    return "?";
}

ChainClassification chain_trace(const BoundedInjPair& p, nat start, Side side, Fuel fuel) {
    ChainClassification out;
    out.steps.push_back({side, start});
    std::unordered_set<nat> seen_a, seen_b;
    (side == Side::A ? seen_a : seen_b).insert(start);
    nat cur = start;
    for (nat step = 0; step < fuel.bound(); ++step) {
        // An A-element is f1 of a B-element; a B-element is f0 of an A-element.
        auto prev = side == Side::A ? bounded_preimage(p.f1, p.b1, cur) : bounded_preimage(p.f0, p.b0, cur);
        if (!prev) {
            out.origin = side == Side::A ? ChainOrigin::a_source : ChainOrigin::b_source;
            out.source = cur;
            out.fuel_used = step;
            return out;
        }
        side = side == Side::A ? Side::B : Side::A;
        cur = *prev;
        out.steps.push_back({side, cur});
        if (!(side == Side::A ? seen_a : seen_b).insert(cur).second) {
            out.cycle = true;
            out.fuel_used = step + 1;
            return out;
        }
    }
    out.fuel_used = fuel.bound();
    return out;
}

BanachReport verify_banach(const BoundedInjPair& p, const PartialBijection& h, nat n_max) {
    BanachReport rep;
    std::unordered_map<nat, nat> image;
    for (const auto& [m, e] : h.forward) {
        auto [it, fresh] = image.emplace(e.value, m);
        if (!fresh) rep.violations.push_back({"not-injective", m, e.value});
        bool holds = e.tag == BijTag::via_f0 ? p.f0(m) == e.value : p.f1(e.value) == m;
        if (!holds) rep.violations.push_back({"banach-condition", m, e.value});
    }
    for (nat n = 0; n < n_max; ++n) {
        if (image.count(n)) continue;
        auto m0 = bounded_preimage(p.f0, p.b0, n);
        nat m1 = p.f1(n);
        if (!h.contains(m1) || (m0 && !h.contains(*m0))) continue;
        rep.violations.push_back({"missing-preimage", m0 ? *m0 : m1, n});
    }
    return rep;
}

namespace {

long long column_pos(nat x) {
    return x % 2 == 0 ? -static_cast<long long>(x / 2) : static_cast<long long>((x + 1) / 2);
}

std::string glyph(long long delta, const char* mark, const char* left, const char* right) {
    if (delta == 0) return mark;
    if (delta == -1) return left;
    if (delta == 1) return right;
    return std::string(mark) + (delta > 0 ? "+" : "-") + std::to_string(delta > 0 ? delta : -delta);
}

std::string cell(const std::string& s) {
    std::string c = s.size() < 3 ? std::string(3 - s.size(), ' ') + s : s;
    return c + "  ";
}

void emit_row(std::ostringstream& os, const char* label, const std::vector<std::string>& cells) {
    std::string line = label;
    line.resize(4, ' ');
    for (const auto& c : cells) line += cell(c);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
}

}  // namespace

std::string render_chain_diagram(const BoundedInjPair& p, nat width) {
    if (width < 4) throw Error("invalid-width", "diagram width must be at least 4", width);
    std::vector<nat> cols;
    nat evens = (width + 1) / 2, odds = width / 2;
    for (nat i = evens; i-- > 0;) cols.push_back(2 * i);
    for (nat i = 0; i < odds; ++i) cols.push_back(2 * i + 1);

    std::vector<std::string> labels, top, bottom;
    for (nat x : cols) {
        labels.push_back(std::to_string(x));
        top.push_back(glyph(column_pos(p.f1(x)) - column_pos(x), ":", "<:", ":>"));
        bottom.push_back(glyph(column_pos(p.f0(x)) - column_pos(x), "|", "<|", "|>"));
    }
    std::ostringstream os;
    os << "B on top, A below; f1 dashed ':' runs B to A, f0 solid '|' runs A to B; < > lean left or right\n";
    emit_row(os, "B", labels);
    emit_row(os, "f1", top);
    emit_row(os, "f0", bottom);
    emit_row(os, "A", labels);
    return os.str();
}

}  // namespace banach
