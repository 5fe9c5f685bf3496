#include "banach/metric.hpp"

#include <algorithm>
#include <mutex>

namespace banach {

namespace {

BigInt pow2(nat k) { return BigInt(1) << static_cast<unsigned>(k); }

nat msb_of(const BigInt& v) { return static_cast<nat>(boost::multiprecision::msb(v)); }

}  // namespace

// ---- spaces ---------------------------------------------------------------

CompactSpace::CompactSpace(nat max_level) : max_level_(max_level) {
    if (max_level < 1) throw Error("invalid-level", "max_level must be at least 1");
}

NetPoint CompactSpace::point(nat level, const BigInt& index) const {
    require_level(level);
    if (index < 0 || index >= count(level))
        throw Error("out-of-space", "no level-" + std::to_string(level) + " point " + index.str(), level);
    return NetPoint{level, index};
}

void CompactSpace::require_level(nat level) const {
    if (level > max_level_)
        throw Error("level-exceeds-max",
                    "level " + std::to_string(level) + " exceeds max_level " + std::to_string(max_level_), level);
}

BigInt IntervalSpace::count(nat level) const { return pow2(level + 1) + 1; }

Dyadic IntervalSpace::dist(const NetPoint& a, const NetPoint& b) const { return (value(a) - value(b)).abs(); }

NetPoint IntervalSpace::embed(const NetPoint& p, nat level) const {
    if (level < p.level) return snap(p, level);
    return NetPoint{level, p.index << static_cast<unsigned>(level - p.level)};
}

std::vector<NetPoint> IntervalSpace::roots() const { return {{0, 0}, {0, 1}, {0, 2}}; }

std::vector<NetPoint> IntervalSpace::children(const NetPoint& p) const {
    if (p.index == pow2(p.level + 1)) return {{p.level + 1, pow2(p.level + 2)}};
    return {{p.level + 1, p.index * 2}, {p.level + 1, p.index * 2 + 1}};
}

NetPoint IntervalSpace::snap(const NetPoint& p, nat level) const {
    if (p.level <= level) return embed(p, level);
    unsigned shift = static_cast<unsigned>(p.level - level);
    BigInt q = p.index >> shift;
    BigInt r = p.index - (q << shift);
    if (r > (BigInt(1) << (shift - 1))) q += 1;
    return NetPoint{level, q};
}

std::string IntervalSpace::format(const NetPoint& p) const { return value(p).str(); }

NetPoint IntervalSpace::from_dyadic(const Dyadic& d) {
    if (d < Dyadic(0) || d > Dyadic(1)) throw Error("out-of-space", d.str() + " is outside [0,1]");
    nat e = d.exponent();
    if (e == 0) return NetPoint{0, d.numerator() * 2};
    return NetPoint{e - 1, d.numerator()};
}

BigInt CantorSpace::count(nat level) const { return pow2(level + 1); }

std::uint8_t CantorSpace::bit(const NetPoint& p, nat i) {
    if (i > p.level) return 0;
    return static_cast<std::uint8_t>(boost::multiprecision::bit_test(p.index, static_cast<unsigned>(p.level - i)));
}

Dyadic CantorSpace::dist(const NetPoint& a, const NetPoint& b) const {
    nat l = std::max(a.level, b.level);
    BigInt x = (a.index << static_cast<unsigned>(l - a.level)) ^ (b.index << static_cast<unsigned>(l - b.level));
    if (x.is_zero()) return Dyadic(0);
    return Dyadic::pow2neg(l - msb_of(x));
}

NetPoint CantorSpace::embed(const NetPoint& p, nat level) const {
    if (level < p.level) return snap(p, level);
    return NetPoint{level, p.index << static_cast<unsigned>(level - p.level)};
}

std::vector<NetPoint> CantorSpace::roots() const { return {{0, 0}, {0, 1}}; }

std::vector<NetPoint> CantorSpace::children(const NetPoint& p) const {
    return {{p.level + 1, p.index * 2}, {p.level + 1, p.index * 2 + 1}};
}

NetPoint CantorSpace::snap(const NetPoint& p, nat level) const {
    if (p.level <= level) return embed(p, level);
    return NetPoint{level, p.index >> static_cast<unsigned>(p.level - level)};
}

std::string CantorSpace::format(const NetPoint& p) const {
    std::string s;
    for (nat i = 0; i <= p.level; ++i) s += static_cast<char>('0' + bit(p, i));
    return s;
}

NetPoint CantorSpace::from_bits(const Bits& b) {
    if (b.empty()) return NetPoint{0, 0};
    BigInt idx = 0;
    for (auto v : b) {
        if (v > 1) throw Error("not-a-bit", "Cantor points take bits 0 and 1", v);
        idx = idx * 2 + v;
    }
    return NetPoint{b.size() - 1, idx};
}

Bits CantorSpace::bits(const NetPoint& p) {
    Bits out;
    for (nat i = 0; i <= p.level; ++i) out.push_back(bit(p, i));
    return out;
}

std::shared_ptr<const CompactSpace> unit_interval(nat max_level) {
    return std::make_shared<IntervalSpace>(max_level);
}

std::shared_ptr<const CompactSpace> cantor_space(nat max_level) { return std::make_shared<CantorSpace>(max_level); }

// ---- points ---------------------------------------------------------------

Point::Point(NetPoint exact)
    : approx_([exact](nat) { return exact; }), exact_(std::move(exact)) {}

Point::Point(std::function<NetPoint(nat)> approx, std::string label)
    : approx_(std::move(approx)), label_(std::move(label)) {}

Point interval_point(const Dyadic& d) { return Point(IntervalSpace::from_dyadic(d)); }

Point cantor_point(const LazySeq& bits, std::string label) {
    return Point(
        [bits](nat m) {
            Bits b;
            for (nat i = 0; i <= m; ++i) {
                nat v = bits(i);
                if (v > 1) throw Error("not-a-bit", "Cantor points take bits 0 and 1", i);
                b.push_back(static_cast<std::uint8_t>(v));
            }
            return CantorSpace::from_bits(b);
        },
        std::move(label));
}

Point cantor_point(const Bits& finite) { return Point(CantorSpace::from_bits(finite)); }

std::string to_string(RangeTruth t) {
    switch (t) {
        case RangeTruth::out: return "out";
        case RangeTruth::in: return "in";
        case RangeTruth::unknown: return "unknown";
    }
    return "?";
}

Point apply_point(const UCFun& f, const Point& x) {
    if (x.exact() && f.exact_on_net) return Point(f.apply(*x.exact(), 0));
    return Point([f, x](nat m) { return f.apply(x.approx(f.modulus(m + 1) + 1), m + 1); }, f.name);
}

// ---- net search -------------------------------------------------------------

namespace {

// DFS over the net tree for a level-L point q with d(F(q), y) < 2^-m, an
// optional ball constraint and an optional extra leaf test.  Subtrees are
// pruned when the triangle inequality rules out every descendant.
class NetSearch {
public:
    NetSearch(const CompactSpace& x, const UCFun& f) : x_(x), f_(f) {}

    struct Ball {
        NetPoint centre;
        Dyadic radius;
        bool strict;
    };

    struct Query {
        nat level;
        const Point* y;
        nat m;
        std::optional<Ball> ball;
        std::function<bool(const NetPoint&)> leaf_ok;
        bool index_order = true;
        // Necessary condition for some leaf below an internal node to pass leaf_ok.
        std::function<bool(const NetPoint&)> node_ok;
        // Accept only leaves whose image equals the target exactly.
        bool exact_hit = false;
    };

    std::optional<NetPoint> run(const Query& q) {
        x_.require_level(q.level);
        Ctx c{q, q.m + 4, {}, {}, Dyadic::pow2neg(q.m)};
        c.yhat = q.y->exact() ? *q.y->exact() : q.y->approx(c.prec);
        // Computed images are within 2^-(prec+1) of the true ones.
        if (!f_.exact_on_net) c.slack = Dyadic::pow2neg(c.prec);
        return visit_all(c, x_.roots());
    }

private:
    struct Ctx {
        const Query& q;
        nat prec;
        NetPoint yhat;
        Dyadic slack;
        Dyadic target;
    };

    Dyadic image_dist(const Ctx& c, const NetPoint& p) { return x_.dist(f_.apply(p, c.prec), c.yhat); }

    // 2^-k* with k* the largest k whose modulus value is at most l.
    const Dyadic& image_bound(nat l) {
        while (bounds_.size() <= l) {
            nat lv = bounds_.size();
            const LazySeq& h = f_.search_modulus ? *f_.search_modulus : f_.modulus;
            std::optional<nat> best;
            for (nat k = 0; k <= 4 * lv + 16; ++k)
                if (h(k) <= lv) best = k;
            bounds_.push_back(best ? Dyadic::pow2neg(*best) : Dyadic(1));
        }
        return bounds_[l];
    }

    std::optional<NetPoint> visit_all(const Ctx& c, std::vector<NetPoint> nodes) {
        std::vector<std::pair<Dyadic, NetPoint>> scored;
        scored.reserve(nodes.size());
        for (auto& n : nodes) scored.emplace_back(image_dist(c, n), std::move(n));
        if (!c.q.index_order)
            std::stable_sort(scored.begin(), scored.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [d, n] : scored)
            if (auto r = visit(c, n, d)) return r;
        return std::nullopt;
    }

    std::optional<NetPoint> visit(const Ctx& c, const NetPoint& node, const Dyadic& d) {
        const Query& q = c.q;
        if (node.level == q.level) {
            if (q.exact_hit ? !d.is_zero() : !(d < c.target)) return std::nullopt;
            if (q.ball) {
                Dyadic bd = x_.dist(node, q.ball->centre);
                if (q.ball->strict ? !(bd < q.ball->radius) : bd > q.ball->radius) return std::nullopt;
            }
            if (q.leaf_ok && !q.leaf_ok(node)) return std::nullopt;
            return node;
        }
        Dyadic lb = x_.lower_bound(d, image_bound(node.level) + c.slack);
        if (q.exact_hit ? !lb.is_zero() : lb >= c.target) return std::nullopt;
        if (q.ball) {
            Dyadic bl = x_.lower_bound(x_.dist(node, q.ball->centre), x_.cell_radius(node.level));
            if (q.ball->strict ? bl >= q.ball->radius : bl > q.ball->radius) return std::nullopt;
        }
        if (q.node_ok && !q.node_ok(node)) return std::nullopt;
        return visit_all(c, x_.children(node));
    }

    const CompactSpace& x_;
    const UCFun& f_;
    std::vector<Dyadic> bounds_;
};

}  // namespace

RangeAnswer range_char(const CompactSpace& x, const UCFun& f, const Point& y, nat m_max) {
    NetSearch search(x, f);
    for (nat m = 0; m <= m_max; ++m) {
        NetSearch::Query q{f.modulus(m), &y, m, std::nullopt, {}, false, {}, false};
        if (search.run(q)) continue;
        if (f.exact_range && f.exact_range(y, m_max + 4) == RangeTruth::in)
            throw Error("inconsistency", f.name + ": net test rejects a point its exact range accepts", m);
        return RangeAnswer{true, m};
    }
    return RangeAnswer{false, m_max};
}

// ---- preimage selector ----------------------------------------------------

namespace {

struct PreimageState {
    std::shared_ptr<const CompactSpace> x;
    UCFun f;
    Point y;
    nat m_max;
    std::mutex mu;
    std::vector<NetPoint> p;

    nat h(nat k) const { return std::max(f.modulus(k), k + 3); }

    NetPoint pick(nat m) {
        nat window = std::max(m_max, f.inverse_modulus ? (*f.inverse_modulus)(m + 3) : m + 4);
        window = std::max(window, m + 1);
        NetSearch search(*x, f);
        NetSearch inner(*x, f);
        std::optional<NetSearch::Ball> ball;
        if (m > 0) ball = NetSearch::Ball{p[m - 1], Dyadic::pow2neg(m), false};
        auto near_preimage = [&](const NetPoint& centre, const Dyadic& radius, nat j) {
            NetSearch::Query q{h(j), &y, j, NetSearch::Ball{centre, radius, true}, {}, false, {}, false};
            return inner.run(q).has_value();
        };
        auto clause2 = [&](const NetPoint& cand) {
            if (!near_preimage(cand, Dyadic::pow2neg(m + 2), window)) return false;
            for (nat j = m + 1; j < window; ++j)
                if (!near_preimage(cand, Dyadic::pow2neg(m + 2), j)) return false;
            return true;
        };
        // Every leaf below node lies within its cell radius, so a leaf passing
        // clause (2) at the window needs a witness this close to node.
        auto prune = [&](const NetPoint& node) {
            return near_preimage(node, Dyadic::pow2neg(m + 2) + x->cell_radius(node.level), window);
        };
        NetSearch::Query q{h(m), &y, m, ball, clause2, true, prune, false};
        auto r = search.run(q);
        if (!r)
            throw Error("construction-stalled", "no level-" + std::to_string(h(m)) + " point meets the clauses at m=" +
                                                    std::to_string(m),
                        m);
        return *r;
    }

    NetPoint at(nat m) {
        std::lock_guard<std::mutex> lock(mu);
        while (p.size() <= m) p.push_back(pick(p.size()));
        return p[m];
    }
};

}  // namespace

namespace {

// Least level, then least index, net point q with F(q) = y exactly.
std::optional<NetPoint> exact_preimage(const CompactSpace& x, const UCFun& f, const Point& y, nat max_level) {
    if (!y.exact() || !f.exact_on_net) return std::nullopt;
    NetSearch search(x, f);
    for (nat l = 0; l <= std::min(max_level, x.max_level()); ++l) {
        NetSearch::Query q{l, &y, 0, std::nullopt, {}, true, {}, true};
        if (auto r = search.run(q)) return r;
    }
    return std::nullopt;
}

// m_max widens clause (2); p_0..p_eager are computed up front.
Point lazy_preimage(const CompactSpace& x, const UCFun& f, const Point& y, nat m_max, std::optional<nat> eager) {
    auto st = std::make_shared<PreimageState>();
    st->x = x.clone();
    st->f = f;
    st->y = y;
    st->m_max = m_max;
    nat reach = st->h(m_max);
    if (y.exact()) reach = std::max(reach, 2 * y.exact()->level + 8);
    if (auto e = exact_preimage(x, f, y, reach)) return Point(*e);
    if (eager) st->at(*eager);
    return Point([st](nat m) { return st->at(m); }, "preimage(" + f.name + ")");
}

}  // namespace

Point preimage_select(const CompactSpace& x, const UCFun& f, const Point& y, nat m_max) {
    return lazy_preimage(x, f, y, m_max, m_max);
}

// ---- modulus functional ---------------------------------------------------

LazySeq modulus_of(const CompactSpace& x, const UCFun& f, nat level_cap) {
    x.require_level(level_cap);
    BigInt cnt = x.count(level_cap);
    if (cnt > BigInt(1) << 22) throw Error("net-too-large", "level cap " + std::to_string(level_cap), level_cap);
    std::size_t n = static_cast<std::size_t>(cnt);
    std::vector<NetPoint> pts, img;
    pts.reserve(n);
    img.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(NetPoint{level_cap, BigInt(i)});
        img.push_back(f.apply(pts.back(), level_cap + 8));
    }
    // worst[b]: largest image distance over pairs whose distance is < 2^-b
    // with b maximal (capped at level_cap).
    std::vector<std::optional<Dyadic>> worst(level_cap + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            auto b = x.dist(pts[i], pts[j]).below_pow2();
            if (b && *b < 0) continue;
            nat bucket = b ? std::min<nat>(static_cast<nat>(*b), level_cap) : level_cap;
            Dyadic d = x.dist(img[i], img[j]);
            auto& w = worst[bucket];
            if (!w || d > *w) w = d;
        }
    }
    auto suffix = std::make_shared<std::vector<Dyadic>>(level_cap + 2, Dyadic(0));
    for (nat b = level_cap + 1; b-- > 0;) {
        (*suffix)[b] = (*suffix)[b + 1];
        if (worst[b] && *worst[b] > (*suffix)[b]) (*suffix)[b] = *worst[b];
    }
    return LazySeq([suffix, level_cap](nat m) -> nat {
        Dyadic goal = Dyadic::pow2neg(m + 1);
        for (nat k = 0; k <= level_cap; ++k)
            if ((*suffix)[k] < goal) return k;
        throw Error("no-valid-n", "no n <= level cap works at m=" + std::to_string(m), m);
    });
}

// ---- Banach functional ----------------------------------------------------

std::string to_string(HTag t) { return t == HTag::via_F ? "via-F" : "via-G-inverse"; }

BanachHResult banach_H(const CompactSpace& x, const UCFun& f, const UCFun& g, const Point& pt, nat out_level,
                       Fuel fuel, nat lookahead) {
    if (lookahead == 0) lookahead = 2 * (out_level + 4);
    BanachHResult res;
    Point s = pt;
    std::optional<Point> s1;
    for (nat n = 1; n <= fuel.bound(); ++n) {
        const UCFun& fun = n % 2 == 1 ? g : f;
        RangeTruth truth;
        if (fun.exact_range)
            truth = fun.exact_range(s, lookahead);
        else
            truth = range_char(x, fun, s, lookahead).definitely_out ? RangeTruth::out : RangeTruth::unknown;
        res.stages.push_back(truth);
        if (truth == RangeTruth::out) {
            res.stage = n;
            break;
        }
        s = lazy_preimage(x, fun, s, 0, std::nullopt);
        if (n == 1) s1 = s;
    }
    nat t;
    if (res.stage != 0) {
        t = res.stage % 2;
    } else {
        bool confirmed = std::all_of(res.stages.begin(), res.stages.end(),
                                     [](RangeTruth r) { return r == RangeTruth::in; });
        if (!confirmed) throw ExhaustedError("back-and-forth chain unresolved within fuel", fuel.bound());
        t = 1;
    }
    if (t == 1) {
        res.value = apply_point(f, pt);
        res.tag = HTag::via_F;
    } else {
        res.value = *s1;
        res.tag = HTag::via_G_inverse;
    }
    res.resolved = res.value.exact() ? *res.value.exact() : x.snap(res.value.approx(out_level + 3), out_level);
    return res;
}

// ---- gadgets --------------------------------------------------------------

namespace {
LazySeq identity_modulus() { return identity_seq(); }
}  // namespace

UCFun halving() {
    UCFun u;
    u.name = "halving";
    u.apply = [](const NetPoint& p, nat) { return NetPoint{p.level + 1, p.index}; };
    u.modulus = identity_modulus();
    u.inverse_modulus = LazySeq([](nat k) { return k + 1; });
    u.exact_on_net = true;
    u.exact_range = [](const Point& y, nat horizon) {
        const Dyadic half = Dyadic::pow2neg(1);
        if (y.exact()) return IntervalSpace::value(*y.exact()) <= half ? RangeTruth::in : RangeTruth::out;
        for (nat k = 1; k <= horizon; ++k) {
            Dyadic v = IntervalSpace::value(y.approx(k));
            Dyadic e = Dyadic::pow2neg(k);
            if (v > half + e) return RangeTruth::out;
            if (v + e <= half) return RangeTruth::in;
        }
        return RangeTruth::unknown;
    };
    return u;
}

UCFun padding() {
    UCFun u;
    u.name = "padding";
    u.apply = [](const NetPoint& p, nat) {
        NetPoint out{2 * p.level, 0};
        for (nat i = 0; i <= p.level; ++i)
            if (CantorSpace::bit(p, i)) boost::multiprecision::bit_set(out.index, static_cast<unsigned>(2 * (p.level - i)));
        return out;
    };
    u.modulus = identity_modulus();
    u.search_modulus = LazySeq([](nat k) { return k / 2; });
    u.inverse_modulus = LazySeq([](nat k) { return 2 * k + 1; });
    u.exact_on_net = true;
    u.exact_range = [](const Point& y, nat horizon) {
        if (y.exact()) {
            const NetPoint& e = *y.exact();
            for (nat i = 1; i <= e.level; i += 2)
                if (CantorSpace::bit(e, i)) return RangeTruth::out;
            return RangeTruth::in;
        }
        // approx(k) is correct on bits 0..k-1.
        for (nat k = 2; k <= horizon; k += 2)
            if (CantorSpace::bit(y.approx(k), k - 1)) return RangeTruth::out;
        return RangeTruth::unknown;
    };
    return u;
}

UCFun preimage_gadget(const LazySeq& w) {
    UCFun u;
    u.name = "preimage-gadget";
    u.apply = [w](const NetPoint& p, nat out) {
        nat len = out + 2;
        std::optional<nat> s;
        for (nat t = 0; t + 1 < len && !s; ++t)
            if (w(t) == 0) s = t;
        std::uint8_t x0 = CantorSpace::bit(p, 0);
        Bits b{0};
        for (nat n = 1; n < len; ++n) {
            if (s && n - 1 == *s)
                b.push_back(*s % 2 == 0 ? x0 : 1 - x0);
            else
                b.push_back(x0 == 0 ? CantorSpace::bit(p, n) : 1 - CantorSpace::bit(p, n));
        }
        return CantorSpace::from_bits(b);
    };
    u.modulus = identity_modulus();
    return u;
}

Point sigma_seq(nat n) {
    Bits b;
    for (nat i = 0; i < n; ++i) {
        b.push_back(1);
        b.push_back(0);
    }
    b.push_back(1);
    b.push_back(1);
    return cantor_point(b);
}

nat preimage_gadget_bit(const LazySeq& w, nat m_max) {
    CantorSpace x(std::max<nat>(m_max, 10) + 8);
    Point p = lazy_preimage(x, preimage_gadget(w), cantor_point(Bits{0}), m_max, std::nullopt);
    return CantorSpace::bit(p.approx(2), 0);
}

// ---- codes ----------------------------------------------------------------

std::vector<CodeViolation> check_code(const CompactSpace& x, const std::vector<Quintuple>& phi) {
    std::vector<CodeViolation> out;
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = i + 1; j < phi.size(); ++j) {
            const Quintuple &a = phi[i], &b = phi[j];
            Dyadic r = a.r > b.r ? a.r : b.r;
            if (x.dist(a.a, b.a) < r && x.dist(a.b, b.b) > a.s + b.s) out.push_back({i, j});
        }
    return out;
}

NetPoint decoded_value(const CompactSpace& x, const std::vector<Quintuple>& phi, const NetPoint& q, nat m) {
    Dyadic goal = Dyadic::pow2neg(m + 1);
    for (const auto& e : phi)
        if (e.s < goal && x.dist(q, e.a) < e.r) return e.b;
    throw Error("not-total", "no quintuple covers " + x.format(q) + " at m=" + std::to_string(m), m);
}

UCFun decode_code(const CompactSpace& x, std::vector<Quintuple> phi, std::optional<LazySeq> modulus) {
    auto code = std::make_shared<const std::vector<Quintuple>>(std::move(phi));
    UCFun u;
    u.name = "decoded";
    u.apply = [sp = x.clone(), code](const NetPoint& q, nat out) { return decoded_value(*sp, *code, q, out); };
    u.modulus = modulus ? *modulus : identity_modulus();
    return u;
}

}  // namespace banach
