#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "banach/dyadic.hpp"
#include "banach/omniscience.hpp"
#include "banach/streams.hpp"

namespace banach {

// A level-j net point.  Interval: value index/2^(j+1).  Cantor: j+1 bits,
// most significant bit first, padded with zeros beyond.
struct NetPoint {
    nat level = 0;
    BigInt index = 0;
};

class CompactSpace {
public:
    virtual ~CompactSpace() = default;

    virtual std::string name() const = 0;
    virtual std::shared_ptr<const CompactSpace> clone() const = 0;
    // n_j + 1.
    virtual BigInt count(nat level) const = 0;
    virtual Dyadic dist(const NetPoint& a, const NetPoint& b) const = 0;
    virtual NetPoint embed(const NetPoint& p, nat level) const = 0;
    virtual std::vector<NetPoint> roots() const = 0;
    // Level-(j+1) points whose cells refine p's cell; DFS order is index order.
    virtual std::vector<NetPoint> children(const NetPoint& p) const = 0;
    // Nearest level-L point (least index on ties).
    virtual NetPoint snap(const NetPoint& p, nat level) const = 0;
    virtual std::string format(const NetPoint& p) const = 0;
    virtual bool same(const NetPoint& a, const NetPoint& b) const { return dist(a, b).is_zero(); }
    // Lower bound on d(a', b) given d = d(a, b) and d(a, a') <= e.
    virtual Dyadic lower_bound(const Dyadic& d, const Dyadic& e) const { return d > e ? d - e : Dyadic(0); }

    NetPoint point(nat level, const BigInt& index) const;
    // Every descendant of a level-l point lies within this distance of it.
    Dyadic cell_radius(nat level) const { return Dyadic::pow2neg(level + 1); }
    nat max_level() const { return max_level_; }
    void require_level(nat level) const;

protected:
    explicit CompactSpace(nat max_level);

private:
    nat max_level_;
};

class IntervalSpace final : public CompactSpace {
public:
    explicit IntervalSpace(nat max_level) : CompactSpace(max_level) {}
    std::string name() const override { return "interval"; }
    std::shared_ptr<const CompactSpace> clone() const override { return std::make_shared<IntervalSpace>(*this); }
    BigInt count(nat level) const override;
    Dyadic dist(const NetPoint& a, const NetPoint& b) const override;
    NetPoint embed(const NetPoint& p, nat level) const override;
    std::vector<NetPoint> roots() const override;
    std::vector<NetPoint> children(const NetPoint& p) const override;
    NetPoint snap(const NetPoint& p, nat level) const override;
    std::string format(const NetPoint& p) const override;

    static Dyadic value(const NetPoint& p) { return Dyadic(p.index, p.level + 1); }
    // The coarsest net point equal to d; d must lie in [0,1].
    static NetPoint from_dyadic(const Dyadic& d);
};

class CantorSpace final : public CompactSpace {
public:
    explicit CantorSpace(nat max_level) : CompactSpace(max_level) {}
    std::string name() const override { return "cantor"; }
    std::shared_ptr<const CompactSpace> clone() const override { return std::make_shared<CantorSpace>(*this); }
    BigInt count(nat level) const override;
    Dyadic dist(const NetPoint& a, const NetPoint& b) const override;
    NetPoint embed(const NetPoint& p, nat level) const override;
    std::vector<NetPoint> roots() const override;
    std::vector<NetPoint> children(const NetPoint& p) const override;
    NetPoint snap(const NetPoint& p, nat level) const override;
    std::string format(const NetPoint& p) const override;
    // Ultrametric: d(a', b) = d(a, b) whenever d(a, a') < d(a, b).
    Dyadic lower_bound(const Dyadic& d, const Dyadic& e) const override { return d > e ? d : Dyadic(0); }

    static std::uint8_t bit(const NetPoint& p, nat i);
    static NetPoint from_bits(const Bits& b);
    static Bits bits(const NetPoint& p);
};

std::shared_ptr<const CompactSpace> unit_interval(nat max_level);
std::shared_ptr<const CompactSpace> cantor_space(nat max_level);

// Rapidly converging: approx(m) is within 2^-m of the limit.  Points known to
// be net points carry the exact representative.
class Point {
public:
    Point() : Point(NetPoint{}) {}
    explicit Point(NetPoint exact);
    Point(std::function<NetPoint(nat)> approx, std::string label = {});

    NetPoint approx(nat m) const { return approx_(m); }
    const std::optional<NetPoint>& exact() const { return exact_; }
    const std::string& label() const { return label_; }

private:
    Stream<NetPoint> approx_;
    std::optional<NetPoint> exact_;
    std::string label_;
};

Point interval_point(const Dyadic& d);
// approx(m) is the first m+1 bits.
Point cantor_point(const LazySeq& bits, std::string label = {});
Point cantor_point(const Bits& finite);

enum class RangeTruth { out, in, unknown };
std::string to_string(RangeTruth t);

struct UCFun {
    std::string name;
    // Within 2^-(out_level+1) of the true image; exact when exact_on_net.
    std::function<NetPoint(const NetPoint&, nat)> apply;
    LazySeq modulus;
    // A valid modulus used only to prune searches.
    std::optional<LazySeq> search_modulus;
    // For injective maps: d(F(u), F(v)) < 2^-g(k) implies d(u, v) < 2^-k.
    // Sets how far the preimage selector looks ahead.
    std::optional<LazySeq> inverse_modulus;
    bool exact_on_net = false;
    // Decides membership in the range from approximations up to horizon: out
    // and in are definite, unknown means not refuted.
    std::function<RangeTruth(const Point&, nat)> exact_range;
};

// F(x).approx(m) = F.apply(x.approx(h(m+1)+1), m+1).
Point apply_point(const UCFun& f, const Point& x);

struct RangeAnswer {
    bool definitely_out = false;
    nat level = 0;  // the failing m, or the checked level
};

RangeAnswer range_char(const CompactSpace& x, const UCFun& f, const Point& y, nat m_max);

// The modulus is padded to max(h(k), k+3).  p_m follows the three clauses
// with clause (2) limited to m < j <= max(m_max, g(m+3)), g the inverse
// modulus (default k+1); p_0..p_{m_max} are computed
// eagerly, later levels on demand.  A net target with an exact net preimage
// yields that preimage as an exact point.  Throws Error("construction-stalled").
Point preimage_select(const CompactSpace& x, const UCFun& f, const Point& y, nat m_max);

// Least n <= level_cap working for every pair of level-cap net points (lower
// levels embed).  Evaluation throws Error("no-valid-n") past the cap.
LazySeq modulus_of(const CompactSpace& x, const UCFun& f, nat level_cap);

enum class HTag { via_F, via_G_inverse };
std::string to_string(HTag t);

struct BanachHResult {
    Point value;
    NetPoint resolved;  // exact when known, else snapped to out_level
    HTag tag = HTag::via_F;
    nat stage = 0;      // first stage with a definite 0, or 0 if none
    std::vector<RangeTruth> stages;
};

// lookahead 0 selects 2*(out_level+4).
BanachHResult banach_H(const CompactSpace& x, const UCFun& f, const UCFun& g, const Point& pt, nat out_level,
                       Fuel fuel, nat lookahead = 0);

// x/2 on [0,1], identity modulus, range [0,1/2].
UCFun halving();
// P(x)(2m) = x(m), P(x)(odd) = 0; identity modulus.
UCFun padding();
UCFun preimage_gadget(const LazySeq& w);
// n copies of 10, then 11, then zeros.
Point sigma_seq(nat n);

// Reads bit 0 of the third approximation of the selected preimage of the
// all-zeros sequence.
nat preimage_gadget_bit(const LazySeq& w, nat m_max);

struct Quintuple {
    nat n;
    NetPoint a;
    Dyadic r;
    NetPoint b;
    Dyadic s;
};

struct CodeViolation {
    std::size_t first, second;
};

// Pairs whose balls share a centre (d(a,a') < max(r,r')) must have
// d(b,b') <= s+s'.
std::vector<CodeViolation> check_code(const CompactSpace& x, const std::vector<Quintuple>& phi);

// b of the first quintuple with d(x,a) < r and s < 2^-(m+1); Error("not-total").
NetPoint decoded_value(const CompactSpace& x, const std::vector<Quintuple>& phi, const NetPoint& q, nat m);

UCFun decode_code(const CompactSpace& x, std::vector<Quintuple> phi, std::optional<LazySeq> modulus = std::nullopt);

}  // namespace banach
