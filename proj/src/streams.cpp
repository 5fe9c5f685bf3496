#include "banach/streams.hpp"

#include <algorithm>
#include <limits>

namespace banach {

namespace {
std::atomic<std::size_t> g_cache_limit{0};

constexpr const char* kSeqGrammar = "sequence literal v0,v1,...,vk;t (unsigned decimals)";
}  // namespace

void set_cache_limit(std::size_t entries) { g_cache_limit.store(entries); }
std::size_t cache_limit() { return g_cache_limit.load(); }

LazySeq constant_seq(nat v) {
    return LazySeq([v](nat) { return v; });
}

LazySeq identity_seq() {
    return LazySeq([](nat n) { return n; });
}

LazySeq from_prefix(std::vector<nat> pre, nat tail) {
    auto p = std::make_shared<const std::vector<nat>>(std::move(pre));
    return LazySeq([p, tail](nat n) { return n < p->size() ? (*p)[n] : tail; });
}

std::string UltimatelyConstantSeq::str() const {
    std::string out;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(prefix[i]);
    }
    out += ';';
    out += std::to_string(tail);
    return out;
}

UltimatelyConstantSeq parse_seq(std::string_view text) {
    const std::string src(text);
    std::size_t i = 0;
    auto number = [&]() -> nat {
        if (i >= text.size() || text[i] < '0' || text[i] > '9') throw ParseError(i, kSeqGrammar, src);
        nat v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            nat d = static_cast<nat>(text[i] - '0');
            if (v > (std::numeric_limits<nat>::max() - d) / 10) throw ParseError(i, "value fitting in 64 bits", src);
            v = v * 10 + d;
            ++i;
        }
        return v;
    };
    UltimatelyConstantSeq out;
    if (i < text.size() && text[i] != ';') {
        out.prefix.push_back(number());
        while (i < text.size() && text[i] == ',') {
            ++i;
            out.prefix.push_back(number());
        }
    }
    if (i >= text.size() || text[i] != ';') throw ParseError(i, std::string("';' in ") + kSeqGrammar, src);
    ++i;
    out.tail = number();
    if (i != text.size()) throw ParseError(i, std::string("end of input in ") + kSeqGrammar, src);
    return out;
}

Fuel::Fuel(nat bound) : bound_(bound) {
    if (bound == 0) throw Error("invalid-fuel", "fuel bound must be at least 1");
}

nat OracleResult::value() const {
    if (!found_) throw ExhaustedError("no answer within fuel", v_);
    return v_;
}

std::string OracleResult::str() const {
    return (found_ ? "Found(" : "Exhausted(") + std::to_string(v_) + ")";
}

std::vector<nat> prefix(const LazySeq& s, nat n) {
    std::vector<nat> out;
    out.reserve(n);
    for (nat i = 0; i < n; ++i) out.push_back(s(i));
    return out;
}

LazySeq diagonal(std::function<LazySeq(nat)> e) {
    return LazySeq([e = std::move(e)](nat m) -> nat { return 1 - std::min<nat>(1, e(m)(m)); });
}

OracleResult lpo(const LazySeq& s, Fuel fuel, bool promise_no_zero) {
    for (nat n = 0; n < fuel.bound(); ++n)
        if (s(n) == 0) return OracleResult::found(0);
    if (promise_no_zero) return OracleResult::found(1);
    return OracleResult::exhausted(fuel.bound());
}

OracleResult mu0(const LazySeq& s, Fuel fuel) {
    for (nat n = 0; n < fuel.bound(); ++n)
        if (s(n) == 0) return OracleResult::found(n);
    return OracleResult::exhausted(fuel.bound());
}

OracleResult mu(const LazySeq& s, Fuel fuel) {
    OracleResult r = mu0(s, fuel);
    if (r.is_exhausted()) return r;
    for (nat t = 0; t <= r.value(); ++t)
        if (s(t) == 0) return OracleResult::found(t);
    return r;
}

}  // namespace banach
