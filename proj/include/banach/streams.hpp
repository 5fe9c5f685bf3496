#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "banach/error.hpp"

namespace banach {

// Global cap on memo entries per stream; 0 means unbounded.  Entries past the
// cap are recomputed on demand, which is safe because generators are pure.
void set_cache_limit(std::size_t entries);
std::size_t cache_limit();

// A total deterministic sequence with a thread-safe memo.  Copies share the
// memo, so a Stream behaves like an immutable value.
template <class T>
class Stream {
public:
    using Generator = std::function<T(nat)>;

    Stream() : Stream([](nat) { return T{}; }) {}
    explicit Stream(Generator g) : st_(std::make_shared<State>(std::move(g))) {}

    T operator()(nat n) const {
        State& s = *st_;
        {
            std::lock_guard<std::mutex> lock(s.mu);
            if (n < s.dense.size() && s.dense[n]) return *s.dense[n];
            if (auto it = s.sparse.find(n); it != s.sparse.end()) return it->second;
        }
        T v = s.gen(n);
        std::lock_guard<std::mutex> lock(s.mu);
        std::size_t cap = cache_limit();
        if (cap != 0 && s.entries >= cap) return v;
        if (n < kDense) {
            if (s.dense.size() <= n) s.dense.resize(n + 1);
            if (!s.dense[n]) {
                s.dense[n] = v;
                ++s.entries;
            }
            return *s.dense[n];
        }
        auto [it, inserted] = s.sparse.emplace(n, v);
        if (inserted) ++s.entries;
        return it->second;
    }

    std::size_t cached() const {
        std::lock_guard<std::mutex> lock(st_->mu);
        return st_->entries;
    }

private:
    static constexpr nat kDense = nat{1} << 20;

    struct State {
        explicit State(Generator g) : gen(std::move(g)) {}
        Generator gen;
        std::mutex mu;
        std::vector<std::optional<T>> dense;
        std::unordered_map<nat, T> sparse;
        std::size_t entries = 0;
    };

    std::shared_ptr<State> st_;
};

using LazySeq = Stream<nat>;

LazySeq constant_seq(nat v);
LazySeq identity_seq();
LazySeq from_prefix(std::vector<nat> prefix, nat tail);

// Literal form v0,v1,...,vk;t (prefix then constantly t).
struct UltimatelyConstantSeq {
    std::vector<nat> prefix;
    nat tail = 0;

    LazySeq seq() const { return from_prefix(prefix, tail); }
    std::string str() const;
};

UltimatelyConstantSeq parse_seq(std::string_view text);

class Fuel {
public:
    explicit Fuel(nat bound);
    nat bound() const { return bound_; }

private:
    nat bound_;
};

class OracleResult {
public:
    static OracleResult found(nat v) { return OracleResult(true, v); }
    static OracleResult exhausted(nat bound) { return OracleResult(false, bound); }

    bool is_found() const { return found_; }
    bool is_exhausted() const { return !found_; }
    // The found value; throws ExhaustedError otherwise.
    nat value() const;
    nat bound() const { return v_; }
    nat raw() const { return v_; }
    std::string str() const;

    bool operator==(const OracleResult& o) const { return found_ == o.found_ && v_ == o.v_; }
    bool operator!=(const OracleResult& o) const { return !(*this == o); }

private:
    OracleResult(bool f, nat v) : found_(f), v_(v) {}
    bool found_;
    nat v_;
};

using OracleSeq = Stream<OracleResult>;

std::vector<nat> prefix(const LazySeq& s, nat n);

// g(m) = 1 - min(1, e(m)(m)).
LazySeq diagonal(std::function<LazySeq(nat)> e);

// Displayed convention: Found(0) iff a zero was seen below fuel.
OracleResult lpo(const LazySeq& s, Fuel fuel, bool promise_no_zero = false);
OracleResult mu0(const LazySeq& s, Fuel fuel);
OracleResult mu(const LazySeq& s, Fuel fuel);

}  // namespace banach
