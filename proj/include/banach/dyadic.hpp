#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "banach/error.hpp"

namespace banach {

using BigInt = boost::multiprecision::cpp_int;

// numerator / 2^exponent, kept normalized (odd numerator or exponent 0), so
// equal values have equal representations.
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(BigInt num, nat exp);
    explicit Dyadic(long long v) : Dyadic(BigInt(v), 0) {}

    // 2^-k.
    static Dyadic pow2neg(nat k) { return Dyadic(BigInt(1), k); }
    // Grammar: k/2^j or k (unsigned decimals).
    static Dyadic parse(std::string_view text);

    const BigInt& numerator() const { return num_; }
    nat exponent() const { return exp_; }
    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }

    Dyadic abs() const { return Dyadic(num_ < 0 ? BigInt(-num_) : num_, exp_); }
    Dyadic half() const { return Dyadic(num_, exp_ + 1); }
    Dyadic twice() const;

    // Largest n with |d| < 2^-n; nullopt for zero.  May be negative.
    std::optional<long long> below_pow2() const;

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
    Dyadic operator-() const { return Dyadic(-num_, exp_); }

    friend bool operator==(const Dyadic& a, const Dyadic& b) { return a.exp_ == b.exp_ && a.num_ == b.num_; }
    friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

    // k/2^j, or k when the exponent is 0.
    std::string str() const;

private:
    void normalize();
    BigInt num_{0};
    nat exp_ = 0;
};

}  // namespace banach
