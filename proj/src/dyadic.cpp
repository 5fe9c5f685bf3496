#include "banach/dyadic.hpp"

namespace banach {

namespace {
constexpr const char* kDyadicGrammar = "dyadic literal k/2^j (unsigned decimals)";
}

Dyadic::Dyadic(BigInt num, nat exp) : num_(std::move(num)), exp_(exp) { normalize(); }

void Dyadic::normalize() {
    if (num_.is_zero()) {
        exp_ = 0;
        return;
    }
    if (exp_ == 0) return;
    BigInt mag = num_ < 0 ? BigInt(-num_) : num_;
    nat tz = static_cast<nat>(boost::multiprecision::lsb(mag));
    nat shift = std::min(tz, exp_);
    if (shift) {
        num_ >>= shift;  // exact: the low bits are zero
        exp_ -= shift;
    }
}

Dyadic Dyadic::twice() const {
    if (exp_ > 0) return Dyadic(num_, exp_ - 1);
    return Dyadic(num_ * 2, 0);
}

std::optional<long long> Dyadic::below_pow2() const {
    if (num_.is_zero()) return std::nullopt;
    BigInt mag = num_ < 0 ? BigInt(-num_) : num_;
    long long b = static_cast<long long>(boost::multiprecision::msb(mag));
    // |d| lies in [2^(b-exp), 2^(b-exp+1)).
    return static_cast<long long>(exp_) - b - 1;
}

namespace {
// Both numerators over the common exponent max(ea, eb).
std::pair<BigInt, BigInt> align(const BigInt& a, nat ea, const BigInt& b, nat eb) {
    if (ea == eb) return {a, b};
    if (ea < eb) return {a << static_cast<unsigned>(eb - ea), b};
    return {a, b << static_cast<unsigned>(ea - eb)};
}
}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    auto [x, y] = align(a.num_, a.exp_, b.num_, b.exp_);
    return Dyadic(x + y, std::max(a.exp_, b.exp_));
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    auto [x, y] = align(a.num_, a.exp_, b.num_, b.exp_);
    return Dyadic(x - y, std::max(a.exp_, b.exp_));
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) { return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_); }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    auto [x, y] = align(a.num_, a.exp_, b.num_, b.exp_);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Dyadic::str() const {
    std::string n = num_.str();
    if (exp_ == 0) return n;
    return n + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::parse(std::string_view text) {
    const std::string src(text);
    std::size_t i = 0;
    auto digits = [&](const char* what) {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) throw ParseError(i, std::string(what) + " in " + kDyadicGrammar, src);
        // cpp_int reads a leading 0 as octal.
        while (start + 1 < i && text[start] == '0') ++start;
        return std::string(text.substr(start, i - start));
    };
    BigInt num(digits("numerator digits"));
    if (i == text.size()) return Dyadic(num, 0);
    if (text.substr(i, 3) != "/2^") throw ParseError(i, std::string("'/2^' in ") + kDyadicGrammar, src);
    i += 3;
    std::string e = digits("exponent digits");
    if (i != text.size()) throw ParseError(i, std::string("end of input in ") + kDyadicGrammar, src);
    if (e.size() > 6) throw ParseError(i, "exponent below 10^6", src);
    return Dyadic(num, std::stoull(e));
}

}  // namespace banach
