#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace banach {

using nat = std::uint64_t;

// Every recoverable failure carries a short machine-readable kind
// ("not-a-tree", "construction-stalled", ...) plus an optional index.
class Error : public std::runtime_error {
public:
    Error(std::string kind, std::string detail, nat index = 0)
        : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), index_(index) {}

    const std::string& kind() const { return kind_; }
    nat index() const { return index_; }

private:
    std::string kind_;
    nat index_;
};

// A search ran out of fuel or depth before producing an honest answer.
class ExhaustedError : public Error {
public:
    ExhaustedError(std::string detail, nat bound) : Error("exhausted", std::move(detail), bound) {}
    nat bound() const { return index(); }
};

class ParseError : public Error {
public:
    ParseError(std::size_t pos, std::string expected, std::string text)
        : Error("parse-error",
                "at position " + std::to_string(pos) + ": expected " + expected + " in \"" + text + "\"",
                pos),
          pos_(pos), expected_(std::move(expected)) {}

    std::size_t position() const { return pos_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t pos_;
    std::string expected_;
};

}  // namespace banach
