#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace banach::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kExhausted = 2;
constexpr int kParseError = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace banach::cli
