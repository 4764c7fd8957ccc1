#pragma once

#include <chrono>
#include <cstddef>
#include <sstream>
#include <string>

#include "cdulab/verify.hpp"

namespace cdulab::detail {

inline constexpr std::size_t kMaxSamples = 12;

template <class... Ts>
std::string cat(const Ts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

class Timer {
public:
    explicit Timer(CheckSummary& s) : s_(s), t0_(std::chrono::steady_clock::now()) {}
    ~Timer() { s_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    CheckSummary& s_;
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace cdulab::detail
