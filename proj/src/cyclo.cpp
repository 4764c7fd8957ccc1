#include "cdulab/cyclo.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace cdulab {

CycloInt::CycloInt(std::uint32_t p, std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.size() != p) throw std::invalid_argument("cyclotomic vector length must equal p");
}

CycloInt CycloInt::canonical() const {
    CycloInt out = *this;
    const auto lo = *std::min_element(counts_.begin(), counts_.end());
    for (auto& c : out.counts_) c -= lo;
    return out;
}

bool CycloInt::is_zero() const noexcept {
    return std::all_of(counts_.begin(), counts_.end(), [&](std::int64_t c) { return c == counts_.front(); });
}

std::complex<double> CycloInt::to_complex() const {
    std::complex<double> acc{0.0, 0.0};
    const double step = 2.0 * std::numbers::pi / static_cast<double>(counts_.size());
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        acc += static_cast<double>(counts_[j]) * std::polar(1.0, step * static_cast<double>(j));
    }
    return acc;
}

}  // namespace cdulab
