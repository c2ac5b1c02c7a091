#include "qqw/oracle.hpp"

#include <stdexcept>
#include <string>

namespace qqw {

BitOracle::BitOracle(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("BitOracle: N must be >= 1");
  for (auto& b : bits_) b = b ? 1 : 0;
}

BitOracle BitOracle::planted(std::size_t n, std::size_t t, Rng& rng) {
  if (n == 0) throw std::invalid_argument("planted: N must be >= 1");
  if (t > n) throw std::invalid_argument("planted: t > N");
  // Partial Fisher-Yates over index positions; first t slots become ones.
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::uint8_t> bits(n, 0);
  for (std::size_t i = 0; i < t; ++i) bits[idx[i]] = 1;
  return BitOracle(std::move(bits));
}

int BitOracle::query(std::size_t j) {
  if (j >= bits_.size())
    throw std::out_of_range("BitOracle::query: index " + std::to_string(j) +
                            " out of range for N=" + std::to_string(bits_.size()));
  ++query_count_;
  return bits_[j];
}

std::size_t BitOracle::hamming_weight(HarnessKey) const {
  std::size_t w = 0;
  for (auto b : bits_) w += b;
  return w;
}

std::span<const std::uint32_t> BitOracle::solutions(HarnessKey) const {
  if (!solutions_built_) {
    solutions_.clear();
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) solutions_.push_back(static_cast<std::uint32_t>(i));
    solutions_built_ = true;
  }
  return solutions_;
}

}  // namespace qqw
