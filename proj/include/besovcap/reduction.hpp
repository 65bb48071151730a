#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace besovcap {

/// Streaming pairwise summation.
///
/// Values are summed sequentially in blocks of kBlock; block totals are merged
/// in a binary tree keyed only by block index. The result therefore depends on
/// the order of the input sequence and nothing else.
class PairwiseSum {
 public:
  static constexpr std::size_t kBlock = 32;

  void add(double x) {
    block_ += x;
    if (++in_block_ == kBlock) flush();
  }

  double total() const;
  std::size_t count() const { return count_ * kBlock + in_block_; }

 private:
  void flush();

  static constexpr std::size_t kLevels = 64;
  std::array<double, kLevels> level_{};
  std::size_t count_ = 0;  // number of flushed blocks; bit l set <=> level_[l] occupied
  double block_ = 0.0;
  std::size_t in_block_ = 0;
};

/// Pairwise sum of a contiguous range, same tree as PairwiseSum.
double pairwise_sum(std::span<const double> values);

}  // namespace besovcap
