#include "besovcap/reduction.hpp"

namespace besovcap {

void PairwiseSum::flush() {
  double carry = block_;
  std::size_t l = 0;
  std::size_t c = count_;
  while (c & 1u) {
    carry = level_[l] + carry;
    c >>= 1;
    ++l;
  }
  level_[l] = carry;
  ++count_;
  block_ = 0.0;
  in_block_ = 0;
}

double PairwiseSum::total() const {
  double acc = 0.0;
  bool any = false;
  for (std::size_t l = 0; l < kLevels; ++l) {
    if ((count_ >> l) & 1u) {
      acc = any ? level_[l] + acc : level_[l];
      any = true;
    }
  }
  return in_block_ ? (any ? acc + block_ : block_) : acc;
}

double pairwise_sum(std::span<const double> values) {
  PairwiseSum s;
  for (double v : values) s.add(v);
  return s.total();
}

}  // namespace besovcap
