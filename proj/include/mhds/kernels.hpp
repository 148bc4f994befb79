#pragma once

#include <algorithm>
#include <array>
#include <cstddef>

namespace mhds {

// Reduction order must not depend on the thread count: results feed
// bit-reproducible artifacts. Sums are accumulated per fixed-size block
// (each block serial) and the block partials are combined in index order.
inline constexpr int kReduceBlocks = 64;

template <class Term>
double det_sum(std::size_t count, Term&& term) {
  std::array<double, kReduceBlocks> partial{};
  const std::size_t chunk = (count + kReduceBlocks - 1) / kReduceBlocks;
#pragma omp parallel for schedule(static)
  for (int blk = 0; blk < kReduceBlocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(blk)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Max of a nonnegative quantity; order-independent, so a plain block max.
template <class Term>
double det_max(std::size_t count, Term&& term) {
  std::array<double, kReduceBlocks> partial{};
  const std::size_t chunk = (count + kReduceBlocks - 1) / kReduceBlocks;
#pragma omp parallel for schedule(static)
  for (int blk = 0; blk < kReduceBlocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, term(i));
    partial[static_cast<std::size_t>(blk)] = m;
  }
  double total = 0.0;
  for (double p : partial) total = std::max(total, p);
  return total;
}

}  // namespace mhds
