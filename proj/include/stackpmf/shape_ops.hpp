// Copyright 2026 The stackpmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================
#ifndef STACKPMF_SHAPE_OPS_HPP_
#define STACKPMF_SHAPE_OPS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "stackpmf/error.hpp"
#include "stackpmf/pmf.hpp"

namespace stackpmf {

// Constant regions of a nonincreasing fit. ends[r] is the last index of
// block r; levels are strictly decreasing from block to block.
struct BlockPartition {
  std::vector<std::size_t> ends;
  std::vector<double> levels;

  std::size_t block_count() const noexcept { return ends.size(); }
};

struct IsotonicFit {
  std::vector<double> values;
  BlockPartition blocks;
};

// Least-squares projection of v onto nonincreasing vectors.
//
// Stack-based pool-adjacent-violators scan, O(D). Adjacent blocks with equal
// means are pooled, so the resulting levels are strictly decreasing; this is
// the partition obtained by always taking the largest maximizing index in
// the maximum-upper-sets construction. Block sums are compensated.
inline IsotonicFit isotonic_decreasing(std::span<const double> v) {
  if (v.empty()) throw EmptyInputError("isotonic_decreasing: empty input");
  struct Block {
    CompensatedSum sum;
    std::size_t len;
    double mean() const { return sum.value() / static_cast<double>(len); }
  };
  std::vector<Block> stack;
  stack.reserve(v.size());
  for (double x : v) {
    stack.push_back({CompensatedSum(x), 1});
    while (stack.size() > 1 && stack[stack.size() - 2].mean() <= stack.back().mean()) {
      Block top = stack.back();
      stack.pop_back();
      stack.back().sum.add(top.sum);
      stack.back().len += top.len;
    }
  }
  IsotonicFit fit;
  fit.values.reserve(v.size());
  fit.blocks.ends.reserve(stack.size());
  fit.blocks.levels.reserve(stack.size());
  std::size_t end = 0;
  for (const Block& b : stack) {
    const double level = b.mean();
    fit.values.insert(fit.values.end(), b.len, level);
    end += b.len;
    fit.blocks.ends.push_back(end - 1);
    fit.blocks.levels.push_back(level);
  }
  return fit;
}

// Nonincreasing projection of integer counts, divided by `divisor`. Block
// comparisons are exact, so equal inputs give bit-identical outputs.
inline IsotonicFit isotonic_decreasing_counts(std::span<const std::int64_t> counts, double divisor) {
  if (counts.empty()) throw EmptyInputError("isotonic_decreasing: empty input");
  struct Block {
    std::int64_t sum;
    std::int64_t len;
  };
  // a.sum / a.len <= b.sum / b.len
  const auto mean_le = [](const Block& a, const Block& b) {
    return static_cast<__int128>(a.sum) * b.len <= static_cast<__int128>(b.sum) * a.len;
  };
  std::vector<Block> stack;
  stack.reserve(counts.size());
  for (std::int64_t c : counts) {
    stack.push_back({c, 1});
    while (stack.size() > 1 && mean_le(stack[stack.size() - 2], stack.back())) {
      const Block top = stack.back();
      stack.pop_back();
      stack.back().sum += top.sum;
      stack.back().len += top.len;
    }
  }
  IsotonicFit fit;
  fit.values.reserve(counts.size());
  std::size_t end = 0;
  for (const Block& b : stack) {
    const double level = static_cast<double>(b.sum) / (static_cast<double>(b.len) * divisor);
    fit.values.insert(fit.values.end(), static_cast<std::size_t>(b.len), level);
    end += static_cast<std::size_t>(b.len);
    fit.blocks.ends.push_back(end - 1);
    fit.blocks.levels.push_back(level);
  }
  return fit;
}

// Permutation of v sorted nonincreasingly; ties keep their original order.
inline std::vector<double> rearrange_decreasing(std::span<const double> v) {
  if (v.empty()) throw EmptyInputError("rearrange_decreasing: empty input");
  std::vector<double> out(v.begin(), v.end());
  std::stable_sort(out.begin(), out.end(), std::greater<>{});
  return out;
}

}  // namespace stackpmf

#endif  // STACKPMF_SHAPE_OPS_HPP_
