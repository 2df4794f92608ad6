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
#ifndef STACKPMF_PMF_HPP_
#define STACKPMF_PMF_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackpmf/error.hpp"

namespace stackpmf {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double x) : sum_(x) {}

  constexpr void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  constexpr void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  constexpr double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> v) noexcept {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value();
}

// Probability mass function on {0, ..., size()-1}. tail_mass is the mass
// dropped beyond the last retained index (0 for finite supports).
struct Pmf {
  std::vector<double> probs;
  double tail_mass = 0.0;

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::size_t j) const noexcept { return probs[j]; }
  // p_j, with zero beyond the stored range.
  double at_or_zero(std::size_t j) const noexcept {
    return j < probs.size() ? probs[j] : 0.0;
  }
  double total() const noexcept { return compensated_total(probs) + tail_mass; }
};

// Observed counts x_0..x_{t_n} of an i.i.d. sample of size n. The last count
// is positive, so counts().size() - 1 is the largest order statistic t_n.
class FrequencyData {
 public:
  explicit FrequencyData(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw EmptyInputError("frequency data is empty");
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      if (counts_[j] < 0) {
        throw ParameterDomainError("negative count at index " + std::to_string(j));
      }
      n_ += counts_[j];
    }
    if (n_ == 0) throw EmptyInputError("frequency data has sample size 0");
    if (counts_.back() == 0) {
      throw ParameterDomainError("last count must be positive (trailing zeros)");
    }
  }

  // Counts of `values` (each >= 0).
  static FrequencyData from_sample(std::span<const std::int64_t> values) {
    if (values.empty()) throw EmptyInputError("sample is empty");
    std::int64_t top = 0;
    for (auto v : values) {
      if (v < 0) throw ParameterDomainError("negative sample value");
      top = std::max(top, v);
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(top) + 1, 0);
    for (auto v : values) ++counts[static_cast<std::size_t>(v)];
    return FrequencyData(std::move(counts));
  }

  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  std::int64_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return counts_.size(); }
  std::size_t largest_value() const noexcept { return counts_.size() - 1; }
  std::int64_t operator[](std::size_t j) const noexcept { return counts_[j]; }

  friend bool operator==(const FrequencyData&, const FrequencyData&) = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

// Drops trailing zero counts; returns how many were removed.
inline std::size_t trim_trailing_zeros(std::vector<std::int64_t>& counts) {
  std::size_t removed = 0;
  while (!counts.empty() && counts.back() == 0) {
    counts.pop_back();
    ++removed;
  }
  return removed;
}

enum class Norm { L1, L2, Linf };

// ||a - b||_k, with the shorter vector padded by zeros.
inline double distance(std::span<const double> a, std::span<const double> b, Norm norm) {
  const std::size_t len = std::max(a.size(), b.size());
  CompensatedSum acc;
  double sup = 0.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double d = std::abs((j < a.size() ? a[j] : 0.0) - (j < b.size() ? b[j] : 0.0));
    switch (norm) {
      case Norm::L1: acc.add(d); break;
      case Norm::L2: acc.add(d * d); break;
      case Norm::Linf: sup = std::max(sup, d); break;
    }
  }
  switch (norm) {
    case Norm::L1: return acc.value();
    case Norm::L2: return std::sqrt(acc.value());
    case Norm::Linf: return sup;
  }
  return sup;
}

inline std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "1";
    case Norm::L2: return "2";
    case Norm::Linf: return "inf";
  }
  return "?";
}

inline Norm parse_norm(const std::string& s) {
  if (s == "1") return Norm::L1;
  if (s == "2") return Norm::L2;
  if (s == "inf" || s == "Inf" || s == "infty") return Norm::Linf;
  throw ParameterDomainError("unknown norm '" + s + "' (expected 1, 2 or inf)");
}

}  // namespace stackpmf

#endif  // STACKPMF_PMF_HPP_
