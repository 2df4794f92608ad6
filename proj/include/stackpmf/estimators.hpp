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
#ifndef STACKPMF_ESTIMATORS_HPP_
#define STACKPMF_ESTIMATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stackpmf/error.hpp"
#include "stackpmf/pmf.hpp"
#include "stackpmf/shape_ops.hpp"

namespace stackpmf {

// Shape-constrained component of a stacked estimator.
enum class ShapeKind { Rearrangement, Grenander };

enum class EstimatorKind {
  Empirical,             // e
  Minimax,               // mm
  Rearrangement,         // r
  Grenander,             // G
  StackedRearrangement,  // sr
  StackedGrenander,      // sG
};

inline std::string short_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Empirical: return "e";
    case EstimatorKind::Minimax: return "mm";
    case EstimatorKind::Rearrangement: return "r";
    case EstimatorKind::Grenander: return "G";
    case EstimatorKind::StackedRearrangement: return "sr";
    case EstimatorKind::StackedGrenander: return "sG";
  }
  return "?";
}

inline std::string short_name(ShapeKind kind) {
  return kind == ShapeKind::Grenander ? "G" : "r";
}

inline EstimatorKind parse_estimator(const std::string& s) {
  for (auto kind : {EstimatorKind::Empirical, EstimatorKind::Minimax, EstimatorKind::Rearrangement,
                    EstimatorKind::Grenander, EstimatorKind::StackedRearrangement,
                    EstimatorKind::StackedGrenander}) {
    if (short_name(kind) == s) return kind;
  }
  throw ParameterDomainError("unknown estimator '" + s + "' (expected e, mm, r, G, sr or sG)");
}

// p_j = x_j / n.
inline Pmf empirical(const FrequencyData& x) {
  Pmf out;
  out.probs.resize(x.size());
  const double n = static_cast<double>(x.n());
  for (std::size_t j = 0; j < x.size(); ++j) out.probs[j] = static_cast<double>(x[j]) / n;
  return out;
}

// Empirical estimator sorted into nonincreasing order.
inline Pmf rearrangement_estimate(const FrequencyData& x) {
  return Pmf{rearrange_decreasing(empirical(x).probs), 0.0};
}

// Grenander estimator: nonincreasing least-squares projection of the
// empirical estimator. Computed on the raw counts and scaled by 1/n.
inline Pmf grenander(const FrequencyData& x) {
  return Pmf{isotonic_decreasing_counts(x.counts(), static_cast<double>(x.n())).values, 0.0};
}

// l2-minimax estimator on {0..t_n}: alpha * uniform + (1 - alpha) * empirical
// with alpha = sqrt(n) / (n + sqrt(n)).
inline Pmf minimax(const FrequencyData& x) {
  const double n = static_cast<double>(x.n());
  const double root = std::sqrt(n);
  const double alpha = root / (n + root);
  const double uniform = 1.0 / static_cast<double>(x.size());
  Pmf out = empirical(x);
  for (double& p : out.probs) p = alpha * uniform + (1.0 - alpha) * p;
  return out;
}

inline Pmf shape_estimate(const FrequencyData& x, ShapeKind kind) {
  return kind == ShapeKind::Grenander ? grenander(x) : rearrangement_estimate(x);
}

// Leave-one-out diagonals. For each j with x_j > 0, pi_j is coordinate j of
// the empirical estimator refit without one observation at j, and shape_loo_j
// is coordinate j of the shape estimator refit the same way. Entries with
// x_j = 0 are zero.
struct LooVectors {
  std::vector<double> pi;
  std::vector<double> shape_loo;
  ShapeKind kind = ShapeKind::Grenander;
};

namespace detail {

inline void require_loo(const FrequencyData& x) {
  if (x.n() < 2) {
    throw InsufficientSampleError("leave-one-out needs at least two observations");
  }
}

inline std::vector<double> loo_pi(const FrequencyData& x) {
  std::vector<double> pi(x.size(), 0.0);
  const double denom = static_cast<double>(x.n() - 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] > 0) pi[j] = static_cast<double>(x[j] - 1) / denom;
  }
  return pi;
}

}  // namespace detail

// Direct construction: refits the shape estimator once per support point,
// O(D^2) for the Grenander kind and O(D^2 log D) for rearrangement.
inline LooVectors loo_vectors(const FrequencyData& x, ShapeKind kind) {
  detail::require_loo(x);
  LooVectors out{detail::loo_pi(x), std::vector<double>(x.size(), 0.0), kind};
  const double denom = static_cast<double>(x.n() - 1);
  std::vector<double> modified(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0) continue;
    for (std::size_t k = 0; k < x.size(); ++k) {
      modified[k] = static_cast<double>(x[k] - (k == j ? 1 : 0)) / denom;
    }
    out.shape_loo[j] = kind == ShapeKind::Grenander ? isotonic_decreasing(modified).values[j]
                                                    : rearrange_decreasing(modified)[j];
  }
  return out;
}

namespace detail {

// Pool-adjacent-violators stacks over integer counts, stored persistently so
// the stack after every prefix (or suffix) stays addressable.
class PersistentPava {
 public:
  struct Node {
    std::int64_t sum;
    std::int64_t len;
    std::int32_t next;  // block below on the stack, -1 at the bottom
  };

  static bool mean_le(std::int64_t sa, std::int64_t la, std::int64_t sb, std::int64_t lb) {
    return static_cast<__int128>(sa) * lb <= static_cast<__int128>(sb) * la;
  }

  // tops()[k]: stack after consuming counts[0..k] left to right (blocks grow
  // leftwards from the top, means strictly increasing towards the bottom).
  static PersistentPava prefixes(std::span<const std::int64_t> counts) {
    PersistentPava p;
    p.tops_.resize(counts.size());
    std::int32_t top = -1;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      Node cur{counts[k], 1, top};
      while (cur.next != -1 && mean_le(p.nodes_[cur.next].sum, p.nodes_[cur.next].len,
                                       cur.sum, cur.len)) {
        const Node& below = p.nodes_[cur.next];
        cur = {cur.sum + below.sum, cur.len + below.len, below.next};
      }
      p.nodes_.push_back(cur);
      top = static_cast<std::int32_t>(p.nodes_.size() - 1);
      p.tops_[k] = top;
    }
    return p;
  }

  // tops()[k]: stack after consuming counts[k..D-1] right to left.
  static PersistentPava suffixes(std::span<const std::int64_t> counts) {
    PersistentPava p;
    p.tops_.resize(counts.size());
    std::int32_t top = -1;
    for (std::size_t k = counts.size(); k-- > 0;) {
      Node cur{counts[k], 1, top};
      while (cur.next != -1 && mean_le(cur.sum, cur.len, p.nodes_[cur.next].sum,
                                       p.nodes_[cur.next].len)) {
        const Node& below = p.nodes_[cur.next];
        cur = {cur.sum + below.sum, cur.len + below.len, below.next};
      }
      p.nodes_.push_back(cur);
      top = static_cast<std::int32_t>(p.nodes_.size() - 1);
      p.tops_[k] = top;
    }
    return p;
  }

  const Node& node(std::int32_t i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::int32_t top_at(std::size_t k) const { return tops_[k]; }

 private:
  std::vector<Node> nodes_;
  std::vector<std::int32_t> tops_;
};

}  // namespace detail

// Same output as loo_vectors() without refitting from scratch.
//
// Grenander: pooling order does not change the projection, so the prefix left
// of j and the suffix right of j can be pooled independently (their stacks are
// computed once for all j). Only the block containing j is then re-pooled
// against the two neighbouring stacks.
//
// Rearrangement: removing one observation at j lowers the last occurrence of
// the value x_j in the sorted counts by one, which keeps the order intact; the
// position is found by binary search.
inline LooVectors loo_vectors_fast(const FrequencyData& x, ShapeKind kind) {
  detail::require_loo(x);
  LooVectors out{detail::loo_pi(x), std::vector<double>(x.size(), 0.0), kind};
  const auto& counts = x.counts();
  const std::size_t size = counts.size();
  const double denom = static_cast<double>(x.n() - 1);

  if (kind == ShapeKind::Rearrangement) {
    std::vector<std::int64_t> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>{});
    for (std::size_t j = 0; j < size; ++j) {
      if (counts[j] == 0) continue;
      const auto last =
          std::upper_bound(sorted.begin(), sorted.end(), counts[j], std::greater<>{}) -
          sorted.begin() - 1;
      const std::int64_t value =
          sorted[j] - (static_cast<std::ptrdiff_t>(j) == last ? 1 : 0);
      out.shape_loo[j] = static_cast<double>(value) / denom;
    }
    return out;
  }

  using detail::PersistentPava;
  const auto left = PersistentPava::prefixes(counts);
  const auto right = PersistentPava::suffixes(counts);
  for (std::size_t j = 0; j < size; ++j) {
    if (counts[j] == 0) continue;
    std::int64_t sum = counts[j] - 1;
    std::int64_t len = 1;
    std::int32_t l = j > 0 ? left.top_at(j - 1) : -1;
    std::int32_t r = j + 1 < size ? right.top_at(j + 1) : -1;
    for (bool merged = true; merged;) {
      merged = false;
      if (l != -1 && PersistentPava::mean_le(left.node(l).sum, left.node(l).len, sum, len)) {
        sum += left.node(l).sum;
        len += left.node(l).len;
        l = left.node(l).next;
        merged = true;
      }
      if (r != -1 && PersistentPava::mean_le(sum, len, right.node(r).sum, right.node(r).len)) {
        sum += right.node(r).sum;
        len += right.node(r).len;
        r = right.node(r).next;
        merged = true;
      }
    }
    out.shape_loo[j] = static_cast<double>(sum) / (static_cast<double>(len) * denom);
  }
  return out;
}

// Leave-one-out least-squares cross-validation weight and the coefficients of
// CV(beta) = a_n beta^2 - 2 b_n beta + const.
struct CvBeta {
  double beta_hat = 0.0;
  double a_n = 0.0;
  double b_n = 0.0;
};

// a_n at or below this is treated as zero (shape estimate equals empirical).
inline constexpr double kZeroCurvature = 1e-15;

// Minimizer of a beta^2 - 2 b beta over [0, 1]; 0 when a vanishes.
inline double clamp_beta(double a_n, double b_n) {
  if (a_n <= kZeroCurvature) return 0.0;
  if (b_n >= 0.0 && b_n <= a_n) return b_n / a_n;
  if (b_n > a_n) return 1.0;
  return 0.0;
}

inline CvBeta cv_beta_from(std::span<const double> base, std::span<const double> shape,
                           const LooVectors& loo) {
  CompensatedSum a;
  CompensatedSum b;
  for (std::size_t j = 0; j < base.size(); ++j) {
    const double gap = shape[j] - base[j];
    a.add(gap * gap);
    b.add(base[j] * (loo.shape_loo[j] - loo.pi[j]));
    b.add(-base[j] * gap);
  }
  CvBeta out{0.0, a.value(), b.value()};
  out.beta_hat = clamp_beta(out.a_n, out.b_n);
  return out;
}

inline CvBeta cv_beta(const FrequencyData& x, ShapeKind kind) {
  detail::require_loo(x);
  const Pmf base = empirical(x);
  const Pmf shape = shape_estimate(x, kind);
  return cv_beta_from(base.probs, shape.probs, loo_vectors_fast(x, kind));
}

struct StackedFit {
  double beta_hat = 0.0;
  double a_n = 0.0;
  double b_n = 0.0;
  Pmf base;      // empirical
  Pmf shape;     // rearrangement or Grenander
  Pmf estimate;  // beta_hat * shape + (1 - beta_hat) * base
  ShapeKind kind = ShapeKind::Grenander;
  // n = 1: no leave-one-out weight exists; the estimate is the empirical one.
  bool single_observation = false;
};

inline StackedFit stacked(const FrequencyData& x, ShapeKind kind) {
  StackedFit fit;
  fit.kind = kind;
  fit.base = empirical(x);
  fit.shape = shape_estimate(x, kind);
  if (x.n() < 2) {
    fit.single_observation = true;
  } else {
    const CvBeta cv = cv_beta_from(fit.base.probs, fit.shape.probs, loo_vectors_fast(x, kind));
    fit.beta_hat = cv.beta_hat;
    fit.a_n = cv.a_n;
    fit.b_n = cv.b_n;
  }
  fit.estimate.probs.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    fit.estimate.probs[j] =
        fit.beta_hat * fit.shape.probs[j] + (1.0 - fit.beta_hat) * fit.base.probs[j];
  }
  return fit;
}

inline Pmf estimate(const FrequencyData& x, EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Empirical: return empirical(x);
    case EstimatorKind::Minimax: return minimax(x);
    case EstimatorKind::Rearrangement: return rearrangement_estimate(x);
    case EstimatorKind::Grenander: return grenander(x);
    case EstimatorKind::StackedRearrangement:
      return stacked(x, ShapeKind::Rearrangement).estimate;
    case EstimatorKind::StackedGrenander: return stacked(x, ShapeKind::Grenander).estimate;
  }
  return empirical(x);
}

}  // namespace stackpmf

#endif  // STACKPMF_ESTIMATORS_HPP_
