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
#ifndef STACKPMF_CONFIDENCE_BAND_HPP_
#define STACKPMF_CONFIDENCE_BAND_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stackpmf/error.hpp"
#include "stackpmf/parallel.hpp"
#include "stackpmf/pmf.hpp"
#include "stackpmf/rng.hpp"

namespace stackpmf {

inline constexpr double kThetaSumTolerance = 1e-6;

inline void validate_theta(std::span<const double> theta) {
  if (theta.empty()) throw InvalidPmfError("theta is empty");
  for (double t : theta) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw InvalidPmfError("theta has a negative or non-finite entry");
    }
  }
  if (std::abs(compensated_total(theta) - 1.0) > kThetaSumTolerance) {
    throw InvalidPmfError("theta does not sum to 1");
  }
}

// Gaussian limit process with covariance Sigma_ij = theta_i delta_ij -
// theta_i theta_j, drawn as Y_j = sqrt(theta_j) Z_j - theta_j sum_k
// sqrt(theta_k) Z_k. Z_j of draw r is a fixed function of (seed, r, j), so
// coordinates stay aligned across nearby theta vectors and any draw can be
// regenerated on its own. Coordinates with theta_j = 0 are identically 0.
class LimitProcessSampler {
 public:
  LimitProcessSampler(std::span<const double> theta, std::uint64_t seed)
      : theta_(theta.begin(), theta.end()), key_(Philox4x32::key_from(seed)) {
    validate_theta(theta);
    root_.resize(theta_.size());
    for (std::size_t j = 0; j < theta_.size(); ++j) root_[j] = std::sqrt(theta_[j]);
    for (std::size_t k = 0; 2 * k < theta_.size(); ++k) {
      const bool second = 2 * k + 1 < theta_.size() && theta_[2 * k + 1] > 0.0;
      if (theta_[2 * k] > 0.0 || second) active_pairs_.push_back(k);
    }
  }

  std::size_t dimension() const noexcept { return theta_.size(); }

  // Writes draw `index` of Y into y (size dimension()).
  void draw(std::uint64_t index, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    fill_scaled_normals(index, y);
    CompensatedSum s;
    for (std::size_t k : active_pairs_) {
      s.add(y[2 * k]);
      if (2 * k + 1 < y.size()) s.add(y[2 * k + 1]);
    }
    const double total = s.value();
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= theta_[j] * total;
  }

  // ||Y||_inf of draw `index`; scratch is resized as needed.
  double sup_norm(std::uint64_t index, std::vector<double>& scratch) const {
    scratch.assign(theta_.size(), 0.0);
    draw(index, scratch);
    double sup = 0.0;
    for (double v : scratch) sup = std::max(sup, std::abs(v));
    return sup;
  }

 private:
  // y_j = sqrt(theta_j) Z_j on active coordinates.
  void fill_scaled_normals(std::uint64_t index, std::span<double> y) const {
    for (std::size_t k : active_pairs_) {
      const auto [z0, z1] = normal_pair_at(key_, index, k);
      y[2 * k] = root_[2 * k] * z0;
      if (2 * k + 1 < y.size()) y[2 * k + 1] = root_[2 * k + 1] * z1;
    }
  }

  std::vector<double> theta_;
  std::vector<double> root_;
  std::vector<std::size_t> active_pairs_;
  Philox4x32::Key key_;
};

// `reps` independent draws of ||Y||_inf.
inline std::vector<double> sample_sup_norm(std::span<const double> theta, std::size_t reps,
                                           std::uint64_t seed, unsigned workers = 1) {
  if (reps < 1) throw ParameterDomainError("sample_sup_norm: reps must be >= 1");
  const LimitProcessSampler sampler(theta, seed);
  std::vector<double> draws(reps);
  parallel_chunks(reps, workers, std::max(1u, workers) * 4,
                  [&](std::size_t begin, std::size_t end) {
                    std::vector<double> scratch;
                    for (std::size_t r = begin; r < end; ++r) draws[r] = sampler.sup_norm(r, scratch);
                  });
  return draws;
}

// Smallest order statistic whose empirical CDF reaches 1 - alpha.
inline double quantile_higher(std::vector<double> draws, double alpha) {
  if (draws.empty()) throw EmptyInputError("quantile: no draws");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterDomainError("alpha must lie in (0, 1)");
  const double target = (1.0 - alpha) * static_cast<double>(draws.size());
  auto rank = static_cast<std::size_t>(std::ceil(target * (1.0 - 1e-12)));
  rank = std::clamp<std::size_t>(rank, 1, draws.size());
  auto nth = draws.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(draws.begin(), nth, draws.end());
  return *nth;
}

// Monte-Carlo estimate of q_alpha with P(||Y||_inf > q_alpha) = alpha.
inline double quantile_q_alpha(std::span<const double> theta, double alpha, std::size_t reps,
                               std::uint64_t seed, unsigned workers = 1) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterDomainError("alpha must lie in (0, 1)");
  if (reps < 100) throw ParameterDomainError("quantile_q_alpha: reps must be >= 100");
  return quantile_higher(sample_sup_norm(theta, reps, seed, workers), alpha);
}

// Global band [max(c_j - q/sqrt(n), 0), c_j + q/sqrt(n)].
struct ConfidenceBand {
  std::vector<double> center;
  std::vector<double> lower;
  std::vector<double> upper;
  double q_hat = 0.0;
  std::int64_t n = 1;
  double alpha = 0.0;
  std::size_t mc_reps = 0;
  std::uint64_t seed = 0;

  double half_width() const { return q_hat / std::sqrt(static_cast<double>(n)); }

  // Bounds at j; past the stored range the center is 0.
  double lower_at(std::size_t j) const { return j < lower.size() ? lower[j] : 0.0; }
  double upper_at(std::size_t j) const { return j < upper.size() ? upper[j] : half_width(); }
};

inline ConfidenceBand band(std::span<const double> center, std::int64_t n, double q_hat) {
  if (n < 1) throw ParameterDomainError("band: n must be >= 1");
  if (!(q_hat >= 0.0)) throw ParameterDomainError("band: q_hat must be >= 0");
  ConfidenceBand out;
  out.center.assign(center.begin(), center.end());
  out.q_hat = q_hat;
  out.n = n;
  const double half = out.half_width();
  out.lower.resize(center.size());
  out.upper.resize(center.size());
  for (std::size_t j = 0; j < center.size(); ++j) {
    out.lower[j] = std::max(center[j] - half, 0.0);
    out.upper[j] = center[j] + half;
  }
  return out;
}

// Band around `center` with q_hat estimated from the plug-in limit process
// Sigma(center).
inline ConfidenceBand plug_in_band(std::span<const double> center, std::int64_t n, double alpha,
                                   std::size_t mc_reps, std::uint64_t seed,
                                   unsigned workers = 1) {
  ConfidenceBand out = band(center, n, quantile_q_alpha(center, alpha, mc_reps, seed, workers));
  out.alpha = alpha;
  out.mc_reps = mc_reps;
  out.seed = seed;
  return out;
}

// True when lower_j <= truth_j <= upper_j over the union of both index ranges.
inline bool covers(const ConfidenceBand& b, std::span<const double> truth) {
  const std::size_t len = std::max(b.center.size(), truth.size());
  for (std::size_t j = 0; j < len; ++j) {
    const double p = j < truth.size() ? truth[j] : 0.0;
    if (p < b.lower_at(j) || p > b.upper_at(j)) return false;
  }
  return true;
}

}  // namespace stackpmf

#endif  // STACKPMF_CONFIDENCE_BAND_HPP_
