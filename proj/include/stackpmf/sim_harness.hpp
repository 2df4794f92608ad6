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
#ifndef STACKPMF_SIM_HARNESS_HPP_
#define STACKPMF_SIM_HARNESS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "stackpmf/confidence_band.hpp"
#include "stackpmf/error.hpp"
#include "stackpmf/estimators.hpp"
#include "stackpmf/models.hpp"
#include "stackpmf/parallel.hpp"
#include "stackpmf/pmf.hpp"
#include "stackpmf/rng.hpp"

namespace stackpmf {

// Truth vectors used for losses and coverage are truncated at this mass.
inline constexpr double kTruthTruncation = 1e-12;

struct ExperimentConfig {
  ModelSpec model;
  // One entry for loss, coverage and QQ runs; the sample-size grid for risk
  // curves.
  std::vector<std::int64_t> n_grid;
  std::size_t reps = 1000;
  std::vector<EstimatorKind> estimators;
  std::vector<Norm> norms{Norm::L1, Norm::L2};
  double alpha = 0.05;
  std::size_t band_mc_reps = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

inline void validate(const ExperimentConfig& cfg) {
  validate(cfg.model);
  if (cfg.n_grid.empty()) throw ParameterDomainError("experiment: empty sample-size grid");
  for (auto n : cfg.n_grid) {
    if (n < 1) throw ParameterDomainError("experiment: n must be >= 1");
  }
  if (cfg.reps < 1) throw ParameterDomainError("experiment: reps must be >= 1");
  if (cfg.estimators.empty()) throw ParameterDomainError("experiment: no estimators selected");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw ParameterDomainError("experiment: alpha must lie in (0, 1)");
  }
}

// Per-replication losses, indexed (rep, estimator, norm).
struct LossTable {
  std::size_t reps = 0;
  std::vector<EstimatorKind> estimators;
  std::vector<Norm> norms;
  std::vector<double> values;

  double& at(std::size_t rep, std::size_t est, std::size_t norm) {
    return values[(rep * estimators.size() + est) * norms.size() + norm];
  }
  double at(std::size_t rep, std::size_t est, std::size_t norm) const {
    return values[(rep * estimators.size() + est) * norms.size() + norm];
  }

  double mean(std::size_t est, std::size_t norm) const {
    CompensatedSum s;
    for (std::size_t r = 0; r < reps; ++r) s.add(at(r, est, norm));
    return s.value() / static_cast<double>(reps);
  }

  // Monte-Carlo standard error of mean(est, norm).
  double standard_error(std::size_t est, std::size_t norm) const {
    if (reps < 2) return 0.0;
    const double m = mean(est, norm);
    CompensatedSum s;
    for (std::size_t r = 0; r < reps; ++r) {
      const double d = at(r, est, norm) - m;
      s.add(d * d);
    }
    return std::sqrt(s.value() / static_cast<double>(reps - 1) / static_cast<double>(reps));
  }
};

struct RiskEstimate {
  std::int64_t n = 0;
  EstimatorKind estimator = EstimatorKind::Empirical;
  double risk = 0.0;  // n * mean squared l2 loss
  double standard_error = 0.0;
};

struct CoverageEstimate {
  std::int64_t n = 0;
  EstimatorKind estimator = EstimatorKind::Empirical;
  double coverage = 0.0;
  double standard_error = 0.0;
  std::size_t reps = 0;
  double mean_q_hat = 0.0;
};

struct QqSeries {
  EstimatorKind estimator = EstimatorKind::Empirical;
  std::size_t coord = 0;
  std::vector<double> samples;      // sqrt(n) (est_coord - p_coord), replication order
  std::vector<double> sorted;       // samples, ascending
  std::vector<double> theoretical;  // standard-normal quantiles times the sample sd
  double sample_variance = 0.0;
};

struct TimingRow {
  std::int64_t s = 0;
  std::size_t runs = 0;
  double cv_rearrangement_seconds = 0.0;
  double cv_grenander_seconds = 0.0;
  double quantile_seconds = 0.0;
};

struct ExperimentResult {
  LossTable losses;
  std::vector<RiskEstimate> risks;
  std::vector<CoverageEstimate> coverage;
  std::vector<QqSeries> qq;
  std::vector<TimingRow> timings;
  double elapsed_seconds = 0.0;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::uint64_t replication_seed(std::uint64_t seed, std::size_t rep) {
  return derive_seed(seed, rep);
}

inline std::uint64_t band_seed(std::uint64_t seed, std::size_t rep) {
  return derive_seed(seed, rep, "band");
}

inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  CompensatedSum s;
  for (double x : v) s.add(x);
  const double mean = s.value() / static_cast<double>(v.size());
  CompensatedSum ss;
  for (double x : v) ss.add((x - mean) * (x - mean));
  return ss.value() / static_cast<double>(v.size() - 1);
}

inline std::int64_t single_n(const ExperimentConfig& cfg) {
  if (cfg.n_grid.size() != 1) {
    throw ParameterDomainError("experiment: expected exactly one sample size");
  }
  return cfg.n_grid.front();
}

}  // namespace detail

// Losses ||estimate - truth||_k of every selected estimator and norm, one row
// per replication.
inline ExperimentResult run_loss_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.norms.empty()) throw ParameterDomainError("experiment: no norms selected");
  const detail::Stopwatch clock;
  const std::int64_t n = detail::single_n(cfg);
  const Sampler sampler(cfg.model);
  const Pmf truth = pmf_truncate(cfg.model, kTruthTruncation);

  ExperimentResult result;
  LossTable& table = result.losses;
  table.reps = cfg.reps;
  table.estimators = cfg.estimators;
  table.norms = cfg.norms;
  table.values.assign(cfg.reps * cfg.estimators.size() * cfg.norms.size(), 0.0);
  parallel_for(cfg.reps, cfg.workers, [&](std::size_t rep) {
    const FrequencyData x = sampler.draw(n, detail::replication_seed(cfg.seed, rep));
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
      const Pmf est = estimate(x, cfg.estimators[e]);
      for (std::size_t k = 0; k < cfg.norms.size(); ++k) {
        table.at(rep, e, k) = distance(est.probs, truth.probs, cfg.norms[k]);
      }
    }
  });
  result.elapsed_seconds = clock.seconds();
  return result;
}

// Scaled risk n * E||estimate - truth||_2^2 along the sample-size grid.
inline ExperimentResult run_risk_curve(const ExperimentConfig& cfg) {
  validate(cfg);
  const detail::Stopwatch clock;
  const Sampler sampler(cfg.model);
  const Pmf truth = pmf_truncate(cfg.model, kTruthTruncation);
  const std::size_t n_est = cfg.estimators.size();

  ExperimentResult result;
  for (const std::int64_t n : cfg.n_grid) {
    const std::uint64_t grid_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n), "risk");
    std::vector<double> squared(cfg.reps * n_est, 0.0);
    parallel_for(cfg.reps, cfg.workers, [&](std::size_t rep) {
      const FrequencyData x = sampler.draw(n, detail::replication_seed(grid_seed, rep));
      for (std::size_t e = 0; e < n_est; ++e) {
        const double d = distance(estimate(x, cfg.estimators[e]).probs, truth.probs, Norm::L2);
        squared[rep * n_est + e] = d * d;
      }
    });
    for (std::size_t e = 0; e < n_est; ++e) {
      std::vector<double> scaled(cfg.reps);
      for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
        scaled[rep] = static_cast<double>(n) * squared[rep * n_est + e];
      }
      const double mean = compensated_total(scaled) / static_cast<double>(cfg.reps);
      const double se =
          std::sqrt(detail::sample_variance(scaled) / static_cast<double>(cfg.reps));
      result.risks.push_back({n, cfg.estimators[e], mean, se});
    }
  }
  result.elapsed_seconds = clock.seconds();
  return result;
}

// Proportion of replications whose plug-in global band contains the truth at
// every index (truth truncated at kTruthTruncation, zero beyond).
inline ExperimentResult run_coverage(const ExperimentConfig& cfg) {
  validate(cfg);
  const detail::Stopwatch clock;
  const std::int64_t n = detail::single_n(cfg);
  const Sampler sampler(cfg.model);
  const Pmf truth = pmf_truncate(cfg.model, kTruthTruncation);
  const std::size_t n_est = cfg.estimators.size();

  std::vector<char> hit(cfg.reps * n_est, 0);
  std::vector<double> q_hat(cfg.reps * n_est, 0.0);
  parallel_for(cfg.reps, cfg.workers, [&](std::size_t rep) {
    const FrequencyData x = sampler.draw(n, detail::replication_seed(cfg.seed, rep));
    const std::uint64_t mc_seed = detail::band_seed(cfg.seed, rep);
    for (std::size_t e = 0; e < n_est; ++e) {
      const Pmf center = estimate(x, cfg.estimators[e]);
      const ConfidenceBand b = plug_in_band(center.probs, n, cfg.alpha, cfg.band_mc_reps, mc_seed);
      hit[rep * n_est + e] = covers(b, truth.probs) ? 1 : 0;
      q_hat[rep * n_est + e] = b.q_hat;
    }
  });

  ExperimentResult result;
  for (std::size_t e = 0; e < n_est; ++e) {
    std::size_t covered = 0;
    CompensatedSum q_sum;
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
      covered += static_cast<std::size_t>(hit[rep * n_est + e]);
      q_sum.add(q_hat[rep * n_est + e]);
    }
    const double reps = static_cast<double>(cfg.reps);
    const double c = static_cast<double>(covered) / reps;
    result.coverage.push_back(
        {n, cfg.estimators[e], c, std::sqrt(c * (1.0 - c) / reps), cfg.reps, q_sum.value() / reps});
  }
  result.elapsed_seconds = clock.seconds();
  return result;
}

// sqrt(n) (estimate_coord - p_coord) over replications, per estimator, with
// standard-normal reference quantiles at plotting positions (i + 1/2) / reps.
inline ExperimentResult run_qq_samples(const ExperimentConfig& cfg, std::size_t coord) {
  validate(cfg);
  const detail::Stopwatch clock;
  const std::int64_t n = detail::single_n(cfg);
  const Sampler sampler(cfg.model);
  const Pmf truth = pmf_truncate(cfg.model, kTruthTruncation);
  if (coord >= truth.size()) throw ParameterDomainError("qq: coordinate outside the support");
  const std::size_t n_est = cfg.estimators.size();
  const double root_n = std::sqrt(static_cast<double>(n));

  std::vector<double> values(cfg.reps * n_est, 0.0);
  parallel_for(cfg.reps, cfg.workers, [&](std::size_t rep) {
    const FrequencyData x = sampler.draw(n, detail::replication_seed(cfg.seed, rep));
    for (std::size_t e = 0; e < n_est; ++e) {
      const Pmf est = estimate(x, cfg.estimators[e]);
      values[rep * n_est + e] = root_n * (est.at_or_zero(coord) - truth[coord]);
    }
  });

  const boost::math::normal_distribution<double> standard;
  ExperimentResult result;
  for (std::size_t e = 0; e < n_est; ++e) {
    QqSeries series;
    series.estimator = cfg.estimators[e];
    series.coord = coord;
    series.samples.resize(cfg.reps);
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) series.samples[rep] = values[rep * n_est + e];
    series.sorted = series.samples;
    std::sort(series.sorted.begin(), series.sorted.end());
    series.sample_variance = detail::sample_variance(series.samples);
    const double sd = std::sqrt(series.sample_variance);
    series.theoretical.resize(cfg.reps);
    for (std::size_t i = 0; i < cfg.reps; ++i) {
      const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.reps);
      series.theoretical[i] = sd * boost::math::quantile(standard, u);
    }
    result.qq.push_back(std::move(series));
  }
  result.elapsed_seconds = clock.seconds();
  return result;
}

// Frequency vector x'_j = j + 1, j = 0..s: every isotonic block pools.
inline FrequencyData worst_case_counts(std::int64_t s) {
  if (s < 0) throw ParameterDomainError("worst case: s must be >= 0");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(s) + 1);
  std::iota(counts.begin(), counts.end(), std::int64_t{1});
  return FrequencyData(std::move(counts));
}

// Mean wall-clock seconds over `runs` of cv_beta on worst_case_counts(s) for
// both shape kinds, and of quantile_q_alpha with theta = T^d(s) and
// `mc_draws` draws.
inline std::vector<TimingRow> worst_case_timing(const std::vector<std::int64_t>& s_grid,
                                                std::size_t runs,
                                                std::size_t mc_draws = 100000,
                                                unsigned workers = 1, std::uint64_t seed = 0) {
  if (runs < 1) throw ParameterDomainError("timing: runs must be >= 1");
  std::vector<TimingRow> rows;
  for (const std::int64_t s : s_grid) {
    if (s < 1) throw ParameterDomainError("timing: s must be >= 1");
    const FrequencyData x = worst_case_counts(s);
    const Pmf theta = pmf_truncate(TriangularDecreasing{s}, kTruthTruncation);
    TimingRow row{s, runs, 0.0, 0.0, 0.0};
    double sink = 0.0;
    for (std::size_t run = 0; run < runs; ++run) {
      {
        const detail::Stopwatch clock;
        sink += cv_beta(x, ShapeKind::Rearrangement).beta_hat;
        row.cv_rearrangement_seconds += clock.seconds();
      }
      {
        const detail::Stopwatch clock;
        sink += cv_beta(x, ShapeKind::Grenander).beta_hat;
        row.cv_grenander_seconds += clock.seconds();
      }
      {
        const detail::Stopwatch clock;
        sink += quantile_q_alpha(theta.probs, 0.05, mc_draws, derive_seed(seed, run), workers);
        row.quantile_seconds += clock.seconds();
      }
    }
    if (!std::isfinite(sink)) throw Error("timing: non-finite result");
    const double r = static_cast<double>(runs);
    row.cv_rearrangement_seconds /= r;
    row.cv_grenander_seconds /= r;
    row.quantile_seconds /= r;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stackpmf

#endif  // STACKPMF_SIM_HARNESS_HPP_
