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
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails. Criterion numbers may be passed as
// arguments to run a subset. With --known-red LIST the exit status ignores
// failures of the listed criteria; their FAIL lines are still printed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cli_app.hpp"
#include "oracles.hpp"
#include "stackpmf/stackpmf.hpp"

namespace {

using namespace stackpmf;
using EK = EstimatorKind;

constexpr std::uint64_t kSeed = 20261017;
constexpr ShapeKind kKinds[] = {ShapeKind::Rearrangement, ShapeKind::Grenander};

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("violated: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Pmf truth_of(const std::string& name) {
  return pmf_truncate(builtin_models().at(name), 1e-12);
}

// 1. CV(beta) closed form against the direct criterion.
Verdict cv_algebra() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed);
  double worst_identity = 0, worst_excess = 0;
  int zero_curvature = 0, minimized = 0;
  for (int t = 0; t < 100; ++t) {
    const auto x = oracle::random_counts(rng, 30, 2, 500);
    const FrequencyData data(x);
    for (auto kind : kKinds) {
      const CvBeta cv = cv_beta(data, kind);
      const oracle::CrossValidation crit(x, kind == ShapeKind::Grenander);
      const double c0 = crit(0.0), at_hat = crit(cv.beta_hat);
      double grid_min = std::numeric_limits<double>::infinity();
      for (int k = 0; k <= 1000; ++k) {
        const double beta = k / 1000.0, value = crit(beta);
        grid_min = std::min(grid_min, value);
        worst_identity = std::max(
            worst_identity, std::abs((value - c0) - (cv.a_n * beta * beta - 2 * cv.b_n * beta)));
      }
      if (cv.a_n > kZeroCurvature) {
        ++minimized;
        worst_excess = std::max(worst_excess, at_hat - grid_min);
      } else {
        // beta_hat = 0 by convention; the stacked estimate cannot depend on beta.
        ++zero_curvature;
        v.require(cv.beta_hat == 0.0 &&
                      shape_estimate(data, kind).probs == empirical(data).probs,
                  "a_n = 0 case with shape fit != empirical");
      }
    }
  }
  const double elapsed = seconds_since(start);
  v.require(worst_identity <= 1e-10, "quadratic identity within 1e-10");
  v.require(worst_excess <= 1e-12, "beta_hat minimizes CV on the grid");
  v.require(elapsed < 10.0, "runtime < 10 s");
  v.note("max |CV - CV(0) - (a b^2 - 2 b b)| = " + fmt("%.2e", worst_identity));
  v.note("CV(beta_hat) - grid min <= " + fmt("%.2e", worst_excess) + " over " +
         std::to_string(minimized) + " fits with a_n > 0");
  v.note(std::to_string(zero_curvature) + " fits with a_n = 0 (estimate beta-invariant)");
  v.note(fmt("%.2f s", elapsed));
  return v;
}

// 2. PAVA against exhaustive partitions and literal maximum upper sets.
Verdict pava_oracles() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> unit(-1, 1);
  std::uniform_int_distribution<int> small(0, 4);
  double worst_small = 0, worst_large = 0;
  for (int t = 0; t < 1100; ++t) {
    const bool large = t >= 1000;
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, large ? 200 : 8)(rng);
    std::vector<double> x(len);
    for (auto& e : x) e = t % 2 ? unit(rng) : small(rng);
    const auto fit = isotonic_decreasing(x).values;
    if (large) {
      worst_large = std::max(worst_large, oracle::max_abs_diff(fit, oracle::maximum_upper_sets(x).values));
    } else {
      worst_small = std::max(worst_small, oracle::max_abs_diff(fit, oracle::brute_force_isotonic(x)));
    }
  }
  const double elapsed = seconds_since(start);
  v.require(worst_small <= 1e-10, "exhaustive oracle within 1e-10");
  v.require(worst_large <= 1e-10, "upper-sets oracle within 1e-10");
  v.require(elapsed < 5.0, "runtime < 5 s");
  v.note("1000 vectors len <= 8: max diff " + fmt("%.2e", worst_small));
  v.note("100 vectors len <= 200: max diff " + fmt("%.2e", worst_large));
  v.note(fmt("%.2f s", elapsed));
  return v;
}

// 3. Leave-one-out inequalities.
Verdict loo_inequalities() {
  Verdict v;
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_int_distribution<std::int64_t> n_max(2, 10000);
  long violations = 0, needed_rounding_slack = 0, checks = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto x = oracle::random_counts(rng, 60, 2, n_max(rng));
    const FrequencyData data(x);
    const double n = static_cast<double>(data.n());
    const Pmf base = empirical(data);
    for (auto kind : kKinds) {
      const Pmf shape = shape_estimate(data, kind);
      const LooVectors loo = loo_vectors_fast(data, kind);
      for (std::size_t j = 0; j < x.size(); ++j) {
        checks += 2;
        if (loo.pi[j] > base[j]) ++violations;
        // Compare (n - 1) * loo against n * shape, both exact up to one
        // rounding each; allow 1e-14 relative for that rounding only.
        const long double lhs = static_cast<long double>(loo.shape_loo[j]) * (n - 1);
        const long double rhs = static_cast<long double>(shape[j]) * n;
        if (lhs > rhs) {
          ++needed_rounding_slack;
          if (lhs > rhs * (1 + 1e-14L)) ++violations;
        }
      }
    }
  }
  v.require(violations == 0, "zero violations");
  v.note(std::to_string(checks) + " inequalities over 10^4 inputs, " + std::to_string(violations) +
         " violations (" + std::to_string(needed_rounding_slack) + " within rounding)");
  return v;
}

// 4. Stacked never worse than empirical for decreasing truths.
Verdict error_reduction() {
  Verdict v;
  long checks = 0, violations = 0;
  double worst = -1;
  for (const char* name : {"M1", "M2", "M3", "M4"}) {
    const ModelSpec model = builtin_models().at(name);
    const Pmf truth = truth_of(name);
    for (std::int64_t n : {20, 300}) {
      for (std::uint64_t rep = 0; rep < 200; ++rep) {
        const FrequencyData x = sample(model, n, derive_seed(kSeed, rep, name));
        const Pmf e = empirical(x);
        for (auto kind : kKinds) {
          const Pmf s = stacked(x, kind).estimate;
          for (auto norm : {Norm::L1, Norm::L2, Norm::Linf}) {
            const double gap = distance(s.probs, truth.probs, norm) - distance(e.probs, truth.probs, norm);
            worst = std::max(worst, gap);
            ++checks;
            if (gap > 1e-12) ++violations;
          }
        }
      }
    }
  }
  v.require(violations == 0, "every replication");
  v.note(std::to_string(checks) + " comparisons, max (stacked - empirical) loss " + fmt("%.2e", worst));
  return v;
}

// 5. Coverage reproduction.
Verdict coverage_cells() {
  Verdict v;
  struct Cell {
    const char* model;
    std::int64_t n;
    std::vector<EK> est;
    std::vector<double> reference;
  };
  const Cell cells[] = {{"M1", 1000, {EK::Empirical, EK::StackedGrenander}, {0.945, 0.998}},
                        {"M5", 1000, {EK::Empirical}, {0.953}},
                        {"M4", 5000, {EK::StackedGrenander}, {0.959}}};
  for (const auto& c : cells) {
    ExperimentConfig cfg;
    cfg.model = builtin_models().at(c.model);
    cfg.n_grid = {c.n};
    cfg.reps = 1000;
    cfg.estimators = c.est;
    cfg.alpha = 0.05;
    cfg.band_mc_reps = 100000;
    cfg.seed = kSeed;
    const auto r = run_coverage(cfg);
    for (std::size_t e = 0; e < c.est.size(); ++e) {
      const auto& cov = r.coverage[e];
      const bool ok = std::abs(cov.coverage - c.reference[e]) <= 0.025;
      v.require(ok, std::string("(") + short_name(c.est[e]) + ", " + c.model + ")");
      v.note(std::string("(") + short_name(c.est[e]) + ", " + c.model + ", n=" + std::to_string(c.n) +
             ") " + fmt("%.3f", cov.coverage) + " vs " + fmt("%.3f", c.reference[e]) + " (se " +
             fmt("%.3f", cov.standard_error) + ")");
    }
    v.note(std::string(c.model) + fmt(" %.0f s", r.elapsed_seconds));
  }
  return v;
}

// 6. Empirical risk against 1 - sum p_j^2.
Verdict empirical_risk() {
  Verdict v;
  for (const auto& [name, model] : builtin_models()) {
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.n_grid = {2000};
    cfg.reps = 2000;
    cfg.estimators = {EK::Empirical};
    cfg.seed = kSeed;
    const auto r = run_risk_curve(cfg).risks[0];
    double sq = 0;
    for (double p : truth_of(name).probs) sq += p * p;
    const double z = (r.risk - (1 - sq)) / r.standard_error;
    v.require(std::abs(z) <= 3, name);
    v.note(name + fmt(" %.4f", r.risk) + fmt(" vs %.4f", 1 - sq) + fmt(" (z=%.2f)", z));
  }
  return v;
}

// 7. Mean l2 loss orderings at n = 300.
Verdict loss_orderings() {
  Verdict v;
  const std::vector<EK> est{EK::Empirical, EK::Minimax, EK::StackedRearrangement, EK::StackedGrenander};
  for (const char* name : {"M2", "M3", "M5", "M6", "M7"}) {
    ExperimentConfig cfg;
    cfg.model = builtin_models().at(name);
    cfg.n_grid = {300};
    cfg.reps = 1000;
    cfg.estimators = est;
    cfg.norms = {Norm::L2};
    cfg.seed = kSeed;
    const auto t = run_loss_experiment(cfg).losses;
    const bool decreasing = std::string(name) <= "M4";
    std::vector<std::size_t> rivals{0, 1};
    if (decreasing) rivals.push_back(2);
    for (std::size_t rival : rivals) {
      std::vector<double> diff(t.reps);
      for (std::size_t r = 0; r < t.reps; ++r) diff[r] = t.at(r, rival, 0) - t.at(r, 3, 0);
      double mean = 0, ss = 0;
      for (double d : diff) mean += d;
      mean /= static_cast<double>(t.reps);
      for (double d : diff) ss += (d - mean) * (d - mean);
      const double se = std::sqrt(ss / static_cast<double>(t.reps - 1) / static_cast<double>(t.reps));
      const std::string label = std::string(name) + " sG<" + short_name(est[rival]);
      v.require(mean > 2 * se, label);
      v.note(label + fmt(" margin %.2f SE", mean / se));
    }
  }
  return v;
}

// 8. Limit-process sampler covariance and two-point quantile.
Verdict sampler_checks() {
  Verdict v;
  for (const auto& theta : {truth_of("M1").probs, std::vector<double>{0.5, 0.5}}) {
    const std::size_t d = theta.size();
    const LimitProcessSampler sampler(theta, kSeed);
    std::vector<double> y(d), sum(d, 0.0), cross(d * d, 0.0);
    const std::size_t reps = 1000000;
    for (std::size_t r = 0; r < reps; ++r) {
      sampler.draw(r, y);
      for (std::size_t i = 0; i < d; ++i) {
        sum[i] += y[i];
        for (std::size_t j = 0; j < d; ++j) cross[i * d + j] += y[i] * y[j];
      }
    }
    double worst = 0;
    const double m = static_cast<double>(reps);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const double cov = cross[i * d + j] / m - sum[i] / m * sum[j] / m;
        worst = std::max(worst, std::abs(cov - oracle::limit_covariance(theta, i, j)));
      }
    }
    v.require(worst <= 5e-3, "covariance, D=" + std::to_string(d));
    v.note("D=" + std::to_string(d) + " max entry error " + fmt("%.1e", worst));
  }
  const double q = quantile_q_alpha(std::vector<double>{0.5, 0.5}, 0.05, 1000000, kSeed);
  v.require(std::abs(q - 0.97998) <= 0.005, "q_0.05 for (0.5, 0.5)");
  v.note(fmt("q_0.05(0.5, 0.5) = %.5f vs 0.97998", q));
  return v;
}

// 9. Worst-case timings.
Verdict performance() {
  Verdict v;
  const FrequencyData worst = worst_case_counts(5000);
  for (auto kind : kKinds) {
    const auto start = std::chrono::steady_clock::now();
    volatile double sink = cv_beta(worst, kind).beta_hat;
    (void)sink;
    const double t = seconds_since(start);
    v.require(t <= 60, "cv_beta " + short_name(kind));
    v.note("cv_beta " + std::string(kind == ShapeKind::Grenander ? "SG" : "SR") + fmt(" %.4f s", t));
  }
  {
    const Pmf theta = pmf_truncate(TriangularDecreasing{5000}, 1e-12);
    const auto start = std::chrono::steady_clock::now();
    volatile double sink = quantile_q_alpha(theta.probs, 0.05, 100000, kSeed);
    (void)sink;
    const double t = seconds_since(start);
    v.require(t <= 60, "quantile s=5000");
    v.note(fmt("quantile s=5000 %.1f s", t));
  }
  // Exponent of a least-squares fit of log time against log s.
  std::vector<double> ls, lt;
  for (std::int64_t s : {500, 1000, 3000, 5000}) {
    const FrequencyData x = worst_case_counts(s);
    const int runs = 200;
    const auto start = std::chrono::steady_clock::now();
    double sink = 0;
    for (int r = 0; r < runs; ++r) {
      for (auto kind : kKinds) sink += loo_vectors_fast(x, kind).shape_loo.back();
    }
    const double t = seconds_since(start) / runs;
    if (!std::isfinite(sink)) v.require(false, "finite");
    ls.push_back(std::log(static_cast<double>(s)));
    lt.push_back(std::log(t));
    v.note("loo_fast s=" + std::to_string(s) + fmt(" %.2e s", t));
  }
  const double mx = (ls[0] + ls[1] + ls[2] + ls[3]) / 4, my = (lt[0] + lt[1] + lt[2] + lt[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (ls[i] - mx) * (lt[i] - my);
    sxx += (ls[i] - mx) * (ls[i] - mx);
  }
  const double exponent = sxy / sxx;
  v.require(exponent < 1.5, "sub-quadratic growth");
  v.note(fmt("growth exponent %.2f", exponent));
  return v;
}

// 10. Variance of scaled coordinate-1 samples.
Verdict qq_variance() {
  Verdict v;
  struct Case {
    std::string label;
    ModelSpec model;
    std::vector<EK> est;
  };
  std::vector<Case> cases;
  for (const auto& [name, model] : builtin_models()) {
    std::vector<EK> est{EK::Empirical};
    if (name >= "M5") est.insert(est.end(), {EK::StackedGrenander, EK::StackedRearrangement});
    cases.push_back({name, model, est});
  }
  cases.push_back({"T^d(11)", TriangularDecreasing{11},
                   {EK::Empirical, EK::StackedGrenander, EK::StackedRearrangement}});
  for (const auto& c : cases) {
    ExperimentConfig cfg;
    cfg.model = c.model;
    cfg.n_grid = {1000};
    cfg.reps = 1000;
    cfg.estimators = c.est;
    cfg.seed = kSeed;
    const double p1 = pmf_eval(c.model, 1);
    for (const auto& s : run_qq_samples(cfg, 1).qq) {
      const double ratio = s.sample_variance / (p1 * (1 - p1));
      const std::string label = c.label + " " + short_name(s.estimator);
      v.require(std::abs(ratio - 1) <= 0.15, label + fmt(" (ratio %.3f)", ratio));
      if (s.estimator != EK::Empirical) v.note(label + fmt(" %.3f", ratio));
    }
  }
  return v;
}

// 11. Byte-identical CSV across reruns and worker counts.
Verdict determinism() {
  Verdict v;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "stackpmf_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string counts = (root / "counts.txt").string();
  std::ofstream(counts) << "31 40 22 20 9 3 0 1\n";
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> commands{
      {{"simulate", "--model", "M2", "--n", "100", "--reps", "200", "--est", "e,mm,r,G,sr,sG",
        "--norm", "1,2,inf"},
       {"losses.csv", "loss_summary.csv"}},
      {{"simulate", "--risk", "--model", "M7", "--ngrid", "50,500", "--reps", "100"}, {"risk.csv"}},
      {{"simulate", "--coverage", "--model", "M4", "--n", "300", "--reps", "40", "--mc", "2000",
        "--est", "e,sG"},
       {"coverage.csv"}},
      {{"band", "--input", counts, "--kind", "sG", "--mc", "50000"}, {"band.csv"}},
      {{"qq", "--model", "M3", "--n", "500", "--reps", "300"}, {"qq.csv", "qq_summary.csv"}}};
  int compared = 0;
  for (std::size_t c = 0; c < commands.size(); ++c) {
    std::vector<std::string> reference;
    for (const char* workers : {"1", "4"}) {
      for (int rerun = 0; rerun < 2; ++rerun) {
        const fs::path out =
            root / ("c" + std::to_string(c) + "_w" + workers + "_" + std::to_string(rerun));
        auto args = commands[c].first;
        args.insert(args.end(), {"--seed", "11", "--workers", workers, "--out", out.string()});
        std::ostringstream sink_out, sink_err;
        if (cli::run(args, sink_out, sink_err) != 0) {
          v.require(false, args[0] + " exited non-zero: " + sink_err.str());
          continue;
        }
        std::vector<std::string> bytes;
        for (const auto& file : commands[c].second) {
          std::ifstream in(out / file, std::ios::binary);
          std::stringstream s;
          s << in.rdbuf();
          bytes.push_back(s.str());
        }
        if (reference.empty()) {
          reference = bytes;
        } else {
          ++compared;
          v.require(bytes == reference, args[0] + " " + args[1] + " workers=" + workers);
        }
      }
    }
  }
  fs::remove_all(root);
  v.note(std::to_string(compared) + " reruns compared byte-for-byte against the first run");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"cross-validation algebra", cv_algebra},
      {"isotonic regression oracles", pava_oracles},
      {"leave-one-out inequalities", loo_inequalities},
      {"error reduction for decreasing truth", error_reduction},
      {"band coverage reproduction", coverage_cells},
      {"empirical risk oracle", empirical_risk},
      {"loss orderings at n = 300", loss_orderings},
      {"limit-process sampler", sampler_checks},
      {"worst-case performance", performance},
      {"scaled coordinate variance", qq_variance},
      {"determinism across reruns and workers", determinism}};
  std::set<int> selected, known_red;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-red" && i + 1 < argc) {
      for (const auto& id : cli::detail::split_list(argv[++i])) known_red.insert(std::stoi(id));
    } else {
      selected.insert(std::stoi(arg));
    }
  }
  int failed = 0, unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += v.pass ? 0 : 1;
    unexpected += v.pass || known_red.count(id) ? 0 : 1;
    std::printf("[%s] criterion %2d: %s (%.1f s) | %s\n", v.pass ? "PASS" : "FAIL", id,
                criteria[i].first, seconds_since(start), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed, %d outside the known-red list\n", failed, unexpected);
  return unexpected == 0 ? 0 : 1;
}
