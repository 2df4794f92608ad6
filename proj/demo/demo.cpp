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
// Draws a sample from a built-in model, fits every estimator and prints the
// losses, then builds a 95% global band around the stacked Grenander fit.

#include <cstdio>

#include "stackpmf/stackpmf.hpp"

int main() {
  using namespace stackpmf;
  const ModelSpec model = builtin_models().at("M3");
  const Pmf truth = pmf_truncate(model, 1e-12);
  const FrequencyData x = sample(model, 300, 2026);

  const StackedFit fit = stacked(x, ShapeKind::Grenander);
  std::printf("model %s, n = %lld, t_n = %zu\n", to_string(model).c_str(),
              static_cast<long long>(x.n()), x.size() - 1);
  std::printf("cv beta = %.6f (a_n = %.3g, b_n = %.3g)\n\n", fit.beta_hat, fit.a_n, fit.b_n);

  std::printf("%-4s %12s %12s\n", "est", "l2 loss", "linf loss");
  for (auto kind : {EstimatorKind::Empirical, EstimatorKind::Minimax, EstimatorKind::Rearrangement,
                    EstimatorKind::Grenander, EstimatorKind::StackedRearrangement,
                    EstimatorKind::StackedGrenander}) {
    const Pmf est = estimate(x, kind);
    std::printf("%-4s %12.6f %12.6f\n", short_name(kind).c_str(),
                distance(est.probs, truth.probs, Norm::L2),
                distance(est.probs, truth.probs, Norm::Linf));
  }

  const ConfidenceBand b = plug_in_band(fit.estimate.probs, x.n(), 0.05, 100000, 7);
  std::printf("\nq_hat = %.5f, covers truth: %s\n", b.q_hat, covers(b, truth.probs) ? "yes" : "no");
  for (std::size_t j = 0; j < b.center.size(); ++j) {
    std::printf("  j=%zu  %.4f  [%.4f, %.4f]  true %.4f\n", j, b.center[j], b.lower[j],
                b.upper[j], truth.at_or_zero(j));
  }
  return 0;
}
