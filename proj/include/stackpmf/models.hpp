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
#ifndef STACKPMF_MODELS_HPP_
#define STACKPMF_MODELS_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stackpmf/error.hpp"
#include "stackpmf/format.hpp"
#include "stackpmf/pmf.hpp"
#include "stackpmf/rng.hpp"

namespace stackpmf {

// Uniform on {0, ..., s}.
struct UniformRange {
  std::int64_t s = 0;
};

// p_j = (1 - theta) theta^j.
struct Geometric {
  double theta = 0.5;
};

// p_j proportional to (s + 1 - j) on {0, ..., s}.
struct TriangularDecreasing {
  std::int64_t s = 0;
};

// p_j proportional to (j + 1) on {0, ..., s}.
struct TriangularIncreasing {
  std::int64_t s = 0;
};

// Number of successes before the r-th failure, success probability theta:
// p_j = C(j + r - 1, j) theta^j (1 - theta)^r.
struct NegativeBinomial {
  std::int64_t r = 1;
  double theta = 0.5;
};

struct Poisson {
  double lambda = 1.0;
};

struct MixtureComponent;

struct Mixture {
  std::vector<MixtureComponent> components;
};

// Declarative description of a p.m.f. on the nonnegative integers.
class ModelSpec {
 public:
  using Variant = std::variant<UniformRange, Geometric, TriangularDecreasing,
                               TriangularIncreasing, NegativeBinomial, Poisson, Mixture>;

  ModelSpec() = default;
  template <typename T>
    requires std::is_constructible_v<Variant, T>
  ModelSpec(T alternative) : v_(std::move(alternative)) {}  // NOLINT(implicit)

  const Variant& variant() const noexcept { return v_; }

 private:
  Variant v_ = UniformRange{0};
};

struct MixtureComponent {
  double weight = 1.0;
  ModelSpec model;
};

namespace detail {

inline constexpr double kMixtureWeightTolerance = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double log_pmf_negative_binomial(const NegativeBinomial& m, std::int64_t j) {
  const double jd = static_cast<double>(j);
  const double rd = static_cast<double>(m.r);
  return std::lgamma(jd + rd) - std::lgamma(jd + 1.0) - std::lgamma(rd) +
         jd * std::log(m.theta) + rd * std::log1p(-m.theta);
}

inline double log_pmf_poisson(const Poisson& m, std::int64_t j) {
  const double jd = static_cast<double>(j);
  return -m.lambda + jd * std::log(m.lambda) - std::lgamma(jd + 1.0);
}

// Sums pmf(j) for j >= from, until past the mode and the terms are negligible.
template <class PmfAt>
double unimodal_upper_tail(PmfAt pmf_at, std::int64_t from, std::int64_t mode) {
  CompensatedSum acc;
  constexpr std::int64_t kMaxTerms = 100'000'000;
  for (std::int64_t j = from; j < from + kMaxTerms; ++j) {
    const double term = pmf_at(j);
    acc.add(term);
    if (j > mode && term <= 1e-18 * acc.value()) break;
  }
  return acc.value();
}

}  // namespace detail

inline void validate(const ModelSpec& model) {
  std::visit(
      detail::overloaded{
          [](const UniformRange& m) {
            if (m.s < 0) throw ParameterDomainError("uniform: s must be >= 0");
          },
          [](const Geometric& m) {
            if (!(m.theta > 0.0 && m.theta < 1.0)) {
              throw ParameterDomainError("geometric: theta must lie in (0, 1)");
            }
          },
          [](const TriangularDecreasing& m) {
            if (m.s < 0) throw ParameterDomainError("triangular: s must be >= 0");
          },
          [](const TriangularIncreasing& m) {
            if (m.s < 0) throw ParameterDomainError("triangular: s must be >= 0");
          },
          [](const NegativeBinomial& m) {
            if (m.r < 1) throw ParameterDomainError("negative binomial: r must be >= 1");
            if (!(m.theta > 0.0 && m.theta < 1.0)) {
              throw ParameterDomainError("negative binomial: theta must lie in (0, 1)");
            }
          },
          [](const Poisson& m) {
            if (!(m.lambda > 0.0) || !std::isfinite(m.lambda)) {
              throw ParameterDomainError("poisson: lambda must be > 0");
            }
          },
          [](const Mixture& m) {
            if (m.components.empty()) throw ParameterDomainError("mixture: no components");
            CompensatedSum total;
            for (const auto& c : m.components) {
              if (!(c.weight > 0.0)) {
                throw ParameterDomainError("mixture: weights must be strictly positive");
              }
              total.add(c.weight);
              validate(c.model);
            }
            if (std::abs(total.value() - 1.0) > detail::kMixtureWeightTolerance) {
              throw ParameterDomainError("mixture: weights must sum to 1");
            }
          },
      },
      model.variant());
}

namespace detail {

inline double pmf_eval_unchecked(const ModelSpec& model, std::int64_t j) {
  return std::visit(
      overloaded{
          [j](const UniformRange& m) {
            return j <= m.s ? 1.0 / static_cast<double>(m.s + 1) : 0.0;
          },
          [j](const Geometric& m) {
            return (1.0 - m.theta) * std::pow(m.theta, static_cast<double>(j));
          },
          [j](const TriangularDecreasing& m) {
            if (j > m.s) return 0.0;
            const double s = static_cast<double>(m.s);
            return (s + 1.0 - static_cast<double>(j)) / ((s + 1.0) * (s + 2.0) / 2.0);
          },
          [j](const TriangularIncreasing& m) {
            if (j > m.s) return 0.0;
            const double s = static_cast<double>(m.s);
            return (static_cast<double>(j) + 1.0) / ((s + 1.0) * (s + 2.0) / 2.0);
          },
          [j](const NegativeBinomial& m) { return std::exp(log_pmf_negative_binomial(m, j)); },
          [j](const Poisson& m) { return std::exp(log_pmf_poisson(m, j)); },
          [j](const Mixture& m) {
            CompensatedSum acc;
            for (const auto& c : m.components) acc.add(c.weight * pmf_eval_unchecked(c.model, j));
            return acc.value();
          },
      },
      model.variant());
}

// P(X >= from).
inline double upper_tail_unchecked(const ModelSpec& model, std::int64_t from) {
  return std::visit(
      overloaded{
          [from](const UniformRange& m) {
            if (from > m.s) return 0.0;
            return static_cast<double>(m.s + 1 - from) / static_cast<double>(m.s + 1);
          },
          [from](const Geometric& m) { return std::pow(m.theta, static_cast<double>(from)); },
          [from](const TriangularDecreasing& m) {
            if (from > m.s) return 0.0;
            const double s = static_cast<double>(m.s);
            const double k = static_cast<double>(m.s + 1 - from);
            return (k * (k + 1.0)) / ((s + 1.0) * (s + 2.0));
          },
          [from](const TriangularIncreasing& m) {
            if (from > m.s) return 0.0;
            const double s = static_cast<double>(m.s);
            const double f = static_cast<double>(from);
            return ((s + 1.0) * (s + 2.0) - f * (f + 1.0)) / ((s + 1.0) * (s + 2.0));
          },
          [from](const NegativeBinomial& m) {
            const auto mode = static_cast<std::int64_t>(
                std::floor(static_cast<double>(m.r - 1) * m.theta / (1.0 - m.theta)));
            return unimodal_upper_tail(
                [&m](std::int64_t j) { return std::exp(log_pmf_negative_binomial(m, j)); },
                from, mode);
          },
          [from](const Poisson& m) {
            const auto mode = static_cast<std::int64_t>(std::floor(m.lambda));
            return unimodal_upper_tail(
                [&m](std::int64_t j) { return std::exp(log_pmf_poisson(m, j)); }, from, mode);
          },
          [from](const Mixture& m) {
            CompensatedSum acc;
            for (const auto& c : m.components) {
              acc.add(c.weight * upper_tail_unchecked(c.model, from));
            }
            return acc.value();
          },
      },
      model.variant());
}

inline std::optional<std::int64_t> support_size(const ModelSpec& model) {
  return std::visit(
      overloaded{
          [](const UniformRange& m) -> std::optional<std::int64_t> { return m.s + 1; },
          [](const TriangularDecreasing& m) -> std::optional<std::int64_t> { return m.s + 1; },
          [](const TriangularIncreasing& m) -> std::optional<std::int64_t> { return m.s + 1; },
          [](const Mixture& m) -> std::optional<std::int64_t> {
            std::int64_t size = 0;
            for (const auto& c : m.components) {
              const auto inner = support_size(c.model);
              if (!inner) return std::nullopt;
              size = std::max(size, *inner);
            }
            return size;
          },
          [](const auto&) -> std::optional<std::int64_t> { return std::nullopt; },
      },
      model.variant());
}

}  // namespace detail

// p_j of `model`.
inline double pmf_eval(const ModelSpec& model, std::int64_t j) {
  if (j < 0) throw ParameterDomainError("pmf_eval: index must be >= 0");
  validate(model);
  return detail::pmf_eval_unchecked(model, j);
}

// P(X >= from) of `model`.
inline double upper_tail(const ModelSpec& model, std::int64_t from) {
  validate(model);
  if (from <= 0) return 1.0;
  return detail::upper_tail_unchecked(model, from);
}

// Number of support points for finite-support models.
inline std::optional<std::int64_t> finite_support_size(const ModelSpec& model) {
  validate(model);
  return detail::support_size(model);
}

// Shortest prefix p_0..p_{L-1} whose dropped tail mass is at most epsilon.
// Finite-support models are returned exactly, with tail_mass = 0.
inline Pmf pmf_truncate(const ModelSpec& model, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterDomainError("pmf_truncate: epsilon must lie in (0, 1)");
  }
  validate(model);
  Pmf out;
  if (const auto size = detail::support_size(model)) {
    out.probs.resize(static_cast<std::size_t>(*size));
    for (std::int64_t j = 0; j < *size; ++j) {
      out.probs[static_cast<std::size_t>(j)] = detail::pmf_eval_unchecked(model, j);
    }
    return out;
  }
  std::int64_t len = 1;
  double tail = detail::upper_tail_unchecked(model, len);
  while (tail > epsilon) {
    ++len;
    tail = detail::upper_tail_unchecked(model, len);
  }
  out.probs.resize(static_cast<std::size_t>(len));
  for (std::int64_t j = 0; j < len; ++j) {
    out.probs[static_cast<std::size_t>(j)] = detail::pmf_eval_unchecked(model, j);
  }
  out.tail_mass = tail;
  return out;
}

inline constexpr double kSamplingTruncation = 1e-12;

// Inversion sampler over the truncated p.m.f. A uniform draw that lands in the
// dropped tail maps to the last retained index.
class Sampler {
 public:
  explicit Sampler(const ModelSpec& model) : Sampler(pmf_truncate(model, kSamplingTruncation)) {}

  explicit Sampler(const Pmf& truncated) : truth_(truncated) {
    if (truth_.probs.empty()) throw EmptyInputError("sampler: empty p.m.f.");
    cdf_.resize(truth_.probs.size());
    CompensatedSum acc;
    for (std::size_t j = 0; j < cdf_.size(); ++j) {
      acc.add(truth_.probs[j]);
      cdf_[j] = acc.value();
    }
  }

  const Pmf& truth() const noexcept { return truth_; }

  std::size_t draw_one(double u) const noexcept {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return cdf_.size() - 1;
    return static_cast<std::size_t>(it - cdf_.begin());
  }

  // n i.i.d. draws from stream `seed`, as frequency data.
  FrequencyData draw(std::int64_t n, std::uint64_t seed) const {
    if (n < 1) throw ParameterDomainError("sample: n must be >= 1");
    CounterStream rng(seed);
    std::vector<std::int64_t> counts(cdf_.size(), 0);
    std::size_t top = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t j = draw_one(rng.uniform());
      ++counts[j];
      top = std::max(top, j);
    }
    counts.resize(top + 1);
    return FrequencyData(std::move(counts));
  }

 private:
  Pmf truth_;
  std::vector<double> cdf_;
};

inline FrequencyData sample(const ModelSpec& model, std::int64_t n, std::uint64_t seed) {
  return Sampler(model).draw(n, seed);
}

// The seven reference models M1..M7.
inline std::map<std::string, ModelSpec> builtin_models() {
  std::map<std::string, ModelSpec> out;
  out["M1"] = UniformRange{11};
  out["M2"] = Mixture{{{0.15, UniformRange{3}}, {0.1, UniformRange{7}}, {0.75, UniformRange{11}}}};
  out["M3"] = Mixture{{{0.25, UniformRange{1}},
                       {0.2, UniformRange{3}},
                       {0.15, UniformRange{5}},
                       {0.4, UniformRange{7}}}};
  out["M4"] = Geometric{0.25};
  out["M5"] = TriangularIncreasing{11};
  out["M6"] = NegativeBinomial{7, 0.4};
  out["M7"] = Mixture{{{3.0 / 8.0, Poisson{2.0}}, {5.0 / 8.0, Poisson{15.0}}}};
  return out;
}

// Canonical textual form, accepted back by parse_model().
inline std::string to_string(const ModelSpec& model) {
  return std::visit(
      detail::overloaded{
          [](const UniformRange& m) { return "uniform:" + std::to_string(m.s); },
          [](const Geometric& m) { return "geom:" + format_double(m.theta); },
          [](const TriangularDecreasing& m) { return "tri-dec:" + std::to_string(m.s); },
          [](const TriangularIncreasing& m) { return "tri-inc:" + std::to_string(m.s); },
          [](const NegativeBinomial& m) {
            return "nbin:" + std::to_string(m.r) + "," + format_double(m.theta);
          },
          [](const Poisson& m) { return "pois:" + format_double(m.lambda); },
          [](const Mixture& m) {
            std::string s = "mix:";
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              if (i > 0) s += "+";
              const auto& c = m.components[i];
              const bool nested = std::holds_alternative<Mixture>(c.model.variant());
              s += format_double(c.weight) + "*";
              s += nested ? "(" + to_string(c.model) + ")" : to_string(c.model);
            }
            return s;
          },
      },
      model.variant());
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void bad_model(std::string_view text, const std::string& why) {
  throw ParseError("invalid model '" + std::string(text) + "': " + why, 0);
}

inline double parse_real(std::string_view text, std::string_view whole) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return parse_real(text.substr(0, slash), whole) / parse_real(text.substr(slash + 1), whole);
  }
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    bad_model(whole, "cannot read number '" + std::string(text) + "'");
  }
  return value;
}

inline std::int64_t parse_int(std::string_view text, std::string_view whole) {
  text = trim(text);
  std::int64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    bad_model(whole, "cannot read integer '" + std::string(text) + "'");
  }
  return value;
}

// Splits on `sep` outside parentheses.
inline std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

}  // namespace detail

// Parses `M1`..`M7`, `uniform:s`, `geom:theta`, `tri-dec:s`, `tri-inc:s`,
// `nbin:r,theta`, `pois:lambda` and `mix:w1*spec1+w2*spec2+...`. Nested
// mixtures go in parentheses; weights may be written as fractions (`3/8`).
// Throws ParseError on malformed text and ParameterDomainError on invalid
// parameters.
inline ModelSpec parse_model(std::string_view text) {
  using namespace detail;
  const std::string_view whole = text;
  text = trim(text);
  while (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    text = trim(text.substr(1, text.size() - 2));
  }
  static const auto builtins = builtin_models();
  if (const auto it = builtins.find(std::string(text)); it != builtins.end()) return it->second;

  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad_model(whole, "unknown model name");
  const std::string_view family = trim(text.substr(0, colon));
  const std::string_view args = trim(text.substr(colon + 1));

  ModelSpec model;
  if (family == "uniform") {
    model = UniformRange{parse_int(args, whole)};
  } else if (family == "geom") {
    model = Geometric{parse_real(args, whole)};
  } else if (family == "tri-dec") {
    model = TriangularDecreasing{parse_int(args, whole)};
  } else if (family == "tri-inc") {
    model = TriangularIncreasing{parse_int(args, whole)};
  } else if (family == "nbin") {
    const auto parts = split_top_level(args, ',');
    if (parts.size() != 2) bad_model(whole, "nbin expects r,theta");
    model = NegativeBinomial{parse_int(parts[0], whole), parse_real(parts[1], whole)};
  } else if (family == "pois") {
    model = Poisson{parse_real(args, whole)};
  } else if (family == "mix") {
    Mixture mix;
    for (const auto part : split_top_level(args, '+')) {
      const auto star = part.find('*');
      if (star == std::string_view::npos) bad_model(whole, "mixture term needs weight*spec");
      mix.components.push_back(
          {parse_real(part.substr(0, star), whole), parse_model(part.substr(star + 1))});
    }
    model = std::move(mix);
  } else {
    bad_model(whole, "unknown family '" + std::string(family) + "'");
  }
  validate(model);
  return model;
}

// True when p_0 >= p_1 >= ... up to `tolerance`.
inline bool is_nonincreasing(std::span<const double> p, double tolerance = 0.0) {
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (p[j] > p[j - 1] + tolerance) return false;
  }
  return true;
}

}  // namespace stackpmf

#endif  // STACKPMF_MODELS_HPP_
