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
#ifndef STACKPMF_TOOLS_CLI_APP_HPP_
#define STACKPMF_TOOLS_CLI_APP_HPP_

// Command-line front end: estimate | simulate | band | qq | bench.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.

#include <charconv>
#include <cstdint>
#include <functional>
#include <optional>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stackpmf/stackpmf.hpp"
#include "svg.hpp"

namespace stackpmf::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline ModelSpec model_arg(const std::string& text) {
  try {
    return parse_model(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline std::vector<EstimatorKind> estimators_arg(const std::string& text) {
  std::vector<EstimatorKind> out;
  try {
    for (const auto& s : split_list(text)) out.push_back(parse_estimator(s));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (out.empty()) throw UsageError("no estimators given");
  return out;
}

inline std::vector<Norm> norms_arg(const std::string& text) {
  std::vector<Norm> out;
  try {
    for (const auto& s : split_list(text)) out.push_back(parse_norm(s));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (out.empty()) throw UsageError("no norms given");
  return out;
}

inline std::vector<std::int64_t> ints_arg(const std::string& text, const std::string& flag) {
  std::vector<std::int64_t> out;
  for (const auto& s : split_list(text)) {
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw UsageError(flag + ": not an integer: '" + s + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

// Open unit interval, for significance levels.
inline const CLI::Validator kOpenUnit(
    [](std::string& v) -> std::string {
      double x = 0;
      const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
      if (res.ec != std::errc{} || !(x > 0.0 && x < 1.0)) return "must lie in (0, 1)";
      return {};
    },
    "in (0,1)");

inline const CLI::Validator kMonteCarlo = CLI::Range(std::size_t{100}, std::size_t{1} << 40);

inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

inline std::string names(const std::vector<EstimatorKind>& v) {
  std::vector<std::string> s;
  for (auto k : v) s.push_back(short_name(k));
  return join(s);
}

inline std::string names(const std::vector<Norm>& v) {
  std::vector<std::string> s;
  for (auto k : v) s.push_back(to_string(k));
  return join(s);
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write '" + path.string() + "'");
  }
  CsvWriter& comment(const std::string& s) {
    out_ << "# " << s << '\n';
    return *this;
  }
  CsvWriter& row(const std::vector<std::string>& cells) {
    out_ << join(cells) << '\n';
    return *this;
  }

 private:
  std::ofstream out_;
};

inline std::string num(double x) { return format_double(x); }
inline std::string num(std::int64_t x) { return std::to_string(x); }
inline std::string num(std::size_t x) { return std::to_string(x); }

inline void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what(), 0);
  }
}

// Options every subcommand accepts.
struct Common {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out_dir = ".";
  std::string format = "csv";
  bool svg = false;

  void attach(CLI::App* app, const std::string& default_format) {
    format = default_format;
    app->add_option("--seed", seed, "64-bit seed")->envname("STACKPMF_SEED");
    app->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", out_dir, "output directory");
    app->add_option("--format", format, "data file format")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_flag("--svg", svg, "also write a minimal SVG chart");
  }

  std::filesystem::path dir() const {
    std::filesystem::create_directories(out_dir);
    return out_dir;
  }
};

// Written next to every command's outputs; `argv` re-runs the command.
inline void write_manifest(const Common& common, const std::string& command,
                           const std::vector<std::string>& argv, Json config,
                           const std::vector<std::filesystem::path>& artifacts) {
  Json m;
  m["tool"] = "stackpmf";
  m["version"] = STACKPMF_VERSION;
  m["command"] = command;
  m["argv"] = argv;
  m["seed"] = common.seed;
  m["workers"] = common.workers;
  m["config"] = std::move(config);
  Json files = Json::array();
  for (const auto& a : artifacts) files.push_back(a.filename().string());
  m["artifacts"] = files;
  write_json(common.dir() / (command + ".manifest.json"), m);
}

inline Json band_json(const ConfidenceBand& b) {
  return Json{{"alpha", b.alpha}, {"mc", b.mc_reps}, {"seed", b.seed}, {"n", b.n},
              {"q_hat", b.q_hat}, {"lower", b.lower}, {"upper", b.upper}};
}

inline void band_svg(const std::filesystem::path& path, const ConfidenceBand& b) {
  std::vector<svg::Series> series(3);
  series[0].label = "estimate";
  series[1].label = "lower";
  series[2].label = "upper";
  for (std::size_t j = 0; j < b.center.size(); ++j) {
    const double x = static_cast<double>(j);
    series[0].points.emplace_back(x, b.center[j]);
    series[1].points.emplace_back(x, b.lower[j]);
    series[2].points.emplace_back(x, b.upper[j]);
  }
  svg::line_chart(path.string(), series);
}

inline std::vector<std::filesystem::path> write_band(const Common& common,
                                                     const ConfidenceBand& b,
                                                     const std::string& stem) {
  std::vector<std::filesystem::path> files;
  const auto dir = common.dir();
  if (common.format == "json") {
    files.push_back(dir / (stem + ".json"));
    write_json(files.back(), band_json(b));
  } else {
    files.push_back(dir / (stem + ".csv"));
    CsvWriter csv(files.back());
    csv.comment("q_hat=" + num(b.q_hat));
    csv.comment("alpha=" + num(b.alpha) + " mc=" + num(b.mc_reps) +
                " seed=" + std::to_string(b.seed) + " n=" + num(b.n));
    csv.row({"j", "lower", "upper"});
    for (std::size_t j = 0; j < b.lower.size(); ++j) {
      csv.row({num(j), num(b.lower[j]), num(b.upper[j])});
    }
  }
  if (common.svg) {
    files.push_back(dir / (stem + ".svg"));
    band_svg(files.back(), b);
  }
  return files;
}

struct Fitted {
  std::vector<double> estimate;
  Json details;
};

inline Fitted fit(const FrequencyData& x, EstimatorKind kind) {
  Fitted out;
  out.details["kind"] = short_name(kind);
  out.details["n"] = x.n();
  out.details["counts"] = x.counts();
  if (kind == EstimatorKind::StackedGrenander || kind == EstimatorKind::StackedRearrangement) {
    const auto shape = kind == EstimatorKind::StackedGrenander ? ShapeKind::Grenander
                                                               : ShapeKind::Rearrangement;
    const StackedFit f = stacked(x, shape);
    out.estimate = f.estimate.probs;
    out.details["beta_hat"] = f.beta_hat;
    out.details["a_n"] = f.a_n;
    out.details["b_n"] = f.b_n;
    out.details["single_observation"] = f.single_observation;
  } else {
    out.estimate = estimate(x, kind).probs;
  }
  out.details["estimate"] = out.estimate;
  return out;
}

}  // namespace detail

class App {
 public:
  explicit App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    argv_.assign(argv + 1, argv + argc);
    CLI::App app{"Stacked Grenander and rearrangement estimators of a discrete p.m.f."};
    app.require_subcommand(1);
    app.set_version_flag("--version", STACKPMF_VERSION);
    setup_estimate(app);
    setup_simulate(app);
    setup_band(app);
    setup_qq(app);
    setup_bench(app);
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e, out_, err_) == 0 ? kOk : kUsage;
    }
    try {
      action_();
      return kOk;
    } catch (const UsageError& e) {
      err_ << "usage error: " << e.what() << '\n';
      return kUsage;
    } catch (const ParameterDomainError& e) {
      err_ << "usage error: " << e.what() << '\n';
      return kUsage;
    } catch (const ParseError& e) {
      err_ << "data error: " << e.what() << '\n';
      return kData;
    } catch (const EmptyInputError& e) {
      err_ << "data error: " << e.what() << '\n';
      return kData;
    } catch (const InvalidPmfError& e) {
      err_ << "data error: " << e.what() << '\n';
      return kData;
    } catch (const InsufficientSampleError& e) {
      err_ << "data error: " << e.what() << '\n';
      return kData;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kNumeric;
    }
  }

 private:
  void setup_estimate(CLI::App& app) {
    auto* sub = app.add_subcommand("estimate", "fit an estimator to observed counts");
    sub->add_option("--input", est_.input, "counts file")->required();
    sub->add_option("--kind", est_.kind, "e, mm, r, G, sr or sG");
    sub->add_option("--band", est_.band_alpha, "also emit a global band at this alpha")
        ->check(detail::kOpenUnit);
    sub->add_option("--mc", est_.mc, "Monte-Carlo draws for the band quantile")
        ->check(detail::kMonteCarlo);
    est_.common.attach(sub, "json");
    sub->callback([this] { action_ = [this] { cmd_estimate(); }; });
  }

  void setup_simulate(CLI::App& app) {
    auto* sub = app.add_subcommand("simulate", "Monte-Carlo loss, risk or coverage study");
    sub->add_option("--model", sim_.model, "M1..M7 or ad-hoc model string")->required();
    sub->add_option("--n", sim_.n, "sample size");
    sub->add_option("--ngrid", sim_.ngrid, "comma-separated sample sizes (risk curves)");
    sub->add_flag("--risk", sim_.risk, "scaled-risk curve over --ngrid");
    sub->add_flag("--coverage", sim_.coverage, "global-band coverage at --n");
    sub->add_option("--reps", sim_.reps, "replications")->check(CLI::PositiveNumber);
    sub->add_option("--est", sim_.est, "comma-separated estimators");
    sub->add_option("--norm", sim_.norm, "comma-separated norms: 1,2,inf");
    sub->add_option("--alpha", sim_.alpha, "band level")->check(detail::kOpenUnit);
    sub->add_option("--mc", sim_.mc, "Monte-Carlo draws per band quantile")
        ->check(detail::kMonteCarlo);
    sim_.common.attach(sub, "csv");
    sub->callback([this] { action_ = [this] { cmd_simulate(); }; });
  }

  void setup_band(CLI::App& app) {
    auto* sub = app.add_subcommand("band", "global confidence band");
    auto* input = sub->add_option("--input", band_.input, "counts file");
    auto* theta = sub->add_option("--theta", band_.theta,
                                  "estimate JSON written by `estimate` (uses its n)");
    input->excludes(theta);
    sub->add_option("--kind", band_.kind, "estimator for --input");
    sub->add_option("--alpha", band_.alpha, "level")->check(detail::kOpenUnit);
    sub->add_option("--mc", band_.mc, "Monte-Carlo draws")->check(detail::kMonteCarlo);
    band_.common.attach(sub, "csv");
    sub->callback([this] { action_ = [this] { cmd_band(); }; });
  }

  void setup_qq(CLI::App& app) {
    auto* sub = app.add_subcommand("qq", "scaled coordinate samples for normal QQ plots");
    sub->add_option("--model", qq_.model, "model")->required();
    sub->add_option("--coord", qq_.coord, "coordinate j");
    sub->add_option("--n", qq_.n, "sample size");
    sub->add_option("--reps", qq_.reps, "replications")->check(CLI::PositiveNumber);
    sub->add_option("--est", qq_.est, "comma-separated estimators");
    qq_.common.attach(sub, "csv");
    sub->callback([this] { action_ = [this] { cmd_qq(); }; });
  }

  void setup_bench(CLI::App& app) {
    auto* sub = app.add_subcommand("bench", "worst-case timings of cv_beta and the band quantile");
    sub->add_option("--sgrid", bench_.sgrid, "comma-separated support sizes s");
    sub->add_option("--runs", bench_.runs, "runs per s")->check(CLI::PositiveNumber);
    sub->add_option("--mc", bench_.mc, "Monte-Carlo draws for the quantile")
        ->check(detail::kMonteCarlo);
    bench_.common.attach(sub, "csv");
    sub->callback([this] { action_ = [this] { cmd_bench(); }; });
  }

  FrequencyData load_counts(const std::string& path) {
    auto parsed = read_counts_file(path);
    for (const auto& w : parsed.warnings) err_ << "warning: " << path << ": " << w << '\n';
    return std::move(parsed.data);
  }

  void cmd_estimate() {
    using namespace detail;
    const FrequencyData x = load_counts(est_.input);
    const EstimatorKind kind = estimators_arg(est_.kind).front();
    Fitted f = fit(x, kind);
    if (est_.band_alpha) {
      const ConfidenceBand b = plug_in_band(f.estimate, x.n(), *est_.band_alpha, est_.mc,
                                            est_.common.seed, est_.common.workers);
      f.details["band"] = band_json(b);
    }
    const auto dir = est_.common.dir();
    std::vector<std::filesystem::path> files;
    if (est_.common.format == "json") {
      files.push_back(dir / "estimate.json");
      write_json(files.back(), f.details);
    } else {
      files.push_back(dir / "estimate.csv");
      CsvWriter csv(files.back());
      if (f.details.contains("beta_hat")) {
        csv.comment("beta_hat=" + num(f.details["beta_hat"].get<double>()) +
                    " a_n=" + num(f.details["a_n"].get<double>()) +
                    " b_n=" + num(f.details["b_n"].get<double>()));
      }
      const bool with_band = f.details.contains("band");
      if (with_band) csv.comment("q_hat=" + num(f.details["band"]["q_hat"].get<double>()));
      csv.row(with_band ? std::vector<std::string>{"j", "estimate", "lower", "upper"}
                        : std::vector<std::string>{"j", "estimate"});
      for (std::size_t j = 0; j < f.estimate.size(); ++j) {
        std::vector<std::string> cells{num(j), num(f.estimate[j])};
        if (with_band) {
          cells.push_back(num(f.details["band"]["lower"][j].get<double>()));
          cells.push_back(num(f.details["band"]["upper"][j].get<double>()));
        }
        csv.row(cells);
      }
    }
    if (est_.common.svg) {
      files.push_back(dir / "estimate.svg");
      svg::Series s{"estimate", {}};
      for (std::size_t j = 0; j < f.estimate.size(); ++j) {
        s.points.emplace_back(static_cast<double>(j), f.estimate[j]);
      }
      svg::line_chart(files.back().string(), {s});
    }
    Json config{{"input", est_.input}, {"kind", short_name(kind)}, {"mc", est_.mc}};
    if (est_.band_alpha) config["band_alpha"] = *est_.band_alpha;
    write_manifest(est_.common, "estimate", argv_, config, files);
    out_ << "wrote " << files.front().string() << '\n';
  }

  void cmd_simulate() {
    using namespace detail;
    if (sim_.risk && sim_.coverage) throw UsageError("--risk and --coverage are exclusive");
    ExperimentConfig cfg;
    cfg.model = model_arg(sim_.model);
    cfg.reps = sim_.reps;
    cfg.estimators = estimators_arg(sim_.est);
    cfg.norms = norms_arg(sim_.norm);
    cfg.alpha = sim_.alpha;
    cfg.band_mc_reps = sim_.mc;
    cfg.seed = sim_.common.seed;
    cfg.workers = sim_.common.workers;
    if (sim_.risk) {
      if (sim_.ngrid.empty()) throw UsageError("--risk needs --ngrid");
      cfg.n_grid = ints_arg(sim_.ngrid, "--ngrid");
    } else {
      if (!sim_.n) throw UsageError("--n is required");
      cfg.n_grid = {*sim_.n};
    }
    const auto dir = sim_.common.dir();
    const bool json = sim_.common.format == "json";
    std::vector<std::filesystem::path> files;
    Json data;

    if (sim_.risk) {
      const ExperimentResult r = run_risk_curve(cfg);
      if (json) {
        for (const auto& e : r.risks) {
          data["risk"].push_back({{"n", e.n}, {"estimator", short_name(e.estimator)},
                                  {"risk", e.risk}, {"se", e.standard_error}});
        }
      } else {
        files.push_back(dir / "risk.csv");
        CsvWriter csv(files.back());
        csv.row({"n", "estimator", "risk", "se"});
        for (const auto& e : r.risks) {
          csv.row({num(e.n), short_name(e.estimator), num(e.risk), num(e.standard_error)});
        }
      }
      if (sim_.common.svg) {
        std::vector<svg::Series> series;
        for (auto kind : cfg.estimators) {
          svg::Series s{short_name(kind), {}};
          for (const auto& e : r.risks) {
            if (e.estimator == kind) s.points.emplace_back(static_cast<double>(e.n), e.risk);
          }
          series.push_back(std::move(s));
        }
        files.push_back(dir / "risk.svg");
        svg::line_chart(files.back().string(), series);
      }
    } else if (sim_.coverage) {
      const ExperimentResult r = run_coverage(cfg);
      if (json) {
        for (const auto& c : r.coverage) {
          data["coverage"].push_back({{"estimator", short_name(c.estimator)}, {"n", c.n},
                                      {"coverage", c.coverage}, {"se", c.standard_error},
                                      {"reps", c.reps}, {"mean_q_hat", c.mean_q_hat}});
        }
      } else {
        files.push_back(dir / "coverage.csv");
        CsvWriter csv(files.back());
        csv.row({"estimator", "n", "coverage", "se", "reps", "mean_q_hat"});
        for (const auto& c : r.coverage) {
          csv.row({short_name(c.estimator), num(c.n), num(c.coverage), num(c.standard_error),
                   num(c.reps), num(c.mean_q_hat)});
        }
      }
    } else {
      const ExperimentResult r = run_loss_experiment(cfg);
      const LossTable& t = r.losses;
      if (json) {
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
          for (std::size_t k = 0; k < t.norms.size(); ++k) {
            std::vector<double> losses(t.reps);
            for (std::size_t rep = 0; rep < t.reps; ++rep) losses[rep] = t.at(rep, e, k);
            data["losses"].push_back({{"estimator", short_name(t.estimators[e])},
                                      {"norm", to_string(t.norms[k])},
                                      {"mean", t.mean(e, k)},
                                      {"se", t.standard_error(e, k)},
                                      {"values", losses}});
          }
        }
      } else {
        files.push_back(dir / "losses.csv");
        CsvWriter csv(files.back());
        csv.row({"rep", "estimator", "norm", "loss"});
        for (std::size_t rep = 0; rep < t.reps; ++rep) {
          for (std::size_t e = 0; e < t.estimators.size(); ++e) {
            for (std::size_t k = 0; k < t.norms.size(); ++k) {
              csv.row({num(rep), short_name(t.estimators[e]), to_string(t.norms[k]),
                       num(t.at(rep, e, k))});
            }
          }
        }
        files.push_back(dir / "loss_summary.csv");
        CsvWriter summary(files.back());
        summary.row({"estimator", "norm", "mean", "se"});
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
          for (std::size_t k = 0; k < t.norms.size(); ++k) {
            summary.row({short_name(t.estimators[e]), to_string(t.norms[k]), num(t.mean(e, k)),
                         num(t.standard_error(e, k))});
          }
        }
      }
      if (sim_.common.svg) {
        std::vector<std::pair<std::string, std::vector<double>>> groups;
        for (std::size_t e = 0; e < t.estimators.size(); ++e) {
          std::vector<double> v(t.reps);
          for (std::size_t rep = 0; rep < t.reps; ++rep) v[rep] = t.at(rep, e, 0);
          groups.emplace_back(short_name(t.estimators[e]), std::move(v));
        }
        files.push_back(dir / "losses.svg");
        svg::boxplot(files.back().string(), groups);
      }
    }
    if (json) {
      files.insert(files.begin(), dir / "simulate.json");
      write_json(files.front(), data);
    }
    Json config{{"model", to_string(cfg.model)},
                {"mode", sim_.risk ? "risk" : sim_.coverage ? "coverage" : "loss"},
                {"n_grid", cfg.n_grid},
                {"reps", cfg.reps},
                {"estimators", names(cfg.estimators)},
                {"norms", names(cfg.norms)},
                {"alpha", cfg.alpha},
                {"band_mc_reps", cfg.band_mc_reps}};
    write_manifest(sim_.common, "simulate", argv_, config, files);
    out_ << "wrote " << files.front().string() << '\n';
  }

  void cmd_band() {
    using namespace detail;
    std::vector<double> center;
    std::int64_t n = 0;
    Json config{{"alpha", band_.alpha}, {"mc", band_.mc}};
    if (!band_.theta.empty()) {
      const Json j = read_json(band_.theta);
      if (!j.contains("estimate") || !j.contains("n")) {
        throw ParseError("'" + band_.theta + "' lacks \"estimate\" or \"n\"", 0);
      }
      center = j["estimate"].get<std::vector<double>>();
      n = j["n"].get<std::int64_t>();
      config["theta"] = band_.theta;
    } else if (!band_.input.empty()) {
      const FrequencyData x = load_counts(band_.input);
      const EstimatorKind kind = estimators_arg(band_.kind).front();
      center = fit(x, kind).estimate;
      n = x.n();
      config["input"] = band_.input;
      config["kind"] = short_name(kind);
    } else {
      throw UsageError("band needs --input or --theta");
    }
    const ConfidenceBand b =
        plug_in_band(center, n, band_.alpha, band_.mc, band_.common.seed, band_.common.workers);
    const auto files = write_band(band_.common, b, "band");
    write_manifest(band_.common, "band", argv_, config, files);
    out_ << "wrote " << files.front().string() << " (q_hat=" << num(b.q_hat) << ")\n";
  }

  void cmd_qq() {
    using namespace detail;
    ExperimentConfig cfg;
    cfg.model = model_arg(qq_.model);
    cfg.n_grid = {qq_.n};
    cfg.reps = qq_.reps;
    cfg.estimators = estimators_arg(qq_.est);
    cfg.seed = qq_.common.seed;
    cfg.workers = qq_.common.workers;
    const ExperimentResult r = run_qq_samples(cfg, qq_.coord);
    const auto dir = qq_.common.dir();
    std::vector<std::filesystem::path> files;
    const boost::math::normal_distribution<double> standard;
    if (qq_.common.format == "json") {
      files.push_back(dir / "qq.json");
      Json data;
      for (const auto& s : r.qq) {
        data["series"].push_back({{"estimator", short_name(s.estimator)},
                                  {"coord", s.coord},
                                  {"sample_variance", s.sample_variance},
                                  {"sorted", s.sorted},
                                  {"theoretical", s.theoretical}});
      }
      write_json(files.back(), data);
    } else {
      files.push_back(dir / "qq.csv");
      CsvWriter csv(files.back());
      std::vector<std::string> header{"i", "z"};
      for (const auto& s : r.qq) {
        header.push_back(short_name(s.estimator));
        header.push_back(short_name(s.estimator) + "_theory");
      }
      csv.row(header);
      for (std::size_t i = 0; i < cfg.reps; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.reps);
        std::vector<std::string> cells{num(i), num(boost::math::quantile(standard, u))};
        for (const auto& s : r.qq) {
          cells.push_back(num(s.sorted[i]));
          cells.push_back(num(s.theoretical[i]));
        }
        csv.row(cells);
      }
      files.push_back(dir / "qq_summary.csv");
      CsvWriter summary(files.back());
      summary.row({"estimator", "coord", "sample_variance"});
      for (const auto& s : r.qq) {
        summary.row({short_name(s.estimator), num(s.coord), num(s.sample_variance)});
      }
    }
    if (qq_.common.svg) {
      std::vector<svg::Series> series;
      for (const auto& s : r.qq) {
        svg::Series line{short_name(s.estimator), {}};
        for (std::size_t i = 0; i < s.sorted.size(); ++i) {
          const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(s.sorted.size());
          line.points.emplace_back(boost::math::quantile(standard, u), s.sorted[i]);
        }
        series.push_back(std::move(line));
      }
      files.push_back(dir / "qq.svg");
      svg::scatter(files.back().string(), series);
    }
    Json config{{"model", to_string(cfg.model)}, {"coord", qq_.coord}, {"n", qq_.n},
                {"reps", qq_.reps}, {"estimators", names(cfg.estimators)}};
    write_manifest(qq_.common, "qq", argv_, config, files);
    out_ << "wrote " << files.front().string() << '\n';
  }

  void cmd_bench() {
    using namespace detail;
    const auto s_grid = ints_arg(bench_.sgrid, "--sgrid");
    const auto rows =
        worst_case_timing(s_grid, bench_.runs, bench_.mc, bench_.common.workers, bench_.common.seed);
    const auto dir = bench_.common.dir();
    std::vector<std::filesystem::path> files;
    if (bench_.common.format == "json") {
      files.push_back(dir / "bench.json");
      Json data;
      for (const auto& r : rows) {
        data["rows"].push_back({{"s", r.s}, {"runs", r.runs},
                                {"sr_seconds", r.cv_rearrangement_seconds},
                                {"sg_seconds", r.cv_grenander_seconds},
                                {"quantile_seconds", r.quantile_seconds}});
      }
      write_json(files.back(), data);
    } else {
      files.push_back(dir / "bench.csv");
      CsvWriter csv(files.back());
      csv.row({"s", "runs", "sr_seconds", "sg_seconds", "quantile_seconds"});
      for (const auto& r : rows) {
        csv.row({num(r.s), num(r.runs), num(r.cv_rearrangement_seconds),
                 num(r.cv_grenander_seconds), num(r.quantile_seconds)});
      }
    }
    Json config{{"sgrid", s_grid},
                {"runs", bench_.runs},
                {"mc", bench_.mc},
                {"machine",
                 {{"hardware_concurrency", std::thread::hardware_concurrency()},
                  {"compiler", __VERSION__},
                  {"cplusplus", __cplusplus}}}};
    write_manifest(bench_.common, "bench", argv_, config, files);
    for (const auto& r : rows) {
      out_ << "s=" << r.s << "  SR " << num(r.cv_rearrangement_seconds) << " s  SG "
           << num(r.cv_grenander_seconds) << " s  quantile " << num(r.quantile_seconds)
           << " s\n";
    }
  }

  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> argv_;
  std::function<void()> action_;

  struct {
    std::string input;
    std::string kind = "sG";
    std::optional<double> band_alpha;
    std::size_t mc = 100000;
    detail::Common common;
  } est_;
  struct {
    std::string model;
    std::optional<std::int64_t> n;
    std::string ngrid;
    bool risk = false;
    bool coverage = false;
    std::size_t reps = 1000;
    std::string est = "e,sG";
    std::string norm = "1,2";
    double alpha = 0.05;
    std::size_t mc = 100000;
    detail::Common common;
  } sim_;
  struct {
    std::string input;
    std::string theta;
    std::string kind = "sG";
    double alpha = 0.05;
    std::size_t mc = 100000;
    detail::Common common;
  } band_;
  struct {
    std::string model;
    std::size_t coord = 1;
    std::int64_t n = 1000;
    std::size_t reps = 1000;
    std::string est = "e,G,r,sG,sr";
    detail::Common common;
  } qq_;
  struct {
    std::string sgrid = "500,1000,3000,5000";
    std::size_t runs = 10;
    std::size_t mc = 100000;
    detail::Common common;
  } bench_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  App app(out, err);
  return app.run(argc, argv);
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"stackpmf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace stackpmf::cli

#endif  // STACKPMF_TOOLS_CLI_APP_HPP_
