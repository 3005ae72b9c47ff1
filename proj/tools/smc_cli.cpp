// Copyright 2026 The smc Authors. All Rights Reserved.
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

// Command-line front end. Machine-readable output goes to --output (or
// stdout); diagnostics go to stderr. Exit codes: 0 ok, 1 runtime error,
// 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "smc/c_api.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Check(smc_status status, const std::string& context) {
  if (status != SMC_OK) {
    throw RuntimeError(context + ": " + smc_status_string(status) + ": " +
                       smc_last_error());
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Observed = std::unique_ptr<smc_observed, Deleter<smc_observed, smc_observed_free>>;
using Estimate = std::unique_ptr<smc_estimate, Deleter<smc_estimate, smc_estimate_free>>;
using Rank = std::unique_ptr<smc_rank, Deleter<smc_rank, smc_rank_free>>;
using Completion =
    std::unique_ptr<smc_completion, Deleter<smc_completion, smc_completion_free>>;
using Inference =
    std::unique_ptr<smc_inference, Deleter<smc_inference, smc_inference_free>>;
using SimResult =
    std::unique_ptr<smc_sim_result, Deleter<smc_sim_result, smc_sim_result_free>>;

struct Options {
  std::string input;
  std::string input_format = "triplet";
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string delimiter = "tab";
  std::string missing_token = "NA";
  bool dedup_average = false;

  std::string rank = "auto";
  double cd_const = 1.0;
  std::string sign_method = "auto";
  double alpha = 0.05;
  std::string output;
  std::string format = "json";

  std::string dense_out;
  std::vector<std::string> predict;

  std::string rank_scree_out;
  std::size_t scree_k = 0;

  std::string train;
  std::string test;
  std::vector<std::string> folds;

  std::vector<std::size_t> n_list;
  std::vector<double> p_list;
  std::size_t d = 0;
  double sigma = 1.0;
  std::size_t true_rank = 2;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string aggregates_out;
};

std::string OutputPath(const Options& o) {
  return o.output.empty() ? "/dev/stdout" : o.output;
}

smc_format Format(const Options& o) {
  return o.format == "csv" ? SMC_FORMAT_CSV : SMC_FORMAT_JSON;
}

char Delimiter(const std::string& s) {
  if (s == "tab" || s == "\\t") return '\t';
  if (s == "space" || s == "whitespace") return ' ';
  if (s == "comma") return ',';
  if (s.size() == 1) return s[0];
  throw UsageError("--delimiter must be one character, tab, space or comma");
}

Observed LoadWith(const Options& o, const std::string& path, std::size_t rows,
                  std::size_t cols) {
  if (path.empty()) throw UsageError("an input file is required");
  smc_observed* raw = nullptr;
  if (o.input_format == "dense") {
    Check(smc_observed_load_dense(path.c_str(), o.missing_token.c_str(), &raw),
          "loading " + path);
  } else {
    smc_triplet_options opts;
    smc_triplet_options_init(&opts);
    opts.delimiter = Delimiter(o.delimiter);
    opts.rows = rows;
    opts.cols = cols;
    opts.dedup_average = o.dedup_average ? 1 : 0;
    Check(smc_observed_load_triplets(path.c_str(), &opts, &raw), "loading " + path);
  }
  return Observed(raw);
}

Observed Load(const Options& o) { return LoadWith(o, o.input, o.rows, o.cols); }

// 0 means AUTO.
std::size_t ParseRank(const std::string& s) {
  if (s == "auto" || s == "AUTO") return 0;
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("--rank must be a positive integer or 'auto'");
  }
  if (pos != s.size() || v < 1) {
    throw UsageError("--rank must be a positive integer or 'auto'");
  }
  return static_cast<std::size_t>(v);
}

smc_sign_method SignMethod(const std::string& s) {
  if (s == "exhaustive") return SMC_SIGNS_EXHAUSTIVE;
  if (s == "heuristic") return SMC_SIGNS_HEURISTIC;
  return SMC_SIGNS_AUTO;
}

std::size_t ResolveRank(const Options& o, const smc_observed* obs) {
  std::size_t r = ParseRank(o.rank);
  if (r != 0) return r;
  smc_rank* raw = nullptr;
  Check(smc_rank_select(obs, o.cd_const, &raw), "rank selection");
  Rank decision(raw);
  r = smc_rank_r_hat(decision.get());
  std::fprintf(stderr, "rank: r_hat=%zu (threshold %.6g, c=%g)\n", r,
               smc_rank_threshold(decision.get()), o.cd_const);
  if (r == 0) throw RuntimeError("rank selection returned r_hat = 0");
  return r;
}

Estimate MakeEstimate(const Options& o, const smc_observed* obs) {
  const std::size_t r = ResolveRank(o, obs);
  smc_estimate* raw = nullptr;
  Check(smc_estimate_create(obs, r, &raw), "estimation");
  Estimate est(raw);
  smc_estimate_info info;
  Check(smc_estimate_get_info(est.get(), &info), "estimate info");
  if (info.clamp_count > 0) {
    std::fprintf(stderr,
                 "warning: %zu singular value(s) clamped at zero "
                 "(trailing eigenvalue mean exceeds the signal)\n",
                 info.clamp_count);
  }
  return est;
}

Completion MakeCompletion(const Options& o, const smc_estimate* est,
                          const smc_observed* obs) {
  smc_completion* raw = nullptr;
  Check(smc_complete(est, obs, SignMethod(o.sign_method), &raw), "sign resolution");
  return Completion(raw);
}

int CmdEstimate(const Options& o) {
  Observed obs = Load(o);
  Estimate est = MakeEstimate(o, obs.get());
  Check(smc_estimate_write(est.get(), OutputPath(o).c_str(), Format(o)),
        "writing estimate");
  return 0;
}

int CmdComplete(const Options& o) {
  Observed obs = Load(o);
  Estimate est = MakeEstimate(o, obs.get());
  Completion cm = MakeCompletion(o, est.get(), obs.get());
  if (!o.output.empty() || o.predict.empty()) {
    Check(smc_completion_write(cm.get(), OutputPath(o).c_str(), Format(o)),
          "writing completion");
  }
  if (!o.dense_out.empty()) {
    Check(smc_completion_write_dense(cm.get(), o.dense_out.c_str()),
          "writing dense matrix");
  }
  if (!o.predict.empty()) {
    std::printf("row,col,value\n");
    for (const std::string& cell : o.predict) {
      std::size_t k = 0, h = 0;
      char comma = 0;
      std::istringstream in(cell);
      if (!(in >> k >> comma >> h) || comma != ',' || k < 1 || h < 1) {
        throw UsageError("--predict expects 1-based ROW,COL");
      }
      double v = 0.0;
      Check(smc_completion_predict(cm.get(), k - 1, h - 1, &v), "predict");
      std::printf("%zu,%zu,%.17g\n", k, h, v);
    }
  }
  return 0;
}

int CmdRank(const Options& o) {
  Observed obs = Load(o);
  smc_rank* raw = nullptr;
  Check(smc_rank_select(obs.get(), o.cd_const, &raw), "rank selection");
  Rank rank(raw);
  std::fprintf(stderr, "rank: r_hat=%zu (threshold %.6g)\n",
               smc_rank_r_hat(rank.get()), smc_rank_threshold(rank.get()));
  Check(smc_rank_write(rank.get(), OutputPath(o).c_str(), Format(o)),
        "writing rank decision");
  if (!o.rank_scree_out.empty()) {
    Check(smc_rank_write_scree(rank.get(), o.rank_scree_out.c_str(), o.scree_k),
          "writing scree");
  }
  return 0;
}

int CmdScree(const Options& o) {
  Observed obs = Load(o);
  smc_rank* raw = nullptr;
  Check(smc_rank_select(obs.get(), o.cd_const, &raw), "eigenvalue ladder");
  Rank rank(raw);
  Check(smc_rank_write_scree(rank.get(), OutputPath(o).c_str(), o.scree_k),
        "writing scree");
  return 0;
}

int CmdInfer(const Options& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must be in (0,1)");
  Observed obs = Load(o);
  Estimate est = MakeEstimate(o, obs.get());
  Completion cm = MakeCompletion(o, est.get(), obs.get());
  smc_inference* raw = nullptr;
  Check(smc_infer(cm.get(), o.alpha, 0, &raw), "inference");
  Inference inf(raw);
  smc_inference_info info;
  Check(smc_inference_get_info(inf.get(), &info), "inference info");
  if (info.regime_warning) {
    std::fprintf(stderr,
                 "warning: p_hat*n/d = %.3g < 10; asymptotic intervals may be "
                 "unreliable\n",
                 info.regime_ratio);
  }
  Check(smc_inference_write(inf.get(), OutputPath(o).c_str(), Format(o)),
        "writing inference report");
  return 0;
}

double EvalFold(const Options& o, const std::string& train_path,
                const std::string& test_path) {
  // Shared dimensions: the larger of both files unless given explicitly.
  std::size_t rows = o.rows, cols = o.cols;
  if (rows == 0 || cols == 0) {
    Observed a = LoadWith(o, train_path, 0, 0);
    Observed b = LoadWith(o, test_path, 0, 0);
    std::size_t ra, ca, rb, cb;
    Check(smc_observed_shape(a.get(), &ra, &ca, nullptr), "shape");
    Check(smc_observed_shape(b.get(), &rb, &cb, nullptr), "shape");
    if (rows == 0) rows = std::max(ra, rb);
    if (cols == 0) cols = std::max(ca, cb);
  }
  Observed train = LoadWith(o, train_path, rows, cols);
  Observed test = LoadWith(o, test_path, rows, cols);
  Estimate est = MakeEstimate(o, train.get());
  Completion cm = MakeCompletion(o, est.get(), train.get());
  double rmse = 0.0;
  Check(smc_completion_rmse(cm.get(), test.get(), &rmse), "rmse");
  return rmse;
}

int CmdEval(const Options& o) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (!o.train.empty() || !o.test.empty()) {
    if (o.train.empty() || o.test.empty()) {
      throw UsageError("--train and --test must be given together");
    }
    pairs.emplace_back(o.train, o.test);
  }
  for (const std::string& f : o.folds) {
    const auto comma = f.find(',');
    if (comma == std::string::npos) throw UsageError("--fold expects TRAIN,TEST");
    pairs.emplace_back(f.substr(0, comma), f.substr(comma + 1));
  }
  if (pairs.empty()) throw UsageError("eval needs --train/--test or --fold");
  std::string out = "fold,rmse\n";
  double total = 0.0;
  char buf[64];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double rmse = EvalFold(o, pairs[i].first, pairs[i].second);
    total += rmse;
    std::snprintf(buf, sizeof buf, "%.17g", rmse);
    out += std::to_string(i + 1) + "," + buf + "\n";
  }
  std::snprintf(buf, sizeof buf, "%.17g", total / static_cast<double>(pairs.size()));
  out += std::string("mean,") + buf + "\n";
  std::FILE* f = o.output.empty() ? stdout : std::fopen(o.output.c_str(), "wb");
  if (f == nullptr) throw RuntimeError("cannot write " + o.output);
  std::fputs(out.c_str(), f);
  if (f != stdout) std::fclose(f);
  return 0;
}

int CmdSimulate(const Options& o) {
  if (o.n_list.empty() || o.p_list.empty()) {
    throw UsageError("simulate needs --n-list and --p-list");
  }
  if (o.format == "json" && (o.n_list.size() * o.p_list.size() != 1)) {
    throw UsageError("--format json supports a single (n, p) grid point");
  }
  std::vector<SimResult> results;
  for (std::size_t n : o.n_list) {
    for (double p : o.p_list) {
      smc_sim_config cfg;
      smc_sim_config_init(&cfg);
      cfg.n = n;
      cfg.d = o.d;
      cfg.p = p;
      cfg.sigma = o.sigma;
      cfg.true_rank = o.true_rank;
      cfg.replicates = o.reps;
      cfg.seed = o.seed;
      cfg.rank_constant = o.cd_const;
      const std::size_t d = o.d ? o.d : static_cast<std::size_t>(
                                            2.0 * std::sqrt(double(n)) + 0.5);
      if (d > n) std::fprintf(stderr, "warning: d=%zu exceeds n=%zu\n", d, n);
      smc_sim_result* raw = nullptr;
      Check(smc_simulate(&cfg, o.threads, &raw), "simulate");
      results.emplace_back(raw);
      std::fprintf(stderr, "simulate: n=%zu d=%zu p=%g done (%zu replicates)\n",
                   n, d, p, o.reps);
    }
  }
  if (o.format == "json") {
    Check(smc_sim_result_write(results[0].get(), OutputPath(o).c_str(),
                               SMC_FORMAT_JSON),
          "writing simulation");
    return 0;
  }
  std::vector<const smc_sim_result*> handles;
  for (const SimResult& r : results) handles.push_back(r.get());
  Check(smc_sim_results_write_csv(
            handles.data(), handles.size(), OutputPath(o).c_str(),
            o.aggregates_out.empty() ? nullptr : o.aggregates_out.c_str()),
        "writing simulation");
  return 0;
}

void AddInputFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Input matrix file");
  cmd->add_option("--input-format", o.input_format, "triplet or dense")
      ->check(CLI::IsMember({"triplet", "dense"}));
  cmd->add_option("--rows", o.rows, "Row count override (0: max id)");
  cmd->add_option("--cols", o.cols, "Column count override (0: max id)");
  cmd->add_option("--delimiter", o.delimiter, "Triplet delimiter (tab, space, comma or a character)");
  cmd->add_option("--missing-token", o.missing_token, "Missing-cell token for dense CSV");
  cmd->add_flag("--dedup-average", o.dedup_average, "Average duplicate cells");
}

void AddOutputFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void AddModelFlags(CLI::App* cmd, Options& o, bool signs) {
  cmd->add_option("--rank", o.rank, "Rank or 'auto'");
  cmd->add_option("--cd-const", o.cd_const, "Rank threshold constant c")
      ->check(CLI::PositiveNumber);
  if (signs) {
    cmd->add_option("--sign-method", o.sign_method, "exhaustive, heuristic or auto")
        ->check(CLI::IsMember({"exhaustive", "heuristic", "auto"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral estimation and completion of partially observed low-rank matrices"};
  app.require_subcommand(1);
  Options o;

  auto* estimate = app.add_subcommand("estimate", "Estimate singular values and vectors");
  AddInputFlags(estimate, o);
  AddModelFlags(estimate, o, false);
  AddOutputFlags(estimate, o);

  auto* complete = app.add_subcommand("complete", "Estimate, resolve signs and assemble");
  AddInputFlags(complete, o);
  AddModelFlags(complete, o, true);
  AddOutputFlags(complete, o);
  complete->add_option("--dense-out", o.dense_out, "Write the dense completed matrix as CSV");
  complete->add_option("--predict", o.predict, "1-based ROW,COL to predict (repeatable)");

  auto* rank = app.add_subcommand("rank", "Select the rank by eigenvalue threshold");
  AddInputFlags(rank, o);
  rank->add_option("--cd-const", o.cd_const, "Rank threshold constant c")
      ->check(CLI::PositiveNumber);
  AddOutputFlags(rank, o);
  rank->add_option("--scree-out", o.rank_scree_out, "Also write the scree CSV here");
  rank->add_option("--k", o.scree_k, "Scree length (0: all)");

  auto* infer = app.add_subcommand("infer", "Confidence intervals for the singular values");
  AddInputFlags(infer, o);
  AddModelFlags(infer, o, true);
  AddOutputFlags(infer, o);
  infer->add_option("--alpha", o.alpha, "1 - confidence level");

  auto* eval = app.add_subcommand("eval", "Held-out RMSE of the completed matrix");
  AddInputFlags(eval, o);
  AddModelFlags(eval, o, true);
  eval->add_option("--train", o.train, "Training triplets");
  eval->add_option("--test", o.test, "Test triplets");
  eval->add_option("--fold", o.folds, "TRAIN,TEST pair (repeatable)");
  eval->add_option("--output", o.output, "Output CSV (default stdout)");

  auto* scree = app.add_subcommand("scree", "Eigenvalue ladder of the debiased Gram as CSV");
  AddInputFlags(scree, o);
  scree->add_option("--k", o.scree_k, "Number of values (0: all)");
  scree->add_option("--output", o.output, "Output CSV (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo study on synthetic instances");
  simulate->add_option("--n-list", o.n_list, "Row counts")->delimiter(',');
  simulate->add_option("--p-list", o.p_list, "Observation probabilities")->delimiter(',');
  simulate->add_option("--d", o.d, "Column count (0: round(2 sqrt(n)))");
  simulate->add_option("--sigma", o.sigma, "Noise standard deviation");
  simulate->add_option("--true-rank", o.true_rank, "Rank of the generated matrix");
  simulate->add_option("--reps", o.reps, "Replicates per grid point");
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  simulate->add_option("--cd-const", o.cd_const, "Rank threshold constant c")
      ->check(CLI::PositiveNumber);
  AddOutputFlags(simulate, o);
  o.format = "json";
  simulate->add_option("--aggregates-out", o.aggregates_out, "Aggregates CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      // CSV is the natural default for replicate tables.
      if (simulate->count("--format") == 0) o.format = "csv";
      return CmdSimulate(o);
    }
    if (estimate->parsed() || complete->parsed() || infer->parsed() ||
        eval->parsed()) {
      ParseRank(o.rank);
    }
    if (estimate->parsed()) return CmdEstimate(o);
    if (complete->parsed()) return CmdComplete(o);
    if (rank->parsed()) return CmdRank(o);
    if (infer->parsed()) return CmdInfer(o);
    if (eval->parsed()) return CmdEval(o);
    if (scree->parsed()) return CmdScree(o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
