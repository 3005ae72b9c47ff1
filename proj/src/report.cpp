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

#include "smc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "smc/error.hpp"

namespace smc {
namespace {

Json VectorJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Row-major nested arrays.
Json MatrixJson(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Json LadderJson(const EigenLadder& ladder) {
  return Json{{"values", VectorJson(ladder.values)},
              {"trace", ladder.full_trace},
              {"dim", ladder.dim}};
}

const char* MethodName(SignMethod m) {
  switch (m) {
    case SignMethod::kExhaustive: return "exhaustive";
    case SignMethod::kHeuristic: return "heuristic";
    case SignMethod::kAuto: return "auto";
  }
  return "unknown";
}

void Dump(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        Dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        Dump(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out += std::isfinite(d) ? NumberToString(d) : "null";
      break;
    }
    default:
      out += v.dump();
  }
}

std::string CsvOfVector(const char* column, const Eigen::VectorXd& v) {
  std::string out = std::string("index,") + column + "\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += std::to_string(i + 1) + "," + NumberToString(v(i)) + "\n";
  }
  return out;
}

}  // namespace

std::string NumberToString(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json ToJson(const SpectralEstimate& est) {
  return Json{{"rank", est.rank},
              {"n_rows", est.n_rows},
              {"n_cols", est.n_cols},
              {"p_hat", est.p_hat},
              {"tau_hat", est.tau_hat},
              {"lambda_hat", VectorJson(est.lambda_hat)},
              {"U_hat", MatrixJson(est.U_hat)},
              {"V_hat", MatrixJson(est.V_hat)},
              {"clamp_count", est.clamp_count},
              {"right_ladder", LadderJson(est.right_ladder)},
              {"left_ladder", LadderJson(est.left_ladder)}};
}

Json ToJson(const CompletedMatrix& cm) {
  return Json{{"estimate", ToJson(cm.estimate)},
              {"signs", cm.signs},
              {"method", MethodName(cm.method)}};
}

Json ToJson(const RankDecision& decision) {
  return Json{{"r_hat", decision.r_hat},
              {"threshold", decision.threshold},
              {"c_const", decision.c_const},
              {"eigenvalues", VectorJson(decision.eigenvalues)}};
}

Json ToJson(const InferenceReport& report) {
  Json intervals = Json::array();
  for (const Interval& iv : report.intervals) {
    intervals.push_back(Json{{"lower", iv.lower}, {"upper", iv.upper}});
  }
  return Json{{"sigma2_hat", report.sigma2_hat},
              {"b_hat", VectorJson(report.b_hat)},
              {"upsilon", MatrixJson(report.upsilon)},
              {"variance_raw", VectorJson(report.upsilon.diagonal())},
              {"variance_clamped", VectorJson(report.variance_used)},
              {"sigma_lambda2", report.sigma_lambda2},
              {"m", report.m},
              {"alpha", report.alpha},
              {"intervals", std::move(intervals)},
              {"regime_ratio", report.regime_ratio},
              {"regime_warning", report.regime_warning}};
}

Json ToJson(const SimResult& result) {
  const SimConfig& c = result.config;
  Json rows = Json::array();
  for (const MetricRow& r : result.rows) {
    rows.push_back(Json{{"replicate", r.replicate},
                        {"mse_matrix", r.mse_matrix},
                        {"mse_lambda", r.mse_lambda},
                        {"mse_v", r.mse_v},
                        {"mse_u", r.mse_u},
                        {"sin2_v", r.sin2_v},
                        {"sin2_u", r.sin2_u},
                        {"z_stat", r.z_stat},
                        {"r_hat", r.r_hat},
                        {"sign_correct", r.sign_correct},
                        {"clamped", r.clamped}});
  }
  Json aggregates = Json::object();
  for (const MetricSummary& s : result.aggregates) {
    aggregates[s.name] =
        Json{{"mean", s.mean}, {"std_error", s.std_error}, {"count", s.count}};
  }
  return Json{{"config",
               Json{{"n", c.n},
                    {"d", c.resolved_d()},
                    {"p", c.p},
                    {"sigma", c.sigma},
                    {"true_rank", c.true_rank},
                    {"factor_range", c.factor_range},
                    {"replicates", c.replicates},
                    {"seed", c.seed},
                    {"metrics_m", c.resolved_m()},
                    {"rank_constant", c.rank_constant}}},
              {"rows", std::move(rows)},
              {"aggregates", std::move(aggregates)}};
}

std::string DumpJson(const Json& value) {
  std::string out;
  Dump(value, out);
  out += '\n';
  return out;
}

void WriteTextFile(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

std::string ScreeCsv(const std::vector<std::pair<std::size_t, double>>& scree) {
  std::string out = "index,value\n";
  for (const auto& [i, v] : scree) {
    out += std::to_string(i) + "," + NumberToString(v) + "\n";
  }
  return out;
}

std::string DenseCsv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += NumberToString(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void WriteReport(const SpectralEstimate& est, const std::filesystem::path& path,
                 ReportFormat format) {
  WriteTextFile(format == ReportFormat::kJson ? DumpJson(ToJson(est))
                                              : CsvOfVector("lambda_hat", est.lambda_hat),
                path);
}

void WriteReport(const CompletedMatrix& cm, const std::filesystem::path& path,
                 ReportFormat format) {
  if (format == ReportFormat::kJson) {
    WriteTextFile(DumpJson(ToJson(cm)), path);
    return;
  }
  std::string out = "index,sign,lambda_hat\n";
  for (std::size_t i = 0; i < cm.signs.size(); ++i) {
    out += std::to_string(i + 1) + "," + std::to_string(cm.signs[i]) + "," +
           NumberToString(cm.estimate.lambda_hat(static_cast<Eigen::Index>(i))) +
           "\n";
  }
  WriteTextFile(out, path);
}

void WriteReport(const RankDecision& decision, const std::filesystem::path& path,
                 ReportFormat format) {
  WriteTextFile(format == ReportFormat::kJson
                    ? DumpJson(ToJson(decision))
                    : ScreeCsv(Scree(decision.eigenvalues,
                                     static_cast<std::size_t>(
                                         decision.eigenvalues.size()))),
                path);
}

void WriteReport(const InferenceReport& report, const std::filesystem::path& path,
                 ReportFormat format) {
  if (format == ReportFormat::kJson) {
    WriteTextFile(DumpJson(ToJson(report)), path);
    return;
  }
  std::string out = "index,b_hat,variance_raw,variance_clamped,lower,upper\n";
  for (std::size_t i = 0; i < report.intervals.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    out += std::to_string(i + 1) + "," + NumberToString(report.b_hat(ii)) + "," +
           NumberToString(report.upsilon(ii, ii)) + "," +
           NumberToString(report.variance_used(ii)) + "," +
           NumberToString(report.intervals[i].lower) + "," +
           NumberToString(report.intervals[i].upper) + "\n";
  }
  WriteTextFile(out, path);
}

void WriteReport(const SimResult& result, const std::filesystem::path& path,
                 ReportFormat format) {
  WriteTextFile(format == ReportFormat::kJson ? DumpJson(ToJson(result))
                                              : SimRowsCsv({result}),
                path);
}

}  // namespace smc
