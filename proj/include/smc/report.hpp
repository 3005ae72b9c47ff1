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

#ifndef SMC_REPORT_HPP_
#define SMC_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "smc/inference.hpp"
#include "smc/rank.hpp"
#include "smc/signs.hpp"
#include "smc/sim.hpp"
#include "smc/spectral.hpp"

namespace smc {

enum class ReportFormat { kJson, kCsv };

using Json = nlohmann::json;

Json ToJson(const SpectralEstimate& est);
Json ToJson(const CompletedMatrix& cm);
Json ToJson(const RankDecision& decision);
Json ToJson(const InferenceReport& report);
Json ToJson(const SimResult& result);

// Keys sorted, every float printed with 17 significant digits, non-finite
// values as null. Identical input gives identical bytes.
std::string DumpJson(const Json& value);

std::string NumberToString(double v);

// JSON or a flat CSV view (with a header row) of the result.
void WriteReport(const SpectralEstimate& est, const std::filesystem::path& path,
                 ReportFormat format = ReportFormat::kJson);
void WriteReport(const CompletedMatrix& cm, const std::filesystem::path& path,
                 ReportFormat format = ReportFormat::kJson);
void WriteReport(const RankDecision& decision, const std::filesystem::path& path,
                 ReportFormat format = ReportFormat::kJson);
void WriteReport(const InferenceReport& report, const std::filesystem::path& path,
                 ReportFormat format = ReportFormat::kJson);
void WriteReport(const SimResult& result, const std::filesystem::path& path,
                 ReportFormat format = ReportFormat::kCsv);

std::string ScreeCsv(const std::vector<std::pair<std::size_t, double>>& scree);
std::string DenseCsv(const Eigen::MatrixXd& m);

void WriteTextFile(const std::string& text, const std::filesystem::path& path);

}  // namespace smc

#endif  // SMC_REPORT_HPP_
