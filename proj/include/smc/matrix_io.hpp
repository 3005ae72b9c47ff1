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

#ifndef SMC_MATRIX_IO_HPP_
#define SMC_MATRIX_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "smc/observed.hpp"

namespace smc {

enum class DuplicatePolicy { kError, kAverage };

struct IoOptions {
  // ' ' or '\t' split on any run of blanks; anything else splits exactly.
  char delimiter = '\t';
  // 0 means "max id seen".
  std::size_t rows = 0;
  std::size_t cols = 0;
  DuplicatePolicy dedup = DuplicatePolicy::kError;
};

// Triplet text file with 1-based (row, col, value[, ignored...]) lines.
// Blank lines and lines starting with '#' are skipped.
ObservedMatrix LoadTriplets(const std::filesystem::path& path,
                            const IoOptions& options = {});

// Same parser over an in-memory buffer; `source` names it in error messages.
ObservedMatrix ParseTriplets(const std::string& text, const IoOptions& options,
                             const std::string& source = "<memory>");

// 1-based triplet lines, values with 17 significant digits.
void WriteTriplets(const ObservedMatrix& obs, const std::filesystem::path& path,
                   char delimiter = '\t');

// Rectangular CSV where cells equal to `missing_token` are unobserved.
ObservedMatrix LoadDense(const std::filesystem::path& path,
                         const std::string& missing_token = "NA");
ObservedMatrix ParseDense(const std::string& text,
                          const std::string& missing_token = "NA");

// P_Omega: values of `dense` at the observed cells of `mask_of`, row-major.
std::vector<Entry> ProjectOmega(const Eigen::MatrixXd& dense,
                                const ObservedMatrix& mask_of);

}  // namespace smc

#endif  // SMC_MATRIX_IO_HPP_
