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

#ifndef SMC_RANK_HPP_
#define SMC_RANK_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "smc/eigen_solver.hpp"
#include "smc/observed.hpp"

namespace smc {

inline constexpr double kDefaultRankConstant = 1.0;

struct RankDecision {
  std::size_t r_hat = 0;
  double threshold = 0.0;     // p_hat^2 n c log d
  Eigen::VectorXd eigenvalues;  // full descending ladder of the debiased Gram
  double c_const = kDefaultRankConstant;
};

// Counts eigenvalues at or above p_hat^2 * n * c * log(d). The ladder must be
// complete.
RankDecision EstimateRank(const EigenLadder& ladder, double p_hat,
                          std::size_t n, std::size_t d, double c_const);

// Computes the full eigenvalue ladder of the debiased right Gram first.
RankDecision EstimateRank(const ObservedMatrix& obs,
                          double c_const = kDefaultRankConstant);

// Top-k (1-based index, eigenvalue) pairs.
std::vector<std::pair<std::size_t, double>> Scree(const EigenLadder& ladder,
                                                  std::size_t k);
std::vector<std::pair<std::size_t, double>> Scree(const Eigen::VectorXd& values,
                                                  std::size_t k);

}  // namespace smc

#endif  // SMC_RANK_HPP_
