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

#ifndef SMC_GRAM_HPP_
#define SMC_GRAM_HPP_

#include <Eigen/Dense>

#include "smc/observed.hpp"

namespace smc {

// Fraction of observed cells, |Omega| / (n d).
double EstimateObservationRate(const ObservedMatrix& obs);

// M^T M (d x d) of the zero-imputed matrix. Accumulates each row's outer
// product over its observed support in row order; mirrored from the upper
// triangle so the result is exactly symmetric.
Eigen::MatrixXd GramRight(const ObservedMatrix& obs);

// M M^T (n x n), accumulated column by column.
Eigen::MatrixXd GramLeft(const ObservedMatrix& obs);

// S - (1 - p) diag(S): off-diagonal kept, diagonal scaled by p.
Eigen::MatrixXd BiasAdjust(const Eigen::MatrixXd& gram, double p);

// E[M^T M] = p^2 M0^T M0 + p(1-p) diag(M0^T M0) + n p sigma^2 I.
Eigen::MatrixXd ExpectedGramRight(const GroundTruth& truth);

// E[M M^T] = p^2 M0 M0^T + p(1-p) diag(M0 M0^T) + d p sigma^2 I.
Eigen::MatrixXd ExpectedGramLeft(const GroundTruth& truth);

struct GramPair {
  Eigen::MatrixXd sigma_right;
  Eigen::MatrixXd sigma_left;
  double p_hat = 0.0;
  bool adjusted = false;
};

// Both Grams with the p_hat adjustment applied when `adjust` is set.
GramPair BuildGrams(const ObservedMatrix& obs, bool adjust = true);

}  // namespace smc

#endif  // SMC_GRAM_HPP_
