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

#ifndef SMC_METRICS_HPP_
#define SMC_METRICS_HPP_

#include <cstddef>

#include <Eigen/Dense>

#include "smc/observed.hpp"
#include "smc/signs.hpp"
#include "smc/spectral.hpp"

namespace smc {

// 1/2 ||Z1 Z1^T - Z2 Z2^T||_F^2 for column-orthonormal Z1, Z2, computed as
// m - ||Z1^T Z2||_F^2 and clamped into [0, m].
double SinThetaSq(const Eigen::MatrixXd& Z1, const Eigen::MatrixXd& Z2);

// Flips each column of V_hat by sign(<V_hat_i, V_i>); zero maps to +1.
Eigen::MatrixXd SignAlign(const Eigen::MatrixXd& V_hat, const Eigen::MatrixXd& V);

// ||A - B||_F^2 / normalizer.
double FrobeniusMse(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                    double normalizer);

// Root mean squared prediction error over the cells of `test`.
double RmseOnOmega(const CompletedMatrix& cm, const ObservedMatrix& test);

// (sum_{i<=m} lambda_hat_i^2 - sum_{i<=m} lambda_i^2) / (sqrt(n d) sigma_lambda)
// with sigma_lambda from the true parameters.
double StandardizedLambdaStat(const SpectralEstimate& est,
                              const GroundTruth& truth, std::size_t m);

// s0_i = sign<V_hat_i, V_i> sign<U_hat_i, U_i>.
std::vector<int> OracleSigns(const SpectralEstimate& est,
                             const GroundTruth& truth);

}  // namespace smc

#endif  // SMC_METRICS_HPP_
