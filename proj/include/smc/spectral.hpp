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

#ifndef SMC_SPECTRAL_HPP_
#define SMC_SPECTRAL_HPP_

#include <cstddef>

#include <Eigen/Dense>

#include "smc/eigen_solver.hpp"
#include "smc/observed.hpp"

namespace smc {

/// Bias-adjusted spectral estimate of the rank-r singular triplets of M0.
struct SpectralEstimate {
  Eigen::MatrixXd U_hat;        ///< n x r, leading eigenvectors of the left Gram
  Eigen::MatrixXd V_hat;        ///< d x r, leading eigenvectors of the right Gram
  Eigen::VectorXd lambda_hat;   ///< r estimated singular values, descending
  double p_hat = 0.0;
  double tau_hat = 0.0;         ///< mean of the d - r trailing eigenvalues
  std::size_t rank = 0;
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::size_t clamp_count = 0;  ///< singular values clamped at zero
  EigenLadder right_ladder;     ///< top r eigenvalues + trace of the right Gram
  EigenLadder left_ladder;      ///< top r eigenvalues + trace of the left Gram
};

/// (trace - sum of the top r values) / (d - r). Equal to the mean
/// eigenvalue over the orthogonal complement of the top-r eigenvectors.
double ResidualTau(const EigenLadder& ladder, std::size_t r, std::size_t d);

struct SingularValues {
  Eigen::VectorXd values;
  std::size_t clamped = 0;
};

/// sqrt(max(top_i - tau, 0)) / p_hat, with the number of clamps reported.
SingularValues SingularValuesFromEigs(const Eigen::VectorXd& top_values,
                                      double tau_hat, double p_hat);

/// The non-iterative estimator: observation rate, diagonal-debiased Gram
/// matrices on both sides, their top-r eigenvectors, and singular values
/// corrected by the trailing-eigenvalue mean.
SpectralEstimate EstimateSingularTriplets(const ObservedMatrix& obs,
                                          std::size_t r);

}  // namespace smc

#endif  // SMC_SPECTRAL_HPP_
