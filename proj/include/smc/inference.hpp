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

#ifndef SMC_INFERENCE_HPP_
#define SMC_INFERENCE_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "smc/observed.hpp"
#include "smc/signs.hpp"
#include "smc/spectral.hpp"

namespace smc {

// Asymptotic-normality regime check: intervals are flagged when p n / d is
// below this value.
inline constexpr double kMinRegimeRatio = 10.0;

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct InferenceReport {
  double sigma2_hat = 0.0;
  Eigen::VectorXd b_hat;            // lambda_hat / sqrt(n d)
  Eigen::MatrixXd upsilon;          // raw plug-in covariance of lambda_hat
  Eigen::VectorXd variance_used;    // max(diag(upsilon), 0)
  double sigma_lambda2 = 0.0;       // plug-in variance of sum_{i<=m} lambda^2
  std::size_t m = 0;
  std::vector<Interval> intervals;
  double alpha = 0.05;
  double regime_ratio = 0.0;        // p_hat n / d
  bool regime_warning = false;
};

// tau_hat / (n p_hat^2), clamped at 0.
double Sigma2Hat(double tau_hat, double p_hat, std::size_t n);

// Plug-in covariance of (lambda_1..lambda_r) with M_hat(s) for M0, the
// estimated factors, b_hat and p_hat. Exactly symmetric.
Eigen::MatrixXd UpsilonMatrix(const CompletedMatrix& cm, double sigma2);

// Same formula evaluated at the true parameters.
Eigen::MatrixXd UpsilonMatrix(const GroundTruth& truth);

// Plug-in variance of sum_{i<=m} lambda_hat_i^2 (scaled by n d).
double SigmaLambda2(const CompletedMatrix& cm, double sigma2, std::size_t m);
double SigmaLambda2(const GroundTruth& truth, std::size_t m);

// Standard normal quantile, |error| well below 1e-12 on (0, 1).
double NormalQuantile(double prob);

// lambda_hat_i -/+ z_{1-alpha/2} sqrt(max(upsilon_ii, 0)).
std::vector<Interval> ConfidenceIntervals(const SpectralEstimate& est,
                                          const Eigen::MatrixXd& upsilon,
                                          double alpha);

InferenceReport Infer(const CompletedMatrix& cm, double alpha = 0.05,
                      std::size_t m = 0);

}  // namespace smc

#endif  // SMC_INFERENCE_HPP_
