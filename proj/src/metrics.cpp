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

#include "smc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "smc/error.hpp"
#include "smc/inference.hpp"

namespace smc {
namespace {

void CheckOrthonormal(const Eigen::MatrixXd& Z) {
  const Eigen::Index m = Z.cols();
  if (m == 0) return;
  const double err =
      (Z.transpose() * Z - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (err > 1e-8) {
    Fail(ErrorCode::kInvalidArgument, "sin_theta: columns not orthonormal");
  }
}

}  // namespace

double SinThetaSq(const Eigen::MatrixXd& Z1, const Eigen::MatrixXd& Z2) {
  if (Z1.rows() != Z2.rows() || Z1.cols() != Z2.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "sin_theta: shape mismatch");
  }
  CheckOrthonormal(Z1);
  CheckOrthonormal(Z2);
  const auto m = static_cast<double>(Z1.cols());
  const double v = m - (Z1.transpose() * Z2).squaredNorm();
  return std::clamp(v, 0.0, m);
}

Eigen::MatrixXd SignAlign(const Eigen::MatrixXd& V_hat, const Eigen::MatrixXd& V) {
  if (V_hat.rows() != V.rows() || V_hat.cols() != V.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "sign_align: shape mismatch");
  }
  Eigen::MatrixXd out = V_hat;
  for (Eigen::Index i = 0; i < out.cols(); ++i) {
    if (out.col(i).dot(V.col(i)) < 0.0) out.col(i) *= -1.0;
  }
  return out;
}

double FrobeniusMse(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                    double normalizer) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "frobenius_mse: shape mismatch");
  }
  if (!(normalizer > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "frobenius_mse: normalizer must be > 0");
  }
  return (A - B).squaredNorm() / normalizer;
}

double RmseOnOmega(const CompletedMatrix& cm, const ObservedMatrix& test) {
  if (test.empty()) Fail(ErrorCode::kInvalidArgument, "rmse: empty test set");
  if (test.rows() != cm.rows() || test.cols() != cm.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "rmse: test shape differs");
  }
  double total = 0.0;
  for (const Entry& e : test.entries()) {
    const double diff = cm.predict(e.row, e.col) - e.value;
    total += diff * diff;
  }
  return std::sqrt(total / static_cast<double>(test.nnz()));
}

double StandardizedLambdaStat(const SpectralEstimate& est,
                              const GroundTruth& truth, std::size_t m) {
  if (m < 1 || m > est.rank || m > truth.rank()) {
    Fail(ErrorCode::kInvalidArgument, "z statistic: m out of range");
  }
  const auto mm = static_cast<Eigen::Index>(m);
  const double sigma_lambda = std::sqrt(std::max(SigmaLambda2(truth, m), 0.0));
  if (!(sigma_lambda > 0.0)) {
    Fail(ErrorCode::kDegenerate, "z statistic: sigma_lambda is zero");
  }
  const double diff = est.lambda_hat.head(mm).squaredNorm() -
                      truth.lambdas.head(mm).squaredNorm();
  const double scale = std::sqrt(static_cast<double>(truth.rows()) *
                                 static_cast<double>(truth.cols()));
  return diff / (scale * sigma_lambda);
}

std::vector<int> OracleSigns(const SpectralEstimate& est,
                             const GroundTruth& truth) {
  if (est.rank > truth.rank()) {
    Fail(ErrorCode::kInvalidArgument, "oracle signs: rank exceeds truth");
  }
  std::vector<int> s(est.rank);
  for (std::size_t i = 0; i < est.rank; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const int sv = est.V_hat.col(ii).dot(truth.V.col(ii)) < 0.0 ? -1 : 1;
    const int su = est.U_hat.col(ii).dot(truth.U.col(ii)) < 0.0 ? -1 : 1;
    s[i] = sv * su;
  }
  return s;
}

}  // namespace smc
