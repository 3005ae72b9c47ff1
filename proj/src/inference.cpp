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

#include "smc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smc/error.hpp"

namespace smc {
namespace {

// W_ij = sum_k sum_h M_kh^2 U_ki V_hi U_kj V_hj, accumulated row by row:
// W += (U_k U_k^T) .* (V^T diag(M_k.^2) V).
template <typename RowFn>
Eigen::MatrixXd WeightedFactorMoments(std::size_t n, const Eigen::MatrixXd& U,
                                      const Eigen::MatrixXd& V, RowFn&& row) {
  const Eigen::Index r = U.cols();
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(r, r);
  Eigen::VectorXd m_row;
  for (std::size_t k = 0; k < n; ++k) {
    row(k, m_row);
    const Eigen::VectorXd w = m_row.array().square();
    const Eigen::MatrixXd G = V.transpose() * w.asDiagonal() * V;
    const auto kk = static_cast<Eigen::Index>(k);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) {
        W(i, j) += U(kk, i) * U(kk, j) * G(i, j);
      }
    }
  }
  return (W + W.transpose()) / 2.0;
}

Eigen::MatrixXd UpsilonFromMoments(const Eigen::MatrixXd& W,
                                   const Eigen::VectorXd& b, double p,
                                   double sigma2) {
  Eigen::MatrixXd ups = (1.0 - p) / p * (W - b * b.transpose());
  ups.diagonal().array() += sigma2 / p;
  return (ups + ups.transpose()) / 2.0;
}

double SigmaLambda2FromMoments(const Eigen::MatrixXd& W,
                               const Eigen::VectorXd& b, double p,
                               double sigma2, std::size_t m) {
  const auto mm = static_cast<Eigen::Index>(m);
  const Eigen::VectorXd bm = b.head(mm);
  const double quad = bm.dot(W.topLeftCorner(mm, mm) * bm);
  const double sum_b2 = bm.squaredNorm();
  return 4.0 * (1.0 - p) / p * (quad - sum_b2 * sum_b2) +
         4.0 * sigma2 / p * sum_b2;
}

Eigen::MatrixXd PlugInMoments(const CompletedMatrix& cm) {
  const SpectralEstimate& est = cm.estimate;
  Eigen::VectorXd scaled(static_cast<Eigen::Index>(est.rank));
  for (std::size_t i = 0; i < est.rank; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    scaled(ii) = cm.signs[i] * est.lambda_hat(ii);
  }
  return WeightedFactorMoments(
      est.n_rows, est.U_hat, est.V_hat,
      [&](std::size_t k, Eigen::VectorXd& out) {
        const Eigen::VectorXd coef =
            est.U_hat.row(static_cast<Eigen::Index>(k)).transpose().cwiseProduct(
                scaled);
        out = est.V_hat * coef;
      });
}

Eigen::MatrixXd TrueMoments(const GroundTruth& truth) {
  return WeightedFactorMoments(
      truth.rows(), truth.U, truth.V, [&](std::size_t k, Eigen::VectorXd& out) {
        out = truth.M0.row(static_cast<Eigen::Index>(k)).transpose();
      });
}

Eigen::VectorXd PlugInB(const SpectralEstimate& est) {
  return est.lambda_hat / std::sqrt(static_cast<double>(est.n_rows) *
                                    static_cast<double>(est.n_cols));
}

void CheckPlugIn(const CompletedMatrix& cm) {
  const double p = cm.estimate.p_hat;
  if (!(p > 0.0 && p <= 1.0)) {
    Fail(ErrorCode::kDegenerate, "inference needs p_hat in (0, 1]");
  }
  if (cm.signs.size() != cm.estimate.rank) {
    Fail(ErrorCode::kInvalidArgument, "completed matrix signs inconsistent");
  }
}

void CheckM(std::size_t m, std::size_t r) {
  if (m < 1 || m > r) {
    Fail(ErrorCode::kInvalidArgument,
         "m must be in [1, r]; got " + std::to_string(m));
  }
}

}  // namespace

double Sigma2Hat(double tau_hat, double p_hat, std::size_t n) {
  if (!(p_hat > 0.0)) Fail(ErrorCode::kDegenerate, "sigma2: p_hat must be > 0");
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "sigma2: n must be > 0");
  return std::max(tau_hat / (static_cast<double>(n) * p_hat * p_hat), 0.0);
}

Eigen::MatrixXd UpsilonMatrix(const CompletedMatrix& cm, double sigma2) {
  CheckPlugIn(cm);
  return UpsilonFromMoments(PlugInMoments(cm), PlugInB(cm.estimate),
                            cm.estimate.p_hat, sigma2);
}

Eigen::MatrixXd UpsilonMatrix(const GroundTruth& truth) {
  return UpsilonFromMoments(TrueMoments(truth), truth.normalized_values(),
                            truth.p, truth.sigma * truth.sigma);
}

double SigmaLambda2(const CompletedMatrix& cm, double sigma2, std::size_t m) {
  CheckPlugIn(cm);
  CheckM(m, cm.estimate.rank);
  return SigmaLambda2FromMoments(PlugInMoments(cm), PlugInB(cm.estimate),
                                 cm.estimate.p_hat, sigma2, m);
}

double SigmaLambda2(const GroundTruth& truth, std::size_t m) {
  CheckM(m, truth.rank());
  return SigmaLambda2FromMoments(TrueMoments(truth), truth.normalized_values(),
                                 truth.p, truth.sigma * truth.sigma, m);
}

double NormalQuantile(double prob) {
  if (!(prob > 0.0 && prob < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "normal quantile needs prob in (0, 1)");
  }
  // Acklam's rational approximation followed by Halley refinement.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (prob < low) {
    const double q = std::sqrt(-2.0 * std::log(prob));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (prob <= 1.0 - low) {
    const double q = prob - 0.5;
    const double rr = q * q;
    x = (((((a[0] * rr + a[1]) * rr + a[2]) * rr + a[3]) * rr + a[4]) * rr +
         a[5]) * q /
        (((((b[0] * rr + b[1]) * rr + b[2]) * rr + b[3]) * rr + b[4]) * rr + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-prob));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  constexpr double kSqrt2Pi = 2.5066282746310002;
  for (int it = 0; it < 2; ++it) {
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - prob;
    const double u = e * kSqrt2Pi * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
  }
  return x;
}

std::vector<Interval> ConfidenceIntervals(const SpectralEstimate& est,
                                          const Eigen::MatrixXd& upsilon,
                                          double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "alpha must be in (0, 1)");
  }
  const auto r = static_cast<Eigen::Index>(est.rank);
  if (upsilon.rows() != r || upsilon.cols() != r) {
    Fail(ErrorCode::kDimensionMismatch, "upsilon must be r x r");
  }
  const double z = NormalQuantile(1.0 - alpha / 2.0);
  std::vector<Interval> out;
  out.reserve(est.rank);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double half = z * std::sqrt(std::max(upsilon(i, i), 0.0));
    out.push_back({est.lambda_hat(i) - half, est.lambda_hat(i) + half});
  }
  return out;
}

InferenceReport Infer(const CompletedMatrix& cm, double alpha, std::size_t m) {
  CheckPlugIn(cm);
  const SpectralEstimate& est = cm.estimate;
  if (m == 0) m = est.rank;
  CheckM(m, est.rank);
  InferenceReport rep;
  rep.alpha = alpha;
  rep.m = m;
  rep.sigma2_hat = Sigma2Hat(est.tau_hat, est.p_hat, est.n_rows);
  rep.b_hat = PlugInB(est);
  const Eigen::MatrixXd W = PlugInMoments(cm);
  rep.upsilon = UpsilonFromMoments(W, rep.b_hat, est.p_hat, rep.sigma2_hat);
  rep.variance_used = rep.upsilon.diagonal().cwiseMax(0.0);
  rep.sigma_lambda2 =
      SigmaLambda2FromMoments(W, rep.b_hat, est.p_hat, rep.sigma2_hat, m);
  rep.intervals = ConfidenceIntervals(est, rep.upsilon, alpha);
  rep.regime_ratio = est.p_hat * static_cast<double>(est.n_rows) /
                     static_cast<double>(est.n_cols);
  rep.regime_warning = rep.regime_ratio < kMinRegimeRatio;
  return rep;
}

}  // namespace smc
