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

#include "smc/signs.hpp"

#include <cstdint>
#include <string>

#include "smc/eigen_solver.hpp"
#include "smc/error.hpp"
#include "smc/gram.hpp"

namespace smc {
namespace {

int SignOf(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace

double CompletedMatrix::predict(std::size_t k, std::size_t h) const {
  if (k >= rows() || h >= cols()) {
    Fail(ErrorCode::kInvalidArgument, "predict: cell out of range");
  }
  const auto kk = static_cast<Eigen::Index>(k);
  const auto hh = static_cast<Eigen::Index>(h);
  double v = 0.0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    v += signs[i] * estimate.lambda_hat(ii) * estimate.U_hat(kk, ii) *
         estimate.V_hat(hh, ii);
  }
  return v;
}

Eigen::MatrixXd CompletedMatrix::dense() const {
  Eigen::VectorXd scaled(static_cast<Eigen::Index>(signs.size()));
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    scaled(ii) = signs[i] * estimate.lambda_hat(ii);
  }
  return estimate.U_hat * scaled.asDiagonal() * estimate.V_hat.transpose();
}

double ObservedResidual(const SpectralEstimate& est, const std::vector<int>& s,
                        const ObservedMatrix& obs) {
  if (s.size() != est.rank) {
    Fail(ErrorCode::kInvalidArgument, "sign vector length differs from rank");
  }
  const auto r = static_cast<Eigen::Index>(est.rank);
  double total = 0.0;
  for (const Entry& e : obs.entries()) {
    const auto k = static_cast<Eigen::Index>(e.row);
    const auto h = static_cast<Eigen::Index>(e.col);
    double pred = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) {
      pred += s[static_cast<std::size_t>(i)] * est.lambda_hat(i) *
              est.U_hat(k, i) * est.V_hat(h, i);
    }
    const double diff = pred - e.value;
    total += diff * diff;
  }
  return total;
}

std::vector<int> ResolveSignsExhaustive(const SpectralEstimate& est,
                                        const ObservedMatrix& obs,
                                        std::size_t budget) {
  const std::size_t r = est.rank;
  if (r > budget || r >= 63) {
    Fail(ErrorCode::kBudgetExceeded,
         "rank " + std::to_string(r) + " exceeds the exhaustive sign budget " +
             std::to_string(budget) + "; use the heuristic method");
  }
  if (obs.rows() != est.n_rows || obs.cols() != est.n_cols) {
    Fail(ErrorCode::kDimensionMismatch, "observed matrix shape differs");
  }
  // Candidate bit (r-1-i) set means s_i = -1, so counting upward walks the
  // lexicographic order with +1 first.
  std::vector<int> best(r, 1), s(r);
  double best_residual = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << r); ++code) {
    for (std::size_t i = 0; i < r; ++i) {
      s[i] = (code >> (r - 1 - i)) & 1u ? -1 : 1;
    }
    const double res = ObservedResidual(est, s, obs);
    if (code == 0 || res < best_residual) {
      best_residual = res;
      best = s;
    }
  }
  return best;
}

std::vector<int> ResolveSignsHeuristic(const SpectralEstimate& est,
                                       const ObservedMatrix& obs) {
  if (obs.rows() != est.n_rows || obs.cols() != est.n_cols) {
    Fail(ErrorCode::kDimensionMismatch, "observed matrix shape differs");
  }
  const auto r = static_cast<Eigen::Index>(est.rank);
  EigenLadder right = SymEigDesc(GramRight(obs), est.rank);
  std::vector<int> signs(est.rank, 1);
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::VectorXd v = right.vectors.col(i);
    Eigen::VectorXd u = obs.multiply(v);
    const double norm = u.norm();
    if (norm > 0.0) u /= norm;
    signs[static_cast<std::size_t>(i)] =
        SignOf(est.V_hat.col(i).dot(v)) * SignOf(est.U_hat.col(i).dot(u));
  }
  return signs;
}

std::vector<int> ResolveSigns(const SpectralEstimate& est,
                              const ObservedMatrix& obs, SignMethod method,
                              SignMethod* used) {
  if (method == SignMethod::kAuto) {
    method = est.rank <= kDefaultSignBudget ? SignMethod::kExhaustive
                                            : SignMethod::kHeuristic;
  }
  if (used != nullptr) *used = method;
  return method == SignMethod::kExhaustive ? ResolveSignsExhaustive(est, obs)
                                           : ResolveSignsHeuristic(est, obs);
}

CompletedMatrix Assemble(SpectralEstimate est, std::vector<int> signs,
                         SignMethod method) {
  if (signs.size() != est.rank) {
    Fail(ErrorCode::kInvalidArgument, "sign vector length differs from rank");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) Fail(ErrorCode::kInvalidArgument, "signs must be +-1");
  }
  CompletedMatrix cm;
  cm.estimate = std::move(est);
  cm.signs = std::move(signs);
  cm.method = method;
  return cm;
}

CompletedMatrix Complete(const ObservedMatrix& obs, std::size_t rank,
                         SignMethod method) {
  SpectralEstimate est = EstimateSingularTriplets(obs, rank);
  SignMethod used = method;
  std::vector<int> signs = ResolveSigns(est, obs, method, &used);
  return Assemble(std::move(est), std::move(signs), used);
}

}  // namespace smc
