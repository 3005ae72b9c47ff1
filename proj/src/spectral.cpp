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

#include "smc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smc/error.hpp"
#include "smc/gram.hpp"

namespace smc {

double ResidualTau(const EigenLadder& ladder, std::size_t r, std::size_t d) {
  if (r >= d) Fail(ErrorCode::kInvalidArgument, "residual_tau: need r < d");
  if (static_cast<std::size_t>(ladder.values.size()) < r) {
    Fail(ErrorCode::kInvalidArgument, "residual_tau: ladder shorter than r");
  }
  const double top = ladder.values.head(static_cast<Eigen::Index>(r)).sum();
  return (ladder.full_trace - top) / static_cast<double>(d - r);
}

SingularValues SingularValuesFromEigs(const Eigen::VectorXd& top_values,
                                      double tau_hat, double p_hat) {
  if (!(p_hat > 0.0)) {
    Fail(ErrorCode::kDegenerate, "singular values need p_hat > 0");
  }
  SingularValues out;
  out.values.resize(top_values.size());
  for (Eigen::Index i = 0; i < top_values.size(); ++i) {
    const double radicand = top_values(i) - tau_hat;
    if (radicand < 0.0) ++out.clamped;
    out.values(i) = std::sqrt(std::max(radicand, 0.0)) / p_hat;
  }
  return out;
}

SpectralEstimate EstimateSingularTriplets(const ObservedMatrix& obs,
                                          std::size_t r) {
  const std::size_t n = obs.rows(), d = obs.cols();
  if (r < 1 || r >= std::min(n, d)) {
    Fail(ErrorCode::kInvalidArgument,
         "rank must satisfy 1 <= r < min(n, d); got " + std::to_string(r));
  }
  if (obs.empty()) {
    Fail(ErrorCode::kDegenerate, "no observed entries");
  }

  SpectralEstimate est;
  est.rank = r;
  est.n_rows = n;
  est.n_cols = d;
  est.p_hat = EstimateObservationRate(obs);
  est.right_ladder = SymEigDesc(BiasAdjust(GramRight(obs), est.p_hat), r);
  est.left_ladder = SymEigDesc(BiasAdjust(GramLeft(obs), est.p_hat), r);
  est.V_hat = est.right_ladder.vectors;
  est.U_hat = est.left_ladder.vectors;
  est.tau_hat = ResidualTau(est.right_ladder, r, d);
  SingularValues sv =
      SingularValuesFromEigs(est.right_ladder.values, est.tau_hat, est.p_hat);
  est.lambda_hat = std::move(sv.values);
  est.clamp_count = sv.clamped;
  return est;
}

}  // namespace smc
