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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "smc/error.hpp"
#include "smc/metrics.hpp"
#include "smc/signs.hpp"
#include "smc/spectral.hpp"
#include "test_util.hpp"

namespace {

smc::SpectralEstimate RankOneExample() {
  smc::SpectralEstimate est;
  est.U_hat = Eigen::Vector2d(0.6, 0.8);
  est.V_hat = Eigen::Vector2d(0.0, 1.0);
  est.lambda_hat = Eigen::VectorXd::Constant(1, 6.0);
  est.p_hat = 1.0;
  est.rank = 1;
  est.n_rows = 2;
  est.n_cols = 2;
  return est;
}

// Rebuilds every candidate densely and keeps the first strict minimum.
std::vector<int> BruteForceSigns(const smc::SpectralEstimate& est,
                                 const smc::ObservedMatrix& obs) {
  const std::size_t r = est.rank;
  const Eigen::MatrixXd data = obs.to_dense();
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(obs.rows(), obs.cols());
  for (const auto& e : obs.entries()) mask(e.row, e.col) = 1.0;
  std::vector<int> best;
  double best_res = std::numeric_limits<double>::infinity();
  for (std::size_t code = 0; code < (std::size_t{1} << r); ++code) {
    std::vector<int> s(r);
    Eigen::VectorXd scaled(r);
    for (std::size_t i = 0; i < r; ++i) {
      s[i] = (code >> (r - 1 - i)) & 1 ? -1 : 1;
      scaled(i) = s[i] * est.lambda_hat(i);
    }
    const Eigen::MatrixXd cand =
        est.U_hat * scaled.asDiagonal() * est.V_hat.transpose();
    const double res = (cand - data).cwiseProduct(mask).squaredNorm();
    if (res < best_res) {
      best_res = res;
      best = s;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("assemble rank-1 example") {
  const auto cm = smc::Assemble(RankOneExample(), {1});
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 3.6, 0, 4.8;
  CHECK((cm.dense() - expected).norm() < 1e-12);
  CHECK(cm.predict(1, 1) == doctest::Approx(4.8));
  CHECK(cm.predict(0, 0) == 0.0);
  CHECK((smc::Assemble(RankOneExample(), {-1}).dense() + expected).norm() < 1e-12);

  auto zero = RankOneExample();
  zero.lambda_hat(0) = 0.0;
  CHECK(smc::Assemble(zero, {-1}).dense().isZero(0));

  CHECK_THROWS_AS(smc::Assemble(RankOneExample(), {0}), smc::Error);
  CHECK_THROWS_AS(smc::Assemble(RankOneExample(), {1, 1}), smc::Error);
}

TEST_CASE("exhaustive signs on the rank-1 example") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 3.6, 0, 4.8;
  CHECK(smc::ResolveSignsExhaustive(RankOneExample(), smc::testing::FullyObserved(m)) ==
        std::vector<int>{1});
  CHECK(smc::ResolveSignsExhaustive(RankOneExample(), smc::testing::FullyObserved(-m)) ==
        std::vector<int>{-1});
  CHECK(smc::ResolveSignsHeuristic(RankOneExample(), smc::testing::FullyObserved(m)) ==
        std::vector<int>{1});

  auto flipped = RankOneExample();
  flipped.V_hat *= -1.0;
  CHECK(smc::ResolveSignsHeuristic(flipped, smc::testing::FullyObserved(m)) ==
        std::vector<int>{-1});
}

TEST_CASE("exhaustive search matches dense brute force") {
  smc::Philox4x32 rng(61, 0);
  for (std::size_t r : {1u, 2u, 3u, 4u}) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd lambdas = Eigen::VectorXd::LinSpaced(r, 60.0, 20.0);
      const auto truth = smc::testing::RandomTruth(40, 12, lambdas, 1.0, 0.5, rng);
      const auto obs = smc::testing::Sample(truth.M0, 0.5, 1.0, rng);
      const auto est = smc::EstimateSingularTriplets(obs, r);
      const auto s = smc::ResolveSignsExhaustive(est, obs);
      CHECK(s == BruteForceSigns(est, obs));

      // No candidate attains a lower observed residual, in particular the
      // oracle choice from the truth.
      const double best = smc::ObservedResidual(est, s, obs);
      CHECK(best <= smc::ObservedResidual(est, smc::OracleSigns(est, truth), obs));
      const auto dense = smc::Assemble(est, s).dense();
      std::vector<int> neg(s);
      for (int& v : neg) v = -v;
      CHECK((smc::Assemble(est, neg).dense() + dense).norm() < 1e-9 * (1 + dense.norm()));
    }
  }
}

TEST_CASE("observed residual matches a dense evaluation") {
  smc::Philox4x32 rng(67, 0);
  const auto obs =
      smc::testing::Sample(smc::testing::Gaussian(25, 9, rng) * 2.0, 0.5, 0.0, rng);
  const auto est = smc::EstimateSingularTriplets(obs, 2);
  const std::vector<int> s{1, -1};
  const Eigen::MatrixXd pred = smc::Assemble(est, s).dense();
  double oracle = 0.0;
  for (const auto& e : obs.entries()) {
    const double diff = pred(e.row, e.col) - e.value;
    oracle += diff * diff;
  }
  CHECK(smc::ObservedResidual(est, s, obs) == doctest::Approx(oracle).epsilon(1e-12));

  const auto cm = smc::Assemble(est, s);
  for (int i = 0; i < 20; ++i) {
    const std::size_t k = rng.next_u32() % 25, h = rng.next_u32() % 9;
    CHECK(std::abs(cm.predict(k, h) - pred(k, h)) < 1e-12);
  }
}

TEST_CASE("sign method dispatch and budget") {
  smc::Philox4x32 rng(71, 0);
  const auto obs =
      smc::testing::Sample(smc::testing::Gaussian(30, 16, rng), 0.7, 0.0, rng);
  const auto est = smc::EstimateSingularTriplets(obs, 3);
  smc::SignMethod used = smc::SignMethod::kAuto;
  smc::ResolveSigns(est, obs, smc::SignMethod::kAuto, &used);
  CHECK(used == smc::SignMethod::kExhaustive);
  smc::ResolveSigns(est, obs, smc::SignMethod::kHeuristic, &used);
  CHECK(used == smc::SignMethod::kHeuristic);
  CHECK_THROWS_AS(smc::ResolveSignsExhaustive(est, obs, 2), smc::Error);

  const auto big = smc::EstimateSingularTriplets(obs, 13);
  smc::ResolveSigns(big, obs, smc::SignMethod::kAuto, &used);
  CHECK(used == smc::SignMethod::kHeuristic);
  const auto cm = smc::Complete(obs, 13);
  CHECK(cm.method == smc::SignMethod::kHeuristic);
  CHECK(cm.signs.size() == 13);
}
