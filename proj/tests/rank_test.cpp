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

#include "smc/error.hpp"
#include "smc/gram.hpp"
#include "smc/rank.hpp"
#include "test_util.hpp"

namespace {

smc::EigenLadder Ladder(std::initializer_list<double> values) {
  smc::EigenLadder l;
  l.values = Eigen::VectorXd(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) l.values(i++) = v;
  l.dim = values.size();
  l.full_trace = l.values.sum();
  return l;
}

}  // namespace

TEST_CASE("threshold count") {
  const auto ladder = Ladder({5000, 40, 30});
  // The example ladder is shorter than d; only the leading values matter.
  smc::EigenLadder padded = ladder;
  padded.values.conservativeResize(20);
  padded.values.tail(17).setZero();
  padded.dim = 20;
  const auto decision = smc::EstimateRank(padded, 0.5, 100, 20, 1.0);
  CHECK(decision.threshold == doctest::Approx(0.25 * 100 * std::log(20.0)));
  CHECK(decision.threshold == doctest::Approx(74.89).epsilon(1e-3));
  CHECK(decision.r_hat == 1);

  CHECK(smc::EstimateRank(Ladder({0, 0, 0}), 0.5, 10, 3, 1.0).r_hat == 0);
  CHECK_THROWS_AS(smc::EstimateRank(Ladder({1, 0}), 0.0, 10, 2, 1.0), smc::Error);
  CHECK_THROWS_AS(smc::EstimateRank(Ladder({1, 0}), 0.5, 10, 2, 0.0), smc::Error);
  CHECK_THROWS_AS(smc::EstimateRank(Ladder({1}), 0.5, 10, 1, 1.0), smc::Error);
}

TEST_CASE("rank is monotone in c and scale invariant") {
  smc::Philox4x32 rng(73, 0);
  const auto obs =
      smc::testing::Sample(smc::testing::Gaussian(60, 15, rng) * 4.0, 0.5, 1.0, rng);
  std::size_t prev = obs.cols() + 1;
  for (double c : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 50.0}) {
    const auto decision = smc::EstimateRank(obs, c);
    CHECK(decision.r_hat <= prev);
    prev = decision.r_hat;
    CHECK(decision.eigenvalues.size() == 15);

    // Scaling eigenvalues and threshold together: c' = c * alpha.
    const double alpha = 7.5;
    smc::EigenLadder scaled;
    scaled.values = decision.eigenvalues * alpha;
    scaled.dim = 15;
    scaled.full_trace = scaled.values.sum();
    const double p_hat = smc::EstimateObservationRate(obs);
    CHECK(smc::EstimateRank(scaled, p_hat, 60, 15, c * alpha).r_hat == decision.r_hat);
  }
}

TEST_CASE("rank decision agrees with a direct count") {
  smc::Philox4x32 rng(79, 0);
  const auto obs =
      smc::testing::Sample(smc::testing::Gaussian(50, 12, rng) * 2.0, 0.6, 0.5, rng);
  const auto decision = smc::EstimateRank(obs, 1.0);
  const double p = smc::EstimateObservationRate(obs);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      smc::BiasAdjust(smc::GramRight(obs), p));
  const double threshold = p * p * 50 * std::log(12.0);
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) >= threshold) ++count;
  }
  CHECK(decision.threshold == doctest::Approx(threshold));
  CHECK(decision.r_hat == count);
}

TEST_CASE("scree") {
  const auto ladder = Ladder({3, 2, 1});
  const auto two = smc::Scree(ladder, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == std::pair<std::size_t, double>{1, 3.0});
  CHECK(two[1] == std::pair<std::size_t, double>{2, 2.0});
  CHECK(smc::Scree(ladder, 0).empty());
  CHECK_THROWS_AS(smc::Scree(ladder, 4), smc::Error);
}
