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

#include <algorithm>
#include <cmath>

#include "smc/eigen_solver.hpp"
#include "smc/error.hpp"
#include "smc/gram.hpp"
#include "smc/metrics.hpp"
#include "smc/signs.hpp"
#include "smc/spectral.hpp"
#include "test_util.hpp"

TEST_CASE("residual tau from the trace shortcut") {
  smc::EigenLadder a;
  a.values = Eigen::Vector2d(36, 0).head(1);
  a.full_trace = 36;
  a.dim = 2;
  CHECK(smc::ResidualTau(a, 1, 2) == 0.0);

  smc::EigenLadder b;
  b.values = Eigen::VectorXd::Constant(1, 70);
  b.full_trace = 100;
  b.dim = 4;
  CHECK(smc::ResidualTau(b, 1, 4) == doctest::Approx(10));

  smc::EigenLadder c;
  c.values = Eigen::Vector3d(5, 4, 3);
  c.full_trace = 12;
  c.dim = 4;
  CHECK(smc::ResidualTau(c, 3, 4) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("residual tau equals the explicit trailing-subspace trace") {
  smc::Philox4x32 rng(41, 0);
  for (std::size_t d : {5u, 17u, 50u}) {
    const Eigen::MatrixXd s = smc::testing::RandomSymmetric(d, rng);
    for (std::size_t r : {1u, 2u, 4u}) {
      const auto top = smc::SymEigDesc(s, r);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(s);
      // Ascending order: the first d - r columns span the complement.
      const Eigen::MatrixXd vc = full.eigenvectors().leftCols(d - r);
      const double oracle = (vc.transpose() * s * vc).trace() / double(d - r);
      CHECK(std::abs(smc::ResidualTau(top, r, d) - oracle) < 1e-8);
    }
  }
}

TEST_CASE("singular values from eigenvalues") {
  auto one = smc::SingularValuesFromEigs(Eigen::VectorXd::Constant(1, 36), 0, 1);
  CHECK(one.values(0) == doctest::Approx(6));
  CHECK(one.clamped == 0);

  auto clamped = smc::SingularValuesFromEigs(Eigen::VectorXd::Constant(1, 9), 13, 0.5);
  CHECK(clamped.values(0) == 0.0);
  CHECK(clamped.clamped == 1);

  auto two = smc::SingularValuesFromEigs(Eigen::Vector2d(25, 16), 0, 0.5);
  CHECK(two.values(0) == doctest::Approx(10));
  CHECK(two.values(1) == doctest::Approx(8));

  CHECK_THROWS_AS(smc::SingularValuesFromEigs(Eigen::Vector2d(1, 1), 0, 0), smc::Error);
}

TEST_CASE("rank-1 exact recovery") {
  Eigen::MatrixXd m0 = 6.0 * Eigen::Vector2d(0.6, 0.8) * Eigen::Vector2d(0, 1).transpose();
  const auto est = smc::EstimateSingularTriplets(smc::testing::FullyObserved(m0), 1);
  CHECK(est.lambda_hat(0) == doctest::Approx(6));
  CHECK(std::abs(std::abs(est.V_hat(1, 0)) - 1) < 1e-12);
  CHECK(std::abs(est.U_hat(0, 0)) == doctest::Approx(0.6));
  CHECK(std::abs(est.U_hat(1, 0)) == doctest::Approx(0.8));
  CHECK(est.p_hat == 1.0);
  CHECK(est.rank == 1);
}

TEST_CASE("exact recovery against an independent SVD") {
  smc::Philox4x32 rng(43, 0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd lambdas(2);
    lambdas << 9.0 + trial, 3.0;
    const auto truth = smc::testing::RandomTruth(8, 5, lambdas, 0.0, 1.0, rng);
    const auto est =
        smc::EstimateSingularTriplets(smc::testing::FullyObserved(truth.M0), 2);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(truth.M0,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues().head(2);
    CHECK(((est.lambda_hat - sv).array().abs() / sv.array()).maxCoeff() < 1e-8);
    CHECK(smc::testing::ProjectorSinThetaSq(est.V_hat, svd.matrixV().leftCols(2)) < 1e-8);
    CHECK(smc::testing::ProjectorSinThetaSq(est.U_hat, svd.matrixU().leftCols(2)) < 1e-8);

    const auto cm = smc::Assemble(est, smc::ResolveSignsExhaustive(
                                           est, smc::testing::FullyObserved(truth.M0)));
    CHECK((cm.dense() - truth.M0).norm() <= 1e-8 * truth.M0.norm());
  }
}

TEST_CASE("estimate invariants on noisy partial observations") {
  smc::Philox4x32 rng(47, 0);
  Eigen::VectorXd lambdas(3);
  lambdas << 400.0, 250.0, 120.0;
  const auto truth = smc::testing::RandomTruth(120, 20, lambdas, 1.0, 0.5, rng);
  const auto obs = smc::testing::Sample(truth.M0, 0.5, 1.0, rng);
  const auto est = smc::EstimateSingularTriplets(obs, 3);
  CHECK((est.U_hat.transpose() * est.U_hat - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-8);
  CHECK((est.V_hat.transpose() * est.V_hat - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-8);
  for (int i = 0; i < 3; ++i) CHECK(est.lambda_hat(i) >= 0);
  CHECK(est.lambda_hat(0) >= est.lambda_hat(1));
  CHECK(est.lambda_hat(1) >= est.lambda_hat(2));
  CHECK(est.p_hat == smc::EstimateObservationRate(obs));

  // tau and lambda computed by hand from the debiased right Gram.
  const Eigen::MatrixXd sigma = smc::BiasAdjust(smc::GramRight(obs), est.p_hat);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  const Eigen::VectorXd ev = eig.eigenvalues().reverse();
  const double tau = ev.tail(17).sum() / 17.0;
  CHECK(est.tau_hat == doctest::Approx(tau).epsilon(1e-9));
  for (int i = 0; i < 3; ++i) {
    CHECK(est.lambda_hat(i) ==
          doctest::Approx(std::sqrt(std::max(ev(i) - tau, 0.0)) / est.p_hat).epsilon(1e-9));
  }
}

TEST_CASE("estimate does not depend on entry order") {
  smc::Philox4x32 rng(53, 0);
  const auto obs =
      smc::testing::Sample(smc::testing::Gaussian(30, 10, rng) * 3.0, 0.6, 0.0, rng);
  std::vector<smc::Entry> shuffled(obs.entries().begin(), obs.entries().end());
  std::reverse(shuffled.begin(), shuffled.end());
  std::rotate(shuffled.begin(), shuffled.begin() + shuffled.size() / 3, shuffled.end());
  const smc::ObservedMatrix other(obs.rows(), obs.cols(), shuffled);
  const auto a = smc::EstimateSingularTriplets(obs, 2);
  const auto b = smc::EstimateSingularTriplets(other, 2);
  CHECK(a.lambda_hat == b.lambda_hat);
  CHECK(a.V_hat == b.V_hat);
}

TEST_CASE("estimate preconditions") {
  const auto obs = smc::testing::FullyObserved(Eigen::MatrixXd::Identity(3, 3));
  CHECK_THROWS_AS(smc::EstimateSingularTriplets(obs, 0), smc::Error);
  CHECK_THROWS_AS(smc::EstimateSingularTriplets(obs, 3), smc::Error);
  CHECK_THROWS_AS(smc::EstimateSingularTriplets(smc::ObservedMatrix(3, 3, {}), 1),
                  smc::Error);
}
