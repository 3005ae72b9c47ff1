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
#include "smc/inference.hpp"
#include "smc/metrics.hpp"
#include "smc/signs.hpp"
#include "smc/spectral.hpp"
#include "test_util.hpp"

namespace {

// min over orthogonal O of ||Z1 - Z2 O||_F^2 via the SVD of Z2^T Z1.
double ProcrustesDistance(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(z2.transpose() * z1,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd o = svd.matrixU() * svd.matrixV().transpose();
  return (z1 - z2 * o).squaredNorm();
}

}  // namespace

TEST_CASE("sin theta on simple pairs") {
  const Eigen::Vector2d e1(1, 0), e2(0, 1);
  const Eigen::Vector2d diag = (e1 + e2) / std::sqrt(2.0);
  CHECK(smc::SinThetaSq(e1, e1) == 0.0);
  CHECK(smc::SinThetaSq(e1, e2) == doctest::Approx(1.0));
  CHECK(smc::SinThetaSq(e1, diag) == doctest::Approx(0.5));
  CHECK(smc::SinThetaSq(e1, diag) ==
        doctest::Approx(smc::testing::ProjectorSinThetaSq(e1, diag)));
  CHECK_THROWS_AS(smc::SinThetaSq(2 * e1, e2), smc::Error);
  CHECK_THROWS_AS(smc::SinThetaSq(e1, Eigen::Vector3d(1, 0, 0)), smc::Error);
}

TEST_CASE("sin theta symmetry, range and Frobenius sandwich") {
  smc::Philox4x32 rng(103, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 3 + rng.next_u32() % 20;
    const std::size_t m = 1 + rng.next_u32() % std::min<std::size_t>(p, 5);
    const Eigen::MatrixXd z1 = smc::testing::RandomOrthonormal(p, m, rng);
    // Mix near and far pairs.
    Eigen::MatrixXd z2 = smc::testing::RandomOrthonormal(p, m, rng);
    if (trial % 2) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(z1 + 0.1 * smc::testing::Gaussian(p, m, rng));
      z2 = qr.householderQ() * Eigen::MatrixXd::Identity(p, m);
    }
    const double s = smc::SinThetaSq(z1, z2);
    CHECK(s == doctest::Approx(smc::SinThetaSq(z2, z1)));
    CHECK(s >= 0.0);
    CHECK(s <= double(m));
    CHECK(s == doctest::Approx(smc::testing::ProjectorSinThetaSq(z1, z2)));
    const double inf = ProcrustesDistance(z1, z2);
    CHECK(0.5 * inf <= s + 1e-10);
    CHECK(s <= inf + 1e-10);
  }
}

TEST_CASE("sign alignment") {
  smc::Philox4x32 rng(107, 0);
  const Eigen::MatrixXd v = smc::testing::RandomOrthonormal(8, 3, rng);
  CHECK(smc::SignAlign(-v, v) == v);
  CHECK(smc::SignAlign(v, v) == v);
  Eigen::MatrixXd mixed = v;
  mixed.col(1) *= -1;
  const Eigen::MatrixXd aligned = smc::SignAlign(mixed, v);
  CHECK(aligned == v);

  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd vh = smc::testing::RandomOrthonormal(8, 3, rng);
    const Eigen::MatrixXd out = smc::SignAlign(vh, v);
    for (int i = 0; i < 3; ++i) {
      CHECK(out.col(i).norm() == doctest::Approx(vh.col(i).norm()));
      CHECK((out.col(i) - vh.col(i)).norm() * (out.col(i) + vh.col(i)).norm() < 1e-12);
    }
    CHECK((out - v).norm() <= (vh - v).norm() + 1e-12);
  }
}

TEST_CASE("frobenius mse") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(2, 2);
  CHECK(smc::FrobeniusMse(a, a, 4) == 0.0);
  CHECK(smc::FrobeniusMse(a + Eigen::MatrixXd::Ones(2, 2), a, 4) == doctest::Approx(1.0));
  CHECK(smc::FrobeniusMse(a + Eigen::MatrixXd::Ones(2, 2), a, 1) == doctest::Approx(4.0));
  CHECK_THROWS_AS(smc::FrobeniusMse(a, a, 0), smc::Error);
  CHECK_THROWS_AS(smc::FrobeniusMse(a, Eigen::MatrixXd::Zero(3, 2), 1), smc::Error);
}

TEST_CASE("held-out rmse") {
  Eigen::MatrixXd m0 = 6.0 * Eigen::Vector2d(0.6, 0.8) * Eigen::Vector2d(0, 1).transpose();
  const auto full = smc::testing::FullyObserved(m0);
  const auto cm = smc::Complete(full, 1);
  CHECK(smc::RmseOnOmega(cm, full) < 1e-12);
  const smc::ObservedMatrix shifted(2, 2, {{0, 0, 1.0}, {1, 1, m0(1, 1) + 1.0}});
  CHECK(smc::RmseOnOmega(cm, shifted) == doctest::Approx(1.0));
  CHECK_THROWS_AS(smc::RmseOnOmega(cm, smc::ObservedMatrix(2, 2, {})), smc::Error);
  CHECK_THROWS_AS(smc::RmseOnOmega(cm, smc::ObservedMatrix(3, 2, {{0, 0, 1}})),
                  smc::Error);
}

TEST_CASE("standardized lambda statistic") {
  smc::Philox4x32 rng(109, 0);
  Eigen::VectorXd lambdas(2);
  lambdas << 40, 25;
  auto truth = smc::testing::RandomTruth(30, 10, lambdas, 1.0, 1.0, rng);
  smc::SpectralEstimate est;
  est.rank = 2;
  est.lambda_hat = lambdas;
  CHECK(smc::StandardizedLambdaStat(est, truth, 2) == 0.0);

  est.lambda_hat(0) += 1.0;
  const Eigen::VectorXd b = lambdas / std::sqrt(300.0);
  const double expected =
      (std::pow(41.0, 2) - 1600.0) / (std::sqrt(300.0) * std::sqrt(4 * b.squaredNorm()));
  CHECK(smc::StandardizedLambdaStat(est, truth, 2) == doctest::Approx(expected));

  truth.sigma = 0.0;
  CHECK_THROWS_AS(smc::StandardizedLambdaStat(est, truth, 2), smc::Error);
  CHECK_THROWS_AS(smc::StandardizedLambdaStat(est, truth, 3), smc::Error);
}

TEST_CASE("oracle signs are the products of the factor alignments") {
  smc::Philox4x32 rng(113, 0);
  Eigen::VectorXd lambdas(2);
  lambdas << 40, 25;
  const auto truth = smc::testing::RandomTruth(30, 10, lambdas, 0.0, 1.0, rng);
  smc::SpectralEstimate est;
  est.rank = 2;
  est.U_hat = truth.U;
  est.V_hat = truth.V;
  est.U_hat.col(0) *= -1;
  est.V_hat.col(1) *= -1;
  est.U_hat.col(1) *= -1;
  CHECK(smc::OracleSigns(est, truth) == std::vector<int>{-1, 1});
}
