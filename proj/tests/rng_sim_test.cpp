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
#include <set>
#include <sstream>

#include "smc/error.hpp"
#include "smc/rng.hpp"
#include "smc/sim.hpp"

TEST_CASE("philox known-answer vectors") {
  using Block = smc::Philox4x32::Block;
  CHECK(smc::Philox4x32::Generate({0, 0, 0, 0}, {0, 0}) ==
        Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(smc::Philox4x32::Generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                  {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(smc::Philox4x32::Generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                  {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  smc::Philox4x32 a(42, 3), b(42, 3), c(42, 4), e(43, 3);
  std::set<std::uint32_t> firsts;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u32();
    CHECK(va == b.next_u32());
    firsts.insert(va);
  }
  CHECK(firsts.size() > 95);
  smc::Philox4x32 a2(42, 3);
  int same_c = 0, same_e = 0;
  for (int i = 0; i < 100; ++i) {
    const auto v = a2.next_u32();
    same_c += v == c.next_u32();
    same_e += v == e.next_u32();
  }
  CHECK(same_c == 0);
  CHECK(same_e == 0);
}

TEST_CASE("uniform and normal moments") {
  smc::Philox4x32 rng(7, 0);
  constexpr int kN = 200000;
  double su = 0, su2 = 0, sn = 0, sn2 = 0, sn4 = 0;
  double umin = 1, umax = 0;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    su += u;
    su2 += u * u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    sn4 += z * z * z * z;
  }
  CHECK(umin >= 0.0);
  CHECK(umax < 1.0);
  // Five standard errors on each moment.
  CHECK(std::abs(su / kN - 0.5) < 5 * std::sqrt(1.0 / 12 / kN));
  CHECK(std::abs(su2 / kN - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / kN));
  CHECK(std::abs(sn / kN) < 5 * std::sqrt(1.0 / kN));
  CHECK(std::abs(sn2 / kN - 1) < 5 * std::sqrt(2.0 / kN));
  CHECK(std::abs(sn4 / kN - 3) < 5 * std::sqrt(96.0 / kN));

  smc::Philox4x32 r2(7, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = r2.uniform(-5, 5);
    CHECK(v >= -5);
    CHECK(v < 5);
  }
}

TEST_CASE("sim config resolution and validation") {
  smc::SimConfig c;
  c.n = 100;
  CHECK(c.resolved_d() == 20);
  c.n = 1000;
  CHECK(c.resolved_d() == 63);
  c.n = 400;
  CHECK(c.resolved_d() == 40);
  c.n = 225;
  CHECK(c.resolved_d() == 30);
  c.d = 7;
  CHECK(c.resolved_d() == 7);
  CHECK(c.resolved_m() == 2);
  CHECK(c.validate());

  smc::SimConfig wide;
  wide.n = 10;
  wide.d = 20;
  CHECK_FALSE(wide.validate());

  smc::SimConfig bad;
  bad.p = 0.0;
  CHECK_THROWS_AS(bad.validate(), smc::Error);
  bad = {};
  bad.sigma = -1;
  CHECK_THROWS_AS(bad.validate(), smc::Error);
  bad = {};
  bad.true_rank = 0;
  CHECK_THROWS_AS(bad.validate(), smc::Error);
  bad = {};
  bad.metrics_m = 3;
  CHECK_THROWS_AS(bad.validate(), smc::Error);
}

TEST_CASE("instance generation") {
  smc::SimConfig c;
  c.n = 50;
  c.p = 1.0;
  c.sigma = 0.0;
  c.seed = 9;
  const auto inst = smc::GenerateInstance(c, 2);
  CHECK(inst.observed.nnz() == 50 * c.resolved_d());
  CHECK((inst.observed.to_dense() - inst.truth.M0).norm() == 0.0);
  CHECK(inst.truth.rank() == 2);
  CHECK(inst.truth.M0.cwiseAbs().maxCoeff() <= 2 * 25.0);
  CHECK((inst.truth.U * inst.truth.lambdas.asDiagonal() * inst.truth.V.transpose() -
         inst.truth.M0).norm() < 1e-10 * inst.truth.M0.norm());

  c.p = 0.4;
  c.sigma = 1.0;
  const auto a = smc::GenerateInstance(c, 5);
  const auto b = smc::GenerateInstance(c, 5);
  const auto other = smc::GenerateInstance(c, 6);
  CHECK(a.observed == b.observed);
  CHECK(a.truth.M0 == b.truth.M0);
  CHECK_FALSE(a.observed == other.observed);
  const double rate = double(a.observed.nnz()) / (50.0 * c.resolved_d());
  CHECK(std::abs(rate - 0.4) < 5 * std::sqrt(0.24 / (50.0 * c.resolved_d())));
}

TEST_CASE("noiseless full observation recovers everything") {
  smc::SimConfig c;
  c.n = 100;
  c.p = 1.0;
  c.sigma = 0.0;
  c.replicates = 3;
  const auto res = smc::RunReplicates(c);
  REQUIRE(res.rows.size() == 3);
  for (const auto& row : res.rows) {
    CHECK(row.mse_matrix <= 1e-12);
    CHECK(row.mse_lambda <= 1e-12);
    CHECK(row.mse_v <= 1e-12);
    CHECK(row.mse_u <= 1e-12);
    CHECK(row.sign_correct);
    CHECK(std::isnan(row.z_stat));
  }
}

TEST_CASE("replicates do not depend on the worker count") {
  smc::SimConfig c;
  c.n = 64;
  c.replicates = 9;
  c.seed = 77;
  const auto serial = smc::RunReplicates(c, 1);
  const auto parallel = smc::RunReplicates(c, 4);
  CHECK(smc::SimRowsCsv({serial}) == smc::SimRowsCsv({parallel}));
  CHECK(smc::SimAggregatesCsv({serial}) == smc::SimAggregatesCsv({parallel}));
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].replicate == i);
    CHECK(serial.rows[i].mse_v == parallel.rows[i].mse_v);
    CHECK(serial.rows[i].mse_v >= 0);
    CHECK(serial.rows[i].sin2_v >= 0);
    CHECK(serial.rows[i].sin2_v <= 2);
  }
  // A single replicate evaluated alone matches its row in the batch.
  CHECK(smc::EvaluateReplicate(c, 4).mse_matrix == serial.rows[4].mse_matrix);
}

TEST_CASE("aggregates") {
  std::vector<smc::MetricRow> rows(4);
  const double values[] = {1.0, 2.0, 3.0, 6.0};
  for (int i = 0; i < 4; ++i) {
    rows[i].mse_v = values[i];
    rows[i].z_stat = i == 3 ? std::nan("") : values[i];
  }
  const auto agg = smc::Aggregate(rows);
  auto find = [&](const std::string& name) {
    for (const auto& a : agg) {
      if (a.name == name) return a;
    }
    FAIL("missing aggregate " << name);
    return smc::MetricSummary{};
  };
  const auto v = find("mse_v");
  CHECK(v.mean == doctest::Approx(3.0));
  // sample sd = sqrt(14/3); se = sd / 2
  CHECK(v.std_error == doctest::Approx(std::sqrt(14.0 / 3.0) / 2.0));
  CHECK(v.count == 4);
  const auto z = find("z_stat");
  CHECK(z.count == 3);
  CHECK(z.mean == doctest::Approx(2.0));
}

TEST_CASE("simulation csv layout") {
  smc::SimConfig c;
  c.n = 36;
  c.replicates = 2;
  const auto res = smc::RunReplicates(c);
  std::istringstream rows(smc::SimRowsCsv({res}));
  std::string line;
  std::getline(rows, line);
  CHECK(line ==
        "n,d,p,sigma,rank,seed,replicate,mse_matrix,mse_lambda,mse_v,mse_u,"
        "sin2_v,sin2_u,z_stat,r_hat,sign_correct,clamped");
  std::getline(rows, line);
  CHECK(line.rfind("36,12,0.5,1,2,0,0,", 0) == 0);
  std::istringstream agg(smc::SimAggregatesCsv({res}));
  std::getline(agg, line);
  CHECK(line == "n,d,p,sigma,rank,seed,metric,mean,std_error,count");
}
