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

#include "smc/gram.hpp"

#include "smc/error.hpp"

namespace smc {
namespace {

void Mirror(Eigen::MatrixXd& g) {
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < g.rows(); ++i) g(i, j) = g(j, i);
  }
}

Eigen::MatrixXd ExpectedGram(const Eigen::MatrixXd& product, double p,
                             double sigma, double other_dim) {
  Eigen::MatrixXd out = p * p * product;
  out.diagonal() += p * (1.0 - p) * product.diagonal();
  out.diagonal().array() += other_dim * p * sigma * sigma;
  return out;
}

}  // namespace

double EstimateObservationRate(const ObservedMatrix& obs) {
  const double cells =
      static_cast<double>(obs.rows()) * static_cast<double>(obs.cols());
  if (cells == 0.0) {
    Fail(ErrorCode::kInvalidArgument, "observation rate of a zero-size matrix");
  }
  return static_cast<double>(obs.nnz()) / cells;
}

Eigen::MatrixXd GramRight(const ObservedMatrix& obs) {
  const auto d = static_cast<Eigen::Index>(obs.cols());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < obs.rows(); ++k) {
    auto row = obs.row(k);
    for (std::size_t a = 0; a < row.size(); ++a) {
      const auto ca = static_cast<Eigen::Index>(row[a].col);
      const double va = row[a].value;
      // Columns within a row are increasing, so (ca, cb) is upper triangle.
      for (std::size_t b = a; b < row.size(); ++b) {
        g(ca, static_cast<Eigen::Index>(row[b].col)) += va * row[b].value;
      }
    }
  }
  Mirror(g);
  return g;
}

Eigen::MatrixXd GramLeft(const ObservedMatrix& obs) {
  const auto n = static_cast<Eigen::Index>(obs.rows());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  auto entries = obs.entries();
  for (std::size_t h = 0; h < obs.cols(); ++h) {
    auto idx = obs.col_index(h);
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const Entry& ea = entries[idx[a]];
      const auto ra = static_cast<Eigen::Index>(ea.row);
      for (std::size_t b = a; b < idx.size(); ++b) {
        const Entry& eb = entries[idx[b]];
        g(ra, static_cast<Eigen::Index>(eb.row)) += ea.value * eb.value;
      }
    }
  }
  Mirror(g);
  return g;
}

Eigen::MatrixXd BiasAdjust(const Eigen::MatrixXd& gram, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "bias_adjust: p outside [0,1]");
  }
  if (gram.rows() != gram.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "bias_adjust: matrix not square");
  }
  Eigen::MatrixXd out = gram;
  if (p != 1.0) out.diagonal() *= p;
  return out;
}

Eigen::MatrixXd ExpectedGramRight(const GroundTruth& truth) {
  return ExpectedGram(truth.M0.transpose() * truth.M0, truth.p, truth.sigma,
                      static_cast<double>(truth.M0.rows()));
}

Eigen::MatrixXd ExpectedGramLeft(const GroundTruth& truth) {
  return ExpectedGram(truth.M0 * truth.M0.transpose(), truth.p, truth.sigma,
                      static_cast<double>(truth.M0.cols()));
}

GramPair BuildGrams(const ObservedMatrix& obs, bool adjust) {
  GramPair out;
  out.p_hat = EstimateObservationRate(obs);
  out.sigma_right = GramRight(obs);
  out.sigma_left = GramLeft(obs);
  if (adjust) {
    out.sigma_right = BiasAdjust(out.sigma_right, out.p_hat);
    out.sigma_left = BiasAdjust(out.sigma_left, out.p_hat);
  }
  out.adjusted = adjust;
  return out;
}

}  // namespace smc
