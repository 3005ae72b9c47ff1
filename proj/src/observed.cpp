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

#include "smc/observed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smc/error.hpp"

namespace smc {

ObservedMatrix::ObservedMatrix(std::size_t n_rows, std::size_t n_cols,
                               std::vector<Entry> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  for (const Entry& e : entries_) {
    if (e.row >= n_rows_ || e.col >= n_cols_) {
      Fail(ErrorCode::kInvalidArgument,
           "entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
               ") outside " + std::to_string(n_rows_) + "x" +
               std::to_string(n_cols_));
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].row == entries_[i - 1].row &&
        entries_[i].col == entries_[i - 1].col) {
      Fail(ErrorCode::kInvalidArgument,
           "duplicate entry (" + std::to_string(entries_[i].row) + "," +
               std::to_string(entries_[i].col) + ")");
    }
  }

  row_ptr_.assign(n_rows_ + 1, 0);
  col_ptr_.assign(n_cols_ + 1, 0);
  for (const Entry& e : entries_) {
    ++row_ptr_[e.row + 1];
    ++col_ptr_[e.col + 1];
  }
  for (std::size_t k = 0; k < n_rows_; ++k) row_ptr_[k + 1] += row_ptr_[k];
  for (std::size_t h = 0; h < n_cols_; ++h) col_ptr_[h + 1] += col_ptr_[h];

  // Counting sort into column buckets keeps row order within each column.
  col_entries_.resize(entries_.size());
  std::vector<std::size_t> fill(col_ptr_.begin(), col_ptr_.end() - 1);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    col_entries_[fill[entries_[i].col]++] = i;
  }
}

std::span<const Entry> ObservedMatrix::row(std::size_t k) const {
  if (k >= n_rows_) Fail(ErrorCode::kInvalidArgument, "row out of range");
  return std::span<const Entry>(entries_).subspan(
      row_ptr_[k], row_ptr_[k + 1] - row_ptr_[k]);
}

std::span<const std::size_t> ObservedMatrix::col_index(std::size_t h) const {
  if (h >= n_cols_) Fail(ErrorCode::kInvalidArgument, "column out of range");
  return std::span<const std::size_t>(col_entries_)
      .subspan(col_ptr_[h], col_ptr_[h + 1] - col_ptr_[h]);
}

bool ObservedMatrix::contains(std::size_t k, std::size_t h) const {
  auto r = row(k);
  return std::binary_search(
      r.begin(), r.end(), Entry{k, h, 0.0},
      [](const Entry& a, const Entry& b) { return a.col < b.col; });
}

Eigen::MatrixXd ObservedMatrix::to_dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(n_rows_), static_cast<Eigen::Index>(n_cols_));
  for (const Entry& e : entries_) {
    out(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) =
        e.value;
  }
  return out;
}

Eigen::VectorXd ObservedMatrix::multiply(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != n_cols_) {
    Fail(ErrorCode::kDimensionMismatch, "multiply: vector length mismatch");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_rows_));
  for (const Entry& e : entries_) {
    out(static_cast<Eigen::Index>(e.row)) +=
        e.value * x(static_cast<Eigen::Index>(e.col));
  }
  return out;
}

Eigen::VectorXd ObservedMatrix::multiply_transpose(
    const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != n_rows_) {
    Fail(ErrorCode::kDimensionMismatch,
         "multiply_transpose: vector length mismatch");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_cols_));
  for (const Entry& e : entries_) {
    out(static_cast<Eigen::Index>(e.col)) +=
        e.value * x(static_cast<Eigen::Index>(e.row));
  }
  return out;
}

Eigen::VectorXd GroundTruth::normalized_values() const {
  return lambdas / std::sqrt(static_cast<double>(M0.rows()) *
                             static_cast<double>(M0.cols()));
}

namespace {

void CheckOrthonormal(const Eigen::MatrixXd& Z, const char* name) {
  const Eigen::Index r = Z.cols();
  const double err =
      (Z.transpose() * Z - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff();
  if (r > 0 && err > 1e-10) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(name) + " columns are not orthonormal");
  }
}

}  // namespace

GroundTruth GroundTruth::FromFactors(Eigen::MatrixXd U, Eigen::VectorXd lambdas,
                                     Eigen::MatrixXd V, double sigma,
                                     double p) {
  if (U.cols() != lambdas.size() || V.cols() != lambdas.size()) {
    Fail(ErrorCode::kDimensionMismatch, "factor ranks disagree");
  }
  if (!(p > 0.0 && p <= 1.0) || !(sigma >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "need p in (0,1] and sigma >= 0");
  }
  CheckOrthonormal(U, "U");
  CheckOrthonormal(V, "V");
  GroundTruth t;
  t.M0 = U * lambdas.asDiagonal() * V.transpose();
  t.U = std::move(U);
  t.V = std::move(V);
  t.lambdas = std::move(lambdas);
  t.sigma = sigma;
  t.p = p;
  return t;
}

GroundTruth GroundTruth::FromMatrix(Eigen::MatrixXd M0, std::size_t rank,
                                    double sigma, double p) {
  const auto r = static_cast<Eigen::Index>(rank);
  if (rank == 0 || r > std::min(M0.rows(), M0.cols())) {
    Fail(ErrorCode::kInvalidArgument, "rank out of range");
  }
  if (!(p > 0.0 && p <= 1.0) || !(sigma >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "need p in (0,1] and sigma >= 0");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  GroundTruth t;
  t.U = svd.matrixU().leftCols(r);
  t.V = svd.matrixV().leftCols(r);
  t.lambdas = svd.singularValues().head(r);
  // Same canonical sign rule as the eigensolver: largest |V_i| entry positive.
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::Index arg = 0;
    t.V.col(i).cwiseAbs().maxCoeff(&arg);
    if (t.V(arg, i) < 0.0) {
      t.V.col(i) *= -1.0;
      t.U.col(i) *= -1.0;
    }
  }
  t.M0 = std::move(M0);
  t.sigma = sigma;
  t.p = p;
  return t;
}

}  // namespace smc
