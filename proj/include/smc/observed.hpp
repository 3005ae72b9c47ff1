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

#ifndef SMC_OBSERVED_HPP_
#define SMC_OBSERVED_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace smc {

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Partially observed matrix M = y .* (M0 + noise). Only observed cells are
// stored; y_kh = 1 iff (k, h) is an entry. Entries are kept in row-major
// order so every downstream reduction runs in a fixed order regardless of
// how the caller listed them.
class ObservedMatrix {
 public:
  ObservedMatrix() = default;

  // Validates ranges and rejects duplicate cells.
  ObservedMatrix(std::size_t n_rows, std::size_t n_cols,
                 std::vector<Entry> entries);

  std::size_t rows() const noexcept { return n_rows_; }
  std::size_t cols() const noexcept { return n_cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::span<const Entry> entries() const noexcept { return entries_; }

  // Entries of row k (row-major slice).
  std::span<const Entry> row(std::size_t k) const;

  // Entry indices of column h, ordered by row.
  std::span<const std::size_t> col_index(std::size_t h) const;

  bool contains(std::size_t k, std::size_t h) const;

  // Zero-imputed dense realization.
  Eigen::MatrixXd to_dense() const;

  // y * M0 products without densifying: M * x and M^T * x.
  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd multiply_transpose(const Eigen::VectorXd& x) const;

  friend bool operator==(const ObservedMatrix& a, const ObservedMatrix& b) {
    return a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<Entry> entries_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::size_t> col_entries_;
};

// Noise-free low-rank truth M0 = U diag(lambdas) V^T together with the
// sampling parameters that generated an ObservedMatrix from it.
struct GroundTruth {
  Eigen::MatrixXd M0;
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
  Eigen::VectorXd lambdas;
  double sigma = 0.0;
  double p = 1.0;

  std::size_t rank() const { return static_cast<std::size_t>(lambdas.size()); }
  std::size_t rows() const { return static_cast<std::size_t>(M0.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(M0.cols()); }

  // b_i = lambda_i / sqrt(n d).
  Eigen::VectorXd normalized_values() const;

  // Takes U, V, lambdas and builds M0. Checks orthonormality to 1e-10.
  static GroundTruth FromFactors(Eigen::MatrixXd U, Eigen::VectorXd lambdas,
                                 Eigen::MatrixXd V, double sigma, double p);

  // Rank-r truncation of an exact SVD of M0 (M0 kept as given).
  static GroundTruth FromMatrix(Eigen::MatrixXd M0, std::size_t rank,
                                double sigma, double p);
};

}  // namespace smc

#endif  // SMC_OBSERVED_HPP_
