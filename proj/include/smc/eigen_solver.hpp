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

#ifndef SMC_EIGEN_SOLVER_HPP_
#define SMC_EIGEN_SOLVER_HPP_

#include <cstddef>
#include <limits>

#include <Eigen/Dense>

namespace smc {

inline constexpr std::size_t kAllEigenpairs =
    std::numeric_limits<std::size_t>::max();

// Leading part of a symmetric eigendecomposition, values descending.
struct EigenLadder {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // dim x values.size(), or empty if not requested
  double full_trace = 0.0;
  std::size_t dim = 0;

  bool complete() const {
    return static_cast<std::size_t>(values.size()) == dim;
  }
};

// Top-k eigenpairs of S by algebraic value (k = kAllEigenpairs for all).
// Each eigenvector is sign-normalized so its largest-magnitude coordinate is
// positive, first index winning ties. Throws on a non-symmetric input or if
// the solver fails to converge.
EigenLadder SymEigDesc(const Eigen::MatrixXd& S, std::size_t k = kAllEigenpairs,
                       bool want_vectors = true);

// Applies the canonical sign rule to every column in place.
void CanonicalizeSigns(Eigen::MatrixXd& vectors);

}  // namespace smc

#endif  // SMC_EIGEN_SOLVER_HPP_
