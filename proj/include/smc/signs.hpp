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

#ifndef SMC_SIGNS_HPP_
#define SMC_SIGNS_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "smc/observed.hpp"
#include "smc/spectral.hpp"

namespace smc {

enum class SignMethod { kExhaustive, kHeuristic, kAuto };

inline constexpr std::size_t kDefaultSignBudget = 12;

// M_hat(s) = sum_i s_i lambda_i U_i V_i^T, kept in factor form.
struct CompletedMatrix {
  SpectralEstimate estimate;
  std::vector<int> signs;
  SignMethod method = SignMethod::kExhaustive;

  std::size_t rows() const { return estimate.n_rows; }
  std::size_t cols() const { return estimate.n_cols; }

  // sum_i s_i lambda_i U_ki V_hi.
  double predict(std::size_t k, std::size_t h) const;
  Eigen::MatrixXd dense() const;
};

// ||P_Omega(M_hat(s)) - P_Omega(M)||_F^2 evaluated on observed cells only.
double ObservedResidual(const SpectralEstimate& est, const std::vector<int>& s,
                        const ObservedMatrix& obs);

// Global minimizer over {-1,+1}^r; earlier candidates in lexicographic order
// (+1 before -1, first factor most significant) win ties.
std::vector<int> ResolveSignsExhaustive(const SpectralEstimate& est,
                                        const ObservedMatrix& obs,
                                        std::size_t budget = kDefaultSignBudget);

// sign<V_hat_i, v_i(M)> * sign<U_hat_i, u_i(M)> over the zero-imputed M.
std::vector<int> ResolveSignsHeuristic(const SpectralEstimate& est,
                                       const ObservedMatrix& obs);

std::vector<int> ResolveSigns(const SpectralEstimate& est,
                              const ObservedMatrix& obs, SignMethod method,
                              SignMethod* used = nullptr);

CompletedMatrix Assemble(SpectralEstimate est, std::vector<int> signs,
                         SignMethod method = SignMethod::kExhaustive);

// estimate -> resolve -> assemble.
CompletedMatrix Complete(const ObservedMatrix& obs, std::size_t rank,
                         SignMethod method = SignMethod::kAuto);

}  // namespace smc

#endif  // SMC_SIGNS_HPP_
