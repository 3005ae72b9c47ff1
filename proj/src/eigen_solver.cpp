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

#include "smc/eigen_solver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "smc/error.hpp"

// OpenBLAS threading would make results depend on the machine's core
// count; pin it to one thread when the symbol is present.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace smc {
namespace {

void PinBlasThreads() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (openblas_set_num_threads != nullptr) openblas_set_num_threads(1);
  });
}

// A faulty BLAS kernel can return garbage without an error code, so the
// backward error and orthonormality are verified on every solve.
void CheckEigenpairs(const Eigen::MatrixXd& S, const EigenLadder& ladder,
                     double scale) {
  const auto n = static_cast<double>(S.rows());
  const Eigen::MatrixXd& z = ladder.vectors;
  const Eigen::MatrixXd gram = z.transpose() * z;
  const double orth =
      (gram - Eigen::MatrixXd::Identity(z.cols(), z.cols())).cwiseAbs()
          .maxCoeff();
  const Eigen::MatrixXd resid =
      S * z - z * ladder.values.asDiagonal();
  const double res = resid.cwiseAbs().maxCoeff();
  if (!(orth <= 1e-9 * n) || !(res <= 1e-9 * n * scale)) {
    Fail(ErrorCode::kNonConvergence,
         "eigensolver: LAPACK returned inaccurate eigenpairs (orthonormality "
         "error " + std::to_string(orth) + ", residual " +
         std::to_string(res) + ")");
  }
}

}  // namespace

void CanonicalizeSigns(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (vectors.rows() > 0 && vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

EigenLadder SymEigDesc(const Eigen::MatrixXd& S, std::size_t k,
                       bool want_vectors) {
  PinBlasThreads();
  if (S.rows() != S.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "eigensolver: matrix not square");
  }
  const auto dim = static_cast<std::size_t>(S.rows());
  if (k == kAllEigenpairs) k = dim;
  if (k < 1 || k > dim) {
    Fail(ErrorCode::kInvalidArgument, "eigensolver: k must be in [1, dim]");
  }
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    Fail(ErrorCode::kInvalidArgument, "eigensolver: matrix not symmetric");
  }

  const auto n = static_cast<lapack_int>(dim);
  const auto kk = static_cast<lapack_int>(k);
  Eigen::MatrixXd work = S;
  std::vector<double> w(dim);
  Eigen::MatrixXd z;
  std::vector<lapack_int> support(2 * dim);
  lapack_int found = 0;
  const char jobz = want_vectors ? 'V' : 'N';
  const char range = k == dim ? 'A' : 'I';
  if (want_vectors) z.resize(n, kk);
  lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, jobz, range, 'U', n, work.data(), n, 0.0, 0.0,
      n - kk + 1, n, 0.0, &found, w.data(),
      want_vectors ? z.data() : nullptr, n, support.data());
  if (info > 0) {
    Fail(ErrorCode::kNonConvergence,
         "eigensolver did not converge (info=" + std::to_string(info) + ")");
  }
  if (info < 0 || found != kk) {
    Fail(ErrorCode::kNonConvergence, "eigensolver failed");
  }

  EigenLadder out;
  out.dim = dim;
  out.full_trace = S.trace();
  out.values.resize(kk);
  for (lapack_int i = 0; i < kk; ++i) out.values(i) = w[kk - 1 - i];
  if (want_vectors) {
    out.vectors = z.rowwise().reverse();
    CanonicalizeSigns(out.vectors);
    CheckEigenpairs(S, out, scale);
  }
  return out;
}

}  // namespace smc
