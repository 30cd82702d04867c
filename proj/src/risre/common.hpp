// SPDX-License-Identifier: Apache-2.0
//
// risre - resource-efficiency optimization for RIS-aided multi-user MIMO uplinks
// Copyright (C) 2026 risre developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef risre_common_H
#define risre_common_H

#include <armadillo>
#include <cmath>
#include <stdexcept>
#include <string>

namespace risre {

// Thrown when an iterative solver fails to make progress (non-convergence,
// failed line search, numerically indefinite matrix where PSD is required).
class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string &msg, double residual = 0.0)
        : std::runtime_error(msg), residual_(residual)
    {
    }
    double residual() const { return residual_; }

  private:
    double residual_;
};

inline double dbm_to_watt(double dbm)
{
    if (!std::isfinite(dbm))
        throw std::invalid_argument("dbm_to_watt: non-finite input");
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

inline double watt_to_dbm(double watt)
{
    if (!(watt > 0.0))
        throw std::invalid_argument("watt_to_dbm: power must be positive");
    return 10.0 * std::log10(watt) + 30.0;
}

// log2 det(I + X) for Hermitian PSD X via Cholesky. A roundoff-asymmetric
// input is symmetrized once before giving up.
double log2det_eye_plus(const arma::cx_mat &x);

// Hermitian PSD square root via eigendecomposition, eigenvalues clipped at 0.
arma::cx_mat psd_sqrt(const arma::cx_mat &a);

// Largest eigenvalue of a Hermitian PSD matrix, power iteration (50 steps).
double spectral_norm_psd(const arma::cx_mat &a);

} // namespace risre

#endif
