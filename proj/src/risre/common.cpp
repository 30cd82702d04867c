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

#include "risre/common.hpp"

namespace risre {

static bool chol_log2det(const arma::cx_mat &m, double &out)
{
    arma::cx_mat r;
    if (!arma::chol(r, m))
        return false;
    double acc = 0.0;
    for (arma::uword i = 0; i < r.n_rows; ++i)
        acc += std::log2(std::real(r(i, i)));
    out = 2.0 * acc;
    return true;
}

double log2det_eye_plus(const arma::cx_mat &x)
{
    if (x.n_rows != x.n_cols)
        throw std::invalid_argument("log2det_eye_plus: matrix must be square");

    arma::cx_mat m = x;
    m.diag() += 1.0;
    double v = 0.0;
    if (chol_log2det(m, v))
        return v;

    // Roundoff can leave the argument slightly asymmetric; average once.
    m = 0.5 * (m + m.t());
    if (chol_log2det(m, v))
        return v;
    throw SolverError("log2det_eye_plus: argument is not positive definite");
}

arma::cx_mat psd_sqrt(const arma::cx_mat &a)
{
    arma::vec w;
    arma::cx_mat v;
    if (!arma::eig_sym(w, v, 0.5 * (a + a.t())))
        throw SolverError("psd_sqrt: eigendecomposition failed");
    w = arma::clamp(w, 0.0, arma::datum::inf);
    return v * arma::diagmat(arma::sqrt(w)) * v.t();
}

double spectral_norm_psd(const arma::cx_mat &a)
{
    if (a.n_elem == 0)
        return 0.0;
    arma::cx_vec v(a.n_rows, arma::fill::ones);
    v /= std::sqrt(static_cast<double>(a.n_rows));
    double s = 0.0;
    for (int it = 0; it < 50; ++it) {
        arma::cx_vec w = a * v;
        s = arma::norm(w);
        if (s == 0.0)
            return 0.0;
        v = w / s;
    }
    return s;
}

} // namespace risre
