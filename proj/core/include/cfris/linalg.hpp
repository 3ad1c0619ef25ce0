// SPDX-License-Identifier: Apache-2.0
//
// cfris - performance evaluation of RIS-assisted cell-free massive MIMO
// Copyright (C) 2026 The cfris authors
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

#pragma once

#include <armadillo>

namespace cfris
{
    // Largest condition number accepted by hermitian_inverse.
    inline constexpr double max_condition_number = 1.0e12;

    // Principal square root of a Hermitian PSD matrix via eigendecomposition.
    // Eigenvalues in [-tol * max(1, lambda_max), 0) are clamped to zero; anything more
    // negative raises numerical_error.
    arma::cx_mat sqrtm_psd(const arma::cx_mat &R, double tol = 1.0e-10);

    // Inverse of a Hermitian positive-definite matrix. Raises numerical_error if the
    // matrix is not positive definite or, after symmetric diagonal scaling to unit
    // diagonal, its condition number exceeds max_condition_number.
    arma::cx_mat hermitian_inverse(const arma::cx_mat &A);

    // Solves A x = b for Hermitian positive-definite A with the same guard.
    arma::cx_vec hermitian_solve(const arma::cx_mat &A, const arma::cx_vec &b);

    inline arma::cx_mat hermitian_part(const arma::cx_mat &A) { return 0.5 * (A + A.t()); }

    double min_eigenvalue(const arma::cx_mat &A);

    // Real part of tr(A B) without forming the product.
    double trace_product(const arma::cx_mat &A, const arma::cx_mat &B);
}
