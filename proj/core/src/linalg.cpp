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

#include "cfris/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cfris/error.hpp"

namespace cfris
{
    namespace
    {
        void eig_or_throw(arma::vec &val, arma::cx_mat &vec, const arma::cx_mat &A, const char *what)
        {
            if (!arma::eig_sym(val, vec, hermitian_part(A)))
                throw numerical_error(std::string(what) + ": eigendecomposition failed");
        }
    }

    arma::cx_mat sqrtm_psd(const arma::cx_mat &R, double tol)
    {
        if (R.n_rows != R.n_cols)
            throw std::invalid_argument("sqrtm_psd: matrix must be square");
        if (R.is_empty()) return R;
        arma::vec val;
        arma::cx_mat vec;
        eig_or_throw(val, vec, R, "sqrtm_psd");
        const double scale = std::max(1.0, val.max());
        for (auto &v : val)
        {
            if (v < -tol * scale)
            {
                std::ostringstream msg;
                msg << "sqrtm_psd: matrix is not positive semi-definite (eigenvalue " << v << ")";
                throw numerical_error(msg.str());
            }
            v = v < 0.0 ? 0.0 : std::sqrt(v);
        }
        return vec * arma::diagmat(arma::conv_to<arma::cx_vec>::from(val)) * vec.t();
    }

    arma::cx_mat hermitian_inverse(const arma::cx_mat &A)
    {
        if (A.n_rows != A.n_cols)
            throw std::invalid_argument("hermitian_inverse: matrix must be square");

        // Jacobi equilibration first: large-scale fading spreads diagonal entries over many
        // orders of magnitude, which says nothing about the conditioning of the problem.
        const arma::vec d = arma::real(A.diag());
        if (!(d.min() > 0.0))
            throw numerical_error("hermitian_inverse: non-positive diagonal entry");
        const arma::vec s = 1.0 / arma::sqrt(d);
        const arma::cx_mat S = arma::diagmat(arma::conv_to<arma::cx_vec>::from(s));

        arma::vec val;
        arma::cx_mat vec;
        eig_or_throw(val, vec, S * A * S, "hermitian_inverse");
        const double lo = val.min(), hi = val.max();
        if (!(lo > 0.0) || hi / lo > max_condition_number)
        {
            std::ostringstream msg;
            msg << "hermitian_inverse: ill-conditioned matrix (scaled eigenvalues in [" << lo << ", " << hi << "])";
            throw numerical_error(msg.str());
        }
        return S * (vec * arma::diagmat(arma::conv_to<arma::cx_vec>::from(1.0 / val)) * vec.t()) * S;
    }

    arma::cx_vec hermitian_solve(const arma::cx_mat &A, const arma::cx_vec &b)
    {
        if (A.n_rows != A.n_cols || A.n_rows != b.n_elem)
            throw std::invalid_argument("hermitian_solve: dimension mismatch");
        const arma::vec d = arma::real(A.diag());
        if (!(d.min() > 0.0))
            throw numerical_error("hermitian_solve: non-positive diagonal entry");
        const arma::cx_vec s = arma::conv_to<arma::cx_vec>::from(1.0 / arma::sqrt(d));
        const arma::cx_mat B = hermitian_part(A % (s * s.st()));
        arma::cx_mat U;
        if (!arma::chol(U, B))
            throw numerical_error("hermitian_solve: matrix is not positive definite");
        // For a unit-diagonal matrix the squared spread of the Cholesky diagonal bounds the
        // condition number from below; cheap, and enough to flag numerically singular systems.
        const arma::vec u = arma::abs(U.diag());
        const double spread = u.max() / u.min();
        if (!(spread * spread <= max_condition_number))
            throw numerical_error("hermitian_solve: ill-conditioned system");
        const arma::cx_vec y = arma::solve(arma::trimatl(U.t()), s % b);
        return s % arma::solve(arma::trimatu(U), y);
    }

    double min_eigenvalue(const arma::cx_mat &A)
    {
        arma::vec val;
        if (!arma::eig_sym(val, hermitian_part(A)))
            throw numerical_error("min_eigenvalue: eigendecomposition failed");
        return val.min();
    }

    double trace_product(const arma::cx_mat &A, const arma::cx_mat &B)
    {
        // tr(AB) = sum_ij A_ij B_ji
        return std::real(arma::accu(A % B.st()));
    }
}
