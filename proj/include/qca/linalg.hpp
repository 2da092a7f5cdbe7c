// Copyright 2026 The qcadp authors
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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qca {

using cxd      = std::complex<double>;
using MatrixXd = Eigen::MatrixXd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXd = Eigen::VectorXd;
using VectorXc = Eigen::VectorXcd;

struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SVDFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Kronecker product, row/col blocks of b scaled by entries of a.
template<typename Derived1, typename Derived2>
auto kron(const Eigen::MatrixBase<Derived1> &a, const Eigen::MatrixBase<Derived2> &b) {
    using Scalar = decltype(typename Derived1::Scalar{} * typename Derived2::Scalar{});
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
    for(Eigen::Index i = 0; i < a.rows(); ++i)
        for(Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// exp(m*t) via scaling-and-squaring, cross-checked against exp(m*t/2)^2.
/// Throws IllConditioned when the two routes disagree beyond tolerance.
MatrixXc expm(const MatrixXc &m, double t, double tol = 1e-10, bool check = true);

template<typename Scalar>
struct SvdResultT {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> u;  // columns: kept left singular vectors
    VectorXd                                              s;  // kept singular values, descending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vh; // rows: kept right singular vectors
    double discarded_weight = 0; // sum of squared dropped values / sum of all squared
    int    full_rank        = 0; // values above numerical noise before truncation
};
using SvdResult     = SvdResultT<cxd>;
using SvdResultReal = SvdResultT<double>;

/// Truncated SVD keeping at most max_rank values and dropping values below
/// rel_cutoff * s_max. Degenerate values at the truncation edge are kept as a
/// block when that fits within max_rank. max_rank <= 0 means unlimited.
SvdResult     svd_truncate(const MatrixXc &m, int max_rank, double rel_cutoff);
SvdResultReal svd_truncate(const MatrixXd &m, int max_rank, double rel_cutoff);

/// Full SVD singular values only (for diagnostics).
VectorXd singular_values(const MatrixXc &m);

/// Site-local reordering of a doubled-space operator.
/// Input acts on (ket space of n qubits) x (bra space of n qubits) with the
/// global ordering |k1..kn> ⊗ |b1..bn>; output uses the per-site ordering
/// |k1 b1> ⊗ ... ⊗ |kn bn| (each site a 4-dim leg).
MatrixXc to_site_local(const MatrixXc &m, int nqubits);

/// Permutation from global doubled index (K*2^n+B) to site-local index.
std::vector<int> site_local_permutation(int nqubits);

// Single-qubit constants in the (|0>=empty, |1>=active) basis.
MatrixXc pauli_x();
MatrixXc pauli_y();
MatrixXc proj(int s);       // |s><s|
MatrixXc sigma_minus();     // |0><1|
MatrixXc sigma_plus();      // |1><0|

/// vec(rho) with per-site index k*2+b; matrix row index = ket bits.
VectorXc vec_density(const MatrixXc &rho, int nqubits);
MatrixXc devec_density(const VectorXc &v, int nqubits);

/// Vectorized identity <<I| for n qubits in site-local ordering.
VectorXc vec_identity(int nqubits);

/// FNV-1a over the raw bytes of a double array; used to tag binary dumps.
std::uint64_t hash_doubles(const double *data, std::size_t n);

} // namespace qca
