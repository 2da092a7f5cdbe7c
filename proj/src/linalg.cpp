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

#include "qca/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cstring>
#include <random>

#include <lapacke.h>

namespace qca {

MatrixXc expm(const MatrixXc &m, double t, double tol, bool check) {
    if(m.rows() != m.cols()) throw std::invalid_argument("expm: matrix must be square");
    MatrixXc full = (m * t).exp();
    if(check) {
        MatrixXc half = (m * (t / 2)).exp();
        double   ref  = std::max(1.0, full.norm());
        double   err  = (half * half - full).norm() / ref;
        if(err > tol) throw IllConditioned("expm: semigroup self-check failed, relative error " + std::to_string(err));
    }
    return full;
}

namespace {

    template<typename Scalar>
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    int lapack_gesdd(Mat<double> &a, VectorXd &s, Mat<double> &u, Mat<double> &vh) {
        auto m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
        auto k = std::min(m, n);
        s.resize(k);
        u.resize(m, k);
        vh.resize(k, n);
        return LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, a.data(), m, s.data(), u.data(), m, vh.data(), k);
    }

    int lapack_gesdd(Mat<cxd> &a, VectorXd &s, Mat<cxd> &u, Mat<cxd> &vh) {
        auto m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
        auto k = std::min(m, n);
        s.resize(k);
        u.resize(m, k);
        vh.resize(k, n);
        return LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, reinterpret_cast<lapack_complex_double *>(a.data()), m, s.data(),
                              reinterpret_cast<lapack_complex_double *>(u.data()), m,
                              reinterpret_cast<lapack_complex_double *>(vh.data()), k);
    }

    template<typename Scalar>
    void full_svd(const Mat<Scalar> &m, Mat<Scalar> &u, VectorXd &s, Mat<Scalar> &vh) {
        Mat<Scalar> a    = m;
        int         info = lapack_gesdd(a, s, u, vh);
        if(info != 0) {
            // gesdd occasionally fails to converge; Jacobi is slow but robust.
            Eigen::JacobiSVD<Mat<Scalar>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
            u  = svd.matrixU();
            s  = svd.singularValues();
            vh = svd.matrixV().adjoint();
        }
    }

    // Randomized range finder with subspace iteration; adequate for the fast
    // decaying Schmidt spectra seen here, and deterministic (fixed seed).
    template<typename Scalar>
    void randomized_svd(const Mat<Scalar> &m, int rank, Mat<Scalar> &u, VectorXd &s, Mat<Scalar> &vh) {
        const int    oversample = 32;
        const int    l          = std::min<int>(rank + oversample, static_cast<int>(std::min(m.rows(), m.cols())));
        std::mt19937 gen(0x9e3779b9u);
        std::normal_distribution<double> nd;
        Mat<Scalar>                      omega(m.cols(), l);
        for(Eigen::Index j = 0; j < omega.cols(); ++j)
            for(Eigen::Index i = 0; i < omega.rows(); ++i) {
                if constexpr(std::is_same_v<Scalar, double>)
                    omega(i, j) = nd(gen);
                else
                    omega(i, j) = cxd(nd(gen), nd(gen));
            }
        Mat<Scalar> q = m * omega;
        for(int it = 0; it < 2; ++it) {
            q = Eigen::HouseholderQR<Mat<Scalar>>(q).householderQ() * Mat<Scalar>::Identity(q.rows(), l);
            q = m * (m.adjoint() * q);
        }
        q             = Eigen::HouseholderQR<Mat<Scalar>>(q).householderQ() * Mat<Scalar>::Identity(q.rows(), l);
        Mat<Scalar> b = q.adjoint() * m;
        Mat<Scalar> ub;
        full_svd(b, ub, s, vh);
        u = q * ub;
    }

    template<typename Scalar>
    SvdResultT<Scalar> svd_truncate_impl(const Mat<Scalar> &m, int max_rank, double rel_cutoff) {
        const int kmin = static_cast<int>(std::min(m.rows(), m.cols()));
        // Full SVD cost grows fast; above this size only the leading block is
        // ever kept, so a randomized solve is enough.
        const bool use_randomized = max_rank > 0 && kmin > 4 * max_rank && kmin > 512;

        Mat<Scalar> u, vh;
        VectorXd    s;
        if(use_randomized)
            randomized_svd(m, max_rank, u, s, vh);
        else
            full_svd(m, u, s, vh);

        const double smax = s.size() > 0 ? s(0) : 0.0;
        double       total = s.squaredNorm();
        // With a randomized solve the unseen tail still carries weight.
        double frob = m.squaredNorm();
        total       = std::max(total, frob);

        SvdResultT<Scalar> out;
        if(smax <= 0.0) {
            out.u  = u.leftCols(1);
            out.s  = VectorXd::Zero(1);
            out.vh = vh.topRows(1);
            return out;
        }
        int rank = 0;
        while(rank < s.size() && s(rank) > rel_cutoff * smax) ++rank;
        out.full_rank = rank;
        int keep      = (max_rank > 0) ? std::min(rank, max_rank) : rank;
        keep          = std::max(keep, 1);
        // Degenerate values straddling the edge: keep the block when it fits.
        const double tie = 1e-10;
        while(keep < rank && (max_rank <= 0 || keep < max_rank) && s(keep) > (1.0 - tie) * s(keep - 1)) ++keep;

        double kept = s.head(keep).squaredNorm();
        out.u       = u.leftCols(keep);
        out.s       = s.head(keep);
        out.vh      = vh.topRows(keep);
        out.discarded_weight = total > 0 ? std::max(0.0, (total - kept) / total) : 0.0;
        return out;
    }

} // namespace

SvdResult svd_truncate(const MatrixXc &m, int max_rank, double rel_cutoff) { return svd_truncate_impl<cxd>(m, max_rank, rel_cutoff); }
SvdResultReal svd_truncate(const MatrixXd &m, int max_rank, double rel_cutoff) {
    return svd_truncate_impl<double>(m, max_rank, rel_cutoff);
}

VectorXd singular_values(const MatrixXc &m) {
    MatrixXc u, vh;
    VectorXd s;
    full_svd<cxd>(m, u, s, vh);
    return s;
}

std::vector<int> site_local_permutation(int nqubits) {
    const int        dim = 1 << nqubits;
    std::vector<int> perm(static_cast<std::size_t>(dim) * dim);
    for(int k = 0; k < dim; ++k)
        for(int b = 0; b < dim; ++b) {
            int local = 0;
            for(int q = 0; q < nqubits; ++q) {
                int kq = (k >> (nqubits - 1 - q)) & 1;
                int bq = (b >> (nqubits - 1 - q)) & 1;
                local  = local * 4 + (kq * 2 + bq);
            }
            perm[static_cast<std::size_t>(k) * dim + b] = local;
        }
    return perm;
}

MatrixXc to_site_local(const MatrixXc &m, int nqubits) {
    const int dim = 1 << (2 * nqubits);
    if(m.rows() != dim || m.cols() != dim) throw std::invalid_argument("to_site_local: dimension mismatch");
    auto     perm = site_local_permutation(nqubits);
    MatrixXc out(dim, dim);
    for(int r = 0; r < dim; ++r)
        for(int c = 0; c < dim; ++c) out(perm[r], perm[c]) = m(r, c);
    return out;
}

MatrixXc pauli_x() {
    MatrixXc x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}
MatrixXc pauli_y() {
    MatrixXc y(2, 2);
    y << 0, cxd(0, -1), cxd(0, 1), 0;
    return y;
}
MatrixXc proj(int s) {
    MatrixXc p = MatrixXc::Zero(2, 2);
    p(s, s)    = 1;
    return p;
}
MatrixXc sigma_minus() {
    MatrixXc m = MatrixXc::Zero(2, 2);
    m(0, 1)    = 1;
    return m;
}
MatrixXc sigma_plus() {
    MatrixXc m = MatrixXc::Zero(2, 2);
    m(1, 0)    = 1;
    return m;
}

VectorXc vec_density(const MatrixXc &rho, int nqubits) {
    const int dim = 1 << nqubits;
    if(rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("vec_density: dimension mismatch");
    auto     perm = site_local_permutation(nqubits);
    VectorXc v(static_cast<Eigen::Index>(dim) * dim);
    for(int k = 0; k < dim; ++k)
        for(int b = 0; b < dim; ++b) v(perm[static_cast<std::size_t>(k) * dim + b]) = rho(k, b);
    return v;
}

MatrixXc devec_density(const VectorXc &v, int nqubits) {
    const int dim = 1 << nqubits;
    if(v.size() != static_cast<Eigen::Index>(dim) * dim) throw std::invalid_argument("devec_density: dimension mismatch");
    auto     perm = site_local_permutation(nqubits);
    MatrixXc rho(dim, dim);
    for(int k = 0; k < dim; ++k)
        for(int b = 0; b < dim; ++b) rho(k, b) = v(perm[static_cast<std::size_t>(k) * dim + b]);
    return rho;
}

VectorXc vec_identity(int nqubits) {
    VectorXc w1(4);
    w1 << 1, 0, 0, 1;
    VectorXc w = w1;
    for(int q = 1; q < nqubits; ++q) {
        VectorXc next(w.size() * 4);
        for(Eigen::Index i = 0; i < w.size(); ++i)
            for(int s = 0; s < 4; ++s) next(i * 4 + s) = w(i) * w1(s);
        w = next;
    }
    return w;
}

std::uint64_t hash_doubles(const double *data, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    auto         *p = reinterpret_cast<const unsigned char *>(data);
    for(std::size_t i = 0; i < n * sizeof(double); ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace qca
