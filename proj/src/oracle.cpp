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

#include "qca/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qca::oracle {

namespace {
    Eigen::Index dim4(int nqubits) { return Eigen::Index{1} << (2 * nqubits); }
}

DenseState DenseState::product(int nqubits, const MatrixXc &local_rho) {
    if(nqubits < 1 || nqubits > 7) throw DimensionOverflow("DenseState: nqubits must be in [1,7]");
    if(local_rho.rows() != 2 || local_rho.cols() != 2) throw std::invalid_argument("DenseState: local state must be 2x2");
    if(std::abs(local_rho.trace() - cxd(1, 0)) > 1e-12 || (local_rho - local_rho.adjoint()).norm() > 1e-12)
        throw std::invalid_argument("DenseState: local state must be Hermitian with unit trace");
    VectorXc v1(4);
    for(int k = 0; k < 2; ++k)
        for(int b = 0; b < 2; ++b) v1(k * 2 + b) = local_rho(k, b);
    DenseState out;
    out.nqubits = nqubits;
    out.vec     = v1;
    for(int q = 1; q < nqubits; ++q) {
        VectorXc next(out.vec.size() * 4);
        for(Eigen::Index i = 0; i < out.vec.size(); ++i)
            for(int s = 0; s < 4; ++s) next(i * 4 + s) = out.vec(i) * v1(s);
        out.vec = next;
    }
    return out;
}

DenseState DenseState::all_active(int nqubits) {
    MatrixXc rho = MatrixXc::Zero(2, 2);
    rho(1, 1)    = 1;
    return product(nqubits, rho);
}

DenseState DenseState::absorbing(int nqubits) {
    MatrixXc rho = MatrixXc::Zero(2, 2);
    rho(0, 0)    = 1;
    return product(nqubits, rho);
}

MatrixXc DenseState::density_matrix() const { return devec_density(vec, nqubits); }

cxd DenseState::trace() const { return (vec_identity(nqubits).transpose() * vec).value(); }

MatrixXc DenseState::reduce(const std::vector<int> &sites) const {
    const int ns   = static_cast<int>(sites.size());
    const int dim  = 1 << ns;
    MatrixXc  out  = MatrixXc::Zero(dim, dim);
    const auto n   = nqubits;
    for(Eigen::Index idx = 0; idx < vec.size(); ++idx) {
        // decompose site-local index, qubit 0 most significant
        int  kept_k = 0, kept_b = 0;
        bool diag = true;
        for(int q = 0; q < n; ++q) {
            int s = static_cast<int>((idx >> (2 * (n - 1 - q))) & 3);
            int k = s >> 1, b = s & 1;
            auto it = std::find(sites.begin(), sites.end(), q);
            if(it != sites.end()) {
                kept_k = kept_k * 2 + k;
                kept_b = kept_b * 2 + b;
            } else if(k != b) {
                diag = false;
                break;
            }
        }
        if(diag) out(kept_k, kept_b) += vec(idx);
    }
    return out;
}

double DenseState::occupation(int site) const { return reduce({site})(1, 1).real(); }

DenseLiouvillian assemble_chain_liouvillian(const model::ThreeCellParams &params, int nqubits, Boundary boundary) {
    if(nqubits < 3) throw std::invalid_argument("assemble_chain_liouvillian: need at least 3 qubits");
    if(nqubits > 7) throw DimensionOverflow("assemble_chain_liouvillian: nqubits > 7");
    auto       l3  = superop::build_3cell_liouvillian(params);
    const auto dim = dim4(nqubits);
    DenseLiouvillian out;
    out.nqubits = nqubits;
    out.matrix  = MatrixXc::Zero(dim, dim);

    const int cmin = boundary == Boundary::Periodic ? 0 : 1;
    const int cmax = boundary == Boundary::Periodic ? nqubits - 1 : nqubits - 2;
    for(int c = cmin; c <= cmax; ++c) {
        std::array<int, 3> triple = {(c - 1 + nqubits) % nqubits, c, (c + 1) % nqubits};
        // scatter the 64x64 block over spectator configurations
        const Eigen::Index nspec = dim4(nqubits - 3);
        for(Eigen::Index spec = 0; spec < nspec; ++spec) {
            // distribute spectator digits over the non-triple qubits
            std::array<int, 7> digits{};
            Eigen::Index       rem = spec;
            for(int q = nqubits - 1; q >= 0; --q) {
                if(q == triple[0] || q == triple[1] || q == triple[2]) continue;
                digits[q] = static_cast<int>(rem & 3);
                rem >>= 2;
            }
            auto index_of = [&](int s0, int s1, int s2) {
                Eigen::Index idx = 0;
                for(int q = 0; q < nqubits; ++q) {
                    int d = digits[q];
                    if(q == triple[0]) d = s0;
                    else if(q == triple[1]) d = s1;
                    else if(q == triple[2]) d = s2;
                    idx = idx * 4 + d;
                }
                return idx;
            };
            for(int r = 0; r < 64; ++r)
                for(int cc = 0; cc < 64; ++cc) {
                    if(l3.matrix(r, cc) == cxd(0, 0)) continue;
                    out.matrix(index_of(r >> 4, (r >> 2) & 3, r & 3), index_of(cc >> 4, (cc >> 2) & 3, cc & 3)) +=
                        l3.matrix(r, cc);
                }
        }
    }
    return out;
}

DenseState integrate(const DenseState &state, const DenseLiouvillian &liouvillian, double t) {
    if(t < 0) throw std::invalid_argument("integrate: t must be >= 0");
    if(liouvillian.nqubits != state.nqubits) throw std::invalid_argument("integrate: size mismatch");
    DenseState out = state;
    if(t == 0) return out;
    out.vec = expm(liouvillian.matrix, t, 1e-10, liouvillian.matrix.rows() <= 256) * state.vec;
    return out;
}

void apply_3cell_gate(DenseState &state, const MatrixXc &gate64, int center, Boundary boundary) {
    const int n = state.nqubits;
    if(gate64.rows() != 64 || gate64.cols() != 64) throw std::invalid_argument("apply_3cell_gate: gate must be 64x64");
    if(boundary == Boundary::Open && (center < 1 || center > n - 2))
        throw std::invalid_argument("apply_3cell_gate: center window leaves open chain");
    std::array<int, 3> triple = {(center - 1 + n) % n, center, (center + 1) % n};
    std::array<Eigen::Index, 3> stride{};
    for(int i = 0; i < 3; ++i) stride[i] = Eigen::Index{1} << (2 * (n - 1 - triple[i]));

    VectorXc out = VectorXc::Zero(state.vec.size());
    const Eigen::Index total = state.vec.size();
    for(Eigen::Index base = 0; base < total; ++base) {
        // visit each index once as an "input stripped of triple digits"
        int s0 = static_cast<int>((base / stride[0]) & 3), s1 = static_cast<int>((base / stride[1]) & 3),
            s2 = static_cast<int>((base / stride[2]) & 3);
        if(s0 != 0 || s1 != 0 || s2 != 0) continue;
        for(int t = 0; t < 64; ++t) {
            Eigen::Index out_idx = base + (t >> 4) * stride[0] + ((t >> 2) & 3) * stride[1] + (t & 3) * stride[2];
            cxd          acc     = 0;
            for(int s = 0; s < 64; ++s) {
                cxd g = gate64(t, s);
                if(g == cxd(0, 0)) continue;
                acc += g * state.vec(base + (s >> 4) * stride[0] + ((s >> 2) & 3) * stride[1] + (s & 3) * stride[2]);
            }
            out(out_idx) = acc;
        }
    }
    state.vec = out;
}

void apply_round(DenseState &state, const MatrixXc &rule_exponential, Boundary boundary) {
    const int n = state.nqubits;
    if(boundary == Boundary::Periodic && n % 4 != 0)
        throw std::invalid_argument("apply_round: periodic chain length must be a multiple of 4");
    for(int residue : {2, 1, 3, 0}) {
        for(int c = residue; c < n; c += 4) {
            if(boundary == Boundary::Open && (c < 1 || c > n - 2)) continue;
            apply_3cell_gate(state, rule_exponential, c, boundary);
        }
    }
}

model::SteadyState3Cell conditional_steady_state(const model::ThreeCellParams &params, model::NeighborhoodLabel label,
                                                 double degeneracy_tol) {
    auto      l3 = superop::build_3cell_liouvillian(params);
    const int a = label.alpha, b = label.beta;
    // restrict to the 4-dim center block with outer qubits frozen diagonal
    MatrixXc block(4, 4);
    for(int r = 0; r < 4; ++r)
        for(int c = 0; c < 4; ++c) block(r, c) = l3.matrix((3 * a) * 16 + r * 4 + 3 * b, (3 * a) * 16 + c * 4 + 3 * b);

    Eigen::JacobiSVD<MatrixXc> svd(block, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    if(s(2) < degeneracy_tol * s(0)) throw DegenerateNullSpace("conditional_steady_state: null space dimension > 1");
    if(s(3) > degeneracy_tol * s(0)) throw DegenerateNullSpace("conditional_steady_state: no null vector within tolerance");
    VectorXc v = svd.matrixV().col(3);
    cxd      tr = v(0) + v(3);
    if(std::abs(tr) < 1e-12) throw DegenerateNullSpace("conditional_steady_state: traceless null vector");
    v /= tr;
    model::SteadyState3Cell out;
    out.occ_empty  = v(0).real();
    out.occ_active = v(3).real();
    out.coherence  = v(2); // index (k=1,b=0) = <1|rho|0>
    return out;
}

} // namespace qca::oracle
