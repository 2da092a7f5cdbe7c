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

#include "qca/superop.hpp"

#include <vector>

namespace qca::oracle {

struct DimensionOverflow : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegenerateNullSpace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Boundary { Periodic, Open };

/// Full density matrix over nqubits (<= 7), kept in vectorized form
/// (dimension 4^n, site-local leg ordering).
struct DenseState {
    int      nqubits = 0;
    VectorXc vec;

    static DenseState product(int nqubits, const MatrixXc &local_rho);
    static DenseState all_active(int nqubits);
    static DenseState absorbing(int nqubits);

    [[nodiscard]] MatrixXc density_matrix() const;
    [[nodiscard]] cxd      trace() const;
    /// Reduced density matrix over the given qubits (ascending order).
    [[nodiscard]] MatrixXc reduce(const std::vector<int> &sites) const;
    [[nodiscard]] double   occupation(int site) const;
};

struct DenseLiouvillian {
    int      nqubits = 0;
    MatrixXc matrix; // 4^n x 4^n
};

/// Sum of the vectorized 3-cell rule over all centers. Open boundary skips
/// centers whose window would leave the chain.
DenseLiouvillian assemble_chain_liouvillian(const model::ThreeCellParams &params, int nqubits, Boundary boundary);

/// exp(L t) applied to the state; trace preserved to ~1e-12.
DenseState integrate(const DenseState &state, const DenseLiouvillian &liouvillian, double t);

/// Applies a 64x64 doubled-space gate to the qubit triple centered at
/// `center` (wrapping when periodic).
void apply_3cell_gate(DenseState &state, const MatrixXc &gate64, int center, Boundary boundary);

/// One full 4-partition round, Trotter-matched to the MPS gate schedule:
/// centers ≡2 mod 4 (P1), ≡1 (P2), ≡3 (P3), ≡0 (P4); open boundary skips
/// centers without a full window. nqubits must be a multiple of 4 when
/// periodic.
void apply_round(DenseState &state, const MatrixXc &rule_exponential, Boundary boundary);

/// Center-site steady state of the 3-cell rule with the outer qubits frozen
/// in |alpha>, |beta>: null-space solve of the restricted 4x4 generator.
model::SteadyState3Cell conditional_steady_state(const model::ThreeCellParams &params, model::NeighborhoodLabel label,
                                                 double degeneracy_tol = 1e-8);

} // namespace qca::oracle
