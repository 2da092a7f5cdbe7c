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

#include "qca/model.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace qca::superop {

/// Doubled-space generator of one 3-cell rule (64x64, site-local leg order:
/// left qubit, center, right, each a 4-dim ket⊗bra leg).
struct Vectorized3CellLiouvillian {
    MatrixXc matrix; // 64x64
};

/// L = -i(H⊗I - I⊗H^T) + Σ± [L±⊗L±* - ½((L±†L±)⊗I + I⊗(L±†L±)^T)]
/// with H = Σ_{ab}(θ_ab/2) P_a⊗X⊗P_b and L± = Σ_{ab}√γ±_ab P_a⊗σ±⊗P_b.
Vectorized3CellLiouvillian build_3cell_liouvillian(const model::ThreeCellParams &params);

/// The 8x8 physical-space operators of the rule (for dense-oracle reuse).
MatrixXc hamiltonian_3cell(const model::ThreeCellParams &params);
MatrixXc jump_3cell(const model::ThreeCellParams &params, int sign); // +1 or -1

/// Gate schedule. Continuous mode derives tau from the Trotter-error budget
/// tau^2 p(1-p) = C; discrete mode uses a fixed tau.
struct ScheduleConfig {
    enum class Mode { Continuous, Discrete };
    Mode   mode             = Mode::Continuous;
    double tau              = 10.0;   // used in Discrete mode
    double trotter_constant = 0.0025; // used in Continuous mode

    [[nodiscard]] double effective_tau(double p) const;
};

/// Dense two-coarse-site gate in doubled space (256x256 over a 4-qubit
/// window; each coarse site carries a 16-dim physical leg).
struct SuperOperatorGate {
    MatrixXc      matrix; // 256x256, row/col index = site1*16 + site2
    double        tau = 0;
    std::string   provenance;
    std::uint64_t params_hash = 0;
};

/// Matrix exponential of the embedded rule: exp(tau * L_3cell) placed at
/// qubit offset 0 (center = window qubit 1) or 1 (center = window qubit 2).
MatrixXc partition_exponential(const Vectorized3CellLiouvillian &l3, double tau, int offset);

struct RoundGates {
    SuperOperatorGate v; // A-B bond: P1 (center = window qubit 2) then P2 (center = qubit 1)
    SuperOperatorGate w; // B-A bond: P3 (center = window qubit 1) then P4 (center = qubit 2)
    MatrixXc          rule_exponential; // exp(tau * L_3cell), 64x64, for Trotter-matched oracles
    double            tau = 0;
};

/// Composes the four-partition tiling into the two brickwork gates.
/// Per round every physical cell is updated exactly once: centers ≡2 (P1),
/// ≡1 (P2), ≡3 (P3), ≡0 (P4) modulo 4 relative to the A-site origin.
RoundGates build_round_gates(const model::ThreeCellParams &params, const ScheduleConfig &schedule, double p_for_tau);

/// Largest violation of <<I| G = <<I| over the 4 window qubits.
double trace_preservation_defect(const MatrixXc &gate, int nqubits);

/// Binary dump: header (magic, dims, tau, params hash) + row-major complex128.
void write_gate_dump(std::ostream &os, const SuperOperatorGate &gate);
SuperOperatorGate read_gate_dump(std::istream &is);

} // namespace qca::superop
