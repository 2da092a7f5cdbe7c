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

#include "qca/superop.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace qca::superop {

MatrixXc hamiltonian_3cell(const model::ThreeCellParams &params) {
    MatrixXc h = MatrixXc::Zero(8, 8);
    for(const auto &label : model::NeighborhoodLabel::all()) {
        const double theta = params.theta[label.index()];
        if(theta == 0) continue;
        h += (theta / 2) * kron(proj(label.alpha), kron(pauli_x(), proj(label.beta)));
    }
    return h;
}

MatrixXc jump_3cell(const model::ThreeCellParams &params, int sign) {
    MatrixXc op = MatrixXc::Zero(8, 8);
    MatrixXc s  = sign > 0 ? sigma_plus() : sigma_minus();
    for(const auto &label : model::NeighborhoodLabel::all()) {
        const double rate = sign > 0 ? params.gamma_plus[label.index()] : params.gamma_minus[label.index()];
        if(rate == 0) continue;
        op += std::sqrt(rate) * kron(proj(label.alpha), kron(s, proj(label.beta)));
    }
    return op;
}

namespace {
    /// -i(H⊗I - I⊗H^T) + Σ L⊗L* - ½((L†L)⊗I + I⊗(L†L)^T) in the global
    /// doubled ordering (ket block ⊗ bra block).
    MatrixXc vectorize_lindblad(const MatrixXc &h, const std::vector<MatrixXc> &jumps) {
        const auto d  = h.rows();
        MatrixXc   id = MatrixXc::Identity(d, d);
        MatrixXc   l  = cxd(0, -1) * (kron(h, id) - kron(id, h.transpose()));
        for(const auto &j : jumps) {
            MatrixXc jdj = j.adjoint() * j;
            l += kron(j, j.conjugate()) - 0.5 * (kron(jdj, id) + kron(id, jdj.transpose()));
        }
        return l;
    }
} // namespace

Vectorized3CellLiouvillian build_3cell_liouvillian(const model::ThreeCellParams &params) {
    params.validate();
    MatrixXc h      = hamiltonian_3cell(params);
    MatrixXc global = vectorize_lindblad(h, {jump_3cell(params, +1), jump_3cell(params, -1)});
    return {to_site_local(global, 3)};
}

double ScheduleConfig::effective_tau(double p) const {
    if(mode == Mode::Discrete) return tau;
    const double pq = p * (1 - p);
    if(pq <= 0) throw std::domain_error("ScheduleConfig: continuous mode needs p in (0,1)");
    return std::sqrt(trotter_constant / pq);
}

MatrixXc partition_exponential(const Vectorized3CellLiouvillian &l3, double tau, int offset) {
    if(offset != 0 && offset != 1) throw std::invalid_argument("partition_exponential: offset must be 0 or 1");
    MatrixXc g3 = expm(l3.matrix, tau);
    MatrixXc id = MatrixXc::Identity(4, 4);
    return offset == 0 ? MatrixXc(kron(g3, id)) : MatrixXc(kron(id, g3));
}

RoundGates build_round_gates(const model::ThreeCellParams &params, const ScheduleConfig &schedule, double p_for_tau) {
    const double tau = schedule.effective_tau(p_for_tau);
    auto         l3  = build_3cell_liouvillian(params);

    MatrixXc g3 = expm(l3.matrix, tau);
    MatrixXc id = MatrixXc::Identity(4, 4);
    MatrixXc e_center1 = kron(g3, id); // rule centered on window qubit 1
    MatrixXc e_center2 = kron(id, g3); // rule centered on window qubit 2

    RoundGates out;
    out.tau              = tau;
    out.rule_exponential = g3;
    // P1 (even center, window qubit 2) acts first, then P2 (odd, qubit 1).
    out.v = {e_center1 * e_center2, tau, "P2*P1", params.hash()};
    // P3 (odd center, window qubit 1) acts first, then P4 (even, qubit 2).
    out.w = {e_center2 * e_center1, tau, "P4*P3", params.hash()};
    return out;
}

double trace_preservation_defect(const MatrixXc &gate, int nqubits) {
    VectorXc w = vec_identity(nqubits);
    if(gate.rows() != w.size()) throw std::invalid_argument("trace_preservation_defect: dimension mismatch");
    VectorXc projected = gate.transpose() * w; // row vector <<I| times G
    return (projected - w).cwiseAbs().maxCoeff();
}

namespace {
    constexpr std::uint64_t kGateMagic = 0x51434147415445ull; // "QCAGATE"
}

void write_gate_dump(std::ostream &os, const SuperOperatorGate &gate) {
    auto put = [&os](const void *p, std::size_t n) { os.write(static_cast<const char *>(p), static_cast<std::streamsize>(n)); };
    std::uint64_t rows = static_cast<std::uint64_t>(gate.matrix.rows()), cols = static_cast<std::uint64_t>(gate.matrix.cols());
    put(&kGateMagic, 8);
    put(&rows, 8);
    put(&cols, 8);
    put(&gate.tau, 8);
    put(&gate.params_hash, 8);
    // row-major complex128
    for(std::uint64_t r = 0; r < rows; ++r)
        for(std::uint64_t c = 0; c < cols; ++c) {
            cxd v = gate.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            put(&v, 16);
        }
}

SuperOperatorGate read_gate_dump(std::istream &is) {
    auto get = [&is](void *p, std::size_t n) {
        is.read(static_cast<char *>(p), static_cast<std::streamsize>(n));
        if(!is) throw std::runtime_error("read_gate_dump: truncated stream");
    };
    std::uint64_t magic = 0, rows = 0, cols = 0;
    get(&magic, 8);
    if(magic != kGateMagic) throw std::runtime_error("read_gate_dump: bad magic");
    get(&rows, 8);
    get(&cols, 8);
    SuperOperatorGate gate;
    get(&gate.tau, 8);
    get(&gate.params_hash, 8);
    gate.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for(std::uint64_t r = 0; r < rows; ++r)
        for(std::uint64_t c = 0; c < cols; ++c) {
            cxd v;
            get(&v, 16);
            gate.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    return gate;
}

} // namespace qca::superop
