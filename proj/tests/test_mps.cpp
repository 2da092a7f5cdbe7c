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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qca/mps.hpp"
#include "qca/observables.hpp"
#include "qca/oracle.hpp"

#include <sstream>

using namespace qca;
using namespace qca::mps;

namespace {
    MatrixXc active_rho() {
        MatrixXc rho = MatrixXc::Zero(2, 2);
        rho(1, 1)    = 1;
        return rho;
    }
    MatrixXc empty_rho() {
        MatrixXc rho = MatrixXc::Zero(2, 2);
        rho(0, 0)    = 1;
        return rho;
    }
    MatrixXc coherent_rho() {
        MatrixXc rho(2, 2);
        rho << 0.7, cxd(0.1, 0.08), cxd(0.1, -0.08), 0.3;
        return rho;
    }

    superop::RoundGates make_gates(double p, double omega, bool discrete = false, double tau = 10.0) {
        superop::ScheduleConfig schedule;
        if(discrete) {
            schedule.mode = superop::ScheduleConfig::Mode::Discrete;
            schedule.tau  = tau;
        }
        return superop::build_round_gates(model::dp_quantum_rates(p, omega), schedule, p);
    }
} // namespace

TEST_CASE("product states are canonical with unit trace eigenvalue") {
    auto state = InfiniteMPS<double>::product_state(active_rho(), 16);
    CHECK(state.bond_dim(0) == 1);
    CHECK(state.trace_eigenvalue() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(state.canonical_residual() < 1e-14);
    CHECK(observables::occupation_density(state) == doctest::Approx(1.0).epsilon(1e-14));

    auto cx = InfiniteMPS<cxd>::product_state(coherent_rho(), 16);
    CHECK(observables::occupation_density(cx) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(observables::l1_coherence(cx) == doctest::Approx(2 * std::abs(cxd(0.1, 0.08))).epsilon(1e-12));
}

TEST_CASE("identity gates leave the state invariant") {
    auto state = InfiniteMPS<double>::product_state(active_rho(), 16);
    auto rep   = state.apply_gate_pair(MatrixXd::Identity(256, 256), MatrixXd::Identity(256, 256));
    CHECK(rep.trace_drift < 1e-12);
    CHECK(rep.discarded_weight < 1e-12);
    CHECK(observables::occupation_density(state) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state.canonical_residual() < 1e-10);
}

TEST_CASE("the absorbing product state is a fixed point of the round gates") {
    auto gates = make_gates(0.75, 0.0);
    auto state = InfiniteMPS<double>::product_state(empty_rho(), 16);
    for(int r = 0; r < 3; ++r) {
        auto rep = state.apply_gate_pair(gates.v.matrix.real(), gates.w.matrix.real());
        CHECK(rep.trace_drift < 1e-10);
    }
    CHECK(observables::occupation_density(state) < 1e-10);
    CHECK(observables::half_chain_entropy(state) < 1e-10);
}

TEST_CASE("iTEBD rounds keep canonical form and the trace functional") {
    auto gates = make_gates(0.7, 0.1);
    auto state = InfiniteMPS<cxd>::product_state(active_rho(), 48);
    for(int r = 0; r < 4; ++r) {
        auto rep = state.apply_gate_pair(gates.v.matrix, gates.w.matrix);
        CHECK(rep.trace_drift < 1e-8);
        CHECK(state.canonical_residual() < 1e-8);
    }
    const double n = observables::occupation_density(state);
    CHECK(n > 0.0);
    CHECK(n < 1.0);
}

TEST_CASE("real and complex engines agree for undriven rules") {
    auto gates = make_gates(0.7, 0.0);
    auto re    = InfiniteMPS<double>::product_state(active_rho(), 32);
    auto cx    = InfiniteMPS<cxd>::product_state(active_rho(), 32);
    for(int r = 0; r < 3; ++r) {
        re.apply_gate_pair(gates.v.matrix.real(), gates.w.matrix.real());
        cx.apply_gate_pair(gates.v.matrix, gates.w.matrix);
    }
    CHECK(observables::occupation_density(re) == doctest::Approx(observables::occupation_density(cx)).epsilon(1e-9));
    CHECK(observables::half_chain_entropy(re) == doctest::Approx(observables::half_chain_entropy(cx)).epsilon(1e-7));
}

TEST_CASE("finite TEBD matches the dense oracle") {
    for(double omega : {0.0, 0.1}) {
        for(bool discrete : {false, true}) {
            auto gates = make_gates(0.7, omega, discrete, 2.0);
            auto state = FiniteMPS<cxd>::product_state(3, active_rho());
            auto dense = oracle::DenseState::all_active(6);
            for(int r = 0; r < 5; ++r) {
                state.apply_round(gates.v.matrix, gates.w.matrix);
                oracle::apply_round(dense, gates.rule_exponential, oracle::Boundary::Open);
            }
            const VectorXc diff = state.to_dense() - dense.vec / dense.trace();
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-10);
            CHECK(state.trace() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("finite TEBD respects a bond cap and reports truncation") {
    auto gates = make_gates(0.7, 0.1);
    auto state = FiniteMPS<cxd>::product_state(4, active_rho(), 3);
    mps::TruncationReport last;
    for(int r = 0; r < 6; ++r) last = state.apply_round(gates.v.matrix, gates.w.matrix);
    CHECK(last.max_bond <= 3);
    CHECK(last.discarded_weight > 0.0);
}

TEST_CASE("contract_ratio rejects incomplete unit cells") {
    auto state = InfiniteMPS<double>::product_state(active_rho(), 8);
    std::vector<InfiniteMPS<double>::Vec16> w(1, InfiniteMPS<double>::identity_weights());
    CHECK_THROWS(static_cast<void>(state.contract_ratio(w)));
}

TEST_CASE("convert_gate guards the real engine") {
    auto gates = make_gates(0.7, 0.1);
    CHECK_THROWS(static_cast<void>(convert_gate<double>(gates.v.matrix)));
    CHECK(gate_is_real(make_gates(0.7, 0.0).v.matrix));
    CHECK_FALSE(gate_is_real(gates.v.matrix));
}

TEST_CASE("checkpoints round trip") {
    auto gates = make_gates(0.7, 0.1);
    auto state = InfiniteMPS<cxd>::product_state(active_rho(), 24);
    for(int r = 0; r < 3; ++r) state.apply_gate_pair(gates.v.matrix, gates.w.matrix);

    std::stringstream ss(std::ios::in | std::ios::out | std::ios::binary);
    save_checkpoint(ss, state, 3, 77u, gates.tau);
    int           round = 0;
    std::uint64_t hash  = 0;
    double        tau   = 0;
    auto          back  = load_checkpoint<cxd>(ss, round, hash, tau);
    CHECK(round == 3);
    CHECK(hash == 77u);
    CHECK(tau == gates.tau);
    REQUIRE(back.bond_dim(0) == state.bond_dim(0));
    CHECK((back.schmidt(0) - state.schmidt(0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(observables::occupation_density(back) == doctest::Approx(observables::occupation_density(state)).epsilon(1e-13));
}

TEST_CASE("evolve invokes the hook at the stride") {
    auto gates = make_gates(0.7, 0.0);
    auto state = InfiniteMPS<double>::product_state(active_rho(), 16);
    std::vector<int> rounds;
    evolve<double>(state, gates.v.matrix.real(), gates.w.matrix.real(), 5, 2,
                   [&](int r, const InfiniteMPS<double> &, const TruncationReport &) { rounds.push_back(r); });
    CHECK(rounds == std::vector<int>{0, 2, 4, 5});
}
