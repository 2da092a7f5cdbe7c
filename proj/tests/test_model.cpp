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

#include "qca/model.hpp"

#include <sstream>

using namespace qca;
using namespace qca::model;

TEST_CASE("solve_gamma_plus without drive reduces to detailed balance") {
    CHECK(solve_gamma_plus(0.75, 0.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(solve_gamma_plus(0.5, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("solve_gamma_plus with drive matches the independent Lindblad solve") {
    // reference values from a dense single-qubit Lindblad null-space solve
    CHECK(solve_gamma_plus(0.75, 0.1, 1.0) == doctest::Approx(3.01990098767242).epsilon(1e-12));
    CHECK(solve_gamma_plus(0.3, 0.05, 1.0) == doctest::Approx(0.424560165408917).epsilon(1e-12));
    CHECK(solve_gamma_plus(0.9, 0.1, 0.1) == doctest::Approx(1.15498344352708).epsilon(1e-12));
    CHECK(solve_gamma_plus(0.75, 0.1, 0.25) == doctest::Approx(0.824456264653803).epsilon(1e-12));
}

TEST_CASE("solve_gamma_plus rejects degenerate p and negative discriminants") {
    CHECK_THROWS_AS(solve_gamma_plus(1.0, 0.0, 1.0), DegenerateP);
    // gm^2 < 16 Om^2 (1-3p+2p^2) for small p and large drive
    CHECK_THROWS_AS(solve_gamma_plus(0.01, 5.0, 0.01), NegativeDiscriminant);
}

TEST_CASE("steady state occupation equals the target p for every neighborhood") {
    for(double p : {0.3, 0.5, 0.7, 0.9})
        for(double omega : {0.0, 0.05, 0.1}) {
            auto params = dp_quantum_rates(p, omega);
            for(const auto &label : NeighborhoodLabel::all()) {
                auto ss = steady_state_3cell(params, label);
                if(label.index() == 0) {
                    CHECK(ss.occ_active == doctest::Approx(0.0).epsilon(1e-14));
                } else {
                    CHECK(ss.occ_active == doctest::Approx(p).epsilon(1e-12));
                    CHECK(ss.occ_empty == doctest::Approx(1 - p).epsilon(1e-12));
                }
            }
        }
}

TEST_CASE("steady-state coherence is purely imaginary and matches the reference") {
    auto params = dp_quantum_rates(0.75, 0.1, RatePreset::UniformGm);
    auto ss     = steady_state_3cell(params, {1, 1});
    CHECK(ss.coherence.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ss.coherence.imag() == doctest::Approx(0.0248762345905195).epsilon(1e-12));

    auto site = dp_quantum_rates(0.75, 0.1, RatePreset::SiteTable);
    CHECK(steady_state_3cell(site, {1, 1}).coherence.imag() == doctest::Approx(0.0930703308172535).epsilon(1e-12));
}

TEST_CASE("steady-state matrix is a valid density matrix") {
    auto params = dp_quantum_rates(0.6, 0.1);
    auto rho    = steady_state_3cell(params, {1, 0}).matrix();
    CHECK(std::abs(rho.trace() - cxd(1, 0)) < 1e-13);
    CHECK((rho - rho.adjoint()).norm() < 1e-13);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-13);
}

TEST_CASE("rate table of the site preset") {
    auto params = dp_quantum_rates(0.7, 0.0);
    CHECK(params.gamma_minus[0] == 1.0);
    CHECK(params.gamma_minus[1] == doctest::Approx(0.3));
    CHECK(params.gamma_minus[3] == doctest::Approx(0.3));
    CHECK(params.gamma_plus[0] == 0.0);
    CHECK(params.theta[0] == 0.0);
    CHECK(params.theta[3] == 0.0);
    // occupancy p on every non-empty neighborhood: gp = p gm / (1-p)
    CHECK(params.gamma_plus[1] == doctest::Approx(0.7));
}

TEST_CASE("validate rejects unphysical tables") {
    ThreeCellParams params;
    params.gamma_minus[2] = -1;
    CHECK_THROWS(params.validate());
    ThreeCellParams zero;
    zero.gamma_minus = {0, 1, 1, 1};
    CHECK_THROWS(zero.validate());
}

TEST_CASE("DKCA rules") {
    auto site = dp_site_rule(0.7);
    CHECK(site.prob(0, 0) == 0.0);
    CHECK(site.prob(1, 0) == 0.7);
    CHECK(site.prob(1, 1) == 0.7);
    auto bond = dp_bond_rule(0.6);
    CHECK(bond.prob(0, 1) == 0.6);
    CHECK(bond.prob(1, 1) == doctest::Approx(0.6 * (2 - 0.6)));
}

TEST_CASE("parameter files round trip") {
    PresetConfig cfg;
    cfg.p      = 0.65;
    cfg.omega  = 0.05;
    cfg.params = dp_quantum_rates(0.65, 0.05);
    std::stringstream ss;
    save_params(ss, cfg);
    auto back = load_params(ss);
    CHECK(back.p == cfg.p);
    CHECK(back.omega == cfg.omega);
    for(int i = 0; i < 4; ++i) {
        CHECK(back.params.gamma_minus[static_cast<std::size_t>(i)] ==
              doctest::Approx(cfg.params.gamma_minus[static_cast<std::size_t>(i)]).epsilon(1e-15));
        CHECK(back.params.gamma_plus[static_cast<std::size_t>(i)] ==
              doctest::Approx(cfg.params.gamma_plus[static_cast<std::size_t>(i)]).epsilon(1e-15));
        CHECK(back.params.theta[static_cast<std::size_t>(i)] ==
              doctest::Approx(cfg.params.theta[static_cast<std::size_t>(i)]).epsilon(1e-15));
    }
}

TEST_CASE("hash distinguishes parameter tables") {
    auto a = dp_quantum_rates(0.7, 0.0);
    auto b = dp_quantum_rates(0.7, 0.1);
    CHECK(a.hash() == dp_quantum_rates(0.7, 0.0).hash());
    CHECK(a.hash() != b.hash());
}
