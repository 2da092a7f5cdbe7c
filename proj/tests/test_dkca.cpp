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

#include "qca/dkca.hpp"

using namespace qca;
using namespace qca::dkca;

TEST_CASE("the empty lattice is absorbing for site DP") {
    auto lat  = DKCALattice::all_empty(64, 1);
    auto rule = model::dp_site_rule(0.9);
    for(int i = 0; i < 20; ++i) dk_step(lat, rule);
    CHECK(lat.density() == 0.0);
}

TEST_CASE("p = 1 keeps the all-active lattice fully active") {
    auto lat  = DKCALattice::all_active(64, 1);
    auto rule = model::dp_site_rule(1.0);
    for(int i = 0; i < 20; ++i) dk_step(lat, rule);
    CHECK(lat.density() == 1.0);
}

TEST_CASE("one step updates only the current parity") {
    auto lat  = DKCALattice::all_active(8, 3);
    auto rule = model::dp_site_rule(0.0); // every updated cell dies
    dk_step(lat, rule);
    for(std::size_t j = 0; j < 8; ++j) CHECK(lat.cells[j] == (j % 2 == 0 ? 0 : 1));
    CHECK(lat.parity == 1);
    dk_step(lat, rule);
    CHECK(lat.density() == 0.0);
}

TEST_CASE("identical seeds give identical runs") {
    auto a = DKCALattice::all_active(128, 42);
    auto b = DKCALattice::all_active(128, 42);
    auto rule = model::dp_site_rule(0.7);
    for(int i = 0; i < 50; ++i) {
        dk_step(a, rule);
        dk_step(b, rule);
    }
    CHECK(a.cells == b.cells);
    auto c = DKCALattice::all_active(128, 43);
    for(int i = 0; i < 50; ++i) dk_step(c, rule);
    CHECK(a.cells != c.cells);
}

TEST_CASE("density trace is independent of the thread count") {
    auto rule = model::dp_site_rule(0.7);
    auto one  = dk_density_trace(rule, 64, 30, 6, 9, 1);
    auto four = dk_density_trace(rule, 64, 30, 6, 9, 4);
    CHECK(one.mean_density == four.mean_density);
    CHECK(one.stderr_density == four.stderr_density);
}

TEST_CASE("density trace starts at 1 and is bounded") {
    auto trace = dk_density_trace(model::dp_site_rule(0.6), 128, 40, 4, 1);
    REQUIRE(trace.mean_density.size() == 41);
    CHECK(trace.mean_density[0] == 1.0);
    for(double d : trace.mean_density) {
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
    // p = 0.6 is deep in the absorbing phase of site DP
    CHECK(trace.mean_density.back() < 0.05);
}

TEST_CASE("supercritical site DP sustains a finite density") {
    auto trace = dk_density_trace(model::dp_site_rule(0.85), 256, 100, 4, 1);
    CHECK(trace.mean_density.back() > 0.4);
}

TEST_CASE("mix_seed scrambles consecutive seeds") {
    CHECK(mix_seed(1) != mix_seed(2));
    CHECK((mix_seed(1) ^ mix_seed(2)) > 0xFFFFFFFFull); // differs in high bits too
}

TEST_CASE("odd lattice lengths are rejected") {
    CHECK_THROWS(DKCALattice::all_active(63, 1));
}
