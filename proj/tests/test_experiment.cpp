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

#include "qca/experiment.hpp"

#include <cmath>

using namespace qca;
using namespace qca::experiment;

namespace {
    void synthetic_power_law(double delta, std::vector<double> &t, std::vector<double> &n) {
        for(int i = 1; i <= 400; ++i) {
            t.push_back(i * 0.25);
            n.push_back(std::pow(i * 0.25, -delta));
        }
    }
} // namespace

TEST_CASE("fit_delta recovers a clean power law") {
    std::vector<double> t, n;
    synthetic_power_law(0.16, t, n);
    auto fit = fit_delta(t, n);
    CHECK(std::abs(fit.delta - 0.16) < 1e-6);
    CHECK(fit.rms_residual < 1e-10);
    CHECK_FALSE(fit.exponential_flagged);
}

TEST_CASE("fit_delta flags exponential tails") {
    std::vector<double> t, n;
    for(int i = 1; i <= 400; ++i) {
        t.push_back(i * 0.25);
        n.push_back(std::exp(-0.05 * i * 0.25));
    }
    auto fit = fit_delta(t, n);
    CHECK(fit.exponential_flagged);
}

TEST_CASE("fit_tail curvature signs separate the phases") {
    std::vector<double> t, sub, super, crit;
    for(int i = 1; i <= 400; ++i) {
        const double x = i * 0.25;
        t.push_back(x);
        crit.push_back(std::pow(x, -0.16));
        sub.push_back(std::pow(x, -0.16) * std::exp(-0.02 * x)); // bends down
        super.push_back(std::pow(x, -0.16) + 0.3);               // bends up towards a plateau
    }
    CHECK(std::abs(fit_tail(t, crit).curvature) < 1e-8);
    CHECK(fit_tail(t, sub).curvature < -1e-4);
    CHECK(fit_tail(t, super).curvature > 1e-4);
}

TEST_CASE("locate_critical interpolates the curvature zero") {
    std::vector<double>  p = {0.6, 0.7, 0.8};
    std::vector<TailFit> fits(3);
    fits[0].curvature = -0.2;
    fits[1].curvature = -0.05;
    fits[2].curvature = 0.1;
    auto cp = locate_critical(p, fits);
    CHECK(cp.p_lo == 0.7);
    CHECK(cp.p_hi == 0.8);
    CHECK(cp.p_c == doctest::Approx(0.7 + 0.05 / 0.15 * 0.1).epsilon(1e-12));

    fits[2].curvature = -0.01;
    CHECK_THROWS_AS(locate_critical(p, fits), NoSignChange);
}

TEST_CASE("insufficient tails are rejected") {
    std::vector<double> t = {1, 2, 3}, n = {1, 0.9, 0.8};
    CHECK_THROWS_AS(static_cast<void>(fit_tail(t, n)), InsufficientTail);
    std::vector<double> empty;
    CHECK_THROWS_AS(static_cast<void>(fit_delta(empty, empty)), InsufficientTail);
}

TEST_CASE("dkca_scan produces tails and the subcritical side decays") {
    auto scan = dkca_scan({0.55, 0.85}, 128, 120, 6, 1);
    REQUIRE(scan.size() == 2);
    CHECK(scan[0].trace.mean_density.back() < 0.05);
    CHECK(scan[1].trace.mean_density.back() > 0.3);
    CHECK(scan[0].tail.curvature < scan[1].tail.curvature);
}

TEST_CASE("trajectories are deterministic") {
    TrajectoryConfig cfg;
    cfg.p        = 0.7;
    cfg.omega    = 0.1;
    cfg.rounds   = 4;
    cfg.stride   = 1;
    cfg.max_bond = 24;
    auto a = run_trajectory(cfg);
    auto b = run_trajectory(cfg);
    REQUIRE(a.points.size() == b.points.size());
    for(std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].density == b.points[i].density);
        CHECK(a.points[i].entropy == b.points[i].entropy);
        CHECK(a.points[i].l1 == b.points[i].l1);
    }
}

TEST_CASE("checkpointed runs resume to the same trajectory") {
    const std::string path = "test_experiment_ckpt.bin";
    std::remove(path.c_str());

    TrajectoryConfig full;
    full.p        = 0.7;
    full.rounds   = 6;
    full.max_bond = 24;
    auto straight = run_trajectory(full);

    TrajectoryConfig part = full;
    part.rounds           = 3;
    part.checkpoint_path  = path;
    run_trajectory(part);
    part.rounds = 6;
    part.resume = true;
    auto resumed = run_trajectory(part);
    std::remove(path.c_str());

    CHECK(resumed.points.back().round == 6);
    CHECK(resumed.points.back().density == doctest::Approx(straight.points.back().density).epsilon(1e-12));
}

TEST_CASE("sweep records per-point failures without aborting") {
    SweepConfig cfg;
    cfg.p_values      = {0.7};
    cfg.base.rounds   = 3;
    cfg.base.max_bond = 16;
    // 3 measured rounds cannot feed an 8-point tail fit
    auto results = sweep(cfg);
    REQUIRE(results.size() == 1);
    CHECK_FALSE(results[0].ok);
    CHECK(!results[0].error.empty());
}
