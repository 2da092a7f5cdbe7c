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

#include "qca/dkca.hpp"
#include "qca/observables.hpp"
#include "qca/superop.hpp"

#include <optional>
#include <string>

namespace qca::experiment {

struct NoSignChange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientTail : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Least-squares diagnostics of log(density) over the late-time tail (the
/// last `tail_fraction` of the trace in log-time). slope/rms come from the
/// linear fit, curvature from the quadratic one.
struct TailFit {
    double slope        = 0;
    double slope_err    = 0;
    double curvature    = 0;
    double rms_residual = 0;
    int    n_points     = 0;
};
TailFit fit_tail(const std::vector<double> &t, const std::vector<double> &n, double tail_fraction = 0.5);

/// Decay-exponent estimate: n(t) ~ t^-delta on the tail. The exponential
/// model log n ~ -t is fit alongside; exponential_flagged marks tails it
/// describes better (deep subcritical traces).
struct FitResult {
    double delta               = 0;
    double delta_err           = 0;
    double rms_residual        = 0;
    bool   exponential_flagged = false;
};
FitResult fit_delta(const std::vector<double> &t, const std::vector<double> &n, double tail_fraction = 0.5);

/// Critical-point estimate from the curvature sign change along a control-
/// parameter grid (negative = subcritical bending down, positive =
/// supercritical bending up). p_lo/p_hi bracket the interpolated zero.
struct CriticalPoint {
    double p_c  = 0;
    double p_lo = 0;
    double p_hi = 0;
};
CriticalPoint locate_critical(const std::vector<double> &p, const std::vector<TailFit> &fits);

// ---------------------------------------------------------------------------
// classical scan

struct DkScanPoint {
    double              p = 0;
    dkca::DensityTrace  trace;
    TailFit             tail;
};

/// Domany-Kinzel site-DP density traces over a p grid.
std::vector<DkScanPoint> dkca_scan(const std::vector<double> &p_values, std::size_t length, std::size_t rounds,
                                   std::size_t n_seeds, std::uint64_t base_seed = 1, int threads = 1);

// ---------------------------------------------------------------------------
// quantum trajectories

struct TrajectoryConfig {
    double                   p     = 0.7;
    double                   omega = 0;
    model::RatePreset        preset = model::RatePreset::SiteTable;
    superop::ScheduleConfig  schedule;
    int                      rounds           = 100;
    int                      stride           = 1;
    int                      max_bond         = 64;
    double                   sv_cutoff        = 1e-12;
    bool                     with_concurrence = true;
    /// force the complex engine even when the gates are real
    bool                     force_complex = false;
    std::optional<std::string> checkpoint_path;
    bool                       resume = false;
};

/// iTEBD trajectory from the all-active product state. Uses the real-scalar
/// engine whenever the round gates are real (omega = 0).
observables::TrajectorySeries run_trajectory(const TrajectoryConfig &config);

struct SweepPointResult {
    double                        p = 0;
    observables::TrajectorySeries series;
    TailFit                       tail;
    bool                          ok = true;
    std::string                   error;
};

struct SweepConfig {
    std::vector<double> p_values;
    TrajectoryConfig    base; // p is overridden per point
};

/// Runs one trajectory per grid point; per-point failures are recorded, not
/// propagated.
std::vector<SweepPointResult> sweep(const SweepConfig &config, std::ostream *log = nullptr);

/// Extracts (t, density) with strictly positive entries for fitting.
void positive_trace(const observables::TrajectorySeries &series, std::vector<double> &t, std::vector<double> &n);

} // namespace qca::experiment
