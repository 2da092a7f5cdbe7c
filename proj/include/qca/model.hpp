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

#include "qca/linalg.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace qca::model {

struct NegativeDiscriminant : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegenerateP : std::domain_error {
    using std::domain_error::domain_error;
};

/// Neighborhood (left, right) of a 3-cell rule. Exactly four labels exist.
struct NeighborhoodLabel {
    int alpha = 0; // left neighbor, 0 = empty, 1 = active
    int beta  = 0; // right neighbor

    [[nodiscard]] int index() const { return alpha * 2 + beta; }
    static NeighborhoodLabel from_index(int i) { return {(i >> 1) & 1, i & 1}; }
    static const std::array<NeighborhoodLabel, 4> &all();
};

/// Per-neighborhood model parameters. Conventions: |1> is the active state,
/// sigma+ = |1><0|, sigma- = |0><1|, and the Hamiltonian amplitude on X is
/// theta/2 (Omega = theta/2).
struct ThreeCellParams {
    std::array<double, 4> p           = {0, 0, 0, 0}; // target active-state steady occupation
    std::array<double, 4> theta       = {0, 0, 0, 0}; // Hamiltonian amplitude, theta/2 multiplies X
    std::array<double, 4> gamma_minus = {1, 1, 1, 1}; // decay rate, > 0
    std::array<double, 4> gamma_plus  = {0, 0, 0, 0}; // excitation rate, >= 0

    /// Throws when a rate is negative/non-finite, gamma_minus <= 0, or the
    /// physicality discriminant is violated for some neighborhood.
    void validate() const;

    [[nodiscard]] std::uint64_t hash() const;
};

/// Center-site steady state conditioned on a neighborhood label.
/// coherence is the (active, empty) element <1|rho|0>; it is purely imaginary
/// and vanishes when theta = 0.
struct SteadyState3Cell {
    double occ_empty  = 0; // <0|rho|0>
    double occ_active = 0; // <1|rho|1>
    cxd    coherence  = 0; // <1|rho|0>

    [[nodiscard]] MatrixXc matrix() const; // 2x2 density matrix
};

/// Domany-Kinzel update probabilities p(1|left,right).
struct DKCARule {
    double x = 0; // p(1|0,0)
    double y = 0; // p(1|0,1) = p(1|1,0)
    double z = 0; // p(1|1,1)

    [[nodiscard]] double prob(int left, int right) const { return left + right == 0 ? x : (left + right == 1 ? y : z); }
};

/// Excitation rate reproducing steady occupation p given Omega = theta/2 and
/// decay rate gamma_minus. Solves the steady-state quadratic; the Omega = 0
/// branch reduces to p*gamma_minus/(1-p).
double solve_gamma_plus(double p, double omega, double gamma_minus);

/// Closed-form steady state of the conditional single-qubit Lindbladian with
/// H = (theta/2) X and rates (gamma_plus, gamma_minus). Valid for arbitrary
/// rates, not only those produced by solve_gamma_plus.
SteadyState3Cell steady_state_3cell(const ThreeCellParams &params, NeighborhoodLabel label);

DKCARule dp_site_rule(double p); // (x=0, y=p, z=p)
DKCARule dp_bond_rule(double q); // (x=0, y=q, z=q(2-q))

enum class RatePreset {
    SiteTable, // gamma-_{00}=1, gamma-_{01,10,11}=1-p (the rate table of the quantum DP runs)
    UniformGm  // gamma-_{ab}=1 for all neighborhoods
};

/// Site-DP rate assignment (y = z = p) with the Hamiltonian switched on only
/// for the (1,1) neighborhood: theta_11 = 2*omega.
ThreeCellParams dp_quantum_rates(double p, double omega, RatePreset preset = RatePreset::SiteTable);

std::string preset_name(RatePreset preset);

/// A parameter preset as stored on disk: the scalar knobs plus the full
/// per-neighborhood tables derived from them.
struct PresetConfig {
    double          p     = 0;
    double          omega = 0;
    ThreeCellParams params;
};

/// Plain-text key=value (de)serialization. Field names: p, omega,
/// gamma_minus.<ab>, gamma_plus.<ab>, theta.<ab> with <ab> in {00,01,10,11}.
void         save_params(std::ostream &os, const PresetConfig &cfg);
PresetConfig load_params(std::istream &is);

} // namespace qca::model
