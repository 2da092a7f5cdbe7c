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

#include <cstdint>
#include <random>
#include <vector>

namespace qca::dkca {

/// Periodic bit lattice with alternating even/odd block updates.
/// Even cells update first within a round.
struct DKCALattice {
    std::vector<std::uint8_t> cells;      // 0/1 occupation, length L (even)
    std::uint64_t             time   = 0; // half-steps performed
    int                       parity = 0; // sublattice that updates next: 0 = even
    std::uint64_t             rng_seed = 0;
    std::mt19937_64           rng;

    static DKCALattice all_active(std::size_t length, std::uint64_t seed);
    static DKCALattice all_empty(std::size_t length, std::uint64_t seed);

    [[nodiscard]] double density() const;
};

/// One ensemble-averaged density record per full even+odd round.
struct DensityTrace {
    std::vector<double> mean_density; // index = round (0 = initial state)
    std::vector<double> stderr_density;
    std::size_t         lattice_size = 0;
    std::size_t         n_seeds      = 0;
    std::uint64_t       base_seed    = 0;
};

/// Updates one sublattice: every cell of the current parity becomes active
/// with probability rule.prob(left, right); the other cells are untouched.
/// Exactly one RNG draw is consumed per updated cell.
void dk_step(DKCALattice &lattice, const model::DKCARule &rule);

/// Ensemble-averaged density per round, from the all-active initial state.
/// Seeds are base_seed..base_seed+n_seeds-1 (splitmix-scrambled); the result
/// is deterministic and independent of scheduling order.
DensityTrace dk_density_trace(const model::DKCARule &rule, std::size_t length, std::size_t rounds, std::size_t n_seeds,
                              std::uint64_t base_seed = 1, int threads = 1);

/// Scrambles a seed so that consecutive base seeds give independent streams.
std::uint64_t mix_seed(std::uint64_t seed);

} // namespace qca::dkca
