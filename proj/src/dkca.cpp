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

#include "qca/dkca.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>

namespace qca::dkca {

std::uint64_t mix_seed(std::uint64_t seed) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull;
    z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z               = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {
    DKCALattice make_lattice(std::size_t length, std::uint64_t seed, std::uint8_t fill) {
        if(length < 2 || length % 2 != 0) throw std::invalid_argument("DKCALattice: length must be even and >= 2");
        DKCALattice lat;
        lat.cells.assign(length, fill);
        lat.rng_seed = seed;
        lat.rng.seed(mix_seed(seed));
        return lat;
    }
} // namespace

DKCALattice DKCALattice::all_active(std::size_t length, std::uint64_t seed) { return make_lattice(length, seed, 1); }
DKCALattice DKCALattice::all_empty(std::size_t length, std::uint64_t seed) { return make_lattice(length, seed, 0); }

double DKCALattice::density() const {
    auto sum = std::accumulate(cells.begin(), cells.end(), std::size_t{0});
    return static_cast<double>(sum) / static_cast<double>(cells.size());
}

void dk_step(DKCALattice &lattice, const model::DKCARule &rule) {
    const std::size_t                L = lattice.cells.size();
    std::uniform_real_distribution<> uni(0.0, 1.0);
    for(std::size_t j = static_cast<std::size_t>(lattice.parity); j < L; j += 2) {
        const std::uint8_t left  = lattice.cells[(j + L - 1) % L];
        const std::uint8_t right = lattice.cells[(j + 1) % L];
        const double       u     = uni(lattice.rng);
        lattice.cells[j]         = u < rule.prob(left, right) ? 1 : 0;
    }
    lattice.parity ^= 1;
    ++lattice.time;
}

DensityTrace dk_density_trace(const model::DKCARule &rule, std::size_t length, std::size_t rounds, std::size_t n_seeds,
                              std::uint64_t base_seed, int threads) {
    if(rounds < 1 || n_seeds < 1) throw std::invalid_argument("dk_density_trace: rounds and n_seeds must be >= 1");

    auto run_one = [&](std::uint64_t seed) {
        DKCALattice         lat = DKCALattice::all_active(length, seed);
        std::vector<double> dens(rounds + 1);
        dens[0] = lat.density();
        for(std::size_t r = 1; r <= rounds; ++r) {
            dk_step(lat, rule);
            dk_step(lat, rule);
            dens[r] = lat.density();
        }
        return dens;
    };

    std::vector<std::vector<double>> per_seed(n_seeds);
    if(threads <= 1) {
        for(std::size_t s = 0; s < n_seeds; ++s) per_seed[s] = run_one(base_seed + s);
    } else {
        std::vector<std::future<void>> jobs;
        std::atomic<std::size_t>       next{0};
        for(int t = 0; t < threads; ++t)
            jobs.push_back(std::async(std::launch::async, [&] {
                for(std::size_t s = next.fetch_add(1); s < n_seeds; s = next.fetch_add(1)) per_seed[s] = run_one(base_seed + s);
            }));
        for(auto &j : jobs) j.get();
    }

    DensityTrace trace;
    trace.lattice_size = length;
    trace.n_seeds      = n_seeds;
    trace.base_seed    = base_seed;
    trace.mean_density.resize(rounds + 1);
    trace.stderr_density.resize(rounds + 1);
    for(std::size_t r = 0; r <= rounds; ++r) {
        double mean = 0;
        for(const auto &d : per_seed) mean += d[r];
        mean /= static_cast<double>(n_seeds);
        double var = 0;
        for(const auto &d : per_seed) var += (d[r] - mean) * (d[r] - mean);
        var /= n_seeds > 1 ? static_cast<double>(n_seeds - 1) : 1.0;
        trace.mean_density[r]   = mean;
        trace.stderr_density[r] = std::sqrt(var / static_cast<double>(n_seeds));
    }
    return trace;
}

} // namespace qca::dkca
