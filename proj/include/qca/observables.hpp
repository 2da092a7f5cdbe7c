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

#include "qca/mps.hpp"

#include <iosfwd>
#include <vector>

namespace qca::observables {

struct NonPhysicalInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// 4-dim weight vector of a single-qubit operator O: w(k*2+b) = O(b,k), so
/// that w . vec(rho) = tr(O rho).
VectorXc qubit_weights(const MatrixXc &op);

/// Wootters concurrence of a two-qubit density matrix. Hermitizes the input;
/// throws NonPhysicalInput if an eigenvalue is below -1e-4 or the trace is
/// not 1 within 1e-6.
double concurrence(const MatrixXc &rho4);

/// l1 coherence |rho01| + |rho10| of a single-qubit density matrix.
double l1_coherence_1q(const MatrixXc &rho2);

/// Von Neumann entropy (natural log) of a Schmidt vector; the vector is
/// 2-norm normalized first.
double schmidt_entropy(const VectorXd &lambda);

namespace detail {
    /// 16-dim coarse-site weight from two per-qubit 4-dim weights.
    template<typename T>
    Eigen::Matrix<T, 16, 1> coarse_weights(const Eigen::Vector4cd &w1, const Eigen::Vector4cd &w2, double imag_tol = 1e-12) {
        Eigen::Matrix<T, 16, 1> out;
        for(int s1 = 0; s1 < 4; ++s1)
            for(int s2 = 0; s2 < 4; ++s2) {
                const cxd v = w1(s1) * w2(s2);
                if constexpr(std::is_same_v<T, double>) {
                    if(std::abs(v.imag()) > imag_tol) throw NonPhysicalInput("coarse_weights: complex weight in real engine");
                    out(s1 * 4 + s2) = v.real();
                } else {
                    out(s1 * 4 + s2) = v;
                }
            }
        return out;
    }

    inline Eigen::Vector4cd unit_weight(int k, int b) {
        Eigen::Vector4cd w = Eigen::Vector4cd::Zero();
        w(k * 2 + b)       = 1;
        return w;
    }
    inline Eigen::Vector4cd id_weight() {
        Eigen::Vector4cd w = Eigen::Vector4cd::Zero();
        w(0) = w(3) = 1;
        return w;
    }
    inline cxd as_complex(double v) { return {v, 0}; }
    inline cxd as_complex(cxd v) { return v; }
} // namespace detail

/// Reduced density matrix of one qubit of the unit cell (0,1 = qubits of A;
/// 2,3 = qubits of B).
template<typename T>
MatrixXc reduced_qubit(const mps::InfiniteMPS<T> &state, int qubit) {
    if(qubit < 0 || qubit > 3) throw std::invalid_argument("reduced_qubit: qubit must be in [0,3]");
    using Vec16 = typename mps::InfiniteMPS<T>::Vec16;
    const auto id16 = mps::InfiniteMPS<T>::identity_weights();
    MatrixXc   rho(2, 2);
    for(int k = 0; k < 2; ++k)
        for(int b = 0; b < 2; ++b) {
            std::vector<Vec16> w(2, id16);
            auto wq          = detail::unit_weight(k, b);
            w[qubit / 2]     = qubit % 2 == 0 ? detail::coarse_weights<T>(wq, detail::id_weight())
                                              : detail::coarse_weights<T>(detail::id_weight(), wq);
            rho(k, b) = detail::as_complex(state.contract_ratio(w));
        }
    return rho;
}

/// Reduced density matrix of the adjacent qubit pair (q, q+1 mod 4); row/col
/// index = k1*2 + k2.
template<typename T>
MatrixXc reduced_pair(const mps::InfiniteMPS<T> &state, int first_qubit) {
    if(first_qubit < 0 || first_qubit > 3) throw std::invalid_argument("reduced_pair: qubit must be in [0,3]");
    using Vec16 = typename mps::InfiniteMPS<T>::Vec16;
    const auto id16 = mps::InfiniteMPS<T>::identity_weights();
    MatrixXc   rho(4, 4);
    for(int r = 0; r < 4; ++r)
        for(int c = 0; c < 4; ++c) {
            const int k1 = r >> 1, k2 = r & 1, b1 = c >> 1, b2 = c & 1;
            const auto w1 = detail::unit_weight(k1, b1), w2 = detail::unit_weight(k2, b2);
            // span two cells when the pair wraps from B back to the next A
            std::vector<Vec16> w(first_qubit == 3 ? 4 : 2, id16);
            auto place = [&](int qubit, const Eigen::Vector4cd &wq, int cell) {
                const int site = cell * 2 + qubit / 2;
                w[site] = qubit % 2 == 0 ? detail::coarse_weights<T>(wq, detail::id_weight())
                                         : detail::coarse_weights<T>(detail::id_weight(), wq);
            };
            if(first_qubit == 1) { // pair straddles one coarse A and one B
                place(1, w1, 0);
                place(2, w2, 0);
            } else if(first_qubit == 3) {
                place(3, w1, 0);
                place(0, w2, 1);
            } else { // intra-coarse-site pair
                const int site = first_qubit / 2;
                w[site]        = detail::coarse_weights<T>(w1, w2);
            }
            rho(r, c) = detail::as_complex(state.contract_ratio(w));
        }
    return rho;
}

/// Mean qubit occupation over the unit cell.
template<typename T>
double occupation_density(const mps::InfiniteMPS<T> &state) {
    double n = 0;
    for(int q = 0; q < 4; ++q) n += reduced_qubit(state, q)(1, 1).real();
    return n / 4;
}

/// Mean l1 coherence over the unit cell.
template<typename T>
double l1_coherence(const mps::InfiniteMPS<T> &state) {
    double c = 0;
    for(int q = 0; q < 4; ++q) c += l1_coherence_1q(reduced_qubit(state, q));
    return c / 4;
}

/// Half-chain entropy: mean over the two inequivalent bonds.
template<typename T>
double half_chain_entropy(const mps::InfiniteMPS<T> &state) {
    return (schmidt_entropy(state.schmidt(0)) + schmidt_entropy(state.schmidt(1))) / 2;
}

/// Largest nearest-neighbour concurrence over the four adjacent pairs.
template<typename T>
double max_concurrence(const mps::InfiniteMPS<T> &state) {
    double c = 0;
    for(int q = 0; q < 4; ++q) c = std::max(c, concurrence(reduced_pair(state, q)));
    return c;
}

/// One measured row of a trajectory.
struct TrajectoryPoint {
    int    round            = 0;
    double t                = 0; // round * tau
    double density          = 0;
    double entropy          = 0;
    double l1               = 0;
    double pair_concurrence = 0;
    double trace_drift      = 0;
    double discarded_weight = 0;
    int    bond             = 1;
};

struct TrajectorySeries {
    double                       tau         = 0;
    std::uint64_t                params_hash = 0;
    std::vector<TrajectoryPoint> points;
    /// True when the run ended before the requested number of rounds because
    /// the state reached the absorbing regime beyond the precision of the
    /// representation (the trace transfer operator became ill-conditioned).
    bool early_stop = false;
};

template<typename T>
TrajectoryPoint measure(const mps::InfiniteMPS<T> &state, const mps::TruncationReport &rep, int round, double tau,
                        bool with_concurrence = true) {
    TrajectoryPoint pt;
    pt.round            = round;
    pt.t                = round * tau;
    pt.density          = occupation_density(state);
    pt.entropy          = half_chain_entropy(state);
    pt.l1               = l1_coherence(state);
    pt.pair_concurrence = with_concurrence ? max_concurrence(state) : 0;
    pt.trace_drift      = rep.trace_drift;
    pt.discarded_weight = rep.discarded_weight;
    pt.bond             = std::max(rep.max_bond, std::max(state.bond_dim(0), state.bond_dim(1)));
    return pt;
}

/// CSV round-trip: header "round,t,density,entropy,l1,concurrence,
/// trace_drift,discarded_weight,bond" after two comment lines with tau and
/// the parameter hash.
void             write_csv(std::ostream &os, const TrajectorySeries &series);
TrajectorySeries read_csv(std::istream &is);
void             write_json(std::ostream &os, const TrajectorySeries &series);

} // namespace qca::observables
