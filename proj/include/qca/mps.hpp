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
#include <functional>
#include <iosfwd>
#include <vector>

namespace qca::mps {

struct BondOverflow : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidDensityMatrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Per-step truncation bookkeeping.
struct TruncationReport {
    double discarded_weight = 0; // max over the bonds touched this step
    double trace_drift      = 0; // trace defect introduced by truncation this round
    int    max_bond         = 1; // largest bond dimension reached
};

/// Doubled-space iMPS with a two-coarse-site unit cell (A, B), physical leg
/// dimension 16 per coarse site (= 2 qubits x doubled space). Kept in Vidal
/// canonical form: lambda are unit-2-norm Schmidt vectors; observables are
/// normalized by the trace functional (contraction with the vectorized
/// identity), so the reported state always has trace 1.
template<typename T>
class InfiniteMPS {
  public:
    using Mat   = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec   = Eigen::Matrix<T, Eigen::Dynamic, 1>;
    using Vec16 = Eigen::Matrix<T, 16, 1>;

    static constexpr int phys_dim = 16;

    /// Bond-dimension-1 translation-invariant product state; every qubit
    /// carries the vectorized single-qubit density matrix.
    static InfiniteMPS product_state(const MatrixXc &local_rho, int max_bond, double sv_cutoff = 1e-12);

    // gamma[0] = Gamma_A, gamma[1] = Gamma_B; each 16 matrices (chiL x chiR).
    // lambda[0] = lambda_AB (bond right of A), lambda[1] = lambda_BA.
    std::array<std::vector<Mat>, 2> gamma;
    std::array<VectorXd, 2>         lambda;
    int                             max_bond  = 64;
    double                          sv_cutoff = 1e-12;

    [[nodiscard]] int bond_dim(int bond) const { return static_cast<int>(lambda[bond].size()); }
    [[nodiscard]] const VectorXd &schmidt(int bond) const { return lambda[bond]; }

    /// Applies gate V across the A-B bond then W across the B-A bond (one QCA
    /// round), truncates, regauges to canonical form and records the trace
    /// defect caused by truncation.
    TruncationReport apply_gate_pair(const Mat &v, const Mat &w);

    /// Applies a single two-site gate across one bond (0 = A-B, 1 = B-A).
    /// Returns (discarded weight, norm factor of the new Schmidt vector).
    std::pair<double, double> apply_bond(int bond, const Mat *gate);

    /// Orus-Vidal regauging of the unit cell; afterwards the canonical-form
    /// residual is below tol (or max_passes was hit).
    void   canonicalize(int max_passes = 4, double tol = 1e-11);
    [[nodiscard]] double canonical_residual() const;

    /// <prod weights> / <identity> over n consecutive cells starting at A,
    /// normalized per unit cell by the trace transfer eigenvalue.
    [[nodiscard]] T contract_ratio(const std::vector<Vec16> &weights) const;

    /// Dominant eigenvalue of the identity-contracted unit-cell transfer
    /// matrix in the current gauge.
    [[nodiscard]] double trace_eigenvalue() const;

    static Vec16 identity_weights();

  private:
    // warm starts for the transfer fixed points
    mutable Mat env_right, env_left;
    mutable Vec boundary_l, boundary_r;
    mutable double trace_mu    = 0;
    mutable bool   trace_dirty = true;

    void refresh_trace_boundaries() const;
    double gauge_pass(double tol);
};

/// Open-boundary coarse-site chain sharing the gate code; exact when the
/// bond dimension is unrestricted.
template<typename T>
class FiniteMPS {
  public:
    using Mat   = typename InfiniteMPS<T>::Mat;
    using Vec16 = typename InfiniteMPS<T>::Vec16;

    static FiniteMPS product_state(int ncoarse, const MatrixXc &local_rho, int max_bond = 0, double sv_cutoff = 1e-13);

    int                             ncoarse = 0;
    std::vector<std::vector<Mat>>   gamma;  // per coarse site
    std::vector<VectorXd>           lambda; // ncoarse-1 bonds
    int                             max_bond  = 0; // 0 = unlimited
    double                          sv_cutoff = 1e-13;
    double                          log_norm  = 0; // log of the factor split off by Schmidt normalization

    /// V on bonds 0,2,4,... then W on bonds 1,3,5,...
    TruncationReport apply_round(const Mat &v, const Mat &w);
    std::pair<double, double> apply_bond(int bond, const Mat &gate);

    /// Raw chain contraction with one 16-dim weight vector per coarse site.
    [[nodiscard]] T contract(const std::vector<Vec16> &weights) const;
    [[nodiscard]] double trace() const;
    /// Full doubled-space vector (16^ncoarse entries) for oracle comparison;
    /// normalized by the trace functional.
    [[nodiscard]] VectorXc to_dense() const;
    [[nodiscard]] const VectorXd &schmidt(int bond) const { return lambda[bond]; }
};

/// Round-loop driver: applies (V, W) `rounds` times, invoking the hook every
/// `stride` rounds (and once for the initial state, round = 0).
template<typename T>
void evolve(InfiniteMPS<T> &state, const typename InfiniteMPS<T>::Mat &v, const typename InfiniteMPS<T>::Mat &w, int rounds,
            int stride, const std::function<void(int, const InfiniteMPS<T> &, const TruncationReport &)> &hook);

/// Converts a complex doubled-space gate for the engine scalar type; throws
/// when a complex gate is requested in a real engine.
template<typename T>
typename InfiniteMPS<T>::Mat convert_gate(const MatrixXc &gate, double imag_tol = 1e-13);

/// True when the gate (and hence the whole evolution from a real product
/// state) stays real.
bool gate_is_real(const MatrixXc &gate, double imag_tol = 1e-13);

/// Binary checkpoints (header: dims, bond, round, params hash, tau).
template<typename T>
void save_checkpoint(std::ostream &os, const InfiniteMPS<T> &state, int round, std::uint64_t params_hash, double tau);
template<typename T>
InfiniteMPS<T> load_checkpoint(std::istream &is, int &round, std::uint64_t &params_hash, double &tau);

} // namespace qca::mps
