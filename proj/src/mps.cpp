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

#include "qca/mps.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace qca::mps {

namespace {

    template<typename T>
    using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

    constexpr int kD = 16; // coarse-site physical dimension

    double real_part(double v) { return v; }
    double real_part(cxd v) { return v.real(); }
    cxd    as_cxd(double v) { return {v, 0}; }
    cxd    as_cxd(cxd v) { return v; }

    template<typename T>
    T from_cxd(cxd v, double tol) {
        if constexpr(std::is_same_v<T, double>) {
            if(std::abs(v.imag()) > tol) throw std::invalid_argument("real engine fed a complex value");
            return v.real();
        } else {
            return v;
        }
    }

    /// Entrywise guarded inverse of a Schmidt vector.
    VectorXd pinv_lambda(const VectorXd &l) {
        const double tol = 1e-14 * (l.size() ? l.maxCoeff() : 1.0);
        VectorXd     out = VectorXd::Zero(l.size());
        for(Eigen::Index i = 0; i < l.size(); ++i) out(i) = l(i) > tol ? 1.0 / l(i) : 0.0;
        return out;
    }

    /// Contract-gate-split across one bond. gl/gr are the site tensors left
    /// and right of the bond, lmid its Schmidt vector, lleft/lright the outer
    /// ones. gate == nullptr re-splits without applying anything (used for
    /// regauging). Returns (discarded weight, 2-norm of the raw new Schmidt
    /// vector).
    template<typename T>
    std::pair<double, double> split_bond(std::vector<MatT<T>> &gl, std::vector<MatT<T>> &gr, VectorXd &lmid,
                                         const VectorXd &lleft, const VectorXd &lright, const MatT<T> *gate, int max_bond,
                                         double cutoff) {
        const Eigen::Index chil = lleft.size(), chir = lright.size();

        // C[:, s*16+t] = flatten of (lleft Gl^s lmid)(Gr^t lright)
        std::vector<MatT<T>> left(kD), right(kD);
        for(int s = 0; s < kD; ++s) {
            left[s]  = lleft.template cast<T>().asDiagonal() * gl[s] * lmid.template cast<T>().asDiagonal();
            right[s] = gr[s] * lright.template cast<T>().asDiagonal();
        }
        MatT<T> c(chil * chir, kD * kD);
        for(int s = 0; s < kD; ++s)
            for(int t = 0; t < kD; ++t) {
                MatT<T> prod = left[s] * right[t];
                for(Eigen::Index a = 0; a < chil; ++a) c.col(s * kD + t).segment(a * chir, chir) = prod.row(a).transpose();
            }
        if(gate) c = (c * gate->transpose()).eval();

        MatT<T> theta(chil * kD, kD * chir);
        for(Eigen::Index a = 0; a < chil; ++a)
            for(int s = 0; s < kD; ++s)
                for(int t = 0; t < kD; ++t)
                    for(Eigen::Index b = 0; b < chir; ++b) theta(a * kD + s, t * chir + b) = c(a * chir + b, s * kD + t);

        auto svd = svd_truncate(theta, max_bond, cutoff);
        if(svd.s.size() == 0) throw SVDFailure("split_bond: empty Schmidt spectrum");
        const double norm = svd.s.norm();
        lmid              = svd.s / norm;
        const Eigen::Index k = svd.s.size();

        const VectorXd invl = pinv_lambda(lleft), invr = pinv_lambda(lright);
        for(int s = 0; s < kD; ++s) {
            gl[s].resize(chil, k);
            for(Eigen::Index a = 0; a < chil; ++a) gl[s].row(a) = invl(a) * svd.u.row(a * kD + s);
            gr[s].resize(k, chir);
            for(Eigen::Index b = 0; b < chir; ++b) gr[s].col(b) = invr(b) * svd.vh.col(s * chir + b);
        }
        return {svd.discarded_weight, norm};
    }

    /// Hermitian power iteration for the dominant fixed point of a completely
    /// positive transfer map. Returns the eigenvalue; `x` is the warm start
    /// and result (trace-normalized).
    template<typename T, typename Map>
    double fixed_point(Map &&apply, MatT<T> &x, Eigen::Index dim, int max_iter, double tol) {
        if(x.rows() != dim || x.cols() != dim || x.norm() == 0) x = MatT<T>::Identity(dim, dim);
        x /= real_part(T(x.trace()));
        double eta = 1;
        for(int it = 0; it < max_iter; ++it) {
            MatT<T> y = apply(x);
            y         = ((y + y.adjoint()) / 2.0).eval();
            const double tr = real_part(T(y.trace()));
            if(!(std::abs(tr) > 0)) throw IllConditioned("transfer fixed point: vanishing trace");
            eta = tr;
            y /= tr;
            const double delta = (y - x).norm();
            x                  = y;
            if(delta < tol) break;
        }
        return eta;
    }

    /// Hermitian square root factors: m = f * f^dagger (f = u sqrt(d)) and a
    /// guarded inverse f^-1 = sqrt(d)^-1 u^dagger.
    template<typename T>
    void sqrt_factors(const MatT<T> &m, MatT<T> &f, MatT<T> &finv) {
        Eigen::SelfAdjointEigenSolver<MatT<T>> es(m);
        if(es.info() != Eigen::Success) throw IllConditioned("sqrt_factors: eigensolver failed");
        VectorXd d = es.eigenvalues().cwiseMax(0.0);
        const double tol = 1e-14 * (d.size() ? d.maxCoeff() : 1.0);
        VectorXd     sq = d.cwiseSqrt(), isq = VectorXd::Zero(d.size());
        for(Eigen::Index i = 0; i < d.size(); ++i) isq(i) = d(i) > tol ? 1.0 / sq(i) : 0.0;
        f    = es.eigenvectors() * sq.template cast<T>().asDiagonal();
        finv = isq.template cast<T>().asDiagonal() * es.eigenvectors().adjoint();
    }

} // namespace

template<typename T>
typename InfiniteMPS<T>::Vec16 InfiniteMPS<T>::identity_weights() {
    Vec16 w = Vec16::Zero();
    for(int s1 : {0, 3})
        for(int s2 : {0, 3}) w(s1 * 4 + s2) = T(1);
    return w;
}

template<typename T>
InfiniteMPS<T> InfiniteMPS<T>::product_state(const MatrixXc &local_rho, int max_bond, double sv_cutoff) {
    if(local_rho.rows() != 2 || local_rho.cols() != 2 || std::abs(local_rho.trace() - cxd(1, 0)) > 1e-12 ||
       (local_rho - local_rho.adjoint()).norm() > 1e-12)
        throw InvalidDensityMatrix("product_state: local state must be a 2x2 Hermitian unit-trace matrix");
    if(max_bond < 1) throw BondOverflow("product_state: max_bond must be >= 1");
    VectorXc v4(4);
    for(int k = 0; k < 2; ++k)
        for(int b = 0; b < 2; ++b) v4(k * 2 + b) = local_rho(k, b);

    InfiniteMPS out;
    out.max_bond  = max_bond;
    out.sv_cutoff = sv_cutoff;
    for(int site = 0; site < 2; ++site) {
        out.gamma[site].resize(kD);
        for(int s = 0; s < kD; ++s) {
            out.gamma[site][s] = Mat::Constant(1, 1, from_cxd<T>(v4(s / 4) * v4(s % 4), 1e-13));
        }
        out.lambda[site] = VectorXd::Ones(1);
    }
    return out;
}

template<typename T>
std::pair<double, double> InfiniteMPS<T>::apply_bond(int bond, const Mat *gate) {
    if(bond != 0 && bond != 1) throw std::invalid_argument("apply_bond: bond must be 0 or 1");
    trace_dirty = true;
    return split_bond<T>(gamma[bond], gamma[1 - bond], lambda[bond], lambda[1 - bond], lambda[1 - bond], gate, max_bond,
                         sv_cutoff);
}

namespace {
    /// Dominant eigenpair of a (generally non-normal) transfer matrix; for
    /// the real engine the real Schur route keeps the eigenvector real.
    /// Index of the dominant *real* eigenvalue. The trace functional is real
    /// by construction, so complex pairs (which appear as near-degenerate
    /// numerical artifacts when the state approaches the absorbing product)
    /// are skipped. Near the absorbing product state the transfer matrix is
    /// almost defective, so truncation noise splits the dominant eigenvalue
    /// into a spurious complex pair; once that pair dominates the trace
    /// functional is no longer resolvable and the caller must stop.
    template<typename EV>
    Eigen::Index dominant_real_index(const EV &eigenvalues) {
        const double lam_max = eigenvalues.cwiseAbs().maxCoeff();
        Eigen::Index best    = -1;
        double       best_abs = -1;
        for(Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
            const cxd lam = eigenvalues(i);
            if(std::abs(lam.imag()) > 1e-8 * lam_max) continue;
            if(std::abs(lam) > best_abs) {
                best_abs = std::abs(lam);
                best     = i;
            }
        }
        if(best < 0 || best_abs < (1 - 1e-6) * lam_max) throw IllConditioned("trace transfer: complex dominant eigenvalue");
        return best;
    }

    template<typename T>
    void dominant_right(const MatT<T> &t, double &mu, Eigen::VectorX<T> &v) {
        if constexpr(std::is_same_v<T, double>) {
            Eigen::EigenSolver<MatrixXd> es(t);
            if(es.info() != Eigen::Success) throw IllConditioned("trace transfer: eigensolver failed");
            const Eigen::Index imax = dominant_real_index(es.eigenvalues());
            mu = es.eigenvalues()(imax).real();
            v  = es.eigenvectors().col(imax).real();
            const double drop = es.eigenvectors().col(imax).imag().norm();
            if(drop > 1e-9 * v.norm()) throw IllConditioned("trace transfer: complex dominant eigenvector");
        } else {
            Eigen::ComplexEigenSolver<MatrixXc> es(t);
            if(es.info() != Eigen::Success) throw IllConditioned("trace transfer: eigensolver failed");
            const Eigen::Index imax = dominant_real_index(es.eigenvalues());
            mu = es.eigenvalues()(imax).real();
            v  = es.eigenvectors().col(imax);
        }
    }
} // namespace

template<typename T>
void InfiniteMPS<T>::refresh_trace_boundaries() const {
    if(!trace_dirty) return;
    const Eigen::Index chi = lambda[1].size();
    const Vec16        w   = identity_weights();
    Mat ma = Mat::Zero(chi, lambda[0].size()), mb = Mat::Zero(lambda[0].size(), chi);
    for(int s = 0; s < kD; ++s) {
        if(w(s) == T(0)) continue;
        ma += w(s) * gamma[0][s] * lambda[0].template cast<T>().asDiagonal();
        mb += w(s) * gamma[1][s] * lambda[1].template cast<T>().asDiagonal();
    }
    const Mat t = ma * mb;

    double mu_r = 0, mu_l = 0;
    Vec    r, l;
    dominant_right<T>(t, mu_r, r);
    dominant_right<T>(Mat(t.transpose()), mu_l, l);
    if(std::abs(mu_l - mu_r) > 1e-6 * std::max(1.0, std::abs(mu_r)))
        throw IllConditioned("trace transfer: left/right eigenvalue mismatch");
    trace_mu = mu_r;

    const T overlap = (l.transpose() * r).value();
    if(std::abs(as_cxd(overlap)) < 1e-10 * l.norm() * r.norm())
        throw IllConditioned("trace transfer: near-orthogonal boundary vectors");
    boundary_r = r;
    boundary_l = l / overlap;
    trace_dirty = false;
}

template<typename T>
double InfiniteMPS<T>::trace_eigenvalue() const {
    refresh_trace_boundaries();
    return trace_mu;
}

template<typename T>
T InfiniteMPS<T>::contract_ratio(const std::vector<Vec16> &weights) const {
    if(weights.empty() || weights.size() % 2 != 0)
        throw std::invalid_argument("contract_ratio: need a whole number of unit cells");
    refresh_trace_boundaries();
    Eigen::RowVectorX<T> acc = boundary_l.transpose();
    for(std::size_t i = 0; i < weights.size(); ++i) {
        const int site = static_cast<int>(i % 2);
        Mat m = Mat::Zero(gamma[site][0].rows(), gamma[site][0].cols());
        for(int s = 0; s < kD; ++s) {
            if(weights[i](s) == T(0)) continue;
            m += weights[i](s) * gamma[site][s];
        }
        acc = acc * m * lambda[site].template cast<T>().asDiagonal();
    }
    const T num   = acc * boundary_r;
    const T denom = (boundary_l.transpose() * boundary_r).value();
    const double cells = static_cast<double>(weights.size()) / 2.0;
    return num / (denom * T(std::pow(trace_mu, cells)));
}

template<typename T>
double InfiniteMPS<T>::gauge_pass(double tol) {
    const Eigen::Index chi = lambda[1].size();

    std::vector<Mat> ar(kD), br(kD), al(kD);
    for(int s = 0; s < kD; ++s) {
        ar[s] = gamma[0][s] * lambda[0].template cast<T>().asDiagonal();
        br[s] = gamma[1][s] * lambda[1].template cast<T>().asDiagonal();
        al[s] = lambda[1].template cast<T>().asDiagonal() * gamma[0][s] * lambda[0].template cast<T>().asDiagonal();
    }
    auto t_right = [&](const Mat &x) {
        Mat mid = Mat::Zero(lambda[0].size(), lambda[0].size());
        for(int s = 0; s < kD; ++s) mid += br[s] * x * br[s].adjoint();
        Mat out = Mat::Zero(chi, chi);
        for(int s = 0; s < kD; ++s) out += ar[s] * mid * ar[s].adjoint();
        return out;
    };
    auto t_left = [&](const Mat &y) {
        Mat mid = Mat::Zero(lambda[0].size(), lambda[0].size());
        for(int s = 0; s < kD; ++s) mid += al[s].adjoint() * y * al[s];
        Mat out = Mat::Zero(chi, chi);
        for(int s = 0; s < kD; ++s) out += gamma[1][s].adjoint() * mid * gamma[1][s];
        return out;
    };

    const double eta_r = fixed_point<T>(t_right, env_right, chi, 200, tol * 1e-2);
    fixed_point<T>(t_left, env_left, chi, 200, tol * 1e-2);
    // set the 2-norm transfer eigenvalue to 1 (Gamma_A enters it twice)
    const double scale = 1.0 / std::sqrt(eta_r);
    for(int s = 0; s < kD; ++s) gamma[0][s] *= scale;

    Mat x, xinv, z_t, zinv_t;
    sqrt_factors<T>(env_right, x, xinv);    // R = X X^dag
    sqrt_factors<T>(env_left, z_t, zinv_t); // L = (Z^dag Z) with Z = z_t^dag
    const Mat z = z_t.adjoint(), zinv = zinv_t.adjoint();

    Mat  m   = z * lambda[1].template cast<T>().asDiagonal() * x;
    auto svd = svd_truncate(m, max_bond, sv_cutoff);
    if(svd.s.size() == 0) throw SVDFailure("gauge_pass: empty Schmidt spectrum");
    lambda[1] = svd.s / svd.s.norm();

    const Mat gl = svd.vh * xinv, gr = zinv * svd.u;
    for(int s = 0; s < kD; ++s) {
        gamma[0][s] = (gl * gamma[0][s]).eval();
        gamma[1][s] = (gamma[1][s] * gr).eval();
    }
    env_right.resize(0, 0); // stale after the gauge change
    env_left.resize(0, 0);

    // restore the A-B Schmidt vector by re-splitting that bond
    apply_bond(0, nullptr);
    return canonical_residual();
}

template<typename T>
void InfiniteMPS<T>::canonicalize(int max_passes, double tol) {
    for(int pass = 0; pass < max_passes; ++pass)
        if(gauge_pass(tol) < tol) break;
}

template<typename T>
double InfiniteMPS<T>::canonical_residual() const {
    double worst = 0;
    for(int first : {0, 1}) { // unit cell starting at A (bond B-A) or at B (bond A-B)
        const int second = 1 - first;
        const VectorXd &lout = lambda[second], &lmid = lambda[first];
        std::vector<Mat> right1(kD), right2(kD), left1(kD), left2(kD);
        for(int s = 0; s < kD; ++s) {
            right1[s] = gamma[first][s] * lmid.template cast<T>().asDiagonal();
            right2[s] = gamma[second][s] * lout.template cast<T>().asDiagonal();
            left1[s]  = lout.template cast<T>().asDiagonal() * gamma[first][s] * lmid.template cast<T>().asDiagonal();
            left2[s]  = gamma[second][s];
        }
        const Eigen::Index chi = lout.size();
        Mat id = Mat::Identity(chi, chi), midr = Mat::Zero(lmid.size(), lmid.size()), midl = Mat::Zero(lmid.size(), lmid.size());
        for(int s = 0; s < kD; ++s) midr += right2[s] * right2[s].adjoint();
        for(int s = 0; s < kD; ++s) midl += left1[s].adjoint() * left1[s];
        Mat tr = Mat::Zero(chi, chi), tl = Mat::Zero(chi, chi);
        for(int s = 0; s < kD; ++s) tr += right1[s] * midr * right1[s].adjoint();
        for(int s = 0; s < kD; ++s) tl += left2[s].adjoint() * midl * left2[s];
        worst = std::max({worst, (tr - id).norm() / std::sqrt(static_cast<double>(chi)),
                          (tl - id).norm() / std::sqrt(static_cast<double>(chi))});
    }
    return worst;
}

template<typename T>
TruncationReport InfiniteMPS<T>::apply_gate_pair(const Mat &v, const Mat &w) {
    if(v.rows() != 256 || v.cols() != 256 || w.rows() != 256 || w.cols() != 256)
        throw std::invalid_argument("apply_gate_pair: gates must be 256x256");
    refresh_trace_boundaries();
    const double mu_pre = trace_mu;

    auto [d0, f0] = apply_bond(0, &v);
    auto [d1, f1] = apply_bond(1, &w);

    refresh_trace_boundaries();
    TruncationReport rep;
    rep.discarded_weight = std::max(d0, d1);
    rep.trace_drift      = std::abs(f0 * f1 * trace_mu / mu_pre - 1.0);

    canonicalize();
    rep.max_bond = std::max(bond_dim(0), bond_dim(1));
    return rep;
}

// ---------------------------------------------------------------------------

template<typename T>
FiniteMPS<T> FiniteMPS<T>::product_state(int ncoarse, const MatrixXc &local_rho, int max_bond, double sv_cutoff) {
    if(ncoarse < 2) throw std::invalid_argument("FiniteMPS: need at least 2 coarse sites");
    auto cell = InfiniteMPS<T>::product_state(local_rho, 1, sv_cutoff);

    FiniteMPS out;
    out.ncoarse   = ncoarse;
    out.max_bond  = max_bond;
    out.sv_cutoff = sv_cutoff;
    out.gamma.assign(static_cast<std::size_t>(ncoarse), cell.gamma[0]);
    out.lambda.assign(static_cast<std::size_t>(ncoarse) - 1, VectorXd::Ones(1));
    return out;
}

template<typename T>
std::pair<double, double> FiniteMPS<T>::apply_bond(int bond, const Mat &gate) {
    if(bond < 0 || bond >= ncoarse - 1) throw std::invalid_argument("apply_bond: bond out of range");
    const VectorXd ones  = VectorXd::Ones(1);
    const VectorXd &lleft  = bond > 0 ? lambda[bond - 1] : ones;
    const VectorXd &lright = bond < ncoarse - 2 ? lambda[bond + 1] : ones;
    return split_bond<T>(gamma[bond], gamma[bond + 1], lambda[bond], lleft, lright, &gate, max_bond, sv_cutoff);
}

template<typename T>
TruncationReport FiniteMPS<T>::apply_round(const Mat &v, const Mat &w) {
    const double trace_pre = trace();
    TruncationReport rep;
    double           log_f = 0;
    for(int bond = 0; bond < ncoarse - 1; bond += 2) {
        auto [d, f]          = apply_bond(bond, v);
        rep.discarded_weight = std::max(rep.discarded_weight, d);
        log_f += std::log(f);
    }
    for(int bond = 1; bond < ncoarse - 1; bond += 2) {
        auto [d, f]          = apply_bond(bond, w);
        rep.discarded_weight = std::max(rep.discarded_weight, d);
        log_f += std::log(f);
    }
    log_norm += log_f;
    rep.trace_drift = std::abs(trace() / trace_pre - 1.0);
    for(const auto &l : lambda) rep.max_bond = std::max(rep.max_bond, static_cast<int>(l.size()));
    return rep;
}

template<typename T>
T FiniteMPS<T>::contract(const std::vector<Vec16> &weights) const {
    if(static_cast<int>(weights.size()) != ncoarse) throw std::invalid_argument("contract: one weight vector per coarse site");
    Eigen::RowVectorX<T> acc = Eigen::RowVectorX<T>::Ones(1);
    for(int i = 0; i < ncoarse; ++i) {
        Mat m = Mat::Zero(gamma[i][0].rows(), gamma[i][0].cols());
        for(int s = 0; s < kD; ++s) {
            if(weights[i](s) == T(0)) continue;
            m += weights[i](s) * gamma[i][s];
        }
        acc = acc * m;
        if(i < ncoarse - 1) acc = acc * lambda[i].template cast<T>().asDiagonal();
    }
    return acc(0) * T(std::exp(log_norm));
}

template<typename T>
double FiniteMPS<T>::trace() const {
    const T tr = contract(std::vector<Vec16>(static_cast<std::size_t>(ncoarse), InfiniteMPS<T>::identity_weights()));
    const cxd c = as_cxd(tr);
    if(std::abs(c.imag()) > 1e-9 * std::max(1.0, std::abs(c))) throw IllConditioned("trace: non-real trace functional");
    return c.real();
}

template<typename T>
VectorXc FiniteMPS<T>::to_dense() const {
    Eigen::Index rows = kD;
    MatT<T>      amp(kD, gamma[0][0].cols());
    for(int s = 0; s < kD; ++s) amp.row(s) = gamma[0][s].row(0);
    for(int i = 1; i < ncoarse; ++i) {
        MatT<T> next(rows * kD, gamma[i][0].cols());
        MatT<T> weighted = amp * lambda[i - 1].template cast<T>().asDiagonal();
        for(Eigen::Index r = 0; r < rows; ++r)
            for(int s = 0; s < kD; ++s) next.row(r * kD + s) = weighted.row(r) * gamma[i][s];
        amp  = std::move(next);
        rows = amp.rows();
    }
    VectorXc out = amp.col(0).template cast<cxd>();
    return out / trace() * std::exp(log_norm);
}

// ---------------------------------------------------------------------------

template<typename T>
void evolve(InfiniteMPS<T> &state, const typename InfiniteMPS<T>::Mat &v, const typename InfiniteMPS<T>::Mat &w, int rounds,
            int stride, const std::function<void(int, const InfiniteMPS<T> &, const TruncationReport &)> &hook) {
    if(stride < 1) throw std::invalid_argument("evolve: stride must be >= 1");
    if(hook) hook(0, state, {});
    for(int r = 1; r <= rounds; ++r) {
        TruncationReport rep = state.apply_gate_pair(v, w);
        if(hook && (r % stride == 0 || r == rounds)) hook(r, state, rep);
    }
}

template<typename T>
typename InfiniteMPS<T>::Mat convert_gate(const MatrixXc &gate, double imag_tol) {
    if constexpr(std::is_same_v<T, cxd>) {
        (void)imag_tol;
        return gate;
    } else {
        if(!gate_is_real(gate, imag_tol)) throw std::invalid_argument("convert_gate: gate has complex entries");
        return gate.real();
    }
}

bool gate_is_real(const MatrixXc &gate, double imag_tol) {
    const double scale = gate.cwiseAbs().maxCoeff();
    return gate.imag().cwiseAbs().maxCoeff() <= imag_tol * std::max(1.0, scale);
}

// ---------------------------------------------------------------------------

namespace {
    constexpr std::uint64_t kCheckpointMagic = 0x514341434b505431ull; // "QCACKPT1"

    void put(std::ostream &os, const void *p, std::size_t n) {
        os.write(static_cast<const char *>(p), static_cast<std::streamsize>(n));
    }
    void get(std::istream &is, void *p, std::size_t n) {
        is.read(static_cast<char *>(p), static_cast<std::streamsize>(n));
        if(!is) throw std::runtime_error("load_checkpoint: truncated stream");
    }
} // namespace

template<typename T>
void save_checkpoint(std::ostream &os, const InfiniteMPS<T> &state, int round, std::uint64_t params_hash, double tau) {
    const std::uint64_t scalar_kind = std::is_same_v<T, double> ? 0 : 1;
    const std::int64_t  rnd = round, maxb = state.max_bond;
    put(os, &kCheckpointMagic, 8);
    put(os, &scalar_kind, 8);
    put(os, &rnd, 8);
    put(os, &params_hash, 8);
    put(os, &tau, 8);
    put(os, &maxb, 8);
    put(os, &state.sv_cutoff, 8);
    for(int site = 0; site < 2; ++site) {
        const std::int64_t chil = state.gamma[site][0].rows(), chir = state.gamma[site][0].cols();
        put(os, &chil, 8);
        put(os, &chir, 8);
        for(int s = 0; s < 16; ++s) put(os, state.gamma[site][s].data(), sizeof(T) * static_cast<std::size_t>(chil * chir));
        const std::int64_t nl = state.lambda[site].size();
        put(os, &nl, 8);
        put(os, state.lambda[site].data(), 8 * static_cast<std::size_t>(nl));
    }
}

template<typename T>
InfiniteMPS<T> load_checkpoint(std::istream &is, int &round, std::uint64_t &params_hash, double &tau) {
    std::uint64_t magic = 0, scalar_kind = 0;
    std::int64_t  rnd = 0, maxb = 0;
    get(is, &magic, 8);
    if(magic != kCheckpointMagic) throw std::runtime_error("load_checkpoint: bad magic");
    get(is, &scalar_kind, 8);
    if(scalar_kind != (std::is_same_v<T, double> ? 0u : 1u)) throw std::runtime_error("load_checkpoint: scalar kind mismatch");
    get(is, &rnd, 8);
    get(is, &params_hash, 8);
    get(is, &tau, 8);
    get(is, &maxb, 8);
    round = static_cast<int>(rnd);

    InfiniteMPS<T> state;
    state.max_bond = static_cast<int>(maxb);
    get(is, &state.sv_cutoff, 8);
    for(int site = 0; site < 2; ++site) {
        std::int64_t chil = 0, chir = 0;
        get(is, &chil, 8);
        get(is, &chir, 8);
        state.gamma[site].resize(16);
        for(int s = 0; s < 16; ++s) {
            state.gamma[site][s].resize(chil, chir);
            get(is, state.gamma[site][s].data(), sizeof(T) * static_cast<std::size_t>(chil * chir));
        }
        std::int64_t nl = 0;
        get(is, &nl, 8);
        state.lambda[site].resize(nl);
        get(is, state.lambda[site].data(), 8 * static_cast<std::size_t>(nl));
    }
    return state;
}

// explicit instantiations: real engine (theta = 0 rules) and complex engine
template class InfiniteMPS<double>;
template class InfiniteMPS<cxd>;
template class FiniteMPS<double>;
template class FiniteMPS<cxd>;
template void evolve<double>(InfiniteMPS<double> &, const MatrixXd &, const MatrixXd &, int, int,
                             const std::function<void(int, const InfiniteMPS<double> &, const TruncationReport &)> &);
template void evolve<cxd>(InfiniteMPS<cxd> &, const MatrixXc &, const MatrixXc &, int, int,
                          const std::function<void(int, const InfiniteMPS<cxd> &, const TruncationReport &)> &);
template MatrixXd convert_gate<double>(const MatrixXc &, double);
template MatrixXc convert_gate<cxd>(const MatrixXc &, double);
template void save_checkpoint<double>(std::ostream &, const InfiniteMPS<double> &, int, std::uint64_t, double);
template void save_checkpoint<cxd>(std::ostream &, const InfiniteMPS<cxd> &, int, std::uint64_t, double);
template InfiniteMPS<double> load_checkpoint<double>(std::istream &, int &, std::uint64_t &, double &);
template InfiniteMPS<cxd> load_checkpoint<cxd>(std::istream &, int &, std::uint64_t &, double &);

} // namespace qca::mps
