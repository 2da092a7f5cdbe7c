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

#include "qca/experiment.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

namespace qca::experiment {

namespace {

    struct PolyFit {
        VectorXd coeffs;
        VectorXd errs;
        double   rms = 0;
    };

    PolyFit polyfit(const std::vector<double> &x, const std::vector<double> &y, int degree) {
        const auto n = static_cast<Eigen::Index>(x.size());
        MatrixXd   a(n, degree + 1);
        VectorXd   b(n);
        for(Eigen::Index i = 0; i < n; ++i) {
            double v = 1;
            for(int d = 0; d <= degree; ++d) {
                a(i, d) = v;
                v *= x[static_cast<std::size_t>(i)];
            }
            b(i) = y[static_cast<std::size_t>(i)];
        }
        PolyFit fit;
        fit.coeffs = a.colPivHouseholderQr().solve(b);
        const VectorXd res = a * fit.coeffs - b;
        const auto     dof = std::max<Eigen::Index>(1, n - degree - 1);
        fit.rms = std::sqrt(res.squaredNorm() / static_cast<double>(n));
        const double sigma2 = res.squaredNorm() / static_cast<double>(dof);
        MatrixXd     cov    = sigma2 * (a.transpose() * a).inverse();
        fit.errs            = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
        return fit;
    }

    void tail_window(const std::vector<double> &t, const std::vector<double> &n, double tail_fraction,
                     std::vector<double> &xt, std::vector<double> &yn) {
        if(t.size() != n.size()) throw std::invalid_argument("fit_tail: size mismatch");
        double logt_min = 0, logt_max = 0;
        bool   first = true;
        for(std::size_t i = 0; i < t.size(); ++i) {
            if(t[i] <= 0 || n[i] <= 0) continue;
            const double lt = std::log(t[i]);
            logt_min        = first ? lt : std::min(logt_min, lt);
            logt_max        = first ? lt : std::max(logt_max, lt);
            first           = false;
        }
        if(first) throw InsufficientTail("fit_tail: no positive data");
        const double cut = logt_max - tail_fraction * (logt_max - logt_min);
        for(std::size_t i = 0; i < t.size(); ++i) {
            if(t[i] <= 0 || n[i] <= 0) continue;
            if(std::log(t[i]) < cut) continue;
            xt.push_back(t[i]);
            yn.push_back(n[i]);
        }
        if(xt.size() < 8) throw InsufficientTail("fit_tail: fewer than 8 points in the tail window");
    }

} // namespace

TailFit fit_tail(const std::vector<double> &t, const std::vector<double> &n, double tail_fraction) {
    std::vector<double> xt, yn;
    tail_window(t, n, tail_fraction, xt, yn);
    std::vector<double> lx(xt.size()), ly(xt.size());
    for(std::size_t i = 0; i < xt.size(); ++i) {
        lx[i] = std::log(xt[i]);
        ly[i] = std::log(yn[i]);
    }
    const PolyFit lin  = polyfit(lx, ly, 1);
    const PolyFit quad = polyfit(lx, ly, 2);

    TailFit fit;
    fit.slope        = lin.coeffs(1);
    fit.slope_err    = lin.errs(1);
    fit.curvature    = quad.coeffs(2);
    fit.rms_residual = lin.rms;
    fit.n_points     = static_cast<int>(xt.size());
    return fit;
}

FitResult fit_delta(const std::vector<double> &t, const std::vector<double> &n, double tail_fraction) {
    std::vector<double> xt, yn;
    tail_window(t, n, tail_fraction, xt, yn);
    std::vector<double> lx(xt.size()), ly(xt.size());
    for(std::size_t i = 0; i < xt.size(); ++i) {
        lx[i] = std::log(xt[i]);
        ly[i] = std::log(yn[i]);
    }
    const PolyFit power = polyfit(lx, ly, 1);
    const PolyFit expo  = polyfit(xt, ly, 1); // log n vs t

    FitResult out;
    out.delta               = -power.coeffs(1);
    out.delta_err           = power.errs(1);
    out.rms_residual        = power.rms;
    out.exponential_flagged = expo.rms < power.rms;
    return out;
}

CriticalPoint locate_critical(const std::vector<double> &p, const std::vector<TailFit> &fits) {
    if(p.size() != fits.size() || p.size() < 2) throw std::invalid_argument("locate_critical: need >= 2 grid points");
    for(std::size_t i = 1; i < p.size(); ++i)
        if(p[i] <= p[i - 1]) throw std::invalid_argument("locate_critical: grid must be strictly increasing");
    for(std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double c0 = fits[i].curvature, c1 = fits[i + 1].curvature;
        if(c0 < 0 && c1 >= 0) {
            CriticalPoint out;
            out.p_lo = p[i];
            out.p_hi = p[i + 1];
            out.p_c  = p[i] + (0 - c0) * (p[i + 1] - p[i]) / (c1 - c0);
            return out;
        }
    }
    throw NoSignChange("locate_critical: no curvature sign change on the grid");
}

std::vector<DkScanPoint> dkca_scan(const std::vector<double> &p_values, std::size_t length, std::size_t rounds,
                                   std::size_t n_seeds, std::uint64_t base_seed, int threads) {
    std::vector<DkScanPoint> out;
    out.reserve(p_values.size());
    for(double p : p_values) {
        DkScanPoint pt;
        pt.p     = p;
        pt.trace = dkca::dk_density_trace(model::dp_site_rule(p), length, rounds, n_seeds, base_seed, threads);
        std::vector<double> t, n;
        for(std::size_t r = 1; r < pt.trace.mean_density.size(); ++r) {
            t.push_back(static_cast<double>(r));
            n.push_back(pt.trace.mean_density[r]);
        }
        pt.tail = fit_tail(t, n);
        out.push_back(std::move(pt));
    }
    return out;
}

namespace {

    MatrixXc all_active_rho() {
        MatrixXc rho = MatrixXc::Zero(2, 2);
        rho(1, 1)    = 1;
        return rho;
    }

    template<typename T>
    observables::TrajectorySeries run_typed(const TrajectoryConfig &config, const superop::RoundGates &gates) {
        using Engine = mps::InfiniteMPS<T>;
        const auto v = mps::convert_gate<T>(gates.v.matrix);
        const auto w = mps::convert_gate<T>(gates.w.matrix);

        int    start_round = 0;
        Engine state       = Engine::product_state(all_active_rho(), config.max_bond, config.sv_cutoff);
        if(config.resume && config.checkpoint_path) {
            std::ifstream in(*config.checkpoint_path, std::ios::binary);
            if(in) {
                std::uint64_t hash = 0;
                double        tau  = 0;
                state              = mps::load_checkpoint<T>(in, start_round, hash, tau);
                if(hash != gates.v.params_hash) throw std::runtime_error("run_trajectory: checkpoint parameter mismatch");
                state.max_bond  = config.max_bond;
                state.sv_cutoff = config.sv_cutoff;
            }
        }

        observables::TrajectorySeries series;
        series.tau         = gates.tau;
        series.params_hash = gates.v.params_hash;

        auto hook = [&](int r, const Engine &s, const mps::TruncationReport &rep) {
            series.points.push_back(observables::measure(s, rep, start_round + r, gates.tau, config.with_concurrence));
        };
        try {
            mps::evolve<T>(state, v, w, config.rounds - start_round, config.stride, hook);
        } catch(const IllConditioned &) {
            // Deep in the decaying phase the state approaches the absorbing
            // product state and the trace transfer operator turns nearly
            // defective: truncation noise splits its dominant eigenvalue into
            // a complex pair and the survival weight can no longer be
            // resolved. That is the physical end of the trajectory, so keep
            // what was measured. Anywhere else it is a genuine failure.
            // The last few estimates before detection are already
            // contaminated; non-positive densities are manifestly unphysical
            // for a trace-normalized state, so drop them.
            auto &pts = series.points;
            while(!pts.empty() && pts.back().density <= 0) pts.pop_back();
            if(pts.empty() || pts.back().density >= 0.2) throw;
            series.early_stop = true;
            return series;
        }

        if(config.checkpoint_path) {
            std::ofstream out(*config.checkpoint_path, std::ios::binary | std::ios::trunc);
            mps::save_checkpoint<T>(out, state, config.rounds, gates.v.params_hash, gates.tau);
        }
        return series;
    }

} // namespace

observables::TrajectorySeries run_trajectory(const TrajectoryConfig &config) {
    const auto params = model::dp_quantum_rates(config.p, config.omega, config.preset);
    const auto gates  = superop::build_round_gates(params, config.schedule, config.p);
    const bool real   = !config.force_complex && mps::gate_is_real(gates.v.matrix) && mps::gate_is_real(gates.w.matrix);
    return real ? run_typed<double>(config, gates) : run_typed<cxd>(config, gates);
}

std::vector<SweepPointResult> sweep(const SweepConfig &config, std::ostream *log) {
    std::vector<SweepPointResult> out;
    out.reserve(config.p_values.size());
    for(double p : config.p_values) {
        SweepPointResult res;
        res.p = p;
        try {
            TrajectoryConfig cfg = config.base;
            cfg.p                = p;
            if(config.base.checkpoint_path) *cfg.checkpoint_path += "_p" + std::to_string(p);
            res.series = run_trajectory(cfg);
            std::vector<double> t, n;
            positive_trace(res.series, t, n);
            res.tail = fit_tail(t, n);
        } catch(const std::exception &e) {
            res.ok    = false;
            res.error = e.what();
        }
        if(log)
            *log << "p=" << p << (res.ok ? " slope=" + std::to_string(res.tail.slope) : " failed: " + res.error) << std::endl;
        out.push_back(std::move(res));
    }
    return out;
}

void positive_trace(const observables::TrajectorySeries &series, std::vector<double> &t, std::vector<double> &n) {
    t.clear();
    n.clear();
    for(const auto &pt : series.points) {
        if(pt.t <= 0 || pt.density <= 0) continue;
        t.push_back(pt.t);
        n.push_back(pt.density);
    }
}

} // namespace qca::experiment
