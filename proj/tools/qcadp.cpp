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
#include "qca/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace qca;

std::ofstream open_out(const std::string &path) {
    std::ofstream os(path);
    if(!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

model::RatePreset parse_preset(const std::string &name) {
    if(name == "site-table") return model::RatePreset::SiteTable;
    if(name == "uniform-gm") return model::RatePreset::UniformGm;
    throw std::runtime_error("unknown preset: " + name);
}

superop::ScheduleConfig make_schedule(const std::string &mode, double tau, double trotter_c) {
    superop::ScheduleConfig s;
    if(mode == "continuous") s.mode = superop::ScheduleConfig::Mode::Continuous;
    else if(mode == "discrete") s.mode = superop::ScheduleConfig::Mode::Discrete;
    else throw std::runtime_error("unknown schedule mode: " + mode);
    s.tau              = tau;
    s.trotter_constant = trotter_c;
    return s;
}

int cmd_rates(double p, double omega, const std::string &preset, const std::string &out) {
    model::PresetConfig cfg;
    cfg.p      = p;
    cfg.omega  = omega;
    cfg.params = model::dp_quantum_rates(p, omega, parse_preset(preset));

    std::cout << std::setprecision(12);
    std::cout << "# neighborhood  gamma-      gamma+      theta       steady_occ  coherence_im\n";
    for(const auto &label : model::NeighborhoodLabel::all()) {
        const auto ss = model::steady_state_3cell(cfg.params, label);
        std::cout << label.alpha << label.beta << "              " << cfg.params.gamma_minus[label.index()] << "  "
                  << cfg.params.gamma_plus[label.index()] << "  " << cfg.params.theta[label.index()] << "  " << ss.occ_active
                  << "  " << ss.coherence.imag() << "\n";
    }
    if(!out.empty()) {
        auto os = open_out(out);
        model::save_params(os, cfg);
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

int cmd_dkca(std::vector<double> ps, std::size_t length, std::size_t rounds, std::size_t seeds, std::uint64_t base_seed,
             int threads, const std::string &out) {
    auto scan = experiment::dkca_scan(ps, length, rounds, seeds, base_seed, threads);
    std::ostream *os = &std::cout;
    std::ofstream file;
    if(!out.empty()) {
        file = open_out(out);
        os   = &file;
    }
    *os << std::setprecision(12) << "p,round,density,stderr\n";
    for(const auto &pt : scan)
        for(std::size_t r = 0; r < pt.trace.mean_density.size(); ++r)
            *os << pt.p << ',' << r << ',' << pt.trace.mean_density[r] << ',' << pt.trace.stderr_density[r] << "\n";
    std::cout << std::setprecision(8) << "# p  tail_slope  tail_curvature\n";
    for(const auto &pt : scan) std::cout << pt.p << "  " << pt.tail.slope << "  " << pt.tail.curvature << "\n";
    try {
        std::vector<double>          grid;
        std::vector<experiment::TailFit> fits;
        for(const auto &pt : scan) {
            grid.push_back(pt.p);
            fits.push_back(pt.tail);
        }
        const auto cp = experiment::locate_critical(grid, fits);
        std::cout << "critical estimate: p_c = " << cp.p_c << " in [" << cp.p_lo << ", " << cp.p_hi << "]\n";
    } catch(const std::exception &e) { std::cout << "critical estimate unavailable: " << e.what() << "\n"; }
    return 0;
}

int cmd_evolve(const experiment::TrajectoryConfig &cfg, const std::string &out, const std::string &format) {
    const auto series = experiment::run_trajectory(cfg);
    std::ostream *os = &std::cout;
    std::ofstream file;
    if(!out.empty()) {
        file = open_out(out);
        os   = &file;
    }
    if(format == "json") observables::write_json(*os, series);
    else observables::write_csv(*os, series);
    return 0;
}

int cmd_sweep(experiment::TrajectoryConfig base, std::vector<double> ps, const std::string &out_prefix) {
    experiment::SweepConfig cfg;
    cfg.base     = std::move(base);
    cfg.p_values = std::move(ps);
    const auto results = experiment::sweep(cfg, &std::cout);
    std::vector<double>          grid;
    std::vector<experiment::TailFit> fits;
    for(const auto &res : results) {
        if(!out_prefix.empty() && res.ok) {
            auto os = open_out(out_prefix + "_p" + std::to_string(res.p) + ".csv");
            observables::write_csv(os, res.series);
        }
        if(res.ok) {
            grid.push_back(res.p);
            fits.push_back(res.tail);
        }
    }
    try {
        const auto cp = experiment::locate_critical(grid, fits);
        std::cout << "critical estimate: p_c = " << cp.p_c << " in [" << cp.p_lo << ", " << cp.p_hi << "]\n";
    } catch(const std::exception &e) { std::cout << "critical estimate unavailable: " << e.what() << "\n"; }
    return 0;
}

int cmd_oracle(double p, double omega, const std::string &preset, const std::string &mode, double tau, double trotter_c,
               int rounds, int nqubits) {
    const auto params   = model::dp_quantum_rates(p, omega, parse_preset(preset));
    const auto schedule = make_schedule(mode, tau, trotter_c);
    const auto gates    = superop::build_round_gates(params, schedule, p);

    std::cout << std::setprecision(12) << "# neighborhood steady states: closed form vs restricted null-space solve\n";
    for(const auto &label : model::NeighborhoodLabel::all()) {
        const auto closed = model::steady_state_3cell(params, label);
        const auto num    = oracle::conditional_steady_state(params, label);
        std::cout << label.alpha << label.beta << "  occ " << closed.occ_active << " vs " << num.occ_active << "  coherence "
                  << closed.coherence.imag() << " vs " << num.coherence.imag() << "\n";
    }

    // Trotter-matched comparison: finite coarse chain vs dense round oracle
    const int ncoarse = nqubits / 2;
    auto      state   = mps::FiniteMPS<cxd>::product_state(ncoarse, [] {
        MatrixXc rho = MatrixXc::Zero(2, 2);
        rho(1, 1)    = 1;
        return rho;
    }());
    auto dense = oracle::DenseState::all_active(nqubits);
    std::cout << "# round  max|mps - dense|  trace_mps\n" << std::setprecision(6);
    for(int r = 1; r <= rounds; ++r) {
        state.apply_round(gates.v.matrix, gates.w.matrix);
        oracle::apply_round(dense, gates.rule_exponential, oracle::Boundary::Open);
        const VectorXc diff = state.to_dense() - dense.vec / dense.trace();
        std::cout << r << "  " << diff.cwiseAbs().maxCoeff() << "  " << state.trace() << "\n";
    }
    return 0;
}

int cmd_fit(const std::string &in, double tail_fraction) {
    std::ifstream is(in);
    if(!is) throw std::runtime_error("cannot open input file: " + in);
    const auto series = observables::read_csv(is);
    std::vector<double> t, n;
    experiment::positive_trace(series, t, n);
    const auto fit  = experiment::fit_delta(t, n, tail_fraction);
    const auto tail = experiment::fit_tail(t, n, tail_fraction);
    std::cout << std::setprecision(8) << "delta = " << fit.delta << " +- " << fit.delta_err << "\n"
              << "rms residual = " << fit.rms_residual << "\n"
              << "curvature = " << tail.curvature << "\n"
              << "exponential tail flagged: " << (fit.exponential_flagged ? "yes" : "no") << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"directed-percolation quantum cellular automaton toolkit"};
    app.require_subcommand(1);

    double      p = 0.7, omega = 0, tau = 10.0, trotter_c = 0.0025, tail_fraction = 0.5;
    std::string preset = "site-table", mode = "continuous", out, format = "csv", checkpoint, in;
    std::vector<double> ps;
    std::size_t         length = 1024, rounds_cl = 1000, seeds = 10;
    std::uint64_t       seed = 1;
    int                 threads = 1, rounds = 100, stride = 1, max_bond = 64, nqubits = 6;
    double              cutoff = 1e-12;
    bool                no_concurrence = false, resume = false, force_complex = false;

    auto add_model_opts = [&](CLI::App *cmd) {
        cmd->add_option("--p", p, "occupation parameter")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--omega", omega, "coherent drive Omega (theta = 2 Omega on the 11 neighborhood)");
        cmd->add_option("--preset", preset, "rate preset: site-table | uniform-gm");
    };
    auto add_schedule_opts = [&](CLI::App *cmd) {
        cmd->add_option("--mode", mode, "gate schedule: continuous | discrete");
        cmd->add_option("--tau", tau, "gate duration (discrete mode)");
        cmd->add_option("--trotter-c", trotter_c, "Trotter budget C with tau = sqrt(C/(p(1-p))) (continuous mode)");
    };
    auto add_evolve_opts = [&](CLI::App *cmd) {
        cmd->add_option("--rounds", rounds, "number of brickwork rounds");
        cmd->add_option("--stride", stride, "measurement stride in rounds");
        cmd->add_option("--max-bond", max_bond, "bond dimension cap");
        cmd->add_option("--cutoff", cutoff, "relative Schmidt-value cutoff");
        cmd->add_flag("--no-concurrence", no_concurrence, "skip the pair-concurrence measurement");
        cmd->add_flag("--force-complex", force_complex, "use the complex engine even for real gates");
        cmd->add_option("--checkpoint", checkpoint, "checkpoint file path");
        cmd->add_flag("--resume", resume, "resume from the checkpoint if present");
    };

    auto *rates = app.add_subcommand("rates", "print the per-neighborhood rate table and steady states");
    add_model_opts(rates);
    rates->add_option("--out", out, "write the preset as a key=value file");

    auto *dk = app.add_subcommand("dkca", "classical Domany-Kinzel density traces over a p grid");
    dk->add_option("--p", ps, "grid of p values")->required();
    dk->add_option("--length", length, "lattice size");
    dk->add_option("--rounds", rounds_cl, "rounds per trace");
    dk->add_option("--seeds", seeds, "ensemble size");
    dk->add_option("--seed", seed, "base seed");
    dk->add_option("--threads", threads, "worker threads");
    dk->add_option("--out", out, "density trace CSV");

    auto *ev = app.add_subcommand("evolve", "iTEBD trajectory of the doubled-space brickwork circuit");
    add_model_opts(ev);
    add_schedule_opts(ev);
    add_evolve_opts(ev);
    ev->add_option("--out", out, "output file (default stdout)");
    ev->add_option("--format", format, "csv | json");

    auto *sw = app.add_subcommand("sweep", "trajectories over a p grid plus a critical-point estimate");
    add_model_opts(sw);
    add_schedule_opts(sw);
    add_evolve_opts(sw);
    sw->add_option("--p-grid", ps, "grid of p values")->required();
    sw->add_option("--out-prefix", out, "per-point CSV prefix");

    auto *orc = app.add_subcommand("oracle", "dense-oracle cross-checks (steady states, finite-chain rounds)");
    add_model_opts(orc);
    add_schedule_opts(orc);
    orc->add_option("--rounds", rounds, "rounds to compare");
    orc->add_option("--qubits", nqubits, "chain length in qubits (even, <= 7... use 4 or 6)");

    auto *fit = app.add_subcommand("fit", "decay-exponent fit of a trajectory CSV");
    fit->add_option("--in", in, "trajectory CSV")->required();
    fit->add_option("--tail-fraction", tail_fraction, "log-time tail fraction used for the fit");

    CLI11_PARSE(app, argc, argv);

    try {
        if(rates->parsed()) return cmd_rates(p, omega, preset, out);
        if(dk->parsed()) return cmd_dkca(ps, length, rounds_cl, seeds, seed, threads, out);
        if(ev->parsed() || sw->parsed()) {
            experiment::TrajectoryConfig cfg;
            cfg.p                = p;
            cfg.omega            = omega;
            cfg.preset           = parse_preset(preset);
            cfg.schedule         = make_schedule(mode, tau, trotter_c);
            cfg.rounds           = rounds;
            cfg.stride           = stride;
            cfg.max_bond         = max_bond;
            cfg.sv_cutoff        = cutoff;
            cfg.with_concurrence = !no_concurrence;
            cfg.force_complex    = force_complex;
            cfg.resume           = resume;
            if(!checkpoint.empty()) cfg.checkpoint_path = checkpoint;
            if(ev->parsed()) return cmd_evolve(cfg, out, format);
            return cmd_sweep(cfg, ps, out);
        }
        if(orc->parsed()) return cmd_oracle(p, omega, preset, mode, tau, trotter_c, rounds, nqubits);
        if(fit->parsed()) return cmd_fit(in, tail_fraction);
    } catch(const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
