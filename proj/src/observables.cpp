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

#include "qca/observables.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace qca::observables {

VectorXc qubit_weights(const MatrixXc &op) {
    if(op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("qubit_weights: operator must be 2x2");
    VectorXc w(4);
    for(int k = 0; k < 2; ++k)
        for(int b = 0; b < 2; ++b) w(k * 2 + b) = op(b, k);
    return w;
}

double l1_coherence_1q(const MatrixXc &rho2) {
    if(rho2.rows() != 2 || rho2.cols() != 2) throw std::invalid_argument("l1_coherence_1q: matrix must be 2x2");
    return std::abs(rho2(0, 1)) + std::abs(rho2(1, 0));
}

double schmidt_entropy(const VectorXd &lambda) {
    const double nrm2 = lambda.squaredNorm();
    if(!(nrm2 > 0)) throw std::invalid_argument("schmidt_entropy: empty spectrum");
    double s = 0;
    for(Eigen::Index i = 0; i < lambda.size(); ++i) {
        const double p = lambda(i) * lambda(i) / nrm2;
        if(p > 0) s -= p * std::log(p);
    }
    return s;
}

double concurrence(const MatrixXc &rho4) {
    if(rho4.rows() != 4 || rho4.cols() != 4) throw std::invalid_argument("concurrence: matrix must be 4x4");
    MatrixXc rho = (rho4 + rho4.adjoint()) / 2.0;
    const double tr = rho.trace().real();
    if(std::abs(tr - 1.0) > 1e-6) throw NonPhysicalInput("concurrence: trace deviates from 1");

    Eigen::SelfAdjointEigenSolver<MatrixXc> herm(rho);
    if(herm.eigenvalues().minCoeff() < -1e-4) throw NonPhysicalInput("concurrence: significantly negative eigenvalue");

    const MatrixXc yy = kron(pauli_y(), pauli_y());
    const MatrixXc r  = rho * yy * rho.conjugate() * yy;

    Eigen::ComplexEigenSolver<MatrixXc> es(r);
    if(es.info() != Eigen::Success) throw SVDFailure("concurrence: eigensolver failed");
    std::array<double, 4> ev{};
    for(int i = 0; i < 4; ++i) ev[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return std::max(0.0, ev[0] - ev[1] - ev[2] - ev[3]);
}

void write_csv(std::ostream &os, const TrajectorySeries &series) {
    os << "# tau=" << std::setprecision(17) << series.tau << "\n";
    os << "# params_hash=" << series.params_hash << "\n";
    if(series.early_stop) os << "# early_stop=1\n";
    os << "round,t,density,entropy,l1,concurrence,trace_drift,discarded_weight,bond\n";
    os << std::setprecision(17);
    for(const auto &p : series.points)
        os << p.round << ',' << p.t << ',' << p.density << ',' << p.entropy << ',' << p.l1 << ',' << p.pair_concurrence << ','
           << p.trace_drift << ',' << p.discarded_weight << ',' << p.bond << "\n";
}

TrajectorySeries read_csv(std::istream &is) {
    TrajectorySeries series;
    std::string      line;
    while(std::getline(is, line)) {
        if(line.empty()) continue;
        if(line[0] == '#') {
            const auto eq = line.find('=');
            if(eq == std::string::npos) continue;
            const std::string key = line.substr(1, eq - 1), value = line.substr(eq + 1);
            if(key.find("params_hash") != std::string::npos) series.params_hash = std::stoull(value);
            else if(key.find("early_stop") != std::string::npos) series.early_stop = std::stoi(value) != 0;
            else if(key.find("tau") != std::string::npos) series.tau = std::stod(value);
            continue;
        }
        if(line.rfind("round,", 0) == 0) continue;
        std::istringstream ls(line);
        TrajectoryPoint    pt;
        char               comma = 0;
        if(!(ls >> pt.round >> comma >> pt.t >> comma >> pt.density >> comma >> pt.entropy >> comma >> pt.l1 >> comma >>
             pt.pair_concurrence >> comma >> pt.trace_drift >> comma >> pt.discarded_weight >> comma >> pt.bond))
            throw std::runtime_error("read_csv: malformed row: " + line);
        series.points.push_back(pt);
    }
    return series;
}

void write_json(std::ostream &os, const TrajectorySeries &series) {
    nlohmann::json rows = nlohmann::json::array();
    for(const auto &p : series.points)
        rows.push_back({{"round", p.round},
                        {"t", p.t},
                        {"density", p.density},
                        {"entropy", p.entropy},
                        {"l1", p.l1},
                        {"concurrence", p.pair_concurrence},
                        {"trace_drift", p.trace_drift},
                        {"discarded_weight", p.discarded_weight},
                        {"bond", p.bond}});
    nlohmann::json doc = {
        {"tau", series.tau}, {"params_hash", series.params_hash}, {"early_stop", series.early_stop}, {"points", rows}};
    os << doc.dump(2) << "\n";
}

} // namespace qca::observables
