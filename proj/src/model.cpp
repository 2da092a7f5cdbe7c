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

#include "qca/model.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace qca::model {

const std::array<NeighborhoodLabel, 4> &NeighborhoodLabel::all() {
    static const std::array<NeighborhoodLabel, 4> labels = {NeighborhoodLabel{0, 0}, NeighborhoodLabel{0, 1},
                                                            NeighborhoodLabel{1, 0}, NeighborhoodLabel{1, 1}};
    return labels;
}

void ThreeCellParams::validate() const {
    for(int i = 0; i < 4; ++i) {
        if(!std::isfinite(gamma_minus[i]) || !std::isfinite(gamma_plus[i]) || !std::isfinite(theta[i]))
            throw std::domain_error("ThreeCellParams: non-finite entry");
        if(gamma_minus[i] <= 0) throw std::domain_error("ThreeCellParams: gamma_minus must be positive");
        if(gamma_plus[i] < 0 || theta[i] < 0) throw std::domain_error("ThreeCellParams: negative rate");
        if(p[i] < 0 || p[i] > 1) throw std::domain_error("ThreeCellParams: p outside [0,1]");
        if(theta[i] != 0) {
            double omega = theta[i] / 2;
            double disc  = gamma_minus[i] * gamma_minus[i] - 16 * omega * omega * (1 - 3 * p[i] + 2 * p[i] * p[i]);
            if(disc < 0) throw NegativeDiscriminant("ThreeCellParams: physicality discriminant negative");
        }
    }
}

std::uint64_t ThreeCellParams::hash() const {
    std::array<double, 16> flat{};
    for(int i = 0; i < 4; ++i) {
        flat[i]      = p[i];
        flat[4 + i]  = theta[i];
        flat[8 + i]  = gamma_minus[i];
        flat[12 + i] = gamma_plus[i];
    }
    return hash_doubles(flat.data(), flat.size());
}

MatrixXc SteadyState3Cell::matrix() const {
    MatrixXc rho(2, 2);
    rho(0, 0) = occ_empty;
    rho(1, 1) = occ_active;
    rho(1, 0) = coherence;
    rho(0, 1) = std::conj(coherence);
    return rho;
}

double solve_gamma_plus(double p, double omega, double gamma_minus) {
    if(gamma_minus <= 0) throw std::domain_error("solve_gamma_plus: gamma_minus must be positive");
    if(p < 0 || p >= 1) {
        if(p == 1) throw DegenerateP("solve_gamma_plus: p = 1 makes gamma_plus unbounded");
        throw std::domain_error("solve_gamma_plus: p outside [0,1)");
    }
    if(omega == 0) return p * gamma_minus / (1 - p);
    double disc = gamma_minus * gamma_minus - 16 * omega * omega * (1 - 3 * p + 2 * p * p);
    if(disc < 0) throw NegativeDiscriminant("solve_gamma_plus: discriminant negative (unphysical p, omega)");
    double gp = ((2 * p - 1) * gamma_minus + std::sqrt(disc)) / (2 * (1 - p));
    if(gp < 0) throw NegativeDiscriminant("solve_gamma_plus: negative rate root (unphysical p, omega)");
    return gp;
}

SteadyState3Cell steady_state_3cell(const ThreeCellParams &params, NeighborhoodLabel label) {
    params.validate();
    const int    i     = label.index();
    const double omega = params.theta[i] / 2;
    const double gm    = params.gamma_minus[i];
    const double gp    = params.gamma_plus[i];
    const double total = gp + gm;

    SteadyState3Cell out;
    if(omega == 0) {
        out.occ_active = gp / total;
        out.occ_empty  = gm / total;
        out.coherence  = 0;
        return out;
    }
    // Steady state of drho/dt = -i[(theta/2)X, rho] + gp D[s+] + gm D[s-]:
    // populations from balancing the jump rates against the X rotation.
    const double u = (gp * total + 4 * omega * omega) / (total * total + 8 * omega * omega);
    out.occ_active = u;
    out.occ_empty  = 1 - u;
    out.coherence  = cxd(0, 2 * omega * (2 * u - 1) / total);
    return out;
}

DKCARule dp_site_rule(double p) {
    if(p < 0 || p > 1) throw std::domain_error("dp_site_rule: p outside [0,1]");
    return {0, p, p};
}

DKCARule dp_bond_rule(double q) {
    if(q < 0 || q > 1) throw std::domain_error("dp_bond_rule: q outside [0,1]");
    return {0, q, q * (2 - q)};
}

ThreeCellParams dp_quantum_rates(double p, double omega, RatePreset preset) {
    if(p < 0 || p >= 1) {
        if(p == 1) throw DegenerateP("dp_quantum_rates: p = 1");
        throw std::domain_error("dp_quantum_rates: p outside [0,1)");
    }
    ThreeCellParams out;
    out.p     = {0, p, p, p};
    out.theta = {0, 0, 0, 2 * omega};
    if(preset == RatePreset::SiteTable) {
        out.gamma_minus = {1, 1 - p, 1 - p, 1 - p};
    } else {
        out.gamma_minus = {1, 1, 1, 1};
    }
    out.gamma_plus[0] = 0;
    for(int i = 1; i < 3; ++i) out.gamma_plus[i] = solve_gamma_plus(p, 0, out.gamma_minus[i]);
    out.gamma_plus[3] = solve_gamma_plus(p, omega, out.gamma_minus[3]);
    out.validate();
    return out;
}

std::string preset_name(RatePreset preset) { return preset == RatePreset::SiteTable ? "site-table" : "uniform-gm"; }

namespace {
    const std::array<std::string, 4> kLabelNames = {"00", "01", "10", "11"};
}

void save_params(std::ostream &os, const PresetConfig &cfg) {
    os.precision(17);
    os << "p = " << cfg.p << "\n";
    os << "omega = " << cfg.omega << "\n";
    for(int i = 0; i < 4; ++i) os << "gamma_minus." << kLabelNames[i] << " = " << cfg.params.gamma_minus[i] << "\n";
    for(int i = 0; i < 4; ++i) os << "gamma_plus." << kLabelNames[i] << " = " << cfg.params.gamma_plus[i] << "\n";
    for(int i = 0; i < 4; ++i) os << "theta." << kLabelNames[i] << " = " << cfg.params.theta[i] << "\n";
}

PresetConfig load_params(std::istream &is) {
    std::map<std::string, double> kv;
    std::string                   line;
    while(std::getline(is, line)) {
        auto hash = line.find('#');
        if(hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if(eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto        trim = [](std::string &s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto last = s.find_last_not_of(" \t\r");
            s.erase(last == std::string::npos ? 0 : last + 1);
        };
        trim(key);
        trim(val);
        if(key.empty()) continue;
        kv[key] = std::stod(val);
    }
    if(!kv.count("p")) throw std::runtime_error("load_params: missing key 'p'");
    PresetConfig cfg;
    cfg.p     = kv.at("p");
    cfg.omega = kv.count("omega") ? kv.at("omega") : 0.0;
    bool have_tables = kv.count("gamma_minus.00") > 0;
    if(have_tables) {
        cfg.params.p = {0, cfg.p, cfg.p, cfg.p};
        for(int i = 0; i < 4; ++i) {
            cfg.params.gamma_minus[i] = kv.at("gamma_minus." + kLabelNames[i]);
            cfg.params.gamma_plus[i]  = kv.at("gamma_plus." + kLabelNames[i]);
            cfg.params.theta[i]       = kv.at("theta." + kLabelNames[i]);
        }
        cfg.params.validate();
    } else {
        cfg.params = dp_quantum_rates(cfg.p, cfg.omega);
    }
    return cfg;
}

} // namespace qca::model
