// Copyright 2026 The zgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zgate/budget.hpp"

#include <cmath>

#include "zgate/errors.hpp"

namespace zgate {

double p_offresonant(double g, double omega0) {
    if (g < 0.0 || omega0 <= 0.0)
        throw ValidationError("p_offresonant expects g >= 0 and omega0 > 0");
    if (g >= omega0)
        throw ValidationError("p_offresonant is only meaningful for g < omega0");
    const double r = g / omega0;
    return 8.0 * r * r;
}

double p_total_ground(double eta, double gamma_d, double omega0) {
    if (eta <= 0.0 || gamma_d < 0.0 || omega0 <= 0.0)
        throw ValidationError("p_total_ground expects eta > 0, gamma_d >= 0, omega0 > 0");
    return (4.0 * kPi / eta) * (gamma_d / omega0);
}

double p_total_metastable(double gamma_d, double gate_time) {
    if (gamma_d < 0.0 || gate_time < 0.0)
        throw ValidationError("p_total_metastable expects non-negative inputs");
    const double product = gamma_d * gate_time;
    if (product >= 0.1)
        throw ValidationError(
            "gamma_d * gate_time >= 0.1: the linearized scattering probability is invalid");
    return 2.0 * product;
}

void BudgetScenario::validate() const {
    encoding.validate();
    if (!(gate_time > 0.0)) throw ValidationError("budget scenario needs gate_time > 0");
    if (kind == FormulaKind::off_resonant && !(eta > 0.0))
        throw ValidationError("off-resonant budget scenario needs eta > 0");
    if (g < 0.0) throw ValidationError("budget scenario coupling must be non-negative");
}

std::vector<BudgetScenario> builtin_scenarios() {
    std::vector<BudgetScenario> rows;

    // Hyperfine clock qubit in the ground manifold; the decaying mediator is
    // only virtually occupied.
    {
        BudgetScenario s;
        s.label = "ground clock qubit";
        s.encoding.omega0 = 2.0 * kPi * 3.226e9;
        s.encoding.gamma_d = 2.0 * kPi * 0.18;
        s.encoding.label = "ground clock qubit";
        s.encoding.mediator_occupied_during_gate = false;
        s.eta = 0.1;
        s.gate_time = 1.0e-3;
        s.g = 2.0 * kPi * 2.0e6;
        s.kind = FormulaKind::off_resonant;
        rows.push_back(std::move(s));
    }

    // Qubit stored in hyperfine clock states of the metastable manifold for
    // the whole (much faster) gate; the splitting is ~500x smaller than in
    // the ground manifold, cutting the required coupling by an order of
    // magnitude.
    {
        BudgetScenario s;
        s.label = "metastable manifold qubit";
        s.encoding.omega0 = 2.0 * kPi * 6.452e6;
        s.encoding.gamma_d = 2.0 * kPi * 0.18;
        s.encoding.label = "metastable manifold qubit";
        s.encoding.mediator_occupied_during_gate = true;
        s.gate_time = 100.0e-6;
        s.g = 2.0 * kPi * 285.0e3;
        s.kind = FormulaKind::mediator_occupied;
        rows.push_back(std::move(s));
    }

    // Optical qubit split between ground and metastable manifolds;
    // literature value, not re-derived here.
    {
        BudgetScenario s;
        s.label = "optical qubit (ground + metastable)";
        s.encoding.omega0 = 2.0 * kPi * 4.11e14;
        s.encoding.gamma_d = 2.0 * kPi * 0.18;
        s.encoding.label = "optical qubit (ground + metastable)";
        s.encoding.mediator_occupied_during_gate = true;
        s.gate_time = 100.0e-6;
        s.g = 2.0 * kPi * 210.0e3;
        s.kind = FormulaKind::mediator_occupied;
        s.p_total_stored = 1.0e-4;
        rows.push_back(std::move(s));
    }
    return rows;
}

std::vector<ErrorBudgetReport> budget_report(const std::vector<BudgetScenario>& scenarios,
                                             double threshold) {
    if (threshold <= 0.0) throw ValidationError("threshold must be positive");
    std::vector<ErrorBudgetReport> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        s.validate();
        ErrorBudgetReport rep;
        rep.label = s.label;
        rep.threshold = threshold;
        rep.p_off = (s.g > 0.0) ? std::min(p_offresonant(s.g, s.encoding.omega0), 1.0) : 0.0;

        if (s.p_total_stored.has_value()) {
            rep.p_total = *s.p_total_stored;
            rep.formula = "stored literature value";
        } else if (s.kind == FormulaKind::off_resonant) {
            rep.p_total = p_total_ground(s.eta, s.encoding.gamma_d, s.encoding.omega0);
            rep.formula = "(4 pi / eta) (gamma_d / omega0)";
        } else {
            rep.p_total = p_total_metastable(s.encoding.gamma_d, s.gate_time);
            rep.formula = "2 gamma_d T";
        }
        rep.p_total = std::min(rep.p_total, 1.0);
        rep.threshold_ratio = rep.p_total / threshold;
        rep.pass = rep.p_total < threshold;

        if (s.kind == FormulaKind::off_resonant && !s.p_total_stored.has_value()) {
            // Re-solve the coupling for a closed loop of duration gate_time at
            // the optimal detuning; then 2 p_off gamma_d T collapses to the
            // reduced closed form independently of g and delta.
            const double delta = 2.0 * kPi / s.gate_time;
            const double g_star =
                std::sqrt(delta * s.encoding.omega0 / (8.0 * s.eta));
            rep.has_chain = true;
            rep.chain_direct = 2.0 * p_offresonant(g_star, s.encoding.omega0) *
                               s.encoding.gamma_d * s.gate_time;
            rep.chain_reduced = p_total_ground(s.eta, s.encoding.gamma_d, s.encoding.omega0);
            rep.chain_rel_err =
                std::abs(rep.chain_direct - rep.chain_reduced) / rep.chain_reduced;
        }
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace zgate
