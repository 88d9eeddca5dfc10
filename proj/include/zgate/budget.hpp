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

// Analytic spontaneous-emission budget. Scattering off the mediator level
// is the dominant fundamental error of this gate family; the total
// scattering probability over one gate is used as an overestimated figure
// of merit and compared against a fault-tolerance reference threshold.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zgate/model.hpp"

namespace zgate {

// Probability that a mediator excitation is present, time-averaged over the
// drive: 8 |g|^2 / omega0^2 at the optimal detuning. Valid for g << omega0;
// reaches its algebraic ceiling of 1 at g = omega0 / sqrt(8).
double p_offresonant(double g, double omega0);

// Total scattering probability over one loop for ground-manifold storage,
// fully reduced under the loop-closure coupling condition so that g and
// delta drop out: (4 pi / eta) (gamma_d / omega0).
double p_total_ground(double eta, double gamma_d, double omega0);

// Total scattering probability when the qubit occupies the decaying
// manifold for the whole gate: 2 gamma_d T (two ions). Linearization
// requires gamma_d * T < 0.1.
double p_total_metastable(double gamma_d, double gate_time);

enum class FormulaKind { off_resonant, mediator_occupied };

struct BudgetScenario {
    std::string label;
    Encoding encoding;
    double eta = 0.1;        // used by the off-resonant closed form
    double gate_time = 0.0;  // s
    double g = 0.0;          // rad/s, coupling used for the p_off column
    FormulaKind kind = FormulaKind::off_resonant;
    // Literature value overriding the formula (scenario quoted, not derived).
    std::optional<double> p_total_stored;

    void validate() const;
};

struct ErrorBudgetReport {
    std::string label;
    double p_off = 0.0;    // mediator occupation during the gate
    double p_total = 0.0;  // scattering probability per gate
    double threshold = 1e-4;
    double threshold_ratio = 0.0;  // p_total / threshold
    bool pass = false;             // p_total < threshold
    std::string formula;           // rendered closed form

    // Step-by-step reduction p_total = 2 p_off gamma_d T -> (4 pi/eta)(gamma_d/omega0)
    // under the loop-closure coupling, for ground-storage scenarios.
    bool has_chain = false;
    double chain_direct = 0.0;   // 2 p_off(g*) gamma_d T with g* re-solved
    double chain_reduced = 0.0;  // (4 pi / eta)(gamma_d / omega0)
    double chain_rel_err = 0.0;
};

// The three stock encodings: ground-state clock storage, metastable-manifold
// storage, and the mixed ground/metastable optical qubit (stored value).
std::vector<BudgetScenario> builtin_scenarios();

std::vector<ErrorBudgetReport> budget_report(const std::vector<BudgetScenario>& scenarios,
                                             double threshold = 1e-4);

}  // namespace zgate
