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

// Figures of merit of a gate run: conditional phase, process fidelity after
// compensating single-ion Z phases, and entanglement generated from a
// product input.

#pragma once

#include <array>

#include "zgate/dynamics.hpp"
#include "zgate/qcore.hpp"

namespace zgate {

// Target gate diag(1, e^{i pi/2}, e^{i pi/2}, 1) in the basis {uu, ud, du, dd};
// equal to exp(-i (pi/4) sigma_z (x) sigma_z) up to local Z rotations and a
// global phase.
Mat ideal_gate();

// Z(beta) = exp(-i beta sigma_z / 2) on one qubit.
Mat z_rotation(double beta);

// The entangling phase of the run, wrapped to (-pi, pi]. Refuses when a
// branch loop did not close (the phase of a near-zero overlap is garbage).
double conditional_phase(const GateResult& result);

struct ZCompOutcome {
    double raw = 0.0;          // |Tr(ref^dag sim)|^2 / 16
    double compensated = 0.0;  // max over Z(b1) (x) Z(b2) corrections
    double beta1 = 0.0;
    double beta2 = 0.0;
    bool grid_fallback = false;  // refinement rejected, coarse-grid maximum reported
};

// Maximizes F(b1, b2) = |Tr(u_ref^dag (Z(b1) (x) Z(b2)) u_sim)|^2 / 16 over a
// 64x64 grid of both angles followed by local zoom refinement to ~1e-8.
// u_sim must be unitary within unitarity_tol (relax for sub-unitary
// propagators with known leakage).
ZCompOutcome z_compensated_process_fidelity(const Mat& u_sim, const Mat& u_ref,
                                            double unitarity_tol = 1e-6);

// Wootters concurrence of the reduced qubit state produced from the product
// input configured in the run (defaults to |++>).
double bell_test(const GateResult& result);

struct FidelityReport {
    double process_fidelity_raw = 0.0;
    double process_fidelity_z_compensated = 0.0;
    std::array<double, 2> optimal_z_angles{0.0, 0.0};
    double bell_concurrence = 0.0;
    double conditional_phase_error = 0.0;  // signed, vs pi/2
    bool grid_fallback = false;
};

// Full report against the ideal gate.
FidelityReport fidelity_report(const GateResult& result, double unitarity_tol = 1e-6);

}  // namespace zgate
