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

// State propagation under time-dependent generators, the closed-form
// forced-oscillator oracle, and the gate runner that turns a design into
// branch phases, a qubit-subspace propagator and trajectory samples.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "zgate/hamiltonian.hpp"
#include "zgate/model.hpp"
#include "zgate/qcore.hpp"
#include "zgate/sequencer.hpp"

namespace zgate {

struct PropagationSettings {
    double t_final = 0.0;
    int steps_per_fastest_period = 64;  // >= 16
    // > 0: sample every that many steps; 0: automatic (~1000 samples);
    // < 0: record endpoints only.
    int record_stride = 0;
    bool convergence_check = false;  // re-run at half step, compare final states
    double convergence_tol = 1e-6;
    double truncation_guard = 1e-8;  // top-two Fock population abort level

    void validate() const;
};

struct PropagationStats {
    long n_steps = 0;
    double dt = 0.0;
    double norm_error = 0.0;           // | ||psi(T)|| - 1 |
    double max_edge_population = 0.0;  // worst top-two Fock weight seen
    double convergence_error = 0.0;    // filled when convergence_check is on
};

// Sampled evolution. Branch columns are filled by run_gate, which knows the
// branch labels and phase references; bare propagate fills times and states.
struct Trajectory {
    std::vector<double> times;
    std::vector<QuantumState> states;

    std::vector<std::string> branch_labels;
    std::vector<std::vector<complexd>> branch_alpha;  // [branch][sample]
    std::vector<std::vector<double>> branch_phase;
    std::vector<std::vector<double>> branch_n_mean;
    std::vector<std::vector<double>> branch_norm_err;
};

// Fixed-step midpoint-exponential integrator:
//     psi_{k+1} = exp(-i H(t_k + dt/2) dt) psi_k
// with the step count tied to the generator's fastest angular frequency.
// The per-step exponential is evaluated by an adaptive truncated series on
// the state vector, so each step is unitary to machine precision.
// With convergence_check set, the run is repeated at half the step size and
// the final states must agree within convergence_tol, else the run fails
// with a step-size diagnostic; the half-step result is returned.
Trajectory propagate(const Generator& gen, const QuantumState& initial,
                     const PropagationSettings& settings, PropagationStats* stats = nullptr);

// Closed-form state of a ground-state oscillator driven by
// H = f a^dag e^{i delta t} + h.c.:
//     alpha(t) = -(f/delta) (e^{i delta t} - 1)
//     phase(t) = |f/delta|^2 (delta t - sin(delta t))
// At t = 2 pi n / delta the loop closes: alpha = 0, phase = 2 pi n |f/delta|^2.
struct OscillatorPoint {
    complexd alpha{0.0, 0.0};
    double phase = 0.0;
};
OscillatorPoint forced_oscillator_oracle(complexd f, double delta, double t);

// Initial motional preparation for run_gate: ground state (default), a
// classical thermal mixture of Fock states (n_bar <= 2), or a coherent state.
struct MotionalPrep {
    enum class Kind { ground, thermal, coherent };
    Kind kind = Kind::ground;
    double n_bar = 0.0;
    complexd alpha{0.0, 0.0};

    static MotionalPrep ground();
    static MotionalPrep thermal(double n_bar);
    static MotionalPrep coherent(complexd alpha);
};

struct GateRunSettings {
    PropagationSettings prop;  // t_final is derived from the schedule
    int n_max = 20;
    MotionalPrep initial{};
    bool include_bell_input = true;  // also evolve the qubit_input product state
    // Qubit-subspace input used for the entanglement run; defaults to the
    // (|0>+|1>)(|0>+|1>)/2 product state. Must be unit norm.
    std::array<complexd, 4> qubit_input{complexd(0.5, 0.0), complexd(0.5, 0.0),
                                        complexd(0.5, 0.0), complexd(0.5, 0.0)};
    bool record_trajectory = false;
};

// Branch order everywhere: uu, ud, du, dd (u = level 0).
struct GateResult {
    ModelTier tier = ModelTier::effective;
    double total_time = 0.0;

    std::array<double, 4> branch_phase{};          // rad, wrapped to (-pi, pi]
    std::array<double, 4> branch_residual{};       // |<a>_final - <a>_initial|
    std::array<double, 4> branch_phonon_excess{};  // <n>_final - <n>_initial
    double motional_residual = 0.0;                // max branch residual
    double segment_max_residual = 0.0;             // worst segment-boundary residual
    bool loop_closed = true;                       // all residuals <= 0.01

    // Linear decomposition of the branch phases into a global part, two
    // single-ion parts and the conditional (entangling) part; each wrapped.
    double conditional_phase = 0.0;
    double single_ion_phase_1 = 0.0;
    double single_ion_phase_2 = 0.0;
    double global_phase = 0.0;

    Mat qubit_propagator;             // 4x4, U[j][i] = <j, mot0 | psi_i(T)>
    double propagator_defect = 0.0;   // max |U^dag U - 1|
    double leakage = 0.0;             // three-level tier: worst weight outside the qubit subspace

    bool has_bell = false;
    Mat bell_rho;  // 4x4 reduced qubit state from the |++> product input

    bool has_trajectory = false;
    Trajectory trajectory;

    PropagationStats stats;  // aggregated over all branch propagations
};

// Propagates the four computational basis inputs (and optionally the |++>
// product input) through the plain schedule of `design`, or through
// `sequence` when given. Branch phases are extracted as the argument of the
// overlap with the initial state; a residual displacement above 0.01 marks
// the loop as not closed (phases still reported, flagged). Echo sequences
// require a two-level tier.
GateResult run_gate(const GateDesign& design, ModelTier tier, const GateRunSettings& settings,
                    const EchoSequence* sequence = nullptr);

}  // namespace zgate
