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

// Physical parameter model for the two-ion sigma_z geometric-phase gate.
//
// Level scheme per ion: two long-lived qubit levels |up>, |down> split by
// omega0, plus one narrow mediator level |e> that two Raman beams couple
// both qubit levels to. Beam B sits delta_raman above the up->e transition;
// beam A is tuned (nu - delta_loop) below beam B so that the two-photon
// beat addresses the blue sideband of the shared motional mode, detuned by
// delta_loop from exact resonance. All frequencies are angular (rad/s).

#pragma once

#include <complex>
#include <string>

#include "zgate/errors.hpp"
#include "zgate/qcore.hpp"

namespace zgate {

enum class Spin { up = 0, down = 1 };

// Qubit + mediator level data for one encoding choice.
struct Encoding {
    double omega0 = 0.0;    // qubit splitting
    double gamma_d = 0.0;   // mediator decay rate
    std::string label;
    // True when the qubit states themselves sit in the decaying manifold,
    // which changes which error-budget formula applies.
    bool mediator_occupied_during_gate = false;

    void validate() const;
};

// Shared motional mode used as the phase-space bus.
struct TrapMode {
    double nu = 0.0;     // mode frequency
    double eta = 0.0;    // Lamb-Dicke parameter for the beam-pair wave-vector difference
    std::string kind = "cm";

    void validate() const;
};

// Complex coupling of one beam, allowed to differ per qubit level (e.g.
// polarization-selected transitions). Most designs use a single value.
struct LevelCoupling {
    complexd up{0.0, 0.0};
    complexd down{0.0, 0.0};

    LevelCoupling() = default;
    LevelCoupling(complexd both) : up(both), down(both) {}  // NOLINT(google-explicit-constructor)
    LevelCoupling(complexd u, complexd d) : up(u), down(d) {}

    complexd get(Spin m) const { return m == Spin::up ? up : down; }
    double max_abs() const { return std::max(std::abs(up), std::abs(down)); }
};

// The Raman beam pair driving the gate.
struct LaserPair {
    LevelCoupling g_a;
    LevelCoupling g_b;
    double delta_raman = 0.0;  // beam B detuning above the up->e transition
    double phi_a = 0.0;
    double phi_b = 0.0;
    double dkz = 0.0;          // wave-vector difference projected on the mode axis

    double max_coupling() const { return std::max(g_a.max_abs(), g_b.max_abs()); }
    void validate() const;
};

// Equilibrium ion positions along the mode axis.
struct IonGeometry {
    double z0_1 = 0.0;
    double z0_2 = 0.0;

    void validate() const;
};

// Second-order coefficients of the driven three-level ion: chi_m is the
// static light shift of level m, theta_m the two-photon cross coupling
// whose beat note produces the state-dependent force.
struct StarkCoefficients {
    double chi_up = 0.0;
    double chi_down = 0.0;
    complexd theta_up{0.0, 0.0};
    complexd theta_down{0.0, 0.0};

    double chi(Spin m) const { return m == Spin::up ? chi_up : chi_down; }
    complexd theta(Spin m) const { return m == Spin::up ? theta_up : theta_down; }
};

// Complete gate design: everything the Hamiltonian builders need.
struct GateDesign {
    Encoding encoding;
    TrapMode trap;
    LaserPair lasers;
    IonGeometry geometry;
    double delta_loop = 0.0;  // phase-space loop closure detuning
    int n_loops = 1;
    bool include_static_stark = false;
    // Reject detunings within this multiple of the coupling from a pole of
    // the second-order coefficients. Default per the design rules; relax
    // explicitly (and say why) for deliberately compressed parameter sets.
    double pole_guard_margin = 100.0;

    void validate() const;
    double gate_time() const { return n_loops * 2.0 * kPi / delta_loop; }
};

// --- coefficient and design calculations -----------------------------------

// chi / theta from the beam couplings and detunings. Throws
// SingularDetuningError inside the pole-guard band around delta_raman = 0
// or delta_raman = omega0.
StarkCoefficients stark_coefficients(const LaserPair& lasers, const Encoding& encoding,
                                     double pole_guard_margin = 100.0);

// Equal-coupling magnitude |g| that closes the loop with a pi/2 branch
// phase per loop at the optimal detuning delta_raman = omega0/2:
// |g| = sqrt(delta_loop * omega0 / (8 eta)).
double required_coupling(double delta_loop, const TrapMode& trap, const Encoding& encoding);

// Same requirement at an arbitrary mediator detuning, from the spectral
// discrimination condition |theta_up - theta_down| = delta_loop/(2 eta)
// with equal real couplings on both beams and levels.
double solve_coupling(double delta_loop, const TrapMode& trap, const Encoding& encoding,
                      double delta_raman);

// Inverse of the optimal-coupling relation: the loop detuning that a given
// coupling magnitude supports at delta_raman = omega0/2.
double loop_detuning_for_coupling(double coupling, const TrapMode& trap,
                                  const Encoding& encoding);

// |theta_up - theta_down| - delta_loop/(2 eta): zero exactly on a valid
// discrimination design, positive when the differential force is too strong.
double discrimination_residual(const LaserPair& lasers, const Encoding& encoding,
                               const TrapMode& trap, double delta_loop);

// Drive phase seen by ion i (1 or 2): phi_b - phi_a - dkz * z0_i.
double ion_drive_phase(const LaserPair& lasers, const IonGeometry& geometry, int ion);

// dkz * (z0_1 - z0_2) reduced mod 2pi into [0, 2pi).
double spacing_phase(const LaserPair& lasers, const IonGeometry& geometry);

// True when the ion spacing puts the two drive phases an odd multiple of pi
// apart (within tol), the arrangement that cancels the force on aligned
// spin pairs and doubles it on anti-aligned ones.
bool spacing_is_anti_aligned(const LaserPair& lasers, const IonGeometry& geometry,
                             double tol = 1e-6);

// Net force coefficient on the shared mode for spin branch (m1, m2), using
// the odd-pi spacing shortcut f = i (theta_m1 - theta_m2) eta e^{-i phi_1}.
// Throws GeometryError when the spacing condition does not hold.
complexd branch_force(Spin m1, Spin m2, const StarkCoefficients& coeffs,
                      const TrapMode& trap, const LaserPair& lasers,
                      const IonGeometry& geometry);

// General per-ion sum i*eta*(theta_m1 e^{-i phi_1} + theta_m2 e^{-i phi_2}),
// valid for any spacing.
complexd branch_force_general(Spin m1, Spin m2, const StarkCoefficients& coeffs,
                              const TrapMode& trap, const LaserPair& lasers,
                              const IonGeometry& geometry);

// Closed-form phase-space loop phase 2 pi n |f/delta|^2 accumulated by a
// branch with force coefficient f after n closed loops.
double predicted_loop_phase(complexd force, double delta_loop, int n_loops);

// Small-parameter health checks of the second-order reduction.
struct ValidityReport {
    double coupling_over_detuning_up = 0.0;    // largest |g| / |delta_raman|
    double coupling_over_detuning_down = 0.0;  // largest |g| / |delta_raman - omega0|
    double shift_over_mode_freq = 0.0;         // max |theta| / nu
    double lamb_dicke_sq = 0.0;                // eta^2 (n_bar + 1/2)
    double threshold = 0.1;

    bool pass_up() const { return coupling_over_detuning_up < threshold; }
    bool pass_down() const { return coupling_over_detuning_down < threshold; }
    bool pass_shift() const { return shift_over_mode_freq < threshold; }
    bool pass_lamb_dicke() const { return lamb_dicke_sq < threshold; }
    bool all_pass() const {
        return pass_up() && pass_down() && pass_shift() && pass_lamb_dicke();
    }
};

ValidityReport validity_report(const GateDesign& design, double n_bar = 0.0,
                               double threshold = 0.1);

// (-pi, pi] branch of an angle.
double wrap_angle(double x);

}  // namespace zgate
