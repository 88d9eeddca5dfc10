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

#include "zgate/model.hpp"

#include <cmath>
#include <sstream>

namespace zgate {

void Encoding::validate() const {
    if (!(omega0 > 0.0)) {
        throw ValidationError("encoding.omega0 must be > 0");
    }
    if (gamma_d < 0.0) {
        throw ValidationError("encoding.gamma_d must be >= 0");
    }
}

void TrapMode::validate() const {
    if (!(nu > 0.0)) {
        throw ValidationError("trap.nu must be > 0");
    }
    if (!(eta > 0.0) || eta >= 1.0) {
        throw ValidationError("trap.eta must lie in (0, 1)");
    }
}

void LaserPair::validate() const {
    if (!std::isfinite(delta_raman) || !std::isfinite(phi_a) || !std::isfinite(phi_b) ||
        !std::isfinite(dkz)) {
        throw ValidationError("lasers: non-finite field");
    }
}

void IonGeometry::validate() const {
    if (z0_1 == z0_2) {
        throw ValidationError("geometry: the two ions cannot share a position");
    }
}

void GateDesign::validate() const {
    encoding.validate();
    trap.validate();
    lasers.validate();
    geometry.validate();
    if (!(delta_loop > 0.0)) {
        throw ValidationError("delta_loop must be > 0");
    }
    // The loop must be slow against the mode; the boundary value is allowed
    // because compressed test sets sit exactly on it.
    if (delta_loop > trap.nu / 50.0) {
        throw ValidationError("delta_loop must satisfy delta_loop <= nu/50");
    }
    if (n_loops < 1) {
        throw ValidationError("n_loops must be >= 1");
    }
    if (pole_guard_margin < 1.0) {
        throw ValidationError("pole_guard_margin must be >= 1");
    }
    if (lasers.max_coupling() > 0.0) {
        // Trips the same guard as stark_coefficients; fail early.
        stark_coefficients(lasers, encoding, pole_guard_margin);
    }
}

StarkCoefficients stark_coefficients(const LaserPair& lasers, const Encoding& encoding,
                                     double pole_guard_margin) {
    encoding.validate();
    lasers.validate();
    const double delta = lasers.delta_raman;
    const double delta_down = delta - encoding.omega0;
    const double gmax = lasers.max_coupling();
    const double band = pole_guard_margin * gmax;
    if (std::abs(delta) <= band || std::abs(delta) == 0.0) {
        std::ostringstream os;
        os << "delta_raman = " << delta << " is within " << pole_guard_margin
           << "x the coupling of the up-level pole at 0";
        throw SingularDetuningError(os.str());
    }
    if (std::abs(delta_down) <= band || std::abs(delta_down) == 0.0) {
        std::ostringstream os;
        os << "delta_raman - omega0 = " << delta_down << " is within " << pole_guard_margin
           << "x the coupling of the down-level pole at omega0";
        throw SingularDetuningError(os.str());
    }

    StarkCoefficients c;
    c.chi_up = -(std::norm(lasers.g_a.up) + std::norm(lasers.g_b.up)) / delta;
    c.chi_down = -(std::norm(lasers.g_a.down) + std::norm(lasers.g_b.down)) / delta_down;
    c.theta_up = -lasers.g_b.up * std::conj(lasers.g_a.up) / delta;
    c.theta_down = -lasers.g_b.down * std::conj(lasers.g_a.down) / delta_down;
    return c;
}

double required_coupling(double delta_loop, const TrapMode& trap, const Encoding& encoding) {
    trap.validate();
    encoding.validate();
    if (!(delta_loop > 0.0)) {
        throw ValidationError("required_coupling: delta_loop must be > 0");
    }
    return std::sqrt(delta_loop * encoding.omega0 / (8.0 * trap.eta));
}

double solve_coupling(double delta_loop, const TrapMode& trap, const Encoding& encoding,
                      double delta_raman) {
    trap.validate();
    encoding.validate();
    if (!(delta_loop > 0.0)) {
        throw ValidationError("solve_coupling: delta_loop must be > 0");
    }
    const double inv_span =
        std::abs(1.0 / delta_raman - 1.0 / (delta_raman - encoding.omega0));
    if (!(inv_span > 0.0) || !std::isfinite(inv_span)) {
        throw SingularDetuningError("solve_coupling: detuning gives no differential shift");
    }
    // |g|^2 |1/delta_raman - 1/(delta_raman - omega0)| = delta_loop/(2 eta)
    return std::sqrt(delta_loop / (2.0 * trap.eta) / inv_span);
}

double loop_detuning_for_coupling(double coupling, const TrapMode& trap,
                                  const Encoding& encoding) {
    trap.validate();
    encoding.validate();
    if (!(coupling > 0.0)) {
        throw ValidationError("loop_detuning_for_coupling: coupling must be > 0");
    }
    return 8.0 * trap.eta * coupling * coupling / encoding.omega0;
}

double discrimination_residual(const LaserPair& lasers, const Encoding& encoding,
                               const TrapMode& trap, double delta_loop) {
    trap.validate();
    const StarkCoefficients c = stark_coefficients(lasers, encoding, 1.0);
    return std::abs(c.theta_up - c.theta_down) - delta_loop / (2.0 * trap.eta);
}

double ion_drive_phase(const LaserPair& lasers, const IonGeometry& geometry, int ion) {
    if (ion != 1 && ion != 2) {
        throw ValidationError("ion_drive_phase: ion index must be 1 or 2");
    }
    const double z0 = (ion == 1) ? geometry.z0_1 : geometry.z0_2;
    return lasers.phi_b - lasers.phi_a - lasers.dkz * z0;
}

double spacing_phase(const LaserPair& lasers, const IonGeometry& geometry) {
    double s = std::fmod(lasers.dkz * (geometry.z0_1 - geometry.z0_2), 2.0 * kPi);
    if (s < 0.0) {
        s += 2.0 * kPi;
    }
    return s;
}

bool spacing_is_anti_aligned(const LaserPair& lasers, const IonGeometry& geometry,
                             double tol) {
    return std::abs(spacing_phase(lasers, geometry) - kPi) <= tol;
}

complexd branch_force(Spin m1, Spin m2, const StarkCoefficients& coeffs,
                      const TrapMode& trap, const LaserPair& lasers,
                      const IonGeometry& geometry) {
    geometry.validate();
    if (!spacing_is_anti_aligned(lasers, geometry)) {
        std::ostringstream os;
        os << "branch_force: ion spacing phase " << spacing_phase(lasers, geometry)
           << " rad is not an odd multiple of pi";
        throw GeometryError(os.str());
    }
    const complexd phase = std::exp(-kI * ion_drive_phase(lasers, geometry, 1));
    return kI * (coeffs.theta(m1) - coeffs.theta(m2)) * trap.eta * phase;
}

complexd branch_force_general(Spin m1, Spin m2, const StarkCoefficients& coeffs,
                              const TrapMode& trap, const LaserPair& lasers,
                              const IonGeometry& geometry) {
    geometry.validate();
    const complexd p1 = std::exp(-kI * ion_drive_phase(lasers, geometry, 1));
    const complexd p2 = std::exp(-kI * ion_drive_phase(lasers, geometry, 2));
    return kI * trap.eta * (coeffs.theta(m1) * p1 + coeffs.theta(m2) * p2);
}

double predicted_loop_phase(complexd force, double delta_loop, int n_loops) {
    if (!(delta_loop > 0.0)) {
        throw ValidationError("predicted_loop_phase: delta_loop must be > 0");
    }
    return 2.0 * kPi * n_loops * std::norm(force / delta_loop);
}

ValidityReport validity_report(const GateDesign& design, double n_bar, double threshold) {
    design.encoding.validate();
    design.trap.validate();
    design.lasers.validate();
    if (n_bar < 0.0) {
        throw ValidationError("validity_report: n_bar must be >= 0");
    }
    if (!(threshold > 0.0)) {
        throw ValidationError("validity_report: threshold must be > 0");
    }
    const double up_coupling =
        std::max(std::abs(design.lasers.g_a.up), std::abs(design.lasers.g_b.up));
    const double down_coupling =
        std::max(std::abs(design.lasers.g_a.down), std::abs(design.lasers.g_b.down));
    const StarkCoefficients c =
        stark_coefficients(design.lasers, design.encoding, design.pole_guard_margin);

    ValidityReport r;
    r.threshold = threshold;
    r.coupling_over_detuning_up = up_coupling / std::abs(design.lasers.delta_raman);
    r.coupling_over_detuning_down =
        down_coupling / std::abs(design.lasers.delta_raman - design.encoding.omega0);
    r.shift_over_mode_freq =
        std::max(std::abs(c.theta_up), std::abs(c.theta_down)) / design.trap.nu;
    r.lamb_dicke_sq = design.trap.eta * design.trap.eta * (n_bar + 0.5);
    return r;
}

double wrap_angle(double x) {
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

}  // namespace zgate
