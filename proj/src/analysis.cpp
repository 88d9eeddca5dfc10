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

#include "zgate/analysis.hpp"

#include <cmath>
#include <cstdio>

#include "zgate/errors.hpp"
#include "zgate/model.hpp"

namespace zgate {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

// F(b1, b2) reduces to |sum_j d_j(b1, b2) g_j|^2 / 16 with g = diag(sim ref^dag)
// because the compensation is diagonal; this makes the grid search O(1) per
// point. sign[j] = (s1, s2) eigenvalues of sigma_z for branch j.
struct DiagObjective {
    std::array<complexd, 4> g;

    double operator()(double b1, double b2) const {
        complexd tr{0.0, 0.0};
        static const double s1[4] = {1.0, 1.0, -1.0, -1.0};
        static const double s2[4] = {1.0, -1.0, 1.0, -1.0};
        for (int j = 0; j < 4; ++j)
            tr += std::polar(1.0, -0.5 * (s1[j] * b1 + s2[j] * b2)) * g[size_t(j)];
        return std::norm(tr) / 16.0;
    }
};

}  // namespace

Mat ideal_gate() {
    Mat u = Mat::Zero(4, 4);
    u(0, 0) = complexd(1.0, 0.0);
    u(1, 1) = complexd(0.0, 1.0);
    u(2, 2) = complexd(0.0, 1.0);
    u(3, 3) = complexd(1.0, 0.0);
    return u;
}

Mat z_rotation(double beta) {
    Mat z = Mat::Zero(2, 2);
    z(0, 0) = std::polar(1.0, -0.5 * beta);
    z(1, 1) = std::polar(1.0, 0.5 * beta);
    return z;
}

double conditional_phase(const GateResult& result) {
    if (!result.loop_closed)
        throw ValidationError(
            "conditional phase undefined: motional loop not closed (residual " +
            format_double(result.motional_residual) +
            "); rerun with a closed schedule or report branch phases directly");
    return result.conditional_phase;
}

ZCompOutcome z_compensated_process_fidelity(const Mat& u_sim, const Mat& u_ref,
                                            double unitarity_tol) {
    if (u_sim.rows() != 4 || u_sim.cols() != 4 || u_ref.rows() != 4 || u_ref.cols() != 4)
        throw ValidationError("process fidelity expects 4x4 propagators");
    const double defect = unitarity_defect(u_sim);
    if (defect > unitarity_tol)
        throw ValidationError("propagator unitarity defect " + format_double(defect) +
                              " exceeds tolerance " + format_double(unitarity_tol));

    const Mat prod = u_sim * u_ref.adjoint();
    DiagObjective f;
    for (int j = 0; j < 4; ++j) f.g[size_t(j)] = prod(j, j);

    ZCompOutcome out;
    out.raw = std::min(std::norm((u_ref.adjoint() * u_sim).trace()) / 16.0, 1.0);

    // Coarse pass over the full torus; the k = 32 node hits (0, 0) exactly,
    // so the compensated value can never undercut the raw one.
    double best = -1.0, b1 = 0.0, b2 = 0.0;
    const int coarse = 64;
    for (int i = 0; i < coarse; ++i) {
        const double x = -kPi + 2.0 * kPi * double(i) / double(coarse);
        for (int j = 0; j < coarse; ++j) {
            const double y = -kPi + 2.0 * kPi * double(j) / double(coarse);
            const double v = f(x, y);
            if (v > best) {
                best = v;
                b1 = x;
                b2 = y;
            }
        }
    }
    const double coarse_best = best;

    // Local zoom: 17x17 windows shrinking by 4x per round down to ~1e-8 in
    // the angles. The objective is a smooth trigonometric polynomial, so the
    // maximum stays inside the shrinking window.
    double w = 2.0 * kPi / double(coarse);
    for (int round = 0; round < 13; ++round) {
        const double cx = b1, cy = b2;
        for (int i = -8; i <= 8; ++i) {
            for (int j = -8; j <= 8; ++j) {
                const double x = cx + w * double(i) / 8.0;
                const double y = cy + w * double(j) / 8.0;
                const double v = f(x, y);
                if (v > best) {
                    best = v;
                    b1 = x;
                    b2 = y;
                }
            }
        }
        w /= 4.0;
    }

    if (!std::isfinite(best) || best < coarse_best) {
        out.grid_fallback = true;
        best = coarse_best;
    }
    out.compensated = std::min(best, 1.0);
    out.beta1 = wrap_angle(b1);
    out.beta2 = wrap_angle(b2);
    return out;
}

double bell_test(const GateResult& result) {
    if (!result.has_bell)
        throw ValidationError("no product-input run available; enable include_bell_input");
    return concurrence(result.bell_rho);
}

FidelityReport fidelity_report(const GateResult& result, double unitarity_tol) {
    FidelityReport rep;
    const ZCompOutcome z =
        z_compensated_process_fidelity(result.qubit_propagator, ideal_gate(), unitarity_tol);
    rep.process_fidelity_raw = z.raw;
    rep.process_fidelity_z_compensated = z.compensated;
    rep.optimal_z_angles = {z.beta1, z.beta2};
    rep.grid_fallback = z.grid_fallback;
    rep.bell_concurrence = result.has_bell ? bell_test(result) : 0.0;
    rep.conditional_phase_error = wrap_angle(result.conditional_phase - kPi / 2.0);
    return rep;
}

}  // namespace zgate
