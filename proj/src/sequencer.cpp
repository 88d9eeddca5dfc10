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

#include "zgate/sequencer.hpp"

#include <cmath>

#include "zgate/errors.hpp"

namespace zgate {

double EchoSequence::total_drive_time() const {
    double t = 0.0;
    for (const auto& seg : segments)
        if (seg.drive_on) t += seg.duration;
    return t;
}

void EchoSequence::validate() const {
    if (segments.empty()) throw ValidationError("echo sequence has no segments");
    for (const auto& seg : segments) {
        seg.design.validate();
        if (seg.duration <= 0.0) throw ValidationError("echo segment duration must be positive");
        if (seg.drive_on) {
            const double loop = 2.0 * kPi / seg.design.delta_loop;
            if (std::abs(seg.duration - loop) > 1e-9 * loop)
                throw ValidationError("drive segment duration must close the phase-space loop");
        }
    }
    for (const auto& p : pulses) {
        if (p.after_segment < 0 || p.after_segment >= int(segments.size()))
            throw ValidationError("pulse position outside the segment list");
        if (p.pulse.rows() != 4 || p.pulse.cols() != 4)
            throw ValidationError("pulse must act on the 4-dimensional qubit subspace");
        if (unitarity_defect(p.pulse) > 1e-12)
            throw ValidationError("pulse unitary defect exceeds 1e-12");
    }
}

Mat pulse_xx() {
    Mat x = Mat::Zero(2, 2);
    x(0, 1) = complexd(1.0, 0.0);
    x(1, 0) = complexd(1.0, 0.0);
    Mat xx = Mat::Zero(4, 4);
    for (int r1 = 0; r1 < 2; ++r1)
        for (int c1 = 0; c1 < 2; ++c1)
            for (int r2 = 0; r2 < 2; ++r2)
                for (int c2 = 0; c2 < 2; ++c2)
                    xx(r1 * 2 + r2, c1 * 2 + c2) = x(r1, c1) * x(r2, c2);
    return xx;
}

EchoSequence compose_echo(const GateDesign& design) {
    design.validate();
    if (design.n_loops != 1)
        throw ValidationError("echo composition expects a single-loop design (n_loops = 1)");

    // Raising the detuning by sqrt(2) at fixed coupling quarters the
    // per-loop phase (phase ~ delta^-2), so two loops restore half of the
    // plain single-loop phase budget on the swapped-population branches;
    // together with the swap the conditional phase comes out unchanged.
    GateDesign seg_design = design;
    seg_design.delta_loop = design.delta_loop * std::sqrt(2.0);
    const double seg_time = 2.0 * kPi / seg_design.delta_loop;

    EchoSequence seq;
    seq.segments.push_back(EchoSegment{seg_design, seg_time, true});
    seq.segments.push_back(EchoSegment{seg_design, seg_time, true});
    seq.pulses.push_back(PulseEvent{0, pulse_xx()});
    seq.pulses.push_back(PulseEvent{1, pulse_xx()});
    seq.validate();
    return seq;
}

QuantumState apply_pulse(const QuantumState& state, const Mat& pulse) {
    if (pulse.rows() != 4 || pulse.cols() != 4)
        throw ValidationError("pulse must be a 4x4 qubit-subspace unitary");
    if (unitarity_defect(pulse) > 1e-12)
        throw ValidationError("pulse unitary defect exceeds 1e-12");
    const auto& dims = state.dims;
    if (dims.n_factors() != 3 || dims.factor(0) != 2 || dims.factor(1) != 2)
        throw ValidationError("pulses act on states with dims [2, 2, n_max]");

    const int n = dims.factor(2);
    Vec out = Vec::Zero(state.amp.size());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (pulse(r, c) == complexd(0.0, 0.0)) continue;
            out.segment(r * n, n) += pulse(r, c) * state.amp.segment(c * n, n);
        }
    return QuantumState(dims, std::move(out));
}

}  // namespace zgate
