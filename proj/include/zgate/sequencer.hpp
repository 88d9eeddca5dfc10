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

// Multi-segment gate schedules. The echo scheme splits the gate into two
// closed loops at a raised detuning and swaps the qubit populations with an
// ideal pulse between and after the loops, so that slowly varying
// single-ion phase accumulation cancels while the conditional phase adds.

#pragma once

#include <vector>

#include "zgate/model.hpp"
#include "zgate/qcore.hpp"

namespace zgate {

struct EchoSegment {
    GateDesign design;       // segment drive; delta_loop is the segment detuning
    double duration = 0.0;   // = 2*pi / delta_loop for a closed loop
    bool drive_on = true;
};

// Instantaneous qubit-subspace unitary applied after segment `after_segment`
// (0-based). A pulse after the last segment restores populations.
struct PulseEvent {
    int after_segment = 0;
    Mat pulse;  // 4x4
};

struct EchoSequence {
    std::vector<EchoSegment> segments;
    std::vector<PulseEvent> pulses;

    double total_drive_time() const;
    void validate() const;  // closed segments, unitary pulses
};

// Population-swap pulse X (x) X on the qubit subspace.
Mat pulse_xx();

// Two closed loops at delta' = sqrt(2) * delta, each contributing a quarter
// of the plain gate's conditional phase budget per round trip, with X(x)X
// after each loop. Total drive time is sqrt(2) times the plain gate time.
// Requires n_loops = 1 in the input design.
EchoSequence compose_echo(const GateDesign& design);

// (pulse (x) identity_Fock) |state>, for dims [2, 2, n_max] only.
QuantumState apply_pulse(const QuantumState& state, const Mat& pulse);

}  // namespace zgate
