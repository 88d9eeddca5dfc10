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

#include "zgate/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "zgate/errors.hpp"

namespace zgate {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

struct StepRunOut {
    Vec final;
    long n_steps = 0;
    double dt = 0.0;
    double norm_error = 0.0;
    double max_edge = 0.0;
};

// One fixed-step pass. Samples are appended to `traj` (times are offset by
// `t_offset` so multi-segment schedules get a global clock).
StepRunOut step_run(const Generator& gen, const Vec& psi0, const PropagationSettings& s,
                    int spfp, Trajectory* traj, double t_offset) {
    const double duration = s.t_final;
    const double fastest = gen.fastest_angular_frequency();
    long nsteps;
    if (fastest > 0.0) {
        const double dt_target = (2.0 * kPi / fastest) / double(spfp);
        nsteps = long(std::ceil(duration / dt_target - 1e-12));
    } else {
        // Static generator: the midpoint exponential is exact per step, so
        // only the series convergence limits the step size.
        nsteps = long(std::ceil(gen.norm_bound() * duration / 0.5));
    }
    nsteps = std::max(nsteps, long(1));
    const double dt = duration / double(nsteps);

    long stride;
    if (s.record_stride > 0) stride = s.record_stride;
    else if (s.record_stride == 0) stride = std::max(long(1), nsteps / 1000);
    else stride = nsteps + 1;  // endpoints only

    const int n = gen.n_fock();
    const int spin = gen.spin_dim();

    Vec cur = psi0;
    Vec acc(cur.size()), term(cur.size()), hterm(cur.size());
    GenWorkspace ws = gen.make_workspace();
    Mat h;
    const bool assembled = gen.prefer_assembled();

    StepRunOut out;
    out.n_steps = nsteps;
    out.dt = dt;

    if (traj) {
        traj->times.push_back(t_offset);
        traj->states.emplace_back(gen.dims(), cur);
    }

    for (long k = 0; k < nsteps; ++k) {
        const double tm = (double(k) + 0.5) * dt;
        if (assembled) gen.assemble(tm, h, ws);
        acc = cur;
        term = cur;
        for (int j = 1;; ++j) {
            if (j > 64)
                throw PropagationError(
                    "matrix-exponential series did not converge; increase "
                    "steps_per_fastest_period");
            if (assembled) hterm.noalias() = h * term;
            else gen.apply(tm, term, hterm, ws);
            term = hterm * (complexd(0.0, -dt) / double(j));
            acc += term;
            if (term.squaredNorm() < 1e-32) break;
        }
        cur.swap(acc);

        double edge = 0.0;
        for (int sidx = 0; sidx < spin; ++sidx) {
            edge += std::norm(cur(sidx * n + n - 1));
            if (n >= 2) edge += std::norm(cur(sidx * n + n - 2));
        }
        out.max_edge = std::max(out.max_edge, edge);
        if (edge > s.truncation_guard) {
            const int suggested = n + std::max(4, n / 2);
            throw TruncationError(
                "Fock edge population " + format_double(edge) + " exceeds the truncation guard " +
                    format_double(s.truncation_guard) + " at t = " +
                    format_double(double(k + 1) * dt) + " s; rerun with n_max >= " +
                    std::to_string(suggested),
                suggested);
        }

        if (traj && (k + 1) % stride == 0 && k + 1 < nsteps) {
            traj->times.push_back(t_offset + double(k + 1) * dt);
            traj->states.emplace_back(gen.dims(), cur);
        }
    }

    if (traj) {
        traj->times.push_back(t_offset + duration);
        traj->states.emplace_back(gen.dims(), cur);
    }

    out.norm_error = std::abs(cur.norm() - 1.0);
    out.final = std::move(cur);
    return out;
}

}  // namespace

void PropagationSettings::validate() const {
    if (!(t_final > 0.0)) throw ValidationError("t_final must be positive");
    if (steps_per_fastest_period < 16)
        throw ValidationError("steps_per_fastest_period must be at least 16");
    if (convergence_tol <= 0.0) throw ValidationError("convergence_tol must be positive");
    if (truncation_guard <= 0.0) throw ValidationError("truncation_guard must be positive");
}

Trajectory propagate(const Generator& gen, const QuantumState& initial,
                     const PropagationSettings& settings, PropagationStats* stats) {
    settings.validate();
    if (!(initial.dims == gen.dims()))
        throw ValidationError("initial state dimensions do not match the generator");

    Trajectory traj;
    StepRunOut out;
    double conv_err = 0.0;
    if (settings.convergence_check) {
        StepRunOut coarse =
            step_run(gen, initial.amp, settings, settings.steps_per_fastest_period, nullptr, 0.0);
        out = step_run(gen, initial.amp, settings, 2 * settings.steps_per_fastest_period, &traj,
                       0.0);
        conv_err = (coarse.final - out.final).norm();
        if (conv_err >= settings.convergence_tol)
            throw PropagationError(
                "step-size convergence failure: state error " + format_double(conv_err) +
                " between runs at " + std::to_string(settings.steps_per_fastest_period) + " and " +
                std::to_string(2 * settings.steps_per_fastest_period) +
                " steps per period exceeds " + format_double(settings.convergence_tol));
    } else {
        out = step_run(gen, initial.amp, settings, settings.steps_per_fastest_period, &traj, 0.0);
    }

    if (stats) {
        stats->n_steps = out.n_steps;
        stats->dt = out.dt;
        stats->norm_error = out.norm_error;
        stats->max_edge_population = out.max_edge;
        stats->convergence_error = conv_err;
    }
    return traj;
}

OscillatorPoint forced_oscillator_oracle(complexd f, double delta, double t) {
    if (delta == 0.0)
        throw SingularDetuningError("the forced-oscillator oracle requires a non-zero detuning");
    const complexd ratio = f / delta;
    OscillatorPoint p;
    p.alpha = -ratio * (std::polar(1.0, delta * t) - complexd(1.0, 0.0));
    p.phase = std::norm(ratio) * (delta * t - std::sin(delta * t));
    return p;
}

MotionalPrep MotionalPrep::ground() { return MotionalPrep{}; }

MotionalPrep MotionalPrep::thermal(double n_bar) {
    MotionalPrep p;
    p.kind = Kind::thermal;
    p.n_bar = n_bar;
    return p;
}

MotionalPrep MotionalPrep::coherent(complexd alpha) {
    MotionalPrep p;
    p.kind = Kind::coherent;
    p.alpha = alpha;
    return p;
}

namespace {

struct Component {
    double weight = 1.0;
    Vec mot;          // motional amplitude vector, unit norm
    complexd alpha0;  // <a> of the preparation
    double n0 = 0.0;  // <n> of the preparation
};

std::vector<Component> motional_components(const MotionalPrep& prep, int n_max) {
    std::vector<Component> comps;
    switch (prep.kind) {
        case MotionalPrep::Kind::ground: {
            Component c;
            c.mot = Vec::Zero(n_max);
            c.mot(0) = complexd(1.0, 0.0);
            comps.push_back(std::move(c));
            break;
        }
        case MotionalPrep::Kind::thermal: {
            if (prep.n_bar < 0.0) throw ValidationError("thermal n_bar must be non-negative");
            if (prep.n_bar > 2.0)
                throw ValidationError("thermal preparation supports n_bar <= 2");
            if (prep.n_bar == 0.0) return motional_components(MotionalPrep::ground(), n_max);
            const double r = prep.n_bar / (1.0 + prep.n_bar);
            double cum = 0.0;
            int k = 0;
            for (; k <= std::min(64, n_max - 3); ++k) {
                const double p = std::pow(r, k) / (1.0 + prep.n_bar);
                Component c;
                c.weight = p;
                c.mot = Vec::Zero(n_max);
                c.mot(k) = complexd(1.0, 0.0);
                c.n0 = double(k);
                comps.push_back(std::move(c));
                cum += p;
                if (1.0 - cum < 1e-6) break;
            }
            if (1.0 - cum >= 1e-6)
                throw ValidationError(
                    "n_max too small to hold the thermal mixture; increase n_max");
            for (auto& c : comps) c.weight /= cum;
            break;
        }
        case MotionalPrep::Kind::coherent: {
            Component c;
            c.mot = coherent_state(prep.alpha, n_max).amp;
            c.alpha0 = prep.alpha;
            c.n0 = std::norm(prep.alpha);
            comps.push_back(std::move(c));
            break;
        }
    }
    return comps;
}

// <a> and <n> on the composite state (Fock factor last), without
// materializing operators. Returns raw sums; divide by the squared norm.
void motional_moments(const Vec& psi, int spin, int n, complexd* a_sum, double* n_sum) {
    complexd a{0.0, 0.0};
    double nn = 0.0;
    for (int s = 0; s < spin; ++s) {
        const int off = s * n;
        for (int k = 0; k + 1 < n; ++k)
            a += std::conj(psi(off + k)) * std::sqrt(double(k + 1)) * psi(off + k + 1);
        for (int k = 1; k < n; ++k) nn += double(k) * std::norm(psi(off + k));
    }
    *a_sum = a;
    *n_sum = nn;
}

struct EvolveOut {
    Vec final;
    Trajectory traj;
    PropagationStats stats;
    double worst_segment_residual = 0.0;
};

// Runs one input vector through the schedule: either the plain design (one
// drive segment) or an echo sequence with its pulses.
EvolveOut evolve_input(const std::vector<const Generator*>& seg_gens,
                       const std::vector<double>& seg_durations,
                       const std::vector<std::pair<int, const Mat*>>& pulses,
                       const PropagationSettings& base, const Vec& psi0, bool want_traj,
                       complexd alpha_ref) {
    EvolveOut out;
    Vec cur = psi0;
    double clock = 0.0;
    const int n = seg_gens[0]->n_fock();
    const int spin = seg_gens[0]->spin_dim();

    for (size_t seg = 0; seg < seg_gens.size(); ++seg) {
        const Generator& gen = *seg_gens[seg];
        PropagationSettings s = base;
        s.t_final = seg_durations[seg];
        if (!want_traj) s.record_stride = -1;

        Trajectory seg_traj;
        StepRunOut raw;
        double conv_err = 0.0;
        if (s.convergence_check) {
            StepRunOut coarse =
                step_run(gen, cur, s, s.steps_per_fastest_period, nullptr, clock);
            raw = step_run(gen, cur, s, 2 * s.steps_per_fastest_period,
                           want_traj ? &seg_traj : nullptr, clock);
            conv_err = (coarse.final - raw.final).norm();
            if (conv_err >= s.convergence_tol)
                throw PropagationError(
                    "step-size convergence failure: state error " + format_double(conv_err) +
                    " exceeds " + format_double(s.convergence_tol) +
                    "; increase steps_per_fastest_period");
        } else {
            raw = step_run(gen, cur, s, s.steps_per_fastest_period,
                           want_traj ? &seg_traj : nullptr, clock);
        }
        cur = std::move(raw.final);
        clock += seg_durations[seg];

        complexd a_sum;
        double n_sum;
        motional_moments(cur, spin, n, &a_sum, &n_sum);
        const double nrm2 = cur.squaredNorm();
        out.worst_segment_residual =
            std::max(out.worst_segment_residual, std::abs(a_sum / nrm2 - alpha_ref));

        out.stats.n_steps += raw.n_steps;
        out.stats.dt = raw.dt;
        out.stats.norm_error = std::max(out.stats.norm_error, raw.norm_error);
        out.stats.max_edge_population = std::max(out.stats.max_edge_population, raw.max_edge);
        out.stats.convergence_error = std::max(out.stats.convergence_error, conv_err);

        for (auto& [after, pulse] : pulses) {
            if (after != int(seg)) continue;
            QuantumState pulsed =
                apply_pulse(QuantumState(seg_gens[seg]->dims(), std::move(cur)), *pulse);
            cur = std::move(pulsed.amp);
        }

        if (want_traj) {
            // Merge, dropping the duplicated boundary sample and reflecting
            // the pulse in the state kept at the boundary.
            size_t start = (seg == 0) ? 0 : 1;
            for (size_t i = start; i < seg_traj.times.size(); ++i) {
                out.traj.times.push_back(seg_traj.times[i]);
                out.traj.states.push_back(std::move(seg_traj.states[i]));
            }
            if (!out.traj.states.empty())
                out.traj.states.back() = QuantumState(seg_gens[seg]->dims(), cur);
        }
    }
    out.final = std::move(cur);
    return out;
}

const char* kBranchLabels[4] = {"uu", "ud", "du", "dd"};

}  // namespace

GateResult run_gate(const GateDesign& design, ModelTier tier, const GateRunSettings& settings,
                    const EchoSequence* sequence) {
    design.validate();
    if (settings.n_max < 4) throw ValidationError("n_max must be at least 4");
    if (sequence && tier == ModelTier::full)
        throw ValidationError("echo sequences require a two-level tier (force or effective)");
    if (sequence) sequence->validate();
    {
        // Durations come from the schedule; validate the remaining knobs.
        PropagationSettings probe = settings.prop;
        probe.t_final = 1.0;
        probe.validate();
    }

    const int n = settings.n_max;
    const bool three_level = (tier == ModelTier::full);
    const int per_ion = three_level ? 3 : 2;

    // Build generators: one for the plain schedule, or one per echo segment.
    std::vector<Generator> owned;
    std::vector<const Generator*> seg_gens;
    std::vector<double> seg_durations;
    std::vector<std::pair<int, const Mat*>> pulses;

    auto build = [&](const GateDesign& d) -> Generator {
        switch (tier) {
            case ModelTier::force: return build_force(d, n);
            case ModelTier::effective:
                return build_effective(d, n, d.include_static_stark);
            case ModelTier::full: return build_full(d, n);
        }
        throw ValidationError("unknown model tier");
    };

    if (sequence) {
        owned.reserve(sequence->segments.size());
        for (const auto& seg : sequence->segments) {
            owned.push_back(build(seg.design));
            seg_durations.push_back(seg.duration);
        }
        for (size_t i = 0; i < owned.size(); ++i) seg_gens.push_back(&owned[i]);
        for (const auto& p : sequence->pulses)
            pulses.emplace_back(p.after_segment, &p.pulse);
    } else {
        owned.push_back(build(design));
        seg_gens.push_back(&owned[0]);
        seg_durations.push_back(design.gate_time());
    }

    const SpaceDims& dims = seg_gens[0]->dims();
    const int spin = seg_gens[0]->spin_dim();

    GateResult result;
    result.tier = tier;
    for (double d : seg_durations) result.total_time += d;

    // Qubit branch -> composite spin index.
    auto spin_index = [&](int m1, int m2) { return m1 * per_ion + m2; };

    const auto comps = motional_components(settings.initial, n);

    complexd acc_branch[4] = {};
    complexd acc_cond{0.0, 0.0}, acc_b1{0.0, 0.0}, acc_b2{0.0, 0.0}, acc_glob{0.0, 0.0};
    Mat u_mixed = Mat::Zero(4, 4);
    Mat bell_rho = Mat::Zero(4, 4);

    for (size_t ci = 0; ci < comps.size(); ++ci) {
        const Component& comp = comps[ci];
        const bool want_traj = settings.record_trajectory && ci == 0;

        std::array<EvolveOut, 4> branch_out;
        std::array<Vec, 4> branch_init;
        for (int b = 0; b < 4; ++b) {
            const int s = spin_index(b / 2, b % 2);
            Vec psi0 = Vec::Zero(dims.total());
            psi0.segment(s * n, n) = comp.mot;
            branch_init[b] = psi0;
            branch_out[b] = evolve_input(seg_gens, seg_durations, pulses, settings.prop, psi0,
                                         want_traj, comp.alpha0);
        }

        double phases[4];
        for (int b = 0; b < 4; ++b) {
            const Vec& fin = branch_out[b].final;
            const complexd overlap = branch_init[b].dot(fin);
            phases[b] = std::arg(overlap);

            complexd a_sum;
            double n_sum;
            motional_moments(fin, spin, n, &a_sum, &n_sum);
            const double nrm2 = fin.squaredNorm();
            result.branch_residual[b] += comp.weight * std::abs(a_sum / nrm2 - comp.alpha0);
            result.branch_phonon_excess[b] += comp.weight * (n_sum / nrm2 - comp.n0);
            acc_branch[b] += comp.weight * std::polar(1.0, phases[b]);

            if (three_level) {
                double qubit_weight = 0.0;
                for (int m1 = 0; m1 < 2; ++m1)
                    for (int m2 = 0; m2 < 2; ++m2)
                        qubit_weight += fin.segment(spin_index(m1, m2) * n, n).squaredNorm();
                result.leakage = std::max(result.leakage, 1.0 - qubit_weight / nrm2);
            }

            for (int j = 0; j < 4; ++j) {
                const int sj = spin_index(j / 2, j % 2);
                u_mixed(j, b) += comp.weight * comp.mot.dot(fin.segment(sj * n, n));
            }

            result.stats.n_steps += branch_out[b].stats.n_steps;
            result.stats.dt = branch_out[b].stats.dt;
            result.stats.norm_error =
                std::max(result.stats.norm_error, branch_out[b].stats.norm_error);
            result.stats.max_edge_population = std::max(result.stats.max_edge_population,
                                                        branch_out[b].stats.max_edge_population);
            result.stats.convergence_error =
                std::max(result.stats.convergence_error, branch_out[b].stats.convergence_error);
            result.segment_max_residual =
                std::max(result.segment_max_residual, branch_out[b].worst_segment_residual);
        }

        acc_cond += comp.weight *
                    std::polar(1.0, (phases[1] + phases[2] - phases[0] - phases[3]) / 2.0);
        acc_b1 += comp.weight *
                  std::polar(1.0, (phases[0] + phases[1] - phases[2] - phases[3]) / 2.0);
        acc_b2 += comp.weight *
                  std::polar(1.0, (phases[0] - phases[1] + phases[2] - phases[3]) / 2.0);
        acc_glob += comp.weight *
                    std::polar(1.0, (phases[0] + phases[1] + phases[2] + phases[3]) / 4.0);

        if (settings.include_bell_input) {
            double in_norm2 = 0.0;
            for (const auto& c : settings.qubit_input) in_norm2 += std::norm(c);
            if (std::abs(in_norm2 - 1.0) > 1e-6)
                throw ValidationError("qubit_input must be unit norm");
            Vec psi0 = Vec::Zero(dims.total());
            for (int b = 0; b < 4; ++b)
                psi0.segment(spin_index(b / 2, b % 2) * n, n) =
                    settings.qubit_input[size_t(b)] * comp.mot;
            EvolveOut bell = evolve_input(seg_gens, seg_durations, pulses, settings.prop, psi0,
                                          false, comp.alpha0);
            // Keep the qubit sub-block (renormalized) and trace out motion.
            Vec restricted = Vec::Zero(4 * n);
            for (int b = 0; b < 4; ++b)
                restricted.segment(b * n, n) = bell.final.segment(spin_index(b / 2, b % 2) * n, n);
            const double w = restricted.norm();
            if (w > 0.0) restricted /= w;
            QuantumState qb(SpaceDims({2, 2, n}), std::move(restricted));
            bell_rho += comp.weight * partial_trace(qb, {0, 1});
            result.stats.n_steps += bell.stats.n_steps;
        }

        if (want_traj) {
            Trajectory& tr = result.trajectory;
            tr.times = branch_out[0].traj.times;
            tr.branch_labels.assign(kBranchLabels, kBranchLabels + 4);
            tr.branch_alpha.assign(4, {});
            tr.branch_phase.assign(4, {});
            tr.branch_n_mean.assign(4, {});
            tr.branch_norm_err.assign(4, {});
            for (int b = 0; b < 4; ++b) {
                const auto& states = branch_out[b].traj.states;
                for (const auto& st : states) {
                    complexd a_sum;
                    double n_sum;
                    motional_moments(st.amp, spin, n, &a_sum, &n_sum);
                    const double nrm2 = st.amp.squaredNorm();
                    tr.branch_alpha[b].push_back(a_sum / nrm2);
                    tr.branch_n_mean[b].push_back(n_sum / nrm2);
                    tr.branch_norm_err[b].push_back(std::abs(std::sqrt(nrm2) - 1.0));
                    tr.branch_phase[b].push_back(std::arg(branch_init[b].dot(st.amp)));
                }
            }
            result.has_trajectory = true;
        }
    }

    for (int b = 0; b < 4; ++b) result.branch_phase[b] = std::arg(acc_branch[b]);
    result.conditional_phase = std::arg(acc_cond);
    result.single_ion_phase_1 = std::arg(acc_b1);
    result.single_ion_phase_2 = std::arg(acc_b2);
    result.global_phase = std::arg(acc_glob);

    result.motional_residual = 0.0;
    for (int b = 0; b < 4; ++b)
        result.motional_residual = std::max(result.motional_residual, result.branch_residual[b]);
    result.loop_closed = result.motional_residual <= 0.01;

    result.qubit_propagator = u_mixed;
    result.propagator_defect = unitarity_defect(u_mixed);
    if (settings.include_bell_input) {
        result.has_bell = true;
        result.bell_rho = bell_rho;
    }
    return result;
}

}  // namespace zgate
