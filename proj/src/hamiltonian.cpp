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

#include "zgate/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include <Eigen/Eigenvalues>

#include "zgate/errors.hpp"

namespace zgate {

namespace {

Vec ladder_coefficients(int n_max) {
    Vec c(n_max - 1);
    for (int k = 0; k + 1 < n_max; ++k) c(k) = std::sqrt(double(k + 1));
    return c;
}

// y_seg += scale * F x_seg for one structured Fock block, rotation already
// folded into `scale` (ladder kinds) or into `block` (dense kind).
void apply_block(const FockOp& op, complexd scale, const Vec& x, int x_off, Vec& y, int y_off,
                 int n, const Mat* block, Vec& tmp) {
    switch (op.kind) {
        case FockOp::Kind::identity:
            y.segment(y_off, n) += scale * x.segment(x_off, n);
            break;
        case FockOp::Kind::diagonal:
            y.segment(y_off, n).array() += scale * op.coef.array() * x.segment(x_off, n).array();
            break;
        case FockOp::Kind::raise:
            y.segment(y_off + 1, n - 1).array() +=
                scale * op.coef.array() * x.segment(x_off, n - 1).array();
            break;
        case FockOp::Kind::lower:
            y.segment(y_off, n - 1).array() +=
                scale * op.coef.array() * x.segment(x_off + 1, n - 1).array();
            break;
        case FockOp::Kind::dense:
            tmp.noalias() = (*block) * x.segment(x_off, n);
            y.segment(y_off, n) += scale * tmp;
            break;
    }
}

// Same contract for the adjoint block.
void apply_block_adjoint(const FockOp& op, complexd scale, const Vec& x, int x_off, Vec& y,
                         int y_off, int n, const Mat* block_adj, Vec& tmp) {
    switch (op.kind) {
        case FockOp::Kind::identity:
            y.segment(y_off, n) += scale * x.segment(x_off, n);
            break;
        case FockOp::Kind::diagonal:
            y.segment(y_off, n).array() +=
                scale * op.coef.array().conjugate() * x.segment(x_off, n).array();
            break;
        case FockOp::Kind::raise:  // adjoint of raise lowers
            y.segment(y_off, n - 1).array() +=
                scale * op.coef.array().conjugate() * x.segment(x_off + 1, n - 1).array();
            break;
        case FockOp::Kind::lower:  // adjoint of lower raises
            y.segment(y_off + 1, n - 1).array() +=
                scale * op.coef.array().conjugate() * x.segment(x_off, n - 1).array();
            break;
        case FockOp::Kind::dense:
            tmp.noalias() = (*block_adj) * x.segment(x_off, n);
            y.segment(y_off, n) += scale * tmp;
            break;
    }
}

}  // namespace

std::string to_string(ModelTier tier) {
    switch (tier) {
        case ModelTier::force: return "force";
        case ModelTier::effective: return "effective";
        case ModelTier::full: return "full";
    }
    return "unknown";
}

ModelTier tier_from_string(const std::string& name) {
    if (name == "force") return ModelTier::force;
    if (name == "effective") return ModelTier::effective;
    if (name == "full") return ModelTier::full;
    throw ConfigError("unknown model tier '" + name + "' (expected force, effective or full)");
}

FockOp FockOp::identity() { return FockOp{}; }

FockOp FockOp::diagonal(Vec d) {
    FockOp op;
    op.kind = Kind::diagonal;
    op.coef = std::move(d);
    return op;
}

FockOp FockOp::raise(Vec c) {
    FockOp op;
    op.kind = Kind::raise;
    op.coef = std::move(c);
    return op;
}

FockOp FockOp::lower(Vec c) {
    FockOp op;
    op.kind = Kind::lower;
    op.coef = std::move(c);
    return op;
}

Generator::Generator(SpaceDims dims, double nu, double fastest)
    : dims_(std::move(dims)),
      n_fock_(dims_.factor(dims_.n_factors() - 1)),
      spin_dim_(dims_.total() / dims_.factor(dims_.n_factors() - 1)),
      nu_(nu),
      fastest_(fastest) {
    if (n_fock_ < 2) throw ValidationError("generator needs at least 2 Fock levels");
    if (fastest_ < 0.0 || nu_ < 0.0)
        throw ValidationError("generator frequencies must be non-negative");
}

void Generator::set_static_diagonal(Vec diag_real) {
    if (diag_real.size() != dims_.total())
        throw ValidationError("static diagonal size does not match the state space");
    for (int i = 0; i < diag_real.size(); ++i) {
        if (std::abs(diag_real(i).imag()) > 0.0)
            throw ValidationError("static diagonal must be real for a hermitian generator");
    }
    static_diag_ = std::move(diag_real);
}

int Generator::add_dense_block(Mat block) {
    if (block.rows() != n_fock_ || block.cols() != n_fock_)
        throw ValidationError("dense Fock block has the wrong size");
    dense_pool_adj_.push_back(block.adjoint());
    dense_pool_.push_back(std::move(block));
    prefer_assembled_ = true;
    return int(dense_pool_.size()) - 1;
}

void Generator::add_term(HamTerm term) {
    if (term.spin.empty()) throw ValidationError("term has no spin entries");
    for (const auto& e : term.spin) {
        if (e.row < 0 || e.row >= spin_dim_ || e.col < 0 || e.col >= spin_dim_)
            throw ValidationError("term spin entry out of range");
    }
    const auto k = term.fock.kind;
    if (k == FockOp::Kind::diagonal && term.fock.coef.size() != n_fock_)
        throw ValidationError("diagonal Fock block has the wrong size");
    if ((k == FockOp::Kind::raise || k == FockOp::Kind::lower) &&
        term.fock.coef.size() != n_fock_ - 1)
        throw ValidationError("ladder Fock block has the wrong size");
    if (k == FockOp::Kind::dense &&
        (term.fock.dense_index < 0 || term.fock.dense_index >= int(dense_pool_.size())))
        throw ValidationError("dense Fock block index out of range");
    terms_.push_back(std::move(term));
}

GenWorkspace Generator::make_workspace() const {
    GenWorkspace ws;
    ws.fock_phase = Vec::Zero(n_fock_);
    ws.tmp = Vec::Zero(n_fock_);
    ws.rotated.resize(dense_pool_.size());
    ws.rotated_adj.resize(dense_pool_.size());
    return ws;
}

void Generator::refresh_rotations(double t, GenWorkspace& ws) const {
    if (dense_pool_.empty()) return;
    const bool already = !ws.rotated.empty() && ws.rotated[0].size() > 0;
    if (nu_ == 0.0) {
        if (already) return;  // rotation is the identity, one copy suffices
        for (size_t p = 0; p < dense_pool_.size(); ++p) {
            ws.rotated[p] = dense_pool_[p];
            ws.rotated_adj[p] = dense_pool_adj_[p];
        }
        return;
    }
    if (ws.pool_t == t && already) return;
    Vec ph(n_fock_);
    for (int k = 0; k < n_fock_; ++k) ph(k) = std::polar(1.0, nu_ * t * double(k));
    for (size_t p = 0; p < dense_pool_.size(); ++p) {
        ws.rotated[p].resize(n_fock_, n_fock_);
        for (int c = 0; c < n_fock_; ++c)
            for (int r = 0; r < n_fock_; ++r)
                ws.rotated[p](r, c) = ph(r) * dense_pool_[p](r, c) * std::conj(ph(c));
        ws.rotated_adj[p] = ws.rotated[p].adjoint();
    }
    ws.pool_t = t;
}

void Generator::apply(double t, const Vec& x, Vec& y, GenWorkspace& ws) const {
    const int total = int(dims_.total());
    if (x.size() != total) throw ValidationError("apply: state size mismatch");
    y.resize(total);
    y.setZero();
    if (static_diag_.size() > 0) y.array() = static_diag_.array() * x.array();

    refresh_rotations(t, ws);
    const complexd rot_up = std::polar(1.0, nu_ * t);
    const complexd rot_dn = std::conj(rot_up);

    for (const auto& term : terms_) {
        const complexd c = term.amp * std::polar(1.0, term.freq * t);
        complexd fwd = c;
        complexd bwd = std::conj(c);
        if (term.fock.rotate) {
            if (term.fock.kind == FockOp::Kind::raise) {
                fwd *= rot_up;
                bwd *= rot_dn;
            } else if (term.fock.kind == FockOp::Kind::lower) {
                fwd *= rot_dn;
                bwd *= rot_up;
            }
        }
        const Mat* blk = nullptr;
        const Mat* blk_adj = nullptr;
        if (term.fock.kind == FockOp::Kind::dense) {
            if (term.fock.rotate) {
                blk = &ws.rotated[term.fock.dense_index];
                blk_adj = &ws.rotated_adj[term.fock.dense_index];
            } else {
                blk = &dense_pool_[term.fock.dense_index];
                blk_adj = &dense_pool_adj_[term.fock.dense_index];
            }
        }
        for (const auto& e : term.spin) {
            apply_block(term.fock, fwd * e.weight, x, e.col * n_fock_, y, e.row * n_fock_,
                        n_fock_, blk, ws.tmp);
            apply_block_adjoint(term.fock, bwd * std::conj(e.weight), x, e.row * n_fock_, y,
                                e.col * n_fock_, n_fock_, blk_adj, ws.tmp);
        }
    }
}

void Generator::assemble(double t, Mat& h, GenWorkspace& ws) const {
    const int total = int(dims_.total());
    h.resize(total, total);
    h.setZero();
    if (static_diag_.size() > 0) h.diagonal() = static_diag_;

    refresh_rotations(t, ws);
    const complexd rot_up = std::polar(1.0, nu_ * t);
    const complexd rot_dn = std::conj(rot_up);

    for (const auto& term : terms_) {
        const complexd c = term.amp * std::polar(1.0, term.freq * t);
        for (const auto& e : term.spin) {
            const int r0 = e.row * n_fock_;
            const int c0 = e.col * n_fock_;
            const complexd w = c * e.weight;
            switch (term.fock.kind) {
                case FockOp::Kind::identity:
                    h.block(r0, c0, n_fock_, n_fock_).diagonal().array() += w;
                    break;
                case FockOp::Kind::diagonal:
                    h.block(r0, c0, n_fock_, n_fock_).diagonal() += w * term.fock.coef;
                    break;
                case FockOp::Kind::raise: {
                    complexd s = w;
                    if (term.fock.rotate) s *= rot_up;
                    for (int k = 0; k + 1 < n_fock_; ++k)
                        h(r0 + k + 1, c0 + k) += s * term.fock.coef(k);
                    break;
                }
                case FockOp::Kind::lower: {
                    complexd s = w;
                    if (term.fock.rotate) s *= rot_dn;
                    for (int k = 0; k + 1 < n_fock_; ++k)
                        h(r0 + k, c0 + k + 1) += s * term.fock.coef(k);
                    break;
                }
                case FockOp::Kind::dense: {
                    const Mat& blk = term.fock.rotate ? ws.rotated[term.fock.dense_index]
                                                      : dense_pool_[term.fock.dense_index];
                    h.block(r0, c0, n_fock_, n_fock_) += w * blk;
                    break;
                }
            }
        }
    }
    // Fill in the hermitian conjugate of the oscillating part.
    Mat osc = h;
    if (static_diag_.size() > 0) osc.diagonal() -= static_diag_;
    h += osc.adjoint();
}

Mat Generator::matrix(double t) const {
    GenWorkspace ws = make_workspace();
    Mat h;
    assemble(t, h, ws);
    return h;
}

double Generator::norm_bound() const {
    double bound = 0.0;
    if (static_diag_.size() > 0) bound += static_diag_.array().abs().maxCoeff();
    for (const auto& term : terms_) {
        double entry_sum = 0.0;
        for (const auto& e : term.spin) entry_sum += std::abs(e.weight);
        double fock_norm = 1.0;
        switch (term.fock.kind) {
            case FockOp::Kind::identity: fock_norm = 1.0; break;
            case FockOp::Kind::diagonal:
            case FockOp::Kind::raise:
            case FockOp::Kind::lower:
                fock_norm = term.fock.coef.array().abs().maxCoeff();
                break;
            case FockOp::Kind::dense:
                fock_norm = dense_pool_[term.fock.dense_index].operatorNorm();
                break;
        }
        bound += 2.0 * std::abs(term.amp) * entry_sum * fock_norm;
    }
    return bound;
}

Mat displacement_exponential(double k, int n_max) {
    if (n_max < 2) throw ValidationError("displacement needs at least 2 Fock levels");
    Mat x = Mat::Zero(n_max, n_max);
    for (int j = 0; j + 1 < n_max; ++j) {
        const double v = std::sqrt(double(j + 1));
        x(j + 1, j) = v;
        x(j, j + 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    if (es.info() != Eigen::Success)
        throw ValidationError("displacement eigendecomposition failed");
    Vec expvals(n_max);
    for (int j = 0; j < n_max; ++j)
        expvals(j) = std::polar(1.0, k * es.eigenvalues()(j));
    return es.eigenvectors() * expvals.asDiagonal() * es.eigenvectors().adjoint();
}

// --- tier builders ----------------------------------------------------------

Generator build_force(const GateDesign& design, int n_max) {
    design.validate();
    if (n_max < 2) throw ValidationError("n_max must be at least 2");
    SpaceDims dims({2, 2, n_max});
    if (dims.total() > kMaxTotalDim) throw ValidationError("state space too large");

    const StarkCoefficients sc =
        stark_coefficients(design.lasers, design.encoding, design.pole_guard_margin);
    Generator gen(dims, 0.0, design.delta_loop);

    const Vec ladder = ladder_coefficients(n_max);
    const Spin branch_levels[2] = {Spin::up, Spin::down};
    for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
            const complexd f = branch_force(sc, design.lasers, design.geometry, design.trap,
                                            branch_levels[b1], branch_levels[b2]);
            if (std::abs(f) == 0.0) continue;
            HamTerm term;
            term.amp = f;
            term.freq = design.delta_loop;
            term.spin = {SpinEntry{b1 * 2 + b2, b1 * 2 + b2, complexd(1.0, 0.0)}};
            term.fock = FockOp::raise(ladder);
            gen.add_term(std::move(term));
        }
    }
    return gen;
}

Generator build_effective(const GateDesign& design, int n_max, bool include_static_stark) {
    design.validate();
    if (n_max < 2) throw ValidationError("n_max must be at least 2");
    SpaceDims dims({2, 2, n_max});
    if (dims.total() > kMaxTotalDim) throw ValidationError("state space too large");

    const StarkCoefficients sc =
        stark_coefficients(design.lasers, design.encoding, design.pole_guard_margin);
    Generator gen(dims, 0.0, std::max(design.trap.nu, design.delta_loop));

    const Vec ladder = ladder_coefficients(n_max);
    const Spin levels[2] = {Spin::up, Spin::down};
    // Sideband force, one term per (ion, level): the level projector on that
    // ion times i theta eta e^{-i phi_ion} a^dag e^{i delta t}.
    for (int ion = 1; ion <= 2; ++ion) {
        const double phi = ion_drive_phase(design.lasers, design.geometry, ion);
        for (int m = 0; m < 2; ++m) {
            const complexd amp = kI * sc.theta(levels[m]) * design.trap.eta *
                                 std::polar(1.0, -phi);
            if (std::abs(amp) == 0.0) continue;
            HamTerm term;
            term.amp = amp;
            term.freq = design.delta_loop;
            term.fock = FockOp::raise(ladder);
            if (ion == 1) {
                term.spin = {SpinEntry{m * 2 + 0, m * 2 + 0, complexd(1.0, 0.0)},
                             SpinEntry{m * 2 + 1, m * 2 + 1, complexd(1.0, 0.0)}};
            } else {
                term.spin = {SpinEntry{0 * 2 + m, 0 * 2 + m, complexd(1.0, 0.0)},
                             SpinEntry{1 * 2 + m, 1 * 2 + m, complexd(1.0, 0.0)}};
            }
            gen.add_term(std::move(term));
        }
    }

    if (include_static_stark) {
        Vec diag = Vec::Zero(dims.total());
        for (int s1 = 0; s1 < 2; ++s1) {
            for (int s2 = 0; s2 < 2; ++s2) {
                const double shift = sc.chi(levels[s1]) + sc.chi(levels[s2]);
                for (int k = 0; k < n_max; ++k)
                    diag((s1 * 2 + s2) * n_max + k) = complexd(shift, 0.0);
            }
        }
        gen.set_static_diagonal(std::move(diag));
    }
    return gen;
}

Generator build_full(const GateDesign& design, int n_max) {
    design.validate();
    if (n_max < 2) throw ValidationError("n_max must be at least 2");
    SpaceDims dims({3, 3, n_max});
    if (dims.total() > kMaxTotalDim) throw ValidationError("state space too large");

    const double delta = design.lasers.delta_raman;
    const double omega0 = design.encoding.omega0;
    const double beat = design.trap.nu - design.delta_loop;  // beam frequency difference
    const double fastest =
        std::max({std::abs(delta), std::abs(delta - omega0), std::abs(delta - beat),
                  std::abs(delta - omega0 - beat), design.trap.nu, design.delta_loop});
    Generator gen(dims, design.trap.nu, fastest);

    const int disp = gen.add_dense_block(displacement_exponential(design.trap.eta, n_max));

    struct BeamSpec {
        complexd g_up, g_down;
        double phi;
        double kz;      // longitudinal wave-vector component
        bool displaced; // carries the motional exponential
        double det_up;  // rotating-frame frequency of the up coupling
    };
    const BeamSpec beams[2] = {
        // Beam A: resonant-side tone, normal incidence (no motional kick).
        {design.lasers.g_a.up, design.lasers.g_a.down, design.lasers.phi_a, 0.0, false,
         delta - beat},
        // Beam B: detuned tone, carries the full wave-vector difference.
        {design.lasers.g_b.up, design.lasers.g_b.down, design.lasers.phi_b,
         design.lasers.dkz, true, delta},
    };

    const double z0[2] = {design.geometry.z0_1, design.geometry.z0_2};
    for (int ion = 0; ion < 2; ++ion) {
        for (const auto& beam : beams) {
            for (int m = 0; m < 2; ++m) {
                const complexd g = (m == 0) ? beam.g_up : beam.g_down;
                if (std::abs(g) == 0.0) continue;
                const double det = beam.det_up - (m == 1 ? omega0 : 0.0);
                HamTerm term;
                term.amp = g * std::polar(1.0, beam.kz * z0[ion] - beam.phi);
                term.freq = -det;  // e^{-i det t} |e><m|
                if (beam.displaced) {
                    term.fock.kind = FockOp::Kind::dense;
                    term.fock.dense_index = disp;
                    term.fock.rotate = true;
                } else {
                    term.fock = FockOp::identity();
                }
                // |e><m| on this ion, identity on the other.
                term.spin.reserve(3);
                for (int other = 0; other < 3; ++other) {
                    int row, col;
                    if (ion == 0) {
                        row = 2 * 3 + other;
                        col = m * 3 + other;
                    } else {
                        row = other * 3 + 2;
                        col = other * 3 + m;
                    }
                    term.spin.push_back(SpinEntry{row, col, complexd(1.0, 0.0)});
                }
                gen.add_term(std::move(term));
            }
        }
    }
    return gen;
}

}  // namespace zgate
