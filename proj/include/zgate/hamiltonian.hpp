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

// Time-dependent Hamiltonian generators for the three model tiers.
//
// Every generator is a sum of terms
//     amp * e^{i freq t} * (spin block) x (Fock block)   + hermitian conj.
// plus an optional real static diagonal, so H(t) is hermitian by
// construction at every t. The spin block is a sparse list of entries on
// the composite internal space; the Fock block is one of a few structured
// kinds so that applying H to a vector never materializes the matrix
// unless asked to.
//
// Tiers:
//   force      dims [2, 2, n_max]; one spin-dependent drive per branch,
//              f_b (a^dag e^{i delta t} + h.c. pattern); exact abstraction
//              of the closed phase-space loop.
//   effective  dims [2, 2, n_max]; per-ion second-order model: static
//              light shifts chi_m plus the sideband force
//              i theta_m eta e^{-i phi_i} a^dag e^{i delta t} + h.c.
//   full       dims [3, 3, n_max]; the pre-elimination three-level model
//              with the exact motional displacement exponential. Frame:
//              interaction picture of the free internal energies and of
//              the mode (see docs/model.md), so the only oscillation
//              frequencies left are delta_raman, delta_raman - omega0,
//              nu and delta_loop combinations; optical frequencies are gone.

#pragma once

#include <limits>
#include <string>
#include <vector>

#include "zgate/model.hpp"
#include "zgate/qcore.hpp"

namespace zgate {

enum class ModelTier { force, effective, full };

std::string to_string(ModelTier tier);
ModelTier tier_from_string(const std::string& name);

// Structured operator on the Fock factor. `rotate` marks conjugation by
// R(t) = diag(e^{i nu t k}), the mode interaction picture: diagonal kinds
// are unaffected, ladder kinds pick up e^{+-i nu t}, dense blocks get the
// full phase pattern e^{i nu t (row - col)}.
struct FockOp {
    enum class Kind { identity, diagonal, raise, lower, dense };

    Kind kind = Kind::identity;
    Vec coef;             // diagonal values, or ladder coefficients (length n-1)
    int dense_index = -1; // into Generator::dense_pool
    bool rotate = false;

    static FockOp identity();
    static FockOp diagonal(Vec d);
    static FockOp raise(Vec c);   // maps |k> -> c_k |k+1>
    static FockOp lower(Vec c);   // maps |k+1> -> c_k |k>
};

struct SpinEntry {
    int row = 0;
    int col = 0;
    complexd weight{1.0, 0.0};
};

struct HamTerm {
    complexd amp{0.0, 0.0};
    double freq = 0.0;  // coefficient amp * e^{i freq t}
    std::vector<SpinEntry> spin;
    FockOp fock;
};

// Scratch owned by the caller so that concurrent propagations of one
// generator never share mutable state.
struct GenWorkspace {
    double phase_t = std::numeric_limits<double>::quiet_NaN();
    Vec fock_phase;              // e^{i nu t k}
    double pool_t = std::numeric_limits<double>::quiet_NaN();
    std::vector<Mat> rotated;    // frame-rotated dense pool entries
    std::vector<Mat> rotated_adj;
    Vec tmp;                     // Fock-sized scratch
};

class Generator {
  public:
    Generator(SpaceDims dims, double nu, double fastest);

    const SpaceDims& dims() const { return dims_; }
    int n_fock() const { return n_fock_; }
    int spin_dim() const { return spin_dim_; }
    double nu() const { return nu_; }
    double fastest_angular_frequency() const { return fastest_; }
    bool prefer_assembled() const { return prefer_assembled_; }

    // Real static diagonal added on top of the oscillating terms.
    void set_static_diagonal(Vec diag_real);
    // Registry for dense Fock blocks (returns pool index).
    int add_dense_block(Mat block);
    void add_term(HamTerm term);

    const std::vector<HamTerm>& terms() const { return terms_; }
    const Vec& static_diagonal() const { return static_diag_; }

    GenWorkspace make_workspace() const;

    // y = H(t) x, structured path (no matrix materialization).
    void apply(double t, const Vec& x, Vec& y, GenWorkspace& ws) const;
    // Dense H(t), written into h (resized as needed).
    void assemble(double t, Mat& h, GenWorkspace& ws) const;
    // Dense H(t) for tests and small problems.
    Mat matrix(double t) const;

    // Crude upper bound for ||H(t)||, used for step-size sanity.
    double norm_bound() const;

  private:
    void refresh_rotations(double t, GenWorkspace& ws) const;

    SpaceDims dims_;
    int n_fock_;
    int spin_dim_;
    double nu_;
    double fastest_;
    bool prefer_assembled_ = false;
    Vec static_diag_;  // empty or total-sized, real values
    std::vector<HamTerm> terms_;
    std::vector<Mat> dense_pool_;
    std::vector<Mat> dense_pool_adj_;
};

// exp(i k (a + a^dag)) on an n_max-level Fock space, the exact motional
// phase factor of a running wave with Lamb-Dicke parameter k.
Mat displacement_exponential(double k, int n_max);

// --- tier builders ----------------------------------------------------------

// Branch-diagonal forced-oscillator model on dims [2, 2, n_max].
Generator build_force(const GateDesign& design, int n_max);

// Per-ion second-order model on dims [2, 2, n_max]; supports arbitrary
// per-ion drive phases (any spacing), optional static light shifts.
Generator build_effective(const GateDesign& design, int n_max, bool include_static_stark);

// Pre-elimination three-level model on dims [3, 3, n_max], level order
// (up, down, e) per ion. Beam A is taken to hit the trap axis at normal
// incidence, so the full wave-vector difference rides on beam B; only the
// difference is physical input (see docs/model.md).
Generator build_full(const GateDesign& design, int n_max);

}  // namespace zgate
