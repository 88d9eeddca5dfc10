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

// Dense state / operator kernel for small tensor-product Hilbert spaces.
//
// Conventions used throughout the project:
//   * composite basis index is row-major over the factor list, i.e. the
//     FIRST factor varies slowest (standard Kronecker-product ordering);
//   * when a Fock (motional) factor is present it is the LAST factor, so
//     Fock amplitudes of one internal configuration are contiguous;
//   * everything is complex<double>; no sparse formats at this scale.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "zgate/errors.hpp"

namespace zgate {

using complexd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr complexd kI{0.0, 1.0};

// Total composite dimension is capped; beyond this the dense kernel is the
// wrong tool and callers should rethink their truncation.
inline constexpr int kMaxTotalDim = 4096;

// Ordered list of tensor factor dimensions.
class SpaceDims {
  public:
    explicit SpaceDims(std::vector<int> factors);

    int total() const { return total_; }
    int n_factors() const { return static_cast<int>(factors_.size()); }
    int factor(int i) const { return factors_.at(static_cast<size_t>(i)); }
    const std::vector<int>& factors() const { return factors_; }

    // Composite index <-> per-factor indices (first factor slowest).
    int ravel(const std::vector<int>& multi) const;
    std::vector<int> unravel(int index) const;

    bool operator==(const SpaceDims& other) const { return factors_ == other.factors_; }
    bool operator!=(const SpaceDims& other) const { return !(*this == other); }

  private:
    std::vector<int> factors_;
    int total_ = 1;
};

// Pure state on a SpaceDims space. Construction validates the amplitude
// vector length; `normalized` additionally rescales to unit norm.
struct QuantumState {
    SpaceDims dims;
    Vec amp;

    QuantumState(SpaceDims d, Vec a);
    static QuantumState normalized(SpaceDims d, Vec a);

    double norm() const { return amp.norm(); }
};

// Dense operator on a SpaceDims space.
struct Operator {
    SpaceDims dims;
    Mat mat;

    Operator(SpaceDims d, Mat m);

    Operator dag() const { return Operator(dims, mat.adjoint()); }
};

// --- Fock-space building blocks -------------------------------------------

// Truncated annihilation operator, a|n> = sqrt(n)|n-1>. Requires n_max >= 2.
Operator destroy(int n_max);
Operator create(int n_max);
Operator number_op(int n_max);

// Identity on an arbitrary factor list.
Operator identity_op(const SpaceDims& dims);

// Kronecker product of the given operators, first factor slowest.
Operator kron_all(const std::vector<Operator>& ops);

// Lift a single-factor operator into `dims` at position `slot`, identity
// elsewhere. `op` must be square with dimension dims.factor(slot).
Operator embed(const Mat& op, const SpaceDims& dims, int slot);

// |levels[0], levels[1], ...> basis state.
QuantumState basis_state(const SpaceDims& dims, const std::vector<int>& levels);

// Truncated coherent state, renormalized after truncation. Demands
// |alpha|^2 <= n_max/4 so the discarded tail is negligible; throws
// TruncationError (with a suggested n_max) otherwise.
QuantumState coherent_state(complexd alpha, int n_max);

// Population of the top two Fock levels of the (untruncated) coherent
// amplitude sequence; the truncation-health figure used by the guard.
double coherent_top_two_weight(complexd alpha, int n_max);

// |<a|b>|^2. Dims must match.
double state_fidelity(const QuantumState& a, const QuantumState& b);

complexd expectation(const Operator& op, const QuantumState& psi);

// Reduced density matrix over the kept factors (in their original order).
// `keep` must be a strictly increasing non-empty subset of factor indices.
Mat partial_trace(const QuantumState& psi, const std::vector<int>& keep);
Mat partial_trace(const Mat& rho, const SpaceDims& dims, const std::vector<int>& keep);

// Two-qubit concurrence of a 4x4 density matrix (spin-flip construction).
// Validates trace ~ 1, hermiticity and positivity to 1e-9 floors.
double concurrence(const Mat& rho);

// max |(U^dag U - 1)_ij|; the reusable unitarity witness.
double unitarity_defect(const Mat& u);

// max |(M - M^dag)_ij|.
double hermiticity_defect(const Mat& m);

}  // namespace zgate
