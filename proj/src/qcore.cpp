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

#include "zgate/qcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

namespace zgate {

SpaceDims::SpaceDims(std::vector<int> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw ValidationError("SpaceDims: factor list must be non-empty");
    }
    for (int f : factors_) {
        if (f < 2) {
            throw ValidationError("SpaceDims: every factor must be >= 2, got " +
                                  std::to_string(f));
        }
        total_ *= f;
        if (total_ > kMaxTotalDim) {
            throw ValidationError("SpaceDims: total dimension exceeds " +
                                  std::to_string(kMaxTotalDim));
        }
    }
}

int SpaceDims::ravel(const std::vector<int>& multi) const {
    if (static_cast<int>(multi.size()) != n_factors()) {
        throw ValidationError("SpaceDims::ravel: wrong number of indices");
    }
    int idx = 0;
    for (int i = 0; i < n_factors(); ++i) {
        if (multi[static_cast<size_t>(i)] < 0 || multi[static_cast<size_t>(i)] >= factor(i)) {
            throw ValidationError("SpaceDims::ravel: index out of range for factor " +
                                  std::to_string(i));
        }
        idx = idx * factor(i) + multi[static_cast<size_t>(i)];
    }
    return idx;
}

std::vector<int> SpaceDims::unravel(int index) const {
    if (index < 0 || index >= total_) {
        throw ValidationError("SpaceDims::unravel: index out of range");
    }
    std::vector<int> multi(static_cast<size_t>(n_factors()));
    for (int i = n_factors() - 1; i >= 0; --i) {
        multi[static_cast<size_t>(i)] = index % factor(i);
        index /= factor(i);
    }
    return multi;
}

QuantumState::QuantumState(SpaceDims d, Vec a) : dims(std::move(d)), amp(std::move(a)) {
    if (amp.size() != dims.total()) {
        throw ValidationError("QuantumState: amplitude length " + std::to_string(amp.size()) +
                              " does not match dimension " + std::to_string(dims.total()));
    }
}

QuantumState QuantumState::normalized(SpaceDims d, Vec a) {
    const double n = a.norm();
    if (n == 0.0) {
        throw ValidationError("QuantumState::normalized: zero vector");
    }
    return QuantumState(std::move(d), a / n);
}

Operator::Operator(SpaceDims d, Mat m) : dims(std::move(d)), mat(std::move(m)) {
    if (mat.rows() != dims.total() || mat.cols() != dims.total()) {
        throw ValidationError("Operator: matrix shape does not match dimension " +
                              std::to_string(dims.total()));
    }
}

Operator destroy(int n_max) {
    if (n_max < 2) {
        throw ValidationError("destroy: n_max must be >= 2");
    }
    Mat a = Mat::Zero(n_max, n_max);
    for (int n = 1; n < n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return Operator(SpaceDims({n_max}), std::move(a));
}

Operator create(int n_max) { return destroy(n_max).dag(); }

Operator number_op(int n_max) {
    if (n_max < 2) {
        throw ValidationError("number_op: n_max must be >= 2");
    }
    Mat n = Mat::Zero(n_max, n_max);
    for (int k = 0; k < n_max; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return Operator(SpaceDims({n_max}), std::move(n));
}

Operator identity_op(const SpaceDims& dims) {
    return Operator(dims, Mat::Identity(dims.total(), dims.total()));
}

namespace {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

Operator kron_all(const std::vector<Operator>& ops) {
    if (ops.empty()) {
        throw ValidationError("kron_all: empty operator list");
    }
    Mat acc = ops.front().mat;
    std::vector<int> factors = ops.front().dims.factors();
    for (size_t k = 1; k < ops.size(); ++k) {
        acc = kron(acc, ops[k].mat);
        const auto& f = ops[k].dims.factors();
        factors.insert(factors.end(), f.begin(), f.end());
    }
    return Operator(SpaceDims(std::move(factors)), std::move(acc));
}

Operator embed(const Mat& op, const SpaceDims& dims, int slot) {
    if (slot < 0 || slot >= dims.n_factors()) {
        throw ValidationError("embed: slot out of range");
    }
    if (op.rows() != dims.factor(slot) || op.cols() != dims.factor(slot)) {
        throw ValidationError("embed: operator shape does not match factor " +
                              std::to_string(slot));
    }
    Mat acc = (slot == 0) ? op : Mat(Mat::Identity(dims.factor(0), dims.factor(0)));
    for (int i = 1; i < dims.n_factors(); ++i) {
        const Mat next = (i == slot)
                             ? op
                             : Mat(Mat::Identity(dims.factor(i), dims.factor(i)));
        acc = kron(acc, next);
    }
    return Operator(dims, std::move(acc));
}

QuantumState basis_state(const SpaceDims& dims, const std::vector<int>& levels) {
    Vec v = Vec::Zero(dims.total());
    v(dims.ravel(levels)) = 1.0;
    return QuantumState(dims, std::move(v));
}

QuantumState coherent_state(complexd alpha, int n_max) {
    if (n_max < 2) {
        throw ValidationError("coherent_state: n_max must be >= 2");
    }
    const double nbar = std::norm(alpha);
    if (nbar > static_cast<double>(n_max) / 4.0) {
        const int suggested = static_cast<int>(std::ceil(4.0 * nbar)) + 2;
        std::ostringstream os;
        os << "coherent_state: |alpha|^2 = " << nbar << " too large for n_max = " << n_max
           << "; need n_max >= " << suggested;
        throw TruncationError(os.str(), suggested);
    }
    Vec v(n_max);
    // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built by recurrence to avoid factorials.
    complexd c = std::exp(-0.5 * nbar);
    v(0) = c;
    for (int n = 1; n < n_max; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        v(n) = c;
    }
    return QuantumState::normalized(SpaceDims({n_max}), std::move(v));
}

double coherent_top_two_weight(complexd alpha, int n_max) {
    if (n_max < 2) {
        throw ValidationError("coherent_top_two_weight: n_max must be >= 2");
    }
    const double nbar = std::norm(alpha);
    if (nbar == 0.0) {
        return 0.0;
    }
    double log_p = -nbar;  // log of Poisson weight at n = 0
    double top = (0 >= n_max - 2) ? std::exp(log_p) : 0.0;
    for (int n = 1; n <= n_max - 1; ++n) {
        log_p += std::log(nbar) - std::log(static_cast<double>(n));
        if (n >= n_max - 2) {
            top += std::exp(log_p);
        }
    }
    return top;
}

double state_fidelity(const QuantumState& a, const QuantumState& b) {
    if (a.dims != b.dims) {
        throw ValidationError("state_fidelity: dimension mismatch");
    }
    return std::norm(a.amp.dot(b.amp));
}

complexd expectation(const Operator& op, const QuantumState& psi) {
    if (op.dims != psi.dims) {
        throw ValidationError("expectation: dimension mismatch");
    }
    return psi.amp.dot(op.mat * psi.amp);
}

namespace {

void check_keep_list(const SpaceDims& dims, const std::vector<int>& keep) {
    if (keep.empty()) {
        throw ValidationError("partial_trace: keep list must be non-empty");
    }
    for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= dims.n_factors()) {
            throw ValidationError("partial_trace: keep index out of range");
        }
        if (i > 0 && keep[i] <= keep[i - 1]) {
            throw ValidationError("partial_trace: keep list must be strictly increasing");
        }
    }
}

}  // namespace

Mat partial_trace(const QuantumState& psi, const std::vector<int>& keep) {
    const SpaceDims& dims = psi.dims;
    check_keep_list(dims, keep);

    int keep_dim = 1;
    for (int k : keep) keep_dim *= dims.factor(k);

    std::vector<bool> kept(static_cast<size_t>(dims.n_factors()), false);
    for (int k : keep) kept[static_cast<size_t>(k)] = true;

    // Map composite index -> (kept part, traced part), both row-major in
    // their respective sublists.
    const int total = dims.total();
    std::vector<int> kpart(static_cast<size_t>(total)), tpart(static_cast<size_t>(total));
    for (int idx = 0; idx < total; ++idx) {
        const auto multi = dims.unravel(idx);
        int kp = 0, tp = 0;
        for (int f = 0; f < dims.n_factors(); ++f) {
            if (kept[static_cast<size_t>(f)]) {
                kp = kp * dims.factor(f) + multi[static_cast<size_t>(f)];
            } else {
                tp = tp * dims.factor(f) + multi[static_cast<size_t>(f)];
            }
        }
        kpart[static_cast<size_t>(idx)] = kp;
        tpart[static_cast<size_t>(idx)] = tp;
    }

    const int traced_dim = total / keep_dim;
    // rho[a,b] = sum_t psi[(a,t)] conj(psi[(b,t)]); gather amplitudes by traced index.
    Mat gathered = Mat::Zero(traced_dim, keep_dim);
    for (int idx = 0; idx < total; ++idx) {
        gathered(tpart[static_cast<size_t>(idx)], kpart[static_cast<size_t>(idx)]) = psi.amp(idx);
    }
    return gathered.adjoint() * gathered;
}

Mat partial_trace(const Mat& rho, const SpaceDims& dims, const std::vector<int>& keep) {
    if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
        throw ValidationError("partial_trace: rho shape does not match dims");
    }
    check_keep_list(dims, keep);

    int keep_dim = 1;
    for (int k : keep) keep_dim *= dims.factor(k);
    std::vector<bool> kept(static_cast<size_t>(dims.n_factors()), false);
    for (int k : keep) kept[static_cast<size_t>(k)] = true;

    const int total = dims.total();
    std::vector<int> kpart(static_cast<size_t>(total)), tpart(static_cast<size_t>(total));
    for (int idx = 0; idx < total; ++idx) {
        const auto multi = dims.unravel(idx);
        int kp = 0, tp = 0;
        for (int f = 0; f < dims.n_factors(); ++f) {
            if (kept[static_cast<size_t>(f)]) {
                kp = kp * dims.factor(f) + multi[static_cast<size_t>(f)];
            } else {
                tp = tp * dims.factor(f) + multi[static_cast<size_t>(f)];
            }
        }
        kpart[static_cast<size_t>(idx)] = kp;
        tpart[static_cast<size_t>(idx)] = tp;
    }

    Mat out = Mat::Zero(keep_dim, keep_dim);
    for (int i = 0; i < total; ++i) {
        for (int j = 0; j < total; ++j) {
            if (tpart[static_cast<size_t>(i)] == tpart[static_cast<size_t>(j)]) {
                out(kpart[static_cast<size_t>(i)], kpart[static_cast<size_t>(j)]) += rho(i, j);
            }
        }
    }
    return out;
}

double concurrence(const Mat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ValidationError("concurrence: expected a 4x4 density matrix");
    }
    if (std::abs(rho.trace() - complexd(1.0)) > 1e-9) {
        throw ValidationError("concurrence: trace deviates from 1 beyond 1e-9");
    }
    if (hermiticity_defect(rho) > 1e-9) {
        throw ValidationError("concurrence: density matrix is not hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Mat> pos(rho);
    if (pos.eigenvalues().minCoeff() < -1e-9) {
        throw ValidationError("concurrence: density matrix has a negative eigenvalue");
    }

    // Spin-flipped product rho (Y x Y) rho* (Y x Y); its eigenvalues are
    // real and non-negative up to rounding.
    Mat yy = Mat::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Mat r = rho * yy * rho.conjugate() * yy;

    Eigen::ComplexEigenSolver<Mat> es(r, /*computeEigenvectors=*/false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        lam[static_cast<size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double unitarity_defect(const Mat& u) {
    if (u.rows() != u.cols()) {
        throw ValidationError("unitarity_defect: matrix must be square");
    }
    const Mat d = u.adjoint() * u - Mat::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& m) {
    if (m.rows() != m.cols()) {
        throw ValidationError("hermiticity_defect: matrix must be square");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace zgate
