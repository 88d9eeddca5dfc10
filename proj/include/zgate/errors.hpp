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

#pragma once

#include <stdexcept>
#include <string>

namespace zgate {

// Base class for everything thrown on purpose by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed config files, missing fields, out-of-range
// values, inconsistent command-line flags. Maps to process exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// A physical parameter set that the model refuses to accept (invariant
// violations on the typed inputs, e.g. eta outside (0,1)).
struct ValidationError : Error {
    using Error::Error;
};

// Ion spacing incompatible with the requested drive pattern.
struct GeometryError : Error {
    using Error::Error;
};

// A Raman detuning inside the pole-guard band around 0 or omega_0, where
// the second-order coefficients stop being meaningful.
struct SingularDetuningError : Error {
    using Error::Error;
};

// Fock-space truncation is too tight for the requested state or run.
// Carries an estimate of the n_max that would have been safe.
struct TruncationError : Error {
    int suggested_n_max;
    TruncationError(const std::string& msg, int suggested)
        : Error(msg), suggested_n_max(suggested) {}
};

// Numerical propagation failure: step-size convergence not reached,
// exponential series not converging, norm drift beyond tolerance.
// Maps to process exit code 3 (as does TruncationError).
struct PropagationError : Error {
    using Error::Error;
};

}  // namespace zgate
