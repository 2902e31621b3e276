// Copyright 2026 The nbvqpco authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace nbvqpco {

using Index = std::int64_t;

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Thrown when an operation would materialize more elements than the
/// configured size cap allows.
class SizeCapError : public std::runtime_error {
 public:
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

/// Maximum number of scalar elements a single vector/matrix construction may
/// produce. Defaults to 2^24 and can be overridden with the NBVQPCO_SIZE_CAP
/// environment variable.
Index size_cap();

/// Overrides the process-wide size cap (used by tests and the CLI).
void set_size_cap(Index cap);

/// Throws SizeCapError if `elements` exceeds the active cap. `what` names the
/// offending construction in the error message.
void check_size_cap(Index elements, const std::string& what);

inline bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Exact integer log2; throws if `n` is not a power of two.
int log2_exact(Index n);

/// Integer power with overflow guard against the size cap.
Index ipow(Index base, int exp);

}  // namespace nbvqpco
