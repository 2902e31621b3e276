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

#include <ostream>
#include <string>

#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Round-trip formatting of a double (shortest form that recovers the exact
/// bits on read-back).
std::string format_full(double v);

/// Coordinate text format, one `row col value` line per structural nonzero.
/// Indices are 0-based; values use round-trip precision.
void write_coo(std::ostream& os, const SparseMatrix& m);
void write_coo_file(const std::string& path, const SparseMatrix& m);

/// Dense vector as coordinate text (`index value` lines).
void write_vector(std::ostream& os, const Vector& v);
void write_vector_file(const std::string& path, const Vector& v);

}  // namespace nbvqpco
