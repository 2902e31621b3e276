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
#include <map>
#include <string>
#include <vector>

#include "nbvqpco/linsys.hpp"
#include "nbvqpco/types.hpp"

namespace nbvqpco {

/// Single-qubit operators of the sigma basis. In matrix form:
///   I            identity
///   Plus  (+)    |0><1|
///   Minus (-)    |1><0|
///   PM    (P)    |0><0|  (sigma_+ sigma_-)
///   MP    (M)    |1><1|  (sigma_- sigma_+)
enum class SigmaFactor : std::uint8_t { kI, kPlus, kMinus, kPM, kMP };

char sigma_factor_char(SigmaFactor f);
SigmaFactor sigma_factor_from_char(char c);

/// Tensor word over the sigma basis, most significant qubit first. Every
/// word has at most one nonzero entry per row and per column: row bit b is
/// pinned to 0 by {+, P} and to 1 by {-, M}; the column flips the row bit
/// exactly at {+, -} positions.
struct SigmaWord {
  std::vector<SigmaFactor> factors;

  int n_qubits() const { return static_cast<int>(factors.size()); }
  std::string to_string() const;
  static SigmaWord from_string(const std::string& s);

  /// Bit masks driving O(2^free) application; bit 0 is the least significant
  /// qubit (the last factor).
  struct Masks {
    Index fixed = 0;   // bits with a non-identity factor
    Index value = 0;   // required row bit values inside `fixed`
    Index flip = 0;    // bits where column = row ^ flip
  };
  Masks masks() const;

  SparseMatrix materialize() const;
  SigmaWord transpose() const;

  bool operator==(const SigmaWord& other) const = default;
};

struct SigmaTerm {
  std::complex<double> coef;
  SigmaWord word;
};

/// Exact linear combination of sigma words. All pipeline matrices are real,
/// so coefficients stay real in practice; the type admits complex for
/// generality. Duplicate words are merged on insertion.
class SigmaDecomposition {
 public:
  explicit SigmaDecomposition(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  Index dim() const { return Index{1} << n_qubits_; }
  const std::vector<SigmaTerm>& terms() const { return terms_; }
  Index term_count() const { return static_cast<Index>(terms_.size()); }

  void add(std::complex<double> coef, SigmaWord word);

  /// y += sum_i coef_i word_i x (real part path; coefficients must be real).
  void apply(const Vector& x, Vector& y) const;
  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& x) const;

  SparseMatrix materialize() const;

  /// One `coefficient<TAB>word` line per term; words use {I,+,-,P,M}.
  std::string export_terms() const;

 private:
  int n_qubits_;
  std::vector<SigmaTerm> terms_;
  std::map<std::string, std::size_t> index_;  // word string -> terms_ slot
  bool has_complex_ = false;
  // Masks kept in sync by add(), so apply() is const and safe to share
  // across threads.
  struct Applied {
    std::complex<double> coef;
    SigmaWord::Masks fwd;
    SigmaWord::Masks adj;
  };
  std::vector<Applied> applied_;
};

/// Theorem-style single-entry decomposition: matrix of size 2^s with value
/// `v` at (r, c) becomes one word chosen bitwise from (row bit, col bit):
/// (0,0) -> P, (0,1) -> +, (1,0) -> -, (1,1) -> M.
SigmaDecomposition decompose_single_entry(Index r, Index c,
                                          std::complex<double> v, int s);

/// Exact decomposition of a square power-of-two matrix by greedy quadrant
/// recursion: equal diagonal siblings merge under an identity factor,
/// unequal ones recurse under P/M, and off-diagonal quadrants recurse under
/// +/-. Reconstruction is exact; the term count is reported by the result.
SigmaDecomposition decompose_structured(const SparseMatrix& m);

struct PipelineDecomposition {
  SigmaDecomposition A1;  // parameter-independent part
  SigmaDecomposition A2;  // multiplied by the scalar parameter
  /// Terms of A1 + nu * A2 with the parameter folded into the coefficients.
  SigmaDecomposition at_parameter(double nu) const;
};

/// Closed-form decomposition of a backward-Euler split system: the time
/// register enters through an identity word, one subdiagonal ladder word per
/// time qubit, and two copies (I-prefixed and P...P-prefixed) of each lifted
/// block decomposition. Requires the padded layout and the parameter split.
PipelineDecomposition decompose_pipeline(const BlockLinearSystem& sys);

/// Analytic §-style term-count ceilings for the split system, used as test
/// oracles and reported by the census.
struct SigmaCountBounds {
  Index a1_bound = 0;  // log2 n_t + 1 + 2 C n_x/(n_x-1)^2 (n_x^N - 1 - N(n_x-1))
  Index a2_bound = 0;  // 2 (N + N(N+1) log2 n_x)
  Index total() const { return a1_bound + a2_bound; }
};
SigmaCountBounds sigma_count_bounds(Index n_x, Index n_t, int N);

/// Number of nonzero coefficients in the full Pauli-basis expansion
/// Tr(P^dag M)/2^n. Cost grows as 2^n per word; the required work is checked
/// against the size cap (the default cap admits dimensions up to 2^8).
Index pauli_term_count(const SparseMatrix& m, double tol = 1e-12);

}  // namespace nbvqpco
