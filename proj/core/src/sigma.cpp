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

#include "nbvqpco/sigma.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "nbvqpco/io.hpp"

namespace nbvqpco {

char sigma_factor_char(SigmaFactor f) {
  switch (f) {
    case SigmaFactor::kI: return 'I';
    case SigmaFactor::kPlus: return '+';
    case SigmaFactor::kMinus: return '-';
    case SigmaFactor::kPM: return 'P';
    case SigmaFactor::kMP: return 'M';
  }
  throw std::logic_error("unreachable");
}

SigmaFactor sigma_factor_from_char(char c) {
  switch (c) {
    case 'I': return SigmaFactor::kI;
    case '+': return SigmaFactor::kPlus;
    case '-': return SigmaFactor::kMinus;
    case 'P': return SigmaFactor::kPM;
    case 'M': return SigmaFactor::kMP;
    default: throw std::invalid_argument("unknown sigma factor");
  }
}

std::string SigmaWord::to_string() const {
  std::string out;
  out.reserve(factors.size());
  for (SigmaFactor f : factors) out.push_back(sigma_factor_char(f));
  return out;
}

SigmaWord SigmaWord::from_string(const std::string& s) {
  SigmaWord w;
  w.factors.reserve(s.size());
  for (char c : s) w.factors.push_back(sigma_factor_from_char(c));
  return w;
}

SigmaWord::Masks SigmaWord::masks() const {
  Masks m;
  const int n = n_qubits();
  for (int k = 0; k < n; ++k) {
    const Index bit = Index{1} << (n - 1 - k);  // factor k acts on this bit
    switch (factors[k]) {
      case SigmaFactor::kI:
        break;
      case SigmaFactor::kPlus:
        m.fixed |= bit;
        m.flip |= bit;
        break;
      case SigmaFactor::kMinus:
        m.fixed |= bit;
        m.value |= bit;
        m.flip |= bit;
        break;
      case SigmaFactor::kPM:
        m.fixed |= bit;
        break;
      case SigmaFactor::kMP:
        m.fixed |= bit;
        m.value |= bit;
        break;
    }
  }
  return m;
}

SparseMatrix SigmaWord::materialize() const {
  const Masks m = masks();
  const Index dim = Index{1} << n_qubits();
  const Index free = ~m.fixed & (dim - 1);
  std::vector<Triplet> t;
  Index sub = free;
  while (true) {
    const Index r = m.value | sub;
    t.emplace_back(r, r ^ m.flip, 1.0);
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  SparseMatrix out(dim, dim);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SigmaWord SigmaWord::transpose() const {
  SigmaWord out = *this;
  for (SigmaFactor& f : out.factors) {
    if (f == SigmaFactor::kPlus) {
      f = SigmaFactor::kMinus;
    } else if (f == SigmaFactor::kMinus) {
      f = SigmaFactor::kPlus;
    }
  }
  return out;
}

void SigmaDecomposition::add(std::complex<double> coef, SigmaWord word) {
  if (word.n_qubits() != n_qubits_) {
    throw std::invalid_argument("word width does not match the register");
  }
  if (coef.imag() != 0.0) has_complex_ = true;
  const std::string key = word.to_string();
  const auto it = index_.find(key);
  if (it != index_.end()) {
    terms_[it->second].coef += coef;
    applied_[it->second].coef += coef;
    return;
  }
  applied_.push_back({coef, word.masks(), word.transpose().masks()});
  index_.emplace(key, terms_.size());
  terms_.push_back({coef, std::move(word)});
}

namespace {

void apply_masks(const SigmaWord::Masks& m, double coef, Index dim,
                 const Vector& x, Vector& y) {
  const Index free = ~m.fixed & (dim - 1);
  Index sub = free;
  while (true) {
    const Index r = m.value | sub;
    y[r] += coef * x[r ^ m.flip];
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
}

}  // namespace

void SigmaDecomposition::apply(const Vector& x, Vector& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw std::invalid_argument("vector length does not match the register");
  }
  if (has_complex_) {
    throw std::logic_error("real apply path needs real coefficients");
  }
  for (const auto& a : applied_) {
    apply_masks(a.fwd, a.coef.real(), dim(), x, y);
  }
}

Vector SigmaDecomposition::apply(const Vector& x) const {
  Vector y = Vector::Zero(dim());
  apply(x, y);
  return y;
}

Vector SigmaDecomposition::apply_transpose(const Vector& x) const {
  if (x.size() != dim()) {
    throw std::invalid_argument("vector length does not match the register");
  }
  if (has_complex_) {
    throw std::logic_error("real apply path needs real coefficients");
  }
  Vector y = Vector::Zero(dim());
  for (const auto& a : applied_) {
    apply_masks(a.adj, a.coef.real(), dim(), x, y);
  }
  return y;
}

SparseMatrix SigmaDecomposition::materialize() const {
  SparseMatrix out(dim(), dim());
  for (const auto& term : terms_) {
    if (term.coef.imag() != 0.0) {
      throw std::logic_error("cannot materialize complex terms into a real "
                             "matrix");
    }
    out = out + SparseMatrix(term.coef.real() * term.word.materialize());
  }
  return out;
}

std::string SigmaDecomposition::export_terms() const {
  std::ostringstream os;
  for (const auto& term : terms_) {
    if (term.coef.imag() == 0.0) {
      os << format_full(term.coef.real());
    } else {
      os << format_full(term.coef.real()) << "+"
         << format_full(term.coef.imag()) << "i";
    }
    os << "\t" << term.word.to_string() << "\n";
  }
  return os.str();
}

SigmaDecomposition decompose_single_entry(Index r, Index c,
                                          std::complex<double> v, int s) {
  const Index dim = Index{1} << s;
  if (r < 0 || c < 0 || r >= dim || c >= dim) {
    throw std::invalid_argument("entry position outside the register");
  }
  SigmaWord word;
  word.factors.resize(s);
  for (int k = 0; k < s; ++k) {
    const int bit = s - 1 - k;
    const bool qr = (r >> bit) & 1;
    const bool qc = (c >> bit) & 1;
    word.factors[k] = qr ? (qc ? SigmaFactor::kMP : SigmaFactor::kMinus)
                         : (qc ? SigmaFactor::kPlus : SigmaFactor::kPM);
  }
  SigmaDecomposition out(s);
  out.add(v, std::move(word));
  return out;
}

namespace {

struct Entry {
  Index r, c;
  double v;
};

bool same_block(const std::vector<Entry>& a, const std::vector<Entry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].r != b[i].r || a[i].c != b[i].c || a[i].v != b[i].v) return false;
  }
  return true;
}

void recurse(const std::vector<Entry>& entries, Index half,
             std::vector<SigmaFactor>& path, SigmaDecomposition& out) {
  if (entries.empty()) return;
  if (half == 0) {
    SigmaWord w;
    w.factors = path;
    out.add(entries.front().v, std::move(w));
    return;
  }
  std::vector<Entry> tl, tr, bl, br;
  for (const Entry& e : entries) {
    const bool rb = e.r >= half;
    const bool cb = e.c >= half;
    Entry red{e.r - (rb ? half : 0), e.c - (cb ? half : 0), e.v};
    (rb ? (cb ? br : bl) : (cb ? tr : tl)).push_back(red);
  }
  if (!tl.empty() && same_block(tl, br)) {
    path.push_back(SigmaFactor::kI);
    recurse(tl, half / 2, path, out);
    path.pop_back();
  } else {
    path.push_back(SigmaFactor::kPM);
    recurse(tl, half / 2, path, out);
    path.pop_back();
    path.push_back(SigmaFactor::kMP);
    recurse(br, half / 2, path, out);
    path.pop_back();
  }
  path.push_back(SigmaFactor::kPlus);
  recurse(tr, half / 2, path, out);
  path.pop_back();
  path.push_back(SigmaFactor::kMinus);
  recurse(bl, half / 2, path, out);
  path.pop_back();
}

}  // namespace

SigmaDecomposition decompose_structured(const SparseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("decomposition needs a square matrix");
  }
  if (!is_power_of_two(m.rows())) {
    throw std::invalid_argument("matrix dimension must be a power of two");
  }
  const int s = log2_exact(m.rows());
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() != 0.0) entries.push_back({it.row(), it.col(), it.value()});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.r != b.r ? a.r < b.r : a.c < b.c;
  });
  SigmaDecomposition out(s);
  std::vector<SigmaFactor> path;
  path.reserve(s);
  recurse(entries, m.rows() / 2, path, out);
  return out;
}

namespace {

SigmaWord prefixed(const std::vector<SigmaFactor>& prefix,
                   const SigmaWord& tail) {
  SigmaWord out;
  out.factors = prefix;
  out.factors.insert(out.factors.end(), tail.factors.begin(),
                     tail.factors.end());
  return out;
}

}  // namespace

PipelineDecomposition decompose_pipeline(const BlockLinearSystem& sys) {
  if (!sys.split || !sys.lift_split) {
    throw std::logic_error("pipeline decomposition needs the parameter split");
  }
  if (!sys.layout.padded) {
    throw std::invalid_argument(
        "pipeline decomposition needs the padded register layout");
  }
  if (sys.scheme != Scheme::kBackward) {
    throw std::invalid_argument(
        "the closed-form pipeline decomposition covers the backward scheme");
  }
  const int q = sys.layout.qubits();
  const int t = log2_exact(sys.n_t());
  const int total = t + q;
  const double h = sys.h;

  // Raw generator split per register; the step factor -h enters per term
  // below, mirroring the assembly arithmetic so reconstruction matches it
  // to rounding.
  const SigmaDecomposition d1 = decompose_structured(sys.lift_split->A_N1);
  const SigmaDecomposition d2 = decompose_structured(sys.lift_split->A_N2);

  PipelineDecomposition out{SigmaDecomposition(total),
                            SigmaDecomposition(total)};

  const std::vector<SigmaFactor> id_prefix(t, SigmaFactor::kI);
  const std::vector<SigmaFactor> first_step(t, SigmaFactor::kPM);

  // Identity over the whole register.
  out.A1.add(1.0, SigmaWord{std::vector<SigmaFactor>(total, SigmaFactor::kI)});
  // Subdiagonal shift: one ladder word per time qubit.
  for (int j = 0; j < t; ++j) {
    std::vector<SigmaFactor> f(total, SigmaFactor::kI);
    f[j] = SigmaFactor::kMinus;
    for (int k = j + 1; k < t; ++k) f[k] = SigmaFactor::kPlus;
    out.A1.add(-1.0, SigmaWord{std::move(f)});
  }
  for (const auto& term : d1.terms()) {
    out.A1.add(-h * term.coef, prefixed(id_prefix, term.word));
    out.A1.add(h * term.coef, prefixed(first_step, term.word));
  }
  for (const auto& term : d2.terms()) {
    out.A2.add(-h * term.coef, prefixed(id_prefix, term.word));
    out.A2.add(h * term.coef, prefixed(first_step, term.word));
  }
  return out;
}

SigmaDecomposition PipelineDecomposition::at_parameter(double nu) const {
  SigmaDecomposition out(A1.n_qubits());
  for (const auto& term : A1.terms()) out.add(term.coef, term.word);
  for (const auto& term : A2.terms()) out.add(nu * term.coef, term.word);
  return out;
}

SigmaCountBounds sigma_count_bounds(Index n_x, Index n_t, int N) {
  const Index s = log2_exact(n_x);
  const Index t = log2_exact(n_t);
  SigmaCountBounds out;
  out.a2_bound = 2 * (N + static_cast<Index>(N) * (N + 1) * s);
  Index f2_terms = 0;  // C sum_{j=1}^{N-1} sum_{i=1}^{j} n_x^i with C = 2
  for (int j = 1; j <= N - 1; ++j) {
    for (int i = 1; i <= j; ++i) f2_terms += 2 * ipow(n_x, i);
  }
  out.a1_bound = t + 1 + 2 * f2_terms;
  return out;
}

Index pauli_term_count(const SparseMatrix& m, double tol) {
  if (m.rows() != m.cols() || !is_power_of_two(m.rows())) {
    throw std::invalid_argument("Pauli expansion needs a square power-of-two "
                                "matrix");
  }
  const int n = log2_exact(m.rows());
  const Index dim = m.rows();
  // One pass per X-support mask over its entry bucket; 2^n phase choices per
  // mask. The 8^n budget keeps the default cap at dimension 2^8.
  check_size_cap(Index{1} << (3 * n), "Pauli expansion");

  // Bucket entries by r ^ c.
  std::map<Index, std::vector<std::pair<Index, double>>> buckets;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() != 0.0) {
        buckets[it.row() ^ it.col()].push_back({it.row(), it.value()});
      }
    }
  }

  const std::complex<double> im(0.0, 1.0);
  Index count = 0;
  for (Index x_mask = 0; x_mask < dim; ++x_mask) {
    const auto bucket = buckets.find(x_mask);
    if (bucket == buckets.end()) continue;
    // y_mask runs over subsets of x_mask, z_mask over subsets of ~x_mask.
    const Index zspace = ~x_mask & (dim - 1);
    for (Index y_mask = x_mask;; y_mask = (y_mask - 1) & x_mask) {
      for (Index z_mask = zspace;; z_mask = (z_mask - 1) & zspace) {
        std::complex<double> trace = 0.0;
        for (const auto& [r, v] : bucket->second) {
          // word entry at (r, r^x): (-1)^{|r&z|} * prod_y (r_b ? i : -i)
          const int zs = std::popcount(static_cast<std::uint64_t>(r & z_mask));
          const int ys_pos =
              std::popcount(static_cast<std::uint64_t>(r & y_mask));
          const int ys_neg =
              std::popcount(static_cast<std::uint64_t>(y_mask)) - ys_pos;
          std::complex<double> phase = (zs % 2 == 0) ? 1.0 : -1.0;
          // i^{ys_pos} * (-i)^{ys_neg}
          switch (((ys_pos - ys_neg) % 4 + 4) % 4) {
            case 0: break;
            case 1: phase *= im; break;
            case 2: phase *= -1.0; break;
            case 3: phase *= -im; break;
          }
          trace += std::conj(phase) * v;
        }
        if (std::abs(trace) / static_cast<double>(dim) > tol) ++count;
        if (z_mask == 0) break;
      }
      if (y_mask == 0) break;
    }
  }
  return count;
}

}  // namespace nbvqpco
