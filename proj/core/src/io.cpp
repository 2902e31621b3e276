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

#include "nbvqpco/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace nbvqpco {

std::string format_full(double v) {
  char buf[40];
  // %.17g always round-trips; prefer the shortest representation that does.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_coo(std::ostream& os, const SparseMatrix& m) {
  os << "# rows " << m.rows() << " cols " << m.cols() << " nnz "
     << m.nonZeros() << "\n";
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      os << it.row() << " " << it.col() << " " << format_full(it.value())
         << "\n";
    }
  }
}

void write_coo_file(const std::string& path, const SparseMatrix& m) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_coo(os, m);
}

void write_vector(std::ostream& os, const Vector& v) {
  os << "# size " << v.size() << "\n";
  for (Index i = 0; i < v.size(); ++i) {
    os << i << " " << format_full(v[i]) << "\n";
  }
}

void write_vector_file(const std::string& path, const Vector& v) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_vector(os, v);
}

}  // namespace nbvqpco
