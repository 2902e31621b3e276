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

#include "nbvqpco/types.hpp"

#include <cstdlib>

namespace nbvqpco {

namespace {

constexpr Index kDefaultSizeCap = Index{1} << 24;

Index initial_size_cap() {
  if (const char* env = std::getenv("NBVQPCO_SIZE_CAP")) {
    char* end = nullptr;
    const long long parsed = std::strtoll(env, &end, 10);
    if (end != env && parsed > 0) return static_cast<Index>(parsed);
  }
  return kDefaultSizeCap;
}

Index& size_cap_slot() {
  static Index cap = initial_size_cap();
  return cap;
}

}  // namespace

Index size_cap() { return size_cap_slot(); }

void set_size_cap(Index cap) {
  if (cap <= 0) throw std::invalid_argument("size cap must be positive");
  size_cap_slot() = cap;
}

void check_size_cap(Index elements, const std::string& what) {
  if (elements > size_cap()) {
    throw SizeCapError(what + " needs " + std::to_string(elements) +
                       " elements, above the size cap " +
                       std::to_string(size_cap()));
  }
}

int log2_exact(Index n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument(std::to_string(n) + " is not a power of two");
  }
  int k = 0;
  while ((Index{1} << k) != n) ++k;
  return k;
}

Index ipow(Index base, int exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  Index out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > size_cap() / base + 1) {
      throw SizeCapError("integer power overflows the size cap");
    }
    out *= base;
  }
  return out;
}

}  // namespace nbvqpco
