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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "nbvqpco/config.hpp"
#include "nbvqpco/io.hpp"
#include "nbvqpco/manifest.hpp"
#include "nbvqpco/rng.hpp"
#include "nbvqpco/types.hpp"

using namespace nbvqpco;

TEST_CASE("flat config parses keys and reports line numbers") {
  const auto cfg = FlatConfig::parse_string(
      "# comment\n"
      "L = 0.5\n"
      "n_x = 4\n"
      "\n"
      "name = burgers\n");
  CHECK(cfg.get_double("L") == 0.5);
  CHECK(cfg.get_int("n_x") == 4);
  CHECK(cfg.get_string("name") == "burgers");
  CHECK(cfg.get_double("missing", 2.5) == 2.5);

  try {
    FlatConfig::parse_string("L = 0.5\nbroken line\n", "cfg");
    FAIL("expected parse error");
  } catch (const ConfigError& err) {
    CHECK(err.line() == 2);
    CHECK(std::string(err.what()).find("cfg:2") != std::string::npos);
  }

  try {
    const auto bad = FlatConfig::parse_string("L = abc\n", "cfg");
    bad.get_double("L");
    FAIL("expected number error");
  } catch (const ConfigError& err) {
    CHECK(err.line() == 1);
  }

  CHECK_THROWS_AS(FlatConfig::parse_string("a = 1\na = 2\n"), ConfigError);
}

TEST_CASE("sha1 and git blob hash match known vectors") {
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");

  const std::string path = "util_blob_test.tmp";
  {
    std::ofstream os(path, std::ios::binary);
    os << "hello\n";
  }
  // `git hash-object` of a file containing "hello\n".
  CHECK(git_blob_hash(path) == "ce013625030ba8dba906f756967f9e9ca394464a");
  std::remove(path.c_str());
}

TEST_CASE("manifest json is stable") {
  RunManifest m;
  m.command = "solve";
  m.config_path = "burgers.cfg";
  m.seed = 7;
  m.output_dir = "out";
  m.input_hash = "deadbeef";
  const std::string j = m.to_json();
  CHECK(j.find("\"command\": \"solve\"") != std::string::npos);
  CHECK(j.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("round-trip formatting recovers exact doubles") {
  for (double v : {0.1, 1.0 / 3.0, 6.02e23, -0.0, 1e-300, 123456789.123456}) {
    const std::string s = format_full(v);
    double back = 0.0;
    std::sscanf(s.c_str(), "%lf", &back);
    CHECK(back == v);
  }
}

TEST_CASE("rng is deterministic and beta samples live in [0,1)") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double x = a.beta_half_half();
    CHECK(x == b.beta_half_half());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(Rng::derive_seed(1, 2) != Rng::derive_seed(1, 3));
  CHECK(Rng::derive_seed(1, 2) == Rng::derive_seed(1, 2));
}

TEST_CASE("size cap guards large constructions") {
  const Index old_cap = size_cap();
  set_size_cap(1000);
  CHECK_THROWS_AS(check_size_cap(1001, "test"), SizeCapError);
  CHECK_NOTHROW(check_size_cap(1000, "test"));
  set_size_cap(old_cap);
}
