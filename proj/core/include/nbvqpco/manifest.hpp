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

#include <cstdint>
#include <string>
#include <vector>

namespace nbvqpco {

/// SHA-1 of arbitrary bytes, hex encoded.
std::string sha1_hex(const std::string& bytes);

/// Git blob hash of a file's contents: sha1("blob <size>\0" + contents).
std::string git_blob_hash(const std::string& path);

/// Record of one CLI invocation. Identical manifests must produce
/// byte-identical outputs.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string output_dir;
  std::string input_hash;  // git blob hash of the config file ("" if none)

  std::string to_json() const;
  void write(const std::string& path) const;
};

}  // namespace nbvqpco
