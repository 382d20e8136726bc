// Copyright 2026 The pagw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Run manifests and the latent-state sidecar written next to CLI outputs.

#ifndef PAGW_MANIFEST_HPP_
#define PAGW_MANIFEST_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pagw/models.hpp"

namespace pagw {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to regenerate a command's outputs. Parameters are kept
/// in insertion order so the manifest text is stable.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t run_seed = 0;
  std::vector<std::string> artifacts;
  std::string version = kToolVersion;
  double duration_seconds = 0.0;

  void set(const std::string& key, const std::string& value);
  /// "key: value" lines; params are prefixed "param.".
  std::string to_text() const;
};

RunManifest parse_manifest(const std::string& text);

/// Text block with n, r, and one "i xi C" line per vertex.
std::string latent_sidecar(const LatentState& latent);

struct SidecarRecord {
  std::vector<double> xi;
  std::vector<std::int64_t> C;
  std::int64_t r = 0;
};

SidecarRecord parse_latent_sidecar(const std::string& text);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pagw

#endif  // PAGW_MANIFEST_HPP_
