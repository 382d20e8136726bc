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

#include "pagw/manifest.hpp"

#include <fstream>
#include <sstream>

#include "pagw/errors.hpp"

namespace pagw {

void RunManifest::set(const std::string& key, const std::string& value) {
  for (auto& kv : params) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  params.emplace_back(key, value);
}

std::string RunManifest::to_text() const {
  std::ostringstream out;
  out << "command: " << command << '\n';
  out << "version: " << version << '\n';
  out << "run_seed: " << run_seed << '\n';
  for (const auto& [k, v] : params) out << "param." << k << ": " << v << '\n';
  for (const auto& a : artifacts) out << "artifact: " << a << '\n';
  out << "duration_seconds: " << format_real(duration_seconds) << '\n';
  return out.str();
}

RunManifest parse_manifest(const std::string& text) {
  RunManifest m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw ParseError("bad manifest line: " + line);
    const std::string key = line.substr(0, colon);
    const std::string value = line.substr(colon + 2);
    if (key == "command") m.command = value;
    else if (key == "version") m.version = value;
    else if (key == "run_seed") m.run_seed = std::stoull(value);
    else if (key == "artifact") m.artifacts.push_back(value);
    else if (key == "duration_seconds") m.duration_seconds = std::stod(value);
    else if (key.rfind("param.", 0) == 0) m.params.emplace_back(key.substr(6), value);
    else throw ParseError("unknown manifest key: " + key);
  }
  return m;
}

std::string latent_sidecar(const LatentState& latent) {
  std::ostringstream out;
  out << "n " << latent.xi.size() << '\n';
  out << "r " << latent.r << '\n';
  for (std::size_t i = 0; i < latent.xi.size(); ++i) {
    out << i << ' ' << format_real(latent.xi[i]) << ' ' << latent.C[i] << '\n';
  }
  return out.str();
}

SidecarRecord parse_latent_sidecar(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  std::size_t n = 0;
  SidecarRecord rec;
  if (!(in >> tag >> n) || tag != "n") throw ParseError("sidecar: missing 'n' line");
  if (!(in >> tag >> rec.r) || tag != "r") throw ParseError("sidecar: missing 'r' line");
  rec.xi.resize(n);
  rec.C.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = 0;
    if (!(in >> i >> rec.xi[k] >> rec.C[k]) || i != k) {
      throw ParseError("sidecar: bad vertex line " + std::to_string(k));
    }
  }
  return rec;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace pagw
