// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonoq/io.hpp"
#include "phonoq/version.hpp"

namespace phonoq {

// FNV-1a 64-bit, used to fingerprint the effective configuration.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Reproducibility sidecar written next to every produced artifact: enough
// to rerun the command and verify what went in and out.
struct RunManifest {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string config_text;  // effective settings, one key=value per line
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

inline std::string render_manifest(const RunManifest& m) {
  char digest[32];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(fnv1a64(m.config_text)));
  std::string out = "# phonoq run manifest v1\n";
  out += "tool_version\t" + std::string(kToolVersion) + "\n";
  out += "command\t" + m.command + "\n";
  out += "seed\t" + (m.seed ? std::to_string(*m.seed) : std::string("-")) +
         "\n";
  out += "config_digest\t" + std::string(digest) + "\n";
  for (const auto& path : m.inputs) out += "input\t" + path + "\n";
  for (const auto& path : m.outputs) out += "output\t" + path + "\n";
  return out;
}

// Writes the artifact atomically, then its manifest alongside.
inline void write_with_manifest(const std::string& path,
                                std::string_view content,
                                const RunManifest& manifest) {
  write_file_atomic(path, content);
  write_file_atomic(path + ".manifest", render_manifest(manifest));
}

}  // namespace phonoq
