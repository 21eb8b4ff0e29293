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

#include <filesystem>

#include <catch2/catch_amalgamated.hpp>

#include "phonoq/config.hpp"
#include "phonoq/manifest.hpp"

using namespace phonoq;

TEST_CASE("key=value parsing with comments and blanks") {
  const std::string text =
      "# corpus settings\n"
      "seed = 17\n"
      "\n"
      "fps=50.0   # trailing comment\n"
      "inventory = p, a , s\n"
      "strict = true\n"
      "name = demo\n";
  const KeyValueConfig cfg = KeyValueConfig::parse(text, "demo.cfg");

  CHECK(cfg.has("seed"));
  CHECK_FALSE(cfg.has("missing"));
  CHECK(cfg.get_long("seed", 0) == 17);
  CHECK(cfg.get_double("fps", 0.0) == 50.0);
  CHECK(cfg.get("name", "") == "demo");
  CHECK(cfg.get_bool("strict", false));
  CHECK(cfg.get_list("inventory") ==
        std::vector<std::string>{"p", "a", "s"});

  // Fallbacks apply when the key is absent.
  CHECK(cfg.get_long("batch", 8) == 8);
  CHECK(cfg.get_double("lr", 0.5) == 0.5);
  CHECK_FALSE(cfg.get_bool("verbose", false));
  CHECK(cfg.get_list("phones").empty());

  CHECK_NOTHROW(cfg.require_known(
      {"seed", "fps", "inventory", "strict", "name"}));
}

TEST_CASE("config errors carry origin and line number") {
  auto expect = [](const std::string& text, const std::string& fragment) {
    try {
      KeyValueConfig::parse(text, "bad.cfg");
      FAIL("expected ConfigError for: " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigError);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      CHECK(std::string(e.what()).find("bad.cfg") != std::string::npos);
    }
  };

  expect("a = 1\nnonsense\n", "line 2");
  expect("= 5\n", "empty key");
  expect("a = 1\n\na = 2\n", "duplicate key 'a'");

  const KeyValueConfig cfg =
      KeyValueConfig::parse("x = h1\nn = 1.5\nflag = maybe\n", "types.cfg");
  try {
    (void)cfg.get_double("x", 0.0);
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("types.cfg line 1") != std::string::npos);
    CHECK(std::string(e.what()).find("not a number") != std::string::npos);
  }
  CHECK_THROWS_AS(cfg.get_long("n", 0), Error);
  CHECK_THROWS_AS(cfg.get_bool("flag", true), Error);

  try {
    cfg.require_known({"x", "n"});
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("unknown key 'flag'") !=
          std::string::npos);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("fnv1a64 matches the reference vectors") {
  // Published FNV-1a 64 test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("manifest layout is pinned") {
  RunManifest m;
  m.command = "phonoq synth --seed 5";
  m.seed = 5;
  m.config_text = "seed=5\nutterances=2\n";
  m.inputs = {"table.tsv"};
  m.outputs = {"u0.TextGrid", "u1.TextGrid"};

  const std::string text = render_manifest(m);
  const std::vector<std::string> lines = split_lines(text);
  REQUIRE(lines.size() >= 7);
  CHECK(lines[0] == "# phonoq run manifest v1");
  CHECK(lines[1].rfind("tool_version\t", 0) == 0);
  CHECK(lines[2] == "command\tphonoq synth --seed 5");
  CHECK(lines[3] == "seed\t5");
  CHECK(lines[4].rfind("config_digest\t", 0) == 0);
  CHECK(lines[4].size() == std::string("config_digest\t").size() + 16);
  CHECK(lines[5] == "input\ttable.tsv");
  CHECK(lines[6] == "output\tu0.TextGrid");
  CHECK(lines[7] == "output\tu1.TextGrid");

  // Without a seed the field renders as a dash.
  m.seed.reset();
  CHECK(split_lines(render_manifest(m))[3] == "seed\t-");

  // The digest is a pure function of the config text.
  RunManifest same = m;
  CHECK(render_manifest(same) == render_manifest(m));
  same.config_text += "extra=1\n";
  CHECK(split_lines(render_manifest(same))[4] !=
        split_lines(render_manifest(m))[4]);
}

TEST_CASE("write_with_manifest leaves artifact plus sidecar") {
  const std::string dir = "/tmp/phonoq_manifest_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/out.txt";

  RunManifest m;
  m.command = "phonoq eval";
  m.config_text = "fps=50\n";
  m.outputs = {path};
  write_with_manifest(path, "payload\n", m);

  CHECK(read_file(path) == "payload\n");
  const std::string sidecar = read_file(path + ".manifest");
  CHECK(sidecar.rfind("# phonoq run manifest v1\n", 0) == 0);
  CHECK(sidecar.find("command\tphonoq eval\n") != std::string::npos);
}
