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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "phonoq/default_table.hpp"
#include "phonoq/frames.hpp"
#include "phonoq/rng.hpp"
#include "phonoq/textgrid.hpp"

using namespace phonoq;

namespace {

PhoneSegment seg(double a, double b, const char* phone) {
  PhoneSegment s;
  s.start = a;
  s.end = b;
  s.phone.symbol = phone;
  return s;
}

}  // namespace

TEST_CASE("frame_count") {
  CHECK(frame_count(0.0, 50.0) == 0);
  CHECK(frame_count(0.019, 50.0) == 0);   // shorter than one frame
  CHECK(frame_count(0.02, 50.0) == 1);
  CHECK(frame_count(0.06, 50.0) == 3);    // 0.06 * 50 is not exact in binary
  CHECK(frame_count(1.0, 50.0) == 50);
  CHECK(frame_count(1.699, 50.0) == 84);
  CHECK(frame_count(3.6, 50.0) == 180);
  CHECK(frame_count(1.0, 100.0) == 100);
  CHECK_THROWS_AS(frame_count(-0.1, 50.0), Error);
  CHECK_THROWS_AS(frame_count(1.0, 0.0), Error);
}

TEST_CASE("frame centers at 50 fps") {
  CHECK(frame_center(0, 50.0) == Catch::Approx(0.01));
  CHECK(frame_center(1, 50.0) == Catch::Approx(0.03));
  CHECK(frame_center(49, 50.0) == Catch::Approx(0.99));
}

TEST_CASE("membership is half-open") {
  const PhoneSegment s = seg(0.10, 0.20, "a");
  CHECK_FALSE(segment_contains(s, 0.09));
  CHECK(segment_contains(s, 0.10));   // start is inclusive
  CHECK(segment_contains(s, 0.15));
  CHECK_FALSE(segment_contains(s, 0.20));  // end is exclusive
}

TEST_CASE("a boundary on a frame center assigns the frame to the later segment") {
  // Frame 2 center is 0.05; the boundary sits exactly there.
  const std::vector<PhoneSegment> segs = {seg(0.0, 0.05, "a"),
                                          seg(0.05, 0.1, "k")};
  const FrameLabelSeq frames =
      segments_to_frames(segs, default_table(), 0.1, 50.0);
  REQUIRE(frames.frames() == 5);
  CHECK(frames.labels[1].manner == Manner::Vowel);
  CHECK(frames.labels[2].manner == Manner::Stop);  // center == start
}

TEST_CASE("gaps and silence segments rasterize to silence") {
  const std::vector<PhoneSegment> segs = {seg(0.04, 0.10, "a"),
                                          seg(0.14, 0.20, "n")};
  const FrameLabelSeq frames =
      segments_to_frames(segs, default_table(), 0.24, 50.0);
  REQUIRE(frames.frames() == 12);
  // Centers: 0.01 silence, 0.03 silence (gap), 0.05..0.09 a, 0.11/0.13
  // silence, 0.15..0.19 n, 0.21/0.23 trailing silence.
  CHECK(frames.labels[0].manner == Manner::Silence);
  CHECK(frames.labels[1].manner == Manner::Silence);
  CHECK(frames.labels[2].manner == Manner::Vowel);
  CHECK(frames.labels[4].manner == Manner::Vowel);
  CHECK(frames.labels[5].manner == Manner::Silence);
  CHECK(frames.labels[7].manner == Manner::Nasal);
  CHECK(frames.labels[11].manner == Manner::Silence);
}

TEST_CASE("unsorted or overlapping segments are rejected") {
  const std::vector<PhoneSegment> unsorted = {seg(0.1, 0.2, "a"),
                                              seg(0.0, 0.1, "n")};
  CHECK_THROWS_AS(segments_to_frames(unsorted, default_table(), 0.2), Error);

  const std::vector<PhoneSegment> overlap = {seg(0.0, 0.12, "a"),
                                             seg(0.1, 0.2, "n")};
  CHECK_THROWS_AS(segments_to_frames(overlap, default_table(), 0.2), Error);
}

TEST_CASE("frames_to_segments recovers maximal runs") {
  const std::vector<PhoneSegment> segs = {seg(0.0, 0.1, "a"),
                                          seg(0.1, 0.2, "k")};
  const FrameLabelSeq frames =
      segments_to_frames(segs, default_table(), 0.26, 50.0);
  const auto spans = frames_to_segments(frames);
  REQUIRE(spans.size() == 3);
  CHECK(spans[0].start == 0.0);
  CHECK(spans[0].end == Catch::Approx(0.1));
  CHECK(spans[0].label.manner == Manner::Vowel);
  CHECK(spans[1].end == Catch::Approx(0.2));
  CHECK(spans[1].label.manner == Manner::Stop);
  CHECK(spans[2].label.manner == Manner::Silence);
  CHECK(spans[2].end == Catch::Approx(0.26));

  CHECK(frames_to_segments(FrameLabelSeq{}).empty());
}

TEST_CASE("round trip recovers boundaries within one frame") {
  // Boundaries deliberately off the frame lattice.
  const std::vector<PhoneSegment> segs = {
      seg(0.013, 0.147, "a"), seg(0.147, 0.310, "k"), seg(0.333, 0.480, "m")};
  const double duration = 0.52;
  const FrameLabelSeq frames =
      segments_to_frames(segs, default_table(), duration, 50.0);
  const auto spans = frames_to_segments(frames);

  for (const auto& s : segs) {
    bool found = false;
    for (const auto& span : spans) {
      if (!(span.label == *default_table().find(s.phone.symbol))) continue;
      found = true;
      CHECK(std::abs(span.start - s.start) <= 0.02 + 1e-9);
      CHECK(std::abs(span.end - s.end) <= 0.02 + 1e-9);
    }
    CHECK(found);
  }
}

TEST_CASE("language fixtures round trip within 20 ms") {
  const FeatureTable& table = default_table();
  for (const char* name : {"de.TextGrid", "en.TextGrid", "es.TextGrid",
                           "cs.TextGrid", "fr.TextGrid", "it.TextGrid",
                           "ru.TextGrid"}) {
    INFO(name);
    const Lang lang = parse_lang(std::string(name, 2));
    const Utterance utt = parse_textgrid(
        read_file(std::string(PHONOQ_FIXTURE_DIR) + "/" + name), lang, table);
    const FrameLabelSeq frames =
        segments_to_frames(utt.segments, table, utt.duration);
    const auto spans = frames_to_segments(frames);

    // Every original boundary between differing labels has a recovered
    // boundary within 20 ms.
    for (std::size_t i = 0; i + 1 < utt.segments.size(); ++i) {
      const FeatureVector a = table.map_phone(utt.segments[i].phone.symbol);
      const FeatureVector b =
          table.map_phone(utt.segments[i + 1].phone.symbol);
      if (a == b) continue;
      const double boundary = utt.segments[i].end;
      double best = 1e9;
      for (const auto& span : spans)
        best = std::min(best, std::abs(span.end - boundary));
      CHECK(best <= 0.02 + 1e-9);
    }
  }
}

TEST_CASE("frame CSV round trip") {
  Rng rng(derive_seed(123, 0, 0));
  std::vector<PhoneSegment> segs;
  double t = 0.0;
  for (const char* p : {"a", "s", "i", "tʃ", "u", "sil", "ŋ"}) {
    const double len = 0.04 + 0.02 * static_cast<double>(rng.below(5));
    segs.push_back(seg(t, t + len, p));
    t += len;
  }
  const FrameLabelSeq frames = segments_to_frames(segs, default_table(), t);

  const std::string csv = render_frame_csv(frames);
  const FrameLabelSeq back = parse_frame_csv(csv);
  REQUIRE(back.frames() == frames.frames());
  for (std::size_t i = 0; i < frames.frames(); ++i)
    CHECK(back.labels[i] == frames.labels[i]);

  CHECK_THROWS_AS(parse_frame_csv(""), Error);
  CHECK_THROWS_AS(parse_frame_csv("a,b,c\n"), Error);
  const std::string good_header = csv.substr(0, csv.find('\n') + 1);
  CHECK_THROWS_AS(parse_frame_csv(good_header + "1,0\n"), Error);
  // An invariant-violating row (vowel with no height) must be rejected.
  std::string bad = good_header;
  bad += "0,0,0,0,0,0,0,0,1,0,0,0,1,0,0,0,0,0,0,0,0,1\n";
  CHECK_THROWS_AS(parse_frame_csv(bad), Error);
}
