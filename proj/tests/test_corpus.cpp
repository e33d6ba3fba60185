// tests/test_corpus.cpp

// Copyright 2026  The CorpusForge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cstring>

#include "corpusforge/corpus.hpp"
#include "corpusforge/csv.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"
#include "corpusforge/wav.hpp"
#include "test_util.hpp"

using namespace corpusforge;
using cftest::TempDir;

namespace {

// Minimal RIFF writer for hand-built headers.
std::string riff(int channels, int bits, int format, int sr, const std::vector<std::int16_t>& data) {
  std::string out;
  auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff)); };
  auto u16 = [&](std::uint16_t v) { out.push_back(char(v & 0xff)); out.push_back(char(v >> 8)); };
  const auto bytes = static_cast<std::uint32_t>(data.size() * 2);
  out += "RIFF";
  u32(36 + bytes);
  out += "WAVEfmt ";
  u32(16);
  u16(static_cast<std::uint16_t>(format));
  u16(static_cast<std::uint16_t>(channels));
  u32(static_cast<std::uint32_t>(sr));
  u32(static_cast<std::uint32_t>(sr * channels * bits / 8));
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(static_cast<std::uint16_t>(bits));
  out += "data";
  u32(bytes);
  for (auto s : data) u16(static_cast<std::uint16_t>(s));
  return out;
}

AudioSegment make_segment(const std::string& id, double dur, std::optional<SegmentClass> c = {}) {
  AudioSegment s;
  s.id = id;
  s.audio_path = "/data/" + id + ".wav";
  s.start_s = 1.0;
  s.end_s = 1.0 + dur;
  s.transcript_raw = "text " + id;
  s.class_label = c;
  return s;
}

}  // namespace

TEST_CASE("utf8 helpers") {
  CHECK(text::to_utf8(text::to_u32("مرحبا world")) == "مرحبا world");
  CHECK(text::split_whitespace("  a \t b\n c ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(text::trim("  x \t") == "x");
  CHECK(text::nfc("é") == "é");
  CHECK(text::is_punct(U'،'));
  CHECK_FALSE(text::is_punct(U'ب'));
  CHECK(text::is_arabic_diacritic(0x064E));
  CHECK_FALSE(text::is_arabic_diacritic(0x0653));
}

TEST_CASE("csv parse and quote") {
  CHECK(csv::parse_line("a,\"b,c\",\"d\"\"e\",") == csv::Row{"a", "b,c", "d\"e", ""});
  CHECK(csv::quote("plain") == "plain");
  CHECK(csv::quote("x,y") == "\"x,y\"");
  std::istringstream in("# comment\nh1,h2\n\n1,2\n3,4\n");
  const auto t = csv::read(in);
  CHECK(t.header == csv::Row{"h1", "h2"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.line_numbers[1] == 5);
  std::istringstream bad("a,b\n1\n");
  CHECK_THROWS_AS(csv::read(bad), InputError);
  CHECK(csv::parse_double(csv::format_double(0.1)) == 0.1);
  CHECK_THROWS_AS(csv::parse_double("4.x"), InputError);
}

TEST_CASE("load_wav scales int16 by 1/32768") {
  TempDir dir("wav");
  cftest::write_file(dir / "a.wav", riff(1, 16, 1, 16000, {0, 16384, -32768}));
  const Waveform w = load_wav(dir / "a.wav");
  CHECK(w.sample_rate_hz == 16000);
  REQUIRE(w.size() == 3);
  CHECK(w.samples[0] == 0.0);
  CHECK(w.samples[1] == 0.5);
  CHECK(w.samples[2] == -1.0);
}

TEST_CASE("load_wav error kinds are distinct") {
  TempDir dir("wavbad");
  cftest::write_file(dir / "stereo.wav", riff(2, 16, 1, 16000, {1, 2, 3, 4}));
  cftest::write_file(dir / "float.wav", riff(1, 32, 3, 16000, {0, 0}));
  cftest::write_file(dir / "junk.wav", "not a wav file at all");
  auto code_of = [&](const std::string& name) {
    try {
      load_wav(dir / name);
    } catch (const WavError& e) {
      return e.code();
    }
    FAIL("no error");
    return WavErrorCode::kUnreadable;
  };
  CHECK(code_of("stereo.wav") == WavErrorCode::kNonMono);
  CHECK(code_of("float.wav") == WavErrorCode::kUnsupportedEncoding);
  CHECK(code_of("junk.wav") == WavErrorCode::kUnreadable);
  CHECK(code_of("missing.wav") == WavErrorCode::kUnreadable);
  try {
    load_wav(dir / "stereo.wav");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 1);
  }
}

TEST_CASE("wav write/read is within one quantization step") {
  TempDir dir("wavrt");
  cftest::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(rng.integer(1, 500));
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    write_wav(dir / "rt.wav", cftest::waveform(x, 22050));
    const Waveform back = load_wav(dir / "rt.wav");
    CHECK(back.sample_rate_hz == 22050);
    REQUIRE(back.size() == x.size());
    CHECK((back.samples - x).cwiseAbs().maxCoeff() <= 1.0 / 32768.0);
  }
}

TEST_CASE("load_wav_range cuts by seconds") {
  TempDir dir("range");
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(16000, 0.0, 0.5);
  write_wav(dir / "r.wav", cftest::waveform(x));
  const Waveform part = load_wav_range(dir / "r.wav", 0.25, 0.5);
  CHECK(part.size() == 4000);
  CHECK_THROWS_AS(load_wav_range(dir / "r.wav", 0.5, 2.0), InputError);
}

TEST_CASE("manifest empty file and two-segment round trip") {
  TempDir dir("man");
  cftest::write_file(dir / "empty.jsonl", "");
  CHECK(read_manifest(dir / "empty.jsonl").segments.empty());

  CorpusManifest m;
  m.segments = {make_segment("a", 2.5), make_segment("b", 3.0, SegmentClass::kGoodRecording)};
  m.segments[0].scores["dnsmos"] = 4.25;
  m.segments[1].transcript_vowelized = "نَص";
  write_manifest(m, dir / "two.jsonl");
  const std::string body = cftest::read_file(dir / "two.jsonl");
  CHECK(std::count(body.begin(), body.end(), '\n') == 2);
  CHECK(read_manifest(dir / "two.jsonl") == m);
}

TEST_CASE("manifest preserves unknown fields and provenance") {
  const std::string text =
      "{\"manifest\":{\"source_name\":\"mgb\",\"created_at\":\"2026-01-01\",\"tool_version\":\"x\"}}\n"
      "{\"id\":\"s1\",\"audio_path\":\"a.wav\",\"start_s\":0,\"end_s\":1.5,\"speaker_id\":\"\","
      "\"transcript_raw\":\"hi\",\"sample_rate_hz\":16000,\"zzz\":[1,2],\"aaa\":{\"k\":true}}\n";
  const CorpusManifest m = parse_manifest(text);
  CHECK(m.source_name == "mgb");
  REQUIRE(m.segments.size() == 1);
  CHECK(m.segments[0].extra["zzz"] == nlohmann::ordered_json::array({1, 2}));
  const CorpusManifest again = parse_manifest(serialize_manifest(m));
  CHECK(again == m);
  CHECK(serialize_manifest(again) == serialize_manifest(m));
}

TEST_CASE("manifest errors name the line and the id") {
  const std::string seg = R"({"id":"dup","audio_path":"a.wav","start_s":0,"end_s":1,"transcript_raw":"x"})";
  try {
    parse_manifest(seg + "\n" + seg + "\n");
    FAIL("expected error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("dup") != std::string::npos);
  }
  try {
    parse_manifest(seg + "\n{not json\n");
    FAIL("expected error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_manifest(R"({"id":"x","audio_path":"a","start_s":2,"end_s":1,"transcript_raw":""})"),
                  InputError);
}

TEST_CASE("manifest round trip over generated manifests") {
  cftest::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    CorpusManifest m;
    if (rng.coin()) {
      m.source_name = "src" + std::to_string(trial);
      m.created_at = "2026-10-18T00:00:00Z";
      m.tool_version = "t";
    }
    const int n = rng.integer(0, 6);
    for (int i = 0; i < n; ++i) {
      AudioSegment s = make_segment("id" + std::to_string(i), rng.uniform(0.1, 30.0));
      s.start_s = rng.uniform(0.0, 100.0);
      s.end_s = s.start_s + rng.uniform(0.01, 20.0);
      if (rng.coin()) s.class_label = kAllSegmentClasses[static_cast<std::size_t>(rng.integer(0, 5))];
      if (rng.coin()) s.scores["dnsmos"] = rng.uniform(1.0, 5.0);
      if (rng.coin()) s.scores["wvmos"] = rng.uniform(1.0, 5.0);
      if (rng.coin()) s.transcript_repaired = "r\"ep\\aired ٌ" + std::to_string(i);
      if (rng.coin()) s.extra["note"] = rng.uniform();
      m.segments.push_back(s);
    }
    CHECK(parse_manifest(serialize_manifest(m)) == m);
  }
}

TEST_CASE("summarize_corpus") {
  CorpusManifest empty;
  const ClassSummary z = summarize_corpus(empty);
  CHECK(z.total_segments == 0);
  for (const auto& r : z.rows) CHECK(r.segments == 0);

  CorpusManifest two;
  two.segments = {make_segment("a", 30.0, SegmentClass::kGoodRecording),
                  make_segment("b", 30.0, SegmentClass::kGoodRecording)};
  const ClassSummary s = summarize_corpus(two);
  const ClassRow& good = s.rows[5];
  CHECK(good.label == SegmentClass::kGoodRecording);
  CHECK(good.segments == 2);
  CHECK(good.minutes() == doctest::Approx(1.0));

  two.segments.push_back(make_segment("c", 1.0));
  CHECK_THROWS_AS(summarize_corpus(two), InputError);
}

TEST_CASE("summary fixture with 1200 good segments totalling 60 minutes") {
  CorpusManifest m;
  for (int i = 0; i < 1200; ++i) m.segments.push_back(make_segment("g" + std::to_string(i), 3.0, SegmentClass::kGoodRecording));
  for (int i = 0; i < 37; ++i) m.segments.push_back(make_segment("m" + std::to_string(i), 4.0, SegmentClass::kBackgroundMusic));
  const ClassSummary s = summarize_corpus(m);
  CHECK(s.rows[5].segments == 1200);
  CHECK(s.rows[5].minutes() == doctest::Approx(60.0));
  const std::string text = format_summary_text(s);
  CHECK(text.find("Good Segments") != std::string::npos);
  CHECK(text.find(" 1200 ") != std::string::npos);
  CHECK(text.find(" 60\n") != std::string::npos);
  std::size_t total = 0;
  double secs = 0.0;
  for (const auto& r : s.rows) {
    total += r.segments;
    secs += r.seconds;
  }
  CHECK(total == s.total_segments);
  CHECK(secs == s.total_seconds);
}

TEST_CASE("summary rows partition randomly labelled manifests") {
  cftest::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    CorpusManifest m;
    const int n = rng.integer(0, 40);
    double expect_secs = 0.0;
    for (int i = 0; i < n; ++i) {
      auto s = make_segment(std::to_string(i), rng.uniform(0.5, 20.0),
                            kAllSegmentClasses[static_cast<std::size_t>(rng.integer(0, 5))]);
      expect_secs += s.duration_s();
      m.segments.push_back(s);
    }
    const ClassSummary s = summarize_corpus(m);
    std::size_t total = 0;
    double secs = 0.0;
    for (const auto& r : s.rows) {
      total += r.segments;
      secs += r.seconds;
    }
    CHECK(total == static_cast<std::size_t>(n));
    CHECK(total == s.total_segments);
    CHECK(secs == s.total_seconds);
    CHECK(secs == doctest::Approx(expect_secs));
  }
}

TEST_CASE("segment class names round trip") {
  for (SegmentClass c : kAllSegmentClasses) CHECK(parse_segment_class(to_string(c)) == c);
  CHECK_FALSE(parse_segment_class("great_recording"));
}
