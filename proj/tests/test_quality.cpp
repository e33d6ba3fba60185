// tests/test_quality.cpp

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

#include <set>

#include "corpusforge/error.hpp"
#include "corpusforge/quality.hpp"
#include "test_util.hpp"

using namespace corpusforge;
using namespace corpusforge::quality;

namespace {

CorpusManifest scored(const std::vector<double>& scores, const std::string& scorer = "dnsmos") {
  CorpusManifest m;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    AudioSegment s;
    s.id = "s" + std::to_string(i);
    s.audio_path = s.id + ".wav";
    s.end_s = 60.0;
    s.scores[scorer] = scores[i];
    m.segments.push_back(s);
  }
  return m;
}

std::vector<std::string> ids(const CorpusManifest& m) {
  std::vector<std::string> out;
  for (const auto& s : m.segments) out.push_back(s.id);
  return out;
}

HeuristicReport clean_report() { return {40.0, 0.1, 0.1, 0.0}; }

}  // namespace

TEST_CASE("score file parsing and ingest") {
  const auto rows = parse_score_csv("segment_id,scorer,score\ns0,dnsmos,4.3\n");
  auto r = ingest_scores(scored({1.0, 2.0}, "wvmos"), rows);
  CHECK(r.manifest.segments[0].scores.at("dnsmos") == 4.3);
  CHECK(r.warnings.empty());
  auto again = ingest_scores(r.manifest, parse_score_csv("segment_id,scorer,score\ns0,dnsmos,4.5\n"));
  CHECK(again.manifest.segments[0].scores.at("dnsmos") == 4.5);
  CHECK(again.warnings.size() == 1);

  CHECK_THROWS_AS(parse_score_csv("segment_id,scorer,score\ns0,dnsmos,5.7\n"), InputError);
  CHECK_THROWS_AS(parse_score_csv("segment_id,scorer,score\ns0,dnsmos,0.99\n"), InputError);
  CHECK_THROWS_AS(parse_score_csv("segment_id,scorer,score\ns0,d,4\ns0,d,3\n"), InputError);
  CHECK_THROWS_AS(parse_score_csv("id,scorer,score\ns0,d,4\n"), InputError);
}

TEST_CASE("ingest lists every unknown id") {
  try {
    ingest_scores(scored({4.0}), parse_score_csv("segment_id,scorer,score\nzz,d,4\nyy,d,4\n"));
    FAIL("expected error");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("zz") != std::string::npos);
    CHECK(msg.find("yy") != std::string::npos);
  }
}

TEST_CASE("estimate_snr") {
  SUBCASE("constant tone is 0 dB") {
    CHECK(estimate_snr(cftest::waveform(cftest::tone(1000.0, 0.5, 16000))) == doctest::Approx(0.0).epsilon(1e-6));
  }
  SUBCASE("two-level tone is about 40 dB") {
    Eigen::VectorXd x = cftest::tone(1000.0, 1.0, 32000);
    x.tail(16000) *= 0.01;
    CHECK(estimate_snr(cftest::waveform(x)) == doctest::Approx(40.0).epsilon(0.01));
  }
  SUBCASE("silence and short input are errors") {
    CHECK_THROWS_AS(estimate_snr(cftest::waveform(Eigen::VectorXd::Zero(16000))), InputError);
    CHECK_THROWS_AS(estimate_snr(cftest::waveform(cftest::tone(440.0, 0.5, 400))), InputError);
  }
  SUBCASE("digital silence floor is capped") {
    Eigen::VectorXd x = cftest::tone(300.0, 0.5, 16000);
    x.head(8000).setZero();
    CHECK(estimate_snr(cftest::waveform(x)) == kSnrCapDb);
  }
}

TEST_CASE("estimate_snr is invariant to global gain") {
  cftest::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x = rng.noise(8000, 0.1);
    x.segment(rng.integer(0, 4000), 2000) *= rng.uniform(2.0, 30.0);
    const double base = estimate_snr(cftest::waveform(x));
    const double k = rng.uniform(0.01, 5.0);
    CHECK(std::abs(estimate_snr(cftest::waveform(x * k)) - base) < 1e-6);
  }
}

TEST_CASE("spectral flatness conventions") {
  CHECK(spectral_flatness(Eigen::VectorXd::Zero(16)) == 0.0);
  CHECK(spectral_flatness(Eigen::VectorXd::Constant(16, 3.0)) == doctest::Approx(1.0));
  Eigen::VectorXd one_zero = Eigen::VectorXd::Ones(8);
  one_zero[3] = 0.0;
  CHECK(spectral_flatness(one_zero) == 0.0);
}

TEST_CASE("music_likelihood on noise, tone and silence") {
  cftest::Rng rng(37);
  const auto noise = music_likelihood(cftest::waveform(rng.noise(32000, 0.3)), 1.0);
  CHECK(noise.head > 0.5);
  CHECK(noise.tail > 0.5);
  const auto tone = music_likelihood(cftest::waveform(cftest::tone(1000.0, 0.5, 32000)), 1.0);
  CHECK(tone.head < 0.1);
  CHECK(tone.tail < 0.1);
  const auto silence = music_likelihood(cftest::waveform(Eigen::VectorXd::Zero(32000)), 1.0);
  CHECK(silence.head == 0.0);
  CHECK(silence.tail == 0.0);
  CHECK_THROWS_AS(music_likelihood(cftest::waveform(Eigen::VectorXd::Zero(20000)), 1.0), InputError);
}

TEST_CASE("clipping ratio") {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(100, 0.5);
  x.head(3).setConstant(1.0);
  x[50] = -1.0;
  CHECK(clipping_ratio(cftest::waveform(x)) == doctest::Approx(0.04));
}

TEST_CASE("classify_segment examples") {
  CHECK(classify_segment(clean_report(), {}, std::nullopt) == SegmentClass::kGoodRecording);
  HeuristicReport noisy = clean_report();
  noisy.snr_db = 3.0;
  CHECK(classify_segment(noisy, {true, false}, std::nullopt) == SegmentClass::kOverlappedSpeech);
  CHECK(classify_segment(clean_report(), {}, 0.5) == SegmentClass::kWrongTranscription);
  CHECK(classify_segment(clean_report(), {}, 0.20) == SegmentClass::kGoodRecording);
  HeuristicReport music = noisy;
  music.spectral_flatness_tail = 0.9;
  CHECK(classify_segment(music, {true, true}, 0.9) == SegmentClass::kBackgroundMusic);
}

TEST_CASE("select examples") {
  const auto m = scored({4.5, 4.0, 3.2});
  CHECK(ids(select(m, SelectionPolicy::automatic("dnsmos", 4.0))) == std::vector<std::string>{"s0"});
  CHECK(select(CorpusManifest{}, SelectionPolicy{}).segments.empty());
  try {
    select(scored({4.5, 4.1}, "wvmos"), SelectionPolicy::automatic("dnsmos"));
    FAIL("expected error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("s1") != std::string::npos);
  }
  SelectionPolicy bad = SelectionPolicy::automatic("dnsmos", 5.5);
  CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("manual selection of a 1200-segment good fixture") {
  CorpusManifest m;
  for (int i = 0; i < 1500; ++i) {
    AudioSegment s;
    s.id = "m" + std::to_string(i);
    s.audio_path = "x.wav";
    s.end_s = 3.0;
    s.class_label = i % 5 == 0 ? SegmentClass::kBadRecording : SegmentClass::kGoodRecording;
    m.segments.push_back(s);
  }
  const auto kept = select(m, SelectionPolicy::manual());
  double secs = 0.0;
  for (const auto& s : kept.segments) secs += s.duration_s();
  CHECK(kept.segments.size() == 1200);
  CHECK(secs / 60.0 == doctest::Approx(60.0));
}

TEST_CASE("max_minutes keeps best scores and original order") {
  auto m = scored({4.2, 4.9, 4.5, 4.7});
  SelectionPolicy p = SelectionPolicy::automatic("dnsmos", 4.0);
  p.max_minutes = 2.0;
  CHECK(ids(select(m, p)) == std::vector<std::string>{"s1", "s3"});
}

TEST_CASE("select is monotone in threshold and idempotent") {
  cftest::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> scores(static_cast<std::size_t>(rng.integer(0, 25)));
    for (auto& s : scores) s = std::round(rng.uniform(1.0, 5.0) * 10.0) / 10.0;
    auto m = scored(scores);
    for (auto& s : m.segments) {
      s.end_s = rng.uniform(1.0, 90.0);
      s.class_label = rng.coin(0.7) ? SegmentClass::kGoodRecording : SegmentClass::kBadRecording;
    }
    SelectionPolicy lo = SelectionPolicy::automatic("dnsmos", rng.uniform(1.0, 4.5));
    if (rng.coin()) lo.required_class = SegmentClass::kGoodRecording;
    if (rng.coin()) lo.max_minutes = rng.uniform(0.0, 5.0);
    SelectionPolicy hi = lo;
    hi.threshold = rng.uniform(lo.threshold, 5.0);
    const auto a = select(m, lo);
    const auto b = select(m, hi);
    if (!lo.max_minutes) {
      std::set<std::string> a_ids;
      for (const auto& s : a.segments) a_ids.insert(s.id);
      for (const auto& s : b.segments) CHECK(a_ids.count(s.id) == 1);
    }
    CHECK(select(a, lo) == a);
    CHECK(select(b, hi) == b);
    for (const auto& s : a.segments) CHECK(s.scores.at("dnsmos") > lo.threshold);
  }
}

TEST_CASE("compute_heuristics fields are finite and in range") {
  cftest::Rng rng(43);
  Eigen::VectorXd x = cftest::tone(220.0, 0.4, 24000) + rng.noise(24000, 0.01);
  const auto h = compute_heuristics(cftest::waveform(x));
  CHECK(std::isfinite(h.snr_db));
  CHECK(h.spectral_flatness_head >= 0.0);
  CHECK(h.spectral_flatness_head <= 1.0);
  CHECK(h.clipping_ratio == 0.0);
}
