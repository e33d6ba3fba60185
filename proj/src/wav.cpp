// src/wav.cpp

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

#include "corpusforge/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace corpusforge {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

Waveform load_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError(WavErrorCode::kUnreadable, "cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  auto unreadable = [&](const std::string& why) {
    return WavError(WavErrorCode::kUnreadable, path + ": " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw unreadable("not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + 16 > bytes.size()) throw unreadable("truncated fmt chunk");
      std::uint16_t format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible && size >= 40 && body + 26 <= bytes.size())
        format = read_u16(bytes.data() + body + 24);
      if (format != kFormatPcm)
        throw WavError(WavErrorCode::kUnsupportedEncoding,
                       path + ": unsupported encoding (format tag " + std::to_string(format) + ")");
      if (channels != 1)
        throw WavError(WavErrorCode::kNonMono,
                       path + ": non-mono (" + std::to_string(channels) + " channels)");
      if (bits != 16)
        throw WavError(WavErrorCode::kUnsupportedEncoding,
                       path + ": unsupported encoding (" + std::to_string(bits) + "-bit)");
      if (rate == 0) throw unreadable("zero sample rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw unreadable("data chunk before fmt chunk");
      const std::size_t available = bytes.size() - body;
      // Streams written without a final size report 0 or 0xFFFFFFFF.
      std::size_t n_bytes = (size == 0 || size == 0xFFFFFFFFu) ? available : size;
      if (n_bytes > available) throw unreadable("truncated data chunk");
      const std::size_t n = n_bytes / 2;
      Waveform w;
      w.sample_rate_hz = static_cast<int>(rate);
      w.samples.resize(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::int16_t>(read_u16(bytes.data() + body + 2 * i));
        w.samples[static_cast<Eigen::Index>(i)] = static_cast<double>(v) / 32768.0;
      }
      return w;
    }
    pos = body + size + (size & 1u);
  }
  throw unreadable(have_fmt ? "no data chunk" : "no fmt chunk");
}

Waveform load_wav_range(const std::string& path, double start_s, double end_s) {
  Waveform full = load_wav(path);
  const auto n = full.samples.size();
  if (start_s < 0.0 || end_s < start_s)
    throw InputError(path + ": invalid range [" + std::to_string(start_s) + ", " +
                     std::to_string(end_s) + "] s");
  // One sample of slack for boundaries rounded to milliseconds upstream.
  if (std::llround(end_s * full.sample_rate_hz) > n + 1)
    throw InputError(path + ": range ends at " + std::to_string(end_s) + " s, file is " +
                     std::to_string(full.duration_s()) + " s");
  auto to_index = [&](double t) {
    auto i = static_cast<Eigen::Index>(std::llround(t * full.sample_rate_hz));
    return std::clamp<Eigen::Index>(i, 0, n);
  };
  const Eigen::Index b = to_index(start_s);
  const Eigen::Index e = std::max(b, to_index(end_s));
  Waveform part;
  part.sample_rate_hz = full.sample_rate_hz;
  part.samples = full.samples.segment(b, e - b);
  return part;
}

void write_wav(const std::string& path, const Waveform& wave) {
  if (wave.sample_rate_hz <= 0) throw InputError("write_wav: sample rate must be positive");
  const auto n = static_cast<std::uint32_t>(wave.samples.size());
  std::vector<unsigned char> out;
  out.reserve(44 + 2 * static_cast<std::size_t>(n));
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + 2 * n);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(wave.sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(wave.sample_rate_hz) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, 2 * n);
  for (Eigen::Index i = 0; i < wave.samples.size(); ++i) {
    double x = wave.samples[i];
    if (!std::isfinite(x)) throw InvariantError("write_wav: non-finite sample");
    long v = std::lround(x * 32768.0);
    v = std::clamp<long>(v, -32768, 32767);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace corpusforge
