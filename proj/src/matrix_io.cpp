// src/matrix_io.cpp

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

#include "corpusforge/dsp/matrix_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "corpusforge/error.hpp"

namespace corpusforge::dsp {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

}  // namespace

std::string encode_matrix(const FloatMatrix& m) {
  std::string out(kMatrixMagic.begin(), kMatrixMagic.end());
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  put_u32(out, 0);
  out.reserve(kMatrixHeaderBytes + 4 * static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_u32(out, std::bit_cast<std::uint32_t>(m(r, c)));
  return out;
}

FloatMatrix decode_matrix(std::string_view bytes, const std::string& name) {
  if (bytes.size() < kMatrixHeaderBytes)
    throw InputError(name + ": truncated matrix header");
  if (std::memcmp(bytes.data(), kMatrixMagic.data(), kMatrixMagic.size()) != 0)
    throw InputError(name + ": bad matrix magic");
  const std::uint64_t rows = get_u32(bytes.data() + 4);
  const std::uint64_t cols = get_u32(bytes.data() + 8);
  const std::uint64_t expected = kMatrixHeaderBytes + 4 * rows * cols;
  if (bytes.size() != expected)
    throw InputError(name + ": matrix payload is " + std::to_string(bytes.size()) +
                     " bytes, header implies " + std::to_string(expected));
  FloatMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  const char* p = bytes.data() + kMatrixHeaderBytes;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c, p += 4) {
      m(r, c) = std::bit_cast<float>(get_u32(p));
      if (!std::isfinite(m(r, c))) throw InputError(name + ": non-finite matrix entry");
    }
  return m;
}

FloatMatrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_matrix(buf.str(), path);
}

void write_matrix(const std::string& path, const FloatMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  const std::string bytes = encode_matrix(m);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace corpusforge::dsp
