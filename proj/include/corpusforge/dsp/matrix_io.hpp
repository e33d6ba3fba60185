// include/corpusforge/dsp/matrix_io.hpp

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

#pragma once

#include <array>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace corpusforge::dsp {

// 16-byte header: magic "CFMX", rows (u32 LE), cols (u32 LE), 4 reserved
// zero bytes; then rows*cols float32 LE values in row-major order.
inline constexpr std::array<char, 4> kMatrixMagic = {'C', 'F', 'M', 'X'};
inline constexpr std::size_t kMatrixHeaderBytes = 16;

using FloatMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string encode_matrix(const FloatMatrix& m);
// `name` labels errors, typically the file path.
FloatMatrix decode_matrix(std::string_view bytes, const std::string& name = "<memory>");

FloatMatrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const FloatMatrix& m);

}  // namespace corpusforge::dsp
