// Copyright 2026 The madmat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MADMAT_IO_HPP_
#define MADMAT_IO_HPP_

// Canonical JSON persistence for configurations, certificates, and matrix
// files.  Every scalar on disk is either a JSON integer or a canonical
// rational string "num" / "num/den" — never a float.  Serialization is
// canonical (fixed key order, two-space indent, trailing newline), and
// parsing is strict: unknown keys, wrong types, malformed or non-canonical
// rationals, and shape mismatches all raise ParseError, so that
// parse ∘ serialize is the identity and serialize ∘ parse is byte-identical
// on canonically-serialized files.

#include <string>
#include <vector>

#include "madmat/construction.hpp"
#include "madmat/diophantine.hpp"
#include "madmat/rational.hpp"

namespace madmat {

// Free-standing matrix input for `scan` and `sums`: row-major rational
// entries plus an optional inhomogeneous shift (empty when absent).
struct MatrixFile {
  RationalMatrix matrix;
  std::vector<Rational> gamma;
};

std::string serialize_config(const ConstructionConfig& config);
ConstructionConfig parse_config(const std::string& text);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

std::string serialize_matrix_file(const MatrixFile& file);
MatrixFile parse_matrix_file(const std::string& text);

// Whole-file helpers; throw Error when the file cannot be read or written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace madmat

#endif  // MADMAT_IO_HPP_
