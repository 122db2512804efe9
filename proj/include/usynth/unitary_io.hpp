// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "usynth/matrix.hpp"

namespace usynth {

// Unitary file format. Line 1: "dim <d>"; then d rows of 2d whitespace-
// separated decimals, the (re, im) pairs of one matrix row. d must be a
// power of two and the matrix unitary within 1e-6.

CMatrix read_unitary_file(const std::string& path);
void write_unitary_file(const std::string& path, const CMatrix& u);

std::string format_unitary(const CMatrix& u);
CMatrix parse_unitary(const std::string& text);

}  // namespace usynth
