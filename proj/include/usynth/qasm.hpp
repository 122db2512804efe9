// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "usynth/circuit.hpp"

namespace usynth {

/// OpenQASM 2.0 text: header, one `qreg q[n];`, then one `u3`/`cx` statement
/// per gate in application order. Angles are printed with 17 significant
/// digits so they round-trip exactly.
std::string emit_qasm(const Circuit& c);

struct QasmParseError : std::runtime_error {
  QasmParseError(int line_number, const std::string& what)
      : std::runtime_error("qasm: line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
  int line;
};

/// Parses the subset: single qreg; gates u1/u2/u3/rz/rx/ry/h/x/cx. One-qubit
/// gates are normalized to u3 on load. Angle expressions may use numbers,
/// `pi`, unary minus and */+- arithmetic. Anything else (measure, barrier,
/// creg, custom gates, ...) raises QasmParseError with the line number.
Circuit parse_qasm(const std::string& text);

}  // namespace usynth
