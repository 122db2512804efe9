// SPDX-License-Identifier: Apache-2.0

#include "usynth/qasm.hpp"

#include <cctype>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

namespace usynth {

namespace {

std::string format_angle(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string emit_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << c.n << "];\n";
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::U3) {
      out << "u3(" << format_angle(g.theta) << "," << format_angle(g.phi) << ","
          << format_angle(g.lambda) << ") q[" << g.wire0 << "];\n";
    } else {
      out << "cx q[" << g.wire0 << "],q[" << g.wire1 << "];\n";
    }
  }
  return out.str();
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Statement {
  std::string text;
  int line = 0;
};

// Splits on ';' with '//' comments stripped, remembering the line each
// statement starts on.
std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::string current;
  int line = 1;
  int start_line = 1;
  for (size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      --i;
      continue;
    }
    if (ch == '\n') ++line;
    if (ch == ';') {
      out.push_back({current, start_line});
      current.clear();
      start_line = line;
      continue;
    }
    if (current.empty() && std::isspace(static_cast<unsigned char>(ch))) {
      start_line = line;
      continue;
    }
    current.push_back(ch);
  }
  for (char ch : current) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw QasmParseError(start_line, "statement missing ';'");
    }
  }
  return out;
}

class StatementParser {
 public:
  StatementParser(const std::string& text, int line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw QasmParseError(line_, what + " in '" + text_ + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool try_consume(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!try_consume(ch)) fail(std::string("expected '") + ch + "'");
  }

  std::string identifier() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '.')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return text_.substr(start, pos_ - start);
  }

  int integer() {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  // qubit reference: <reg>[<index>]
  std::pair<std::string, int> qubit() {
    const std::string reg = identifier();
    expect('[');
    const int idx = integer();
    expect(']');
    return {reg, idx};
  }

  // Arithmetic over numbers and pi: + - * / and parentheses.
  double expression() {
    double value = term();
    while (true) {
      if (try_consume('+')) {
        value += term();
      } else if (try_consume('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

 private:
  double term() {
    double value = factor();
    while (true) {
      if (try_consume('*')) {
        value *= factor();
      } else if (try_consume('/')) {
        value /= factor();
      } else {
        return value;
      }
    }
  }

  double factor() {
    skip_space();
    if (try_consume('-')) return -factor();
    if (try_consume('+')) return factor();
    if (try_consume('(')) {
      const double value = expression();
      expect(')');
      return value;
    }
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                text_[pos_] == '.')) {
      size_t used = 0;
      const double value = std::stod(text_.substr(pos_), &used);
      pos_ += used;
      return value;
    }
    const std::string name = identifier();
    if (name == "pi") return kPi;
    fail("unknown symbol '" + name + "' in expression");
  }

  const std::string& text_;
  int line_;
  size_t pos_ = 0;
};

}  // namespace

Circuit parse_qasm(const std::string& text) {
  Circuit circuit;
  std::string reg_name;
  bool saw_version = false;

  for (const Statement& st : split_statements(text)) {
    StatementParser p(st.text, st.line);
    if (p.at_end()) continue;
    const std::string head = p.identifier();

    if (head == "OPENQASM") {
      const std::string version = p.identifier();
      if (version != "2.0") p.fail("unsupported OPENQASM version " + version);
      saw_version = true;
      continue;
    }
    if (head == "include") {
      continue;  // qelib1.inc is implied
    }
    if (head == "qreg") {
      if (!reg_name.empty()) p.fail("multiple qreg declarations are not supported");
      auto [name, size] = p.qubit();
      reg_name = name;
      circuit.n = size;
      if (size < 1) p.fail("empty register");
      continue;
    }
    if (head == "measure" || head == "creg" || head == "barrier" || head == "gate" ||
        head == "opaque" || head == "if" || head == "reset") {
      p.fail("unsupported construct '" + head + "'");
    }

    // Gate application.
    if (reg_name.empty()) p.fail("gate before qreg declaration");
    auto read_wire = [&](StatementParser& sp) {
      auto [name, idx] = sp.qubit();
      if (name != reg_name) sp.fail("unknown register '" + name + "'");
      if (idx < 0 || idx >= circuit.n) sp.fail("qubit index out of range");
      return idx;
    };

    std::vector<double> args;
    if (p.try_consume('(')) {
      if (!p.try_consume(')')) {
        do {
          args.push_back(p.expression());
        } while (p.try_consume(','));
        p.expect(')');
      }
    }

    auto expect_args = [&](size_t count) {
      if (args.size() != count) p.fail("wrong number of parameters for '" + head + "'");
    };

    if (head == "cx") {
      expect_args(0);
      const int control = read_wire(p);
      p.expect(',');
      const int target = read_wire(p);
      if (control == target) p.fail("cx with equal qubits");
      circuit.gates.push_back(make_cnot(control, target));
    } else if (head == "u3") {
      expect_args(3);
      circuit.gates.push_back(make_u3(read_wire(p), args[0], args[1], args[2]));
    } else if (head == "u2") {
      expect_args(2);
      circuit.gates.push_back(make_u3(read_wire(p), kPi / 2.0, args[0], args[1]));
    } else if (head == "u1" || head == "rz") {
      expect_args(1);
      circuit.gates.push_back(make_u3(read_wire(p), 0.0, 0.0, args[0]));
    } else if (head == "rx") {
      expect_args(1);
      circuit.gates.push_back(make_u3(read_wire(p), args[0], -kPi / 2.0, kPi / 2.0));
    } else if (head == "ry") {
      expect_args(1);
      circuit.gates.push_back(make_u3(read_wire(p), args[0], 0.0, 0.0));
    } else if (head == "h") {
      expect_args(0);
      circuit.gates.push_back(make_u3(read_wire(p), kPi / 2.0, 0.0, kPi));
    } else if (head == "x") {
      expect_args(0);
      circuit.gates.push_back(make_u3(read_wire(p), kPi, 0.0, kPi));
    } else {
      p.fail("unsupported gate '" + head + "'");
    }
    if (!p.at_end()) p.fail("trailing input");
  }

  if (!saw_version) throw QasmParseError(1, "missing OPENQASM 2.0 header");
  if (reg_name.empty()) throw QasmParseError(1, "missing qreg declaration");
  return circuit;
}

}  // namespace usynth
