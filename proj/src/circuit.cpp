// Copyright 2026 The cliffcert authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cliffcert/circuit.hpp"

#include <sstream>
#include <stdexcept>

namespace cliffcert {

namespace {

void check_index(uint64_t v, size_t limit, const char* what, size_t line_hint) {
  if (v >= limit) {
    std::ostringstream os;
    os << "circuit: " << what << " index " << v << " out of range (limit " << limit
       << ")";
    if (line_hint) os << " at instruction " << line_hint;
    throw std::out_of_range(os.str());
  }
}

}  // namespace

void Circuit::validate() const {
  size_t pos = 0;
  for (const Instruction& ins : instructions) {
    pos++;
    switch (ins.op) {
      case Op::GateH:
      case Op::GateS:
      case Op::GateT:
        check_index(ins.q0, num_qubits, "qubit", pos);
        break;
      case Op::GateCZ:
        check_index(ins.q0, num_qubits, "qubit", pos);
        check_index(ins.q1, num_qubits, "qubit", pos);
        if (ins.q0 == ins.q1)
          throw std::invalid_argument("circuit: CZ qubits must be distinct at instruction " +
                                      std::to_string(pos));
        break;
      case Op::MeasureZ:
        check_index(ins.q0, num_qubits, "qubit", pos);
        check_index(ins.c0, num_cbits, "classical bit", pos);
        break;
      case Op::ClassicalXor:
        check_index(ins.c0, num_cbits, "classical bit", pos);
        check_index(ins.c1, num_cbits, "classical bit", pos);
        check_index(ins.c2, num_cbits, "classical bit", pos);
        break;
    }
    if (ins.condition >= 0) {
      if (ins.op == Op::MeasureZ || ins.op == Op::ClassicalXor || ins.op == Op::GateT)
        throw std::invalid_argument(
            "circuit: conditions are only supported on H, S and CZ (instruction " +
            std::to_string(pos) + ")");
      check_index(static_cast<uint64_t>(ins.condition), num_cbits, "classical bit", pos);
    }
  }
}

bool Circuit::is_clifford_only() const {
  for (const Instruction& ins : instructions)
    if (ins.op == Op::GateT) return false;
  return true;
}

size_t Circuit::count_op(Op op) const {
  size_t n = 0;
  for (const Instruction& ins : instructions)
    if (ins.op == op) n++;
  return n;
}

std::string serialize_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.num_qubits << "\n";
  os << "cbits " << c.num_cbits << "\n";
  for (const Instruction& ins : c.instructions) {
    if (ins.condition >= 0) os << "IF c" << ins.condition << " : ";
    switch (ins.op) {
      case Op::GateH:
        os << "H " << ins.q0;
        break;
      case Op::GateS:
        os << "S " << ins.q0;
        break;
      case Op::GateT:
        os << "T " << ins.q0;
        break;
      case Op::GateCZ:
        os << "CZ " << ins.q0 << " " << ins.q1;
        break;
      case Op::MeasureZ:
        os << "MZ " << ins.q0 << " -> c" << ins.c0;
        break;
      case Op::ClassicalXor:
        os << "XOR c" << ins.c0 << " c" << ins.c1 << " -> c" << ins.c2;
        break;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(size_t line, const std::string& msg) {
  throw std::invalid_argument("parse_circuit: line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

uint32_t parse_uint(const std::string& tok, size_t line, const char* what) {
  size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &used);
  } catch (const std::exception&) {
    parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  }
  if (used != tok.size() || v > UINT32_MAX)
    parse_fail(line, std::string("expected ") + what + ", got '" + tok + "'");
  return static_cast<uint32_t>(v);
}

uint32_t parse_cbit(const std::string& tok, size_t line) {
  if (tok.size() < 2 || tok[0] != 'c')
    parse_fail(line, "expected classical bit like 'c3', got '" + tok + "'");
  return parse_uint(tok.substr(1), line, "classical bit index");
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  std::istringstream is{std::string(text)};
  std::string line;
  size_t line_no = 0;
  bool saw_qubits = false, saw_cbits = false;
  while (std::getline(is, line)) {
    line_no++;
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (!saw_qubits) {
      if (toks[0] != "qubits" || toks.size() != 2)
        parse_fail(line_no, "expected header 'qubits N'");
      c.num_qubits = parse_uint(toks[1], line_no, "qubit count");
      saw_qubits = true;
      continue;
    }
    if (!saw_cbits) {
      if (toks[0] != "cbits" || toks.size() != 2)
        parse_fail(line_no, "expected header 'cbits M'");
      c.num_cbits = parse_uint(toks[1], line_no, "classical bit count");
      saw_cbits = true;
      continue;
    }

    int64_t condition = -1;
    size_t at = 0;
    if (toks[0] == "IF") {
      if (toks.size() < 4 || toks[2] != ":")
        parse_fail(line_no, "expected 'IF c<bit> : <gate>'");
      condition = parse_cbit(toks[1], line_no);
      at = 3;
    }
    const std::string& mnem = toks[at];
    size_t argc = toks.size() - at - 1;
    Instruction ins{Op::GateH, 0};
    if (mnem == "H" || mnem == "S" || mnem == "T") {
      if (argc != 1) parse_fail(line_no, mnem + " takes one qubit");
      uint32_t q = parse_uint(toks[at + 1], line_no, "qubit");
      ins = mnem == "H" ? Instruction::h(q) : (mnem == "S" ? Instruction::s(q) : Instruction::t(q));
    } else if (mnem == "CZ") {
      if (argc != 2) parse_fail(line_no, "CZ takes two qubits");
      ins = Instruction::cz(parse_uint(toks[at + 1], line_no, "qubit"),
                            parse_uint(toks[at + 2], line_no, "qubit"));
    } else if (mnem == "MZ") {
      if (argc != 3 || toks[at + 2] != "->") parse_fail(line_no, "expected 'MZ q -> cN'");
      ins = Instruction::mz(parse_uint(toks[at + 1], line_no, "qubit"),
                            parse_cbit(toks[at + 3], line_no));
    } else if (mnem == "XOR") {
      if (argc != 4 || toks[at + 3] != "->")
        parse_fail(line_no, "expected 'XOR cA cB -> cC'");
      ins = Instruction::cxor(parse_cbit(toks[at + 1], line_no),
                              parse_cbit(toks[at + 2], line_no),
                              parse_cbit(toks[at + 4], line_no));
    } else {
      parse_fail(line_no, "unknown instruction '" + mnem + "'");
    }
    ins.condition = condition;
    c.instructions.push_back(ins);
  }
  if (!saw_qubits || !saw_cbits) throw std::invalid_argument("parse_circuit: missing header");
  c.validate();
  return c;
}

ExecutionResult run_circuit(const Circuit& c, Rng& rng) {
  c.validate();
  if (!c.is_clifford_only())
    throw std::invalid_argument("run_circuit: T gates require compilation first");
  ExecutionResult res{Tableau(c.num_qubits), std::vector<uint8_t>(c.num_cbits, 0), {}};
  for (const Instruction& ins : c.instructions) {
    if (ins.condition >= 0 && !res.cbits[static_cast<size_t>(ins.condition)]) continue;
    switch (ins.op) {
      case Op::GateH:
        res.tableau.apply_h(ins.q0);
        break;
      case Op::GateS:
        res.tableau.apply_s(ins.q0);
        break;
      case Op::GateCZ:
        res.tableau.apply_cz(ins.q0, ins.q1);
        break;
      case Op::MeasureZ: {
        MeasureResult m = res.tableau.measure_z(ins.q0, rng);
        res.cbits[ins.c0] = m.outcome ? 1 : 0;
        res.measurements.push_back(m);
        break;
      }
      case Op::ClassicalXor:
        res.cbits[ins.c2] = res.cbits[ins.c0] ^ res.cbits[ins.c1];
        break;
      case Op::GateT:
        break;  // unreachable, rejected above
    }
  }
  return res;
}

ExecutionResult run_circuit(const Circuit& c, uint64_t seed) {
  Rng rng(seed);
  return run_circuit(c, rng);
}

Circuit random_clifford_circuit(size_t num_qubits, size_t depth, double measure_fraction,
                                Rng& rng) {
  if (num_qubits == 0) throw std::invalid_argument("random_clifford_circuit: no qubits");
  Circuit c;
  c.num_qubits = num_qubits;
  c.num_cbits = num_qubits;
  bool measured_once = false;
  for (size_t i = 0; i < depth; i++) {
    double roll = rand_double(rng);
    uint32_t q = static_cast<uint32_t>(rand_below(rng, num_qubits));
    Instruction ins = Instruction::h(q);
    if (roll < measure_fraction) {
      ins = Instruction::mz(q, static_cast<uint32_t>(rand_below(rng, c.num_cbits)));
      measured_once = true;
    } else {
      double g = rand_double(rng);
      if (g < 0.35) {
        ins = Instruction::h(q);
      } else if (g < 0.7 || num_qubits == 1) {
        ins = Instruction::s(q);
      } else {
        uint32_t q2 = static_cast<uint32_t>(rand_below(rng, num_qubits - 1));
        if (q2 >= q) q2++;
        ins = Instruction::cz(q, q2);
      }
      // Occasionally condition a gate on an earlier measurement result.
      if (measured_once && rand_double(rng) < 0.15)
        ins = ins.when(static_cast<int64_t>(rand_below(rng, c.num_cbits)));
    }
    c.instructions.push_back(ins);
  }
  return c;
}

Circuit random_clifford_t_circuit(size_t num_qubits, size_t depth, size_t t_count,
                                  Rng& rng) {
  if (num_qubits == 0) throw std::invalid_argument("random_clifford_t_circuit: no qubits");
  Circuit c;
  c.num_qubits = num_qubits;
  c.num_cbits = 0;
  for (size_t i = 0; i < depth; i++) {
    uint32_t q = static_cast<uint32_t>(rand_below(rng, num_qubits));
    double g = rand_double(rng);
    if (g < 0.35) {
      c.instructions.push_back(Instruction::h(q));
    } else if (g < 0.7 || num_qubits == 1) {
      c.instructions.push_back(Instruction::s(q));
    } else {
      uint32_t q2 = static_cast<uint32_t>(rand_below(rng, num_qubits - 1));
      if (q2 >= q) q2++;
      c.instructions.push_back(Instruction::cz(q, q2));
    }
  }
  for (size_t i = 0; i < t_count; i++) {
    size_t pos = rand_below(rng, c.instructions.size() + 1);
    uint32_t q = static_cast<uint32_t>(rand_below(rng, num_qubits));
    c.instructions.insert(c.instructions.begin() + static_cast<ptrdiff_t>(pos),
                          Instruction::t(q));
  }
  return c;
}

}  // namespace cliffcert
