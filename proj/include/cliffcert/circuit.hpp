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

#ifndef CLIFFCERT_CIRCUIT_HPP
#define CLIFFCERT_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cliffcert/rand.hpp"
#include "cliffcert/tableau.hpp"

namespace cliffcert {

enum class Op : uint8_t { GateH, GateS, GateCZ, GateT, MeasureZ, ClassicalXor };

// One circuit instruction. Gates may carry a classical condition (run only
// when that bit is 1); measurements and XORs are always unconditional.
struct Instruction {
  Op op;
  uint32_t q0 = 0, q1 = 0;           // qubit operands (q1 only for GateCZ)
  uint32_t c0 = 0, c1 = 0, c2 = 0;   // MeasureZ: result -> c0. Xor: c0^c1 -> c2.
  int64_t condition = -1;            // classical bit index, -1 = unconditional

  static Instruction h(uint32_t q) { return {Op::GateH, q}; }
  static Instruction s(uint32_t q) { return {Op::GateS, q}; }
  static Instruction t(uint32_t q) { return {Op::GateT, q}; }
  static Instruction cz(uint32_t a, uint32_t b) { return {Op::GateCZ, a, b}; }
  static Instruction mz(uint32_t q, uint32_t c) {
    Instruction i{Op::MeasureZ, q};
    i.c0 = c;
    return i;
  }
  static Instruction cxor(uint32_t a, uint32_t b, uint32_t dst) {
    Instruction i{Op::ClassicalXor};
    i.c0 = a;
    i.c1 = b;
    i.c2 = dst;
    return i;
  }
  Instruction when(int64_t cbit) const {
    Instruction i = *this;
    i.condition = cbit;
    return i;
  }

  bool operator==(const Instruction&) const = default;
};

struct Circuit {
  size_t num_qubits = 0;
  size_t num_cbits = 0;
  std::vector<Instruction> instructions;

  // Bounds and shape checks; throws std::out_of_range / std::invalid_argument.
  // Conditions are only legal on H, S and CZ.
  void validate() const;

  bool is_clifford_only() const;
  size_t count_op(Op op) const;

  bool operator==(const Circuit&) const = default;
};

// Canonical text form, one instruction per line:
//   qubits 3
//   cbits 2
//   H 0
//   CZ 0 1
//   T 2
//   MZ 2 -> c0
//   XOR c0 c1 -> c1
//   IF c0 : S 1
// parse accepts '#' comment lines and blank lines; serialize emits neither,
// so serialize(parse(s)) is a fixed point and parse(serialize(c)) == c.
std::string serialize_circuit(const Circuit& c);
Circuit parse_circuit(std::string_view text);

struct ExecutionResult {
  Tableau tableau;
  std::vector<uint8_t> cbits;
  std::vector<MeasureResult> measurements;  // in program order
};

// Runs a Clifford circuit (throws on T gates) from |0...0>, sampling random
// measurement outcomes from rng. Same seed, same transcript.
ExecutionResult run_circuit(const Circuit& c, Rng& rng);
ExecutionResult run_circuit(const Circuit& c, uint64_t seed);

// Random circuit generators used by the equivalence harness and benchmarks.
// measure_fraction of the instructions are MZ into a random classical bit;
// a small slice of the gates is classically conditioned when cbits exist.
Circuit random_clifford_circuit(size_t num_qubits, size_t depth, double measure_fraction,
                                Rng& rng);
// Unitary Clifford+T circuit: `depth` Clifford gates with exactly t_count T
// gates spliced in at random positions.
Circuit random_clifford_t_circuit(size_t num_qubits, size_t depth, size_t t_count,
                                  Rng& rng);

}  // namespace cliffcert

#endif
