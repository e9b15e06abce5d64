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

#ifndef CLIFFCERT_MAGIC_COMPILE_HPP
#define CLIFFCERT_MAGIC_COMPILE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cliffcert/circuit.hpp"

namespace cliffcert {

enum class Gate1 : uint8_t { H, S };

// Shortest word over {H, S} (applied left to right) whose unitary maps the
// X/Z-symmetric resource state sin(pi/8)|0> - cos(pi/8)|1> onto the
// T-gadget ancilla (|0> + e^{i pi/4}|1>)/sqrt2, up to global phase. Found by
// search over the 24 single-qubit Clifford classes; the result is fixed, the
// search just keeps the claim honest.
std::vector<Gate1> find_clifford_conversion();

// Number of T gates, i.e. resource states the compiled form will consume.
size_t count_magic_states(const Circuit& c);

// A T-free circuit plus the qubits that must be fed the resource state.
struct CompiledCircuit {
  Circuit clifford;                  // n + s qubits, m + s classical bits
  std::vector<size_t> magic_inputs;  // ascending; one per consumed T gate
};

// Replaces each T gate with a measurement gadget: the i-th T (program order)
// gets ancilla qubit n+i and classical bit m+i. The ancilla starts in the
// resource state, is rotated to the T-ancilla, entangled with the target by
// an H-CZ-H (a CNOT), measured, and an S correction is applied to the target
// when the outcome is 1. Source measurements/conditions pass through
// untouched. Output is guaranteed Clifford-only.
CompiledCircuit expand_t_gates(const Circuit& source);

// Text form: the circuit format preceded by a '# magic q...' directive line
// listing magic_inputs (omitted when there are none).
std::string serialize_compiled(const CompiledCircuit& c);
CompiledCircuit parse_compiled(std::string_view text);

}  // namespace cliffcert

#endif
