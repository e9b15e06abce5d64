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

#include "cliffcert/magic_compile.hpp"

#include <stdexcept>

#include "cliffcert/dense.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cliffcert;

namespace {

StateVector resource_register(size_t count) {
  StateVector sv(0);
  for (size_t i = 0; i < count; i++) sv = tensor(sv, magic_ket());
  return sv;
}

// Output density operator on the source qubits: compiled circuit fed
// resource ancillas, averaged over all measurement branches.
Eigen::MatrixXcd compiled_channel_output(const CompiledCircuit& comp, size_t source_qubits,
                                         const StateVector& input) {
  StateVector init = tensor(input, resource_register(comp.magic_inputs.size()));
  std::vector<size_t> keep(source_qubits);
  for (size_t i = 0; i < source_qubits; i++) keep[i] = i;
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Zero(Eigen::Index{1} << source_qubits, Eigen::Index{1} << source_qubits);
  double total = 0.0;
  for (const Branch& br : enumerate_branches(comp.clifford, init, 1e-14)) {
    acc += br.probability * partial_trace_pure(br.state, keep).matrix();
    total += br.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  return acc;
}

}  // namespace

TEST_CASE("conversion word maps the resource state onto the T ancilla") {
  std::vector<Gate1> word = find_clifford_conversion();
  CHECK(!word.empty());
  CHECK(word.size() <= 6);  // single-qubit Clifford group is tiny

  StateVector sv = magic_ket();
  for (Gate1 g : word) {
    if (g == Gate1::H)
      sv.apply_h(0);
    else
      sv.apply_s(0);
  }
  double overlap = std::abs(sv.amplitudes().dot(t_ancilla_ket().amplitudes()));
  CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("t gate census") {
  Circuit c;
  c.num_qubits = 2;
  c.num_cbits = 0;
  c.instructions = {Instruction::t(0), Instruction::h(1), Instruction::t(1),
                    Instruction::t(0)};
  CHECK(count_magic_states(c) == 3);
  CHECK(count_magic_states(Circuit{1, 0, {Instruction::h(0)}}) == 0);
}

TEST_CASE("single T gadget reproduces the gate on both branches") {
  Rng rng(0xa11ceull);
  Circuit c;
  c.num_qubits = 1;
  c.num_cbits = 0;
  c.instructions = {Instruction::t(0)};
  CompiledCircuit comp = expand_t_gates(c);
  CHECK(comp.clifford.is_clifford_only());
  CHECK(comp.clifford.num_qubits == 2);
  CHECK(comp.clifford.num_cbits == 1);
  CHECK(comp.magic_inputs == std::vector<size_t>{1});

  for (int rep = 0; rep < 5; rep++) {
    StateVector input = StateVector::from_amplitudes(1, random_ket(2, rng));
    StateVector want = input;
    want.apply_t(0);

    StateVector init = tensor(input, magic_ket());
    std::vector<Branch> branches = enumerate_branches(comp.clifford, init, 1e-14);
    REQUIRE(branches.size() == 2);
    for (const Branch& br : branches) {
      CHECK(br.probability == doctest::Approx(0.5).epsilon(1e-10));
      DensityMatrix reduced = partial_trace_pure(br.state, {0});
      double f = fidelity(reduced, DensityMatrix::from_state(want));
      CHECK(f == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("compiled circuits implement the same channel") {
  Rng rng(0xbe11ull);
  for (int rep = 0; rep < 12; rep++) {
    size_t n = 1 + rand_below(rng, 3);
    Circuit c = random_clifford_t_circuit(n, 20, 1 + rand_below(rng, 3), rng);
    CompiledCircuit comp = expand_t_gates(c);
    CHECK(comp.clifford.is_clifford_only());
    CHECK(comp.magic_inputs.size() == count_magic_states(c));
    for (size_t i = 0; i < comp.magic_inputs.size(); i++)
      CHECK(comp.magic_inputs[i] == n + i);

    StateVector input = StateVector::from_amplitudes(n, random_ket(size_t{1} << n, rng));
    // the source circuit is unitary; oracle output is a pure state
    Eigen::VectorXcd want_amps =
        oracles::circuit_unitary(n, c.instructions) * input.amplitudes();
    Eigen::MatrixXcd want = want_amps * want_amps.adjoint();
    Eigen::MatrixXcd got = compiled_channel_output(comp, n, input);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("repeated T on one qubit composes to S") {
  Circuit c;
  c.num_qubits = 1;
  c.num_cbits = 0;
  c.instructions = {Instruction::t(0), Instruction::t(0)};
  CompiledCircuit comp = expand_t_gates(c);

  Rng rng(0x5eedull);
  StateVector input = StateVector::from_amplitudes(1, random_ket(2, rng));
  StateVector want = input;
  want.apply_s(0);
  Eigen::MatrixXcd got = compiled_channel_output(comp, 1, input);
  Eigen::MatrixXcd want_m =
      want.amplitudes() * want.amplitudes().adjoint();
  CHECK((got - want_m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("source measurements and conditions pass through") {
  Circuit c;
  c.num_qubits = 2;
  c.num_cbits = 1;
  c.instructions = {Instruction::h(0), Instruction::mz(0, 0), Instruction::t(1),
                    Instruction::s(1).when(0)};
  CompiledCircuit comp = expand_t_gates(c);
  comp.clifford.validate();
  CHECK(comp.clifford.num_cbits == 2);  // source bit + one gadget bit
  // Gadget bits are appended, so source conditions still reference bit 0.
  bool found_conditioned_s = false;
  for (const Instruction& ins : comp.clifford.instructions)
    if (ins.op == Op::GateS && ins.q0 == 1 && ins.condition == 0) found_conditioned_s = true;
  CHECK(found_conditioned_s);
}

TEST_CASE("clifford-only input passes through unchanged") {
  Circuit c;
  c.num_qubits = 2;
  c.num_cbits = 1;
  c.instructions = {Instruction::h(0), Instruction::cz(0, 1), Instruction::mz(1, 0)};
  CompiledCircuit comp = expand_t_gates(c);
  CHECK(comp.magic_inputs.empty());
  CHECK(comp.clifford == c);
}

TEST_CASE("compiled text form round-trips") {
  Circuit c;
  c.num_qubits = 2;
  c.num_cbits = 0;
  c.instructions = {Instruction::t(0), Instruction::h(1), Instruction::t(1)};
  CompiledCircuit comp = expand_t_gates(c);

  std::string text = serialize_compiled(comp);
  CHECK(text.rfind("# magic 2 3", 0) == 0);
  CompiledCircuit back = parse_compiled(text);
  CHECK(back.clifford == comp.clifford);
  CHECK(back.magic_inputs == comp.magic_inputs);

  // No directive needed when nothing is consumed.
  CompiledCircuit plain = parse_compiled("qubits 1\ncbits 0\nH 0\n");
  CHECK(plain.magic_inputs.empty());

  CHECK_THROWS_AS(parse_compiled("# magic 5\nqubits 2\ncbits 0\nH 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_compiled("# magic 1 0\nqubits 2\ncbits 0\nH 0\n"),
                  std::invalid_argument);
}
