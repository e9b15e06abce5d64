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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cliffcert {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major 2x2

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Equality up to global phase.
bool same_class(const Mat2& a, const Mat2& b) {
  int anchor = 0;
  double best = 0;
  for (int i = 0; i < 4; i++)
    if (std::abs(b[i]) > best) {
      best = std::abs(b[i]);
      anchor = i;
    }
  if (std::abs(a[anchor]) < 1e-9) return false;
  cd phase = b[anchor] / a[anchor];
  if (std::abs(std::abs(phase) - 1.0) > 1e-9) return false;
  for (int i = 0; i < 4; i++)
    if (std::abs(a[i] * phase - b[i]) > 1e-9) return false;
  return true;
}

}  // namespace

std::vector<Gate1> find_clifford_conversion() {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Mat2 kH{inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
  const Mat2 kS{cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 1)};
  const Mat2 kId{cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)};

  const cd src0 = std::sin(std::numbers::pi / 8), src1 = -std::cos(std::numbers::pi / 8);
  const cd dst0 = inv_sqrt2, dst1 = std::polar(inv_sqrt2, std::numbers::pi / 4);
  auto converts = [&](const Mat2& u) {
    cd v0 = u[0] * src0 + u[1] * src1;
    cd v1 = u[2] * src0 + u[3] * src1;
    return std::abs(std::abs(std::conj(dst0) * v0 + std::conj(dst1) * v1) - 1.0) < 1e-9;
  };

  // Breadth-first over words, deduplicating up to phase, so the first hit is
  // a shortest conversion. The single-qubit Clifford group has 24 classes;
  // the frontier is tiny.
  struct Node {
    Mat2 u;
    std::vector<Gate1> word;
  };
  std::vector<Node> seen{{kId, {}}};
  for (size_t head = 0; head < seen.size(); head++) {
    Node cur = seen[head];  // copy: seen may reallocate below
    if (converts(cur.u)) return cur.word;
    for (Gate1 g : {Gate1::H, Gate1::S}) {
      Mat2 next = mul(g == Gate1::H ? kH : kS, cur.u);  // g applied after cur
      bool dup = false;
      for (const Node& n : seen)
        if (same_class(next, n.u)) {
          dup = true;
          break;
        }
      if (dup) continue;
      std::vector<Gate1> word = cur.word;
      word.push_back(g);
      seen.push_back({next, std::move(word)});
    }
  }
  throw std::logic_error("find_clifford_conversion: no conversion found");
}

size_t count_magic_states(const Circuit& c) { return c.count_op(Op::GateT); }

CompiledCircuit expand_t_gates(const Circuit& source) {
  source.validate();
  size_t s = count_magic_states(source);
  CompiledCircuit out;
  out.clifford.num_qubits = source.num_qubits + s;
  out.clifford.num_cbits = source.num_cbits + s;

  static const std::vector<Gate1> kConversion = find_clifford_conversion();

  size_t next = 0;
  for (const Instruction& ins : source.instructions) {
    if (ins.op != Op::GateT) {
      out.clifford.instructions.push_back(ins);
      continue;
    }
    uint32_t anc = static_cast<uint32_t>(source.num_qubits + next);
    uint32_t cbit = static_cast<uint32_t>(source.num_cbits + next);
    out.magic_inputs.push_back(anc);
    next++;
    for (Gate1 g : kConversion)
      out.clifford.instructions.push_back(g == Gate1::H ? Instruction::h(anc)
                                                        : Instruction::s(anc));
    // CNOT (target = ancilla) built from the native gate set.
    out.clifford.instructions.push_back(Instruction::h(anc));
    out.clifford.instructions.push_back(Instruction::cz(ins.q0, anc));
    out.clifford.instructions.push_back(Instruction::h(anc));
    out.clifford.instructions.push_back(Instruction::mz(anc, cbit));
    out.clifford.instructions.push_back(Instruction::s(ins.q0).when(cbit));
  }
  out.clifford.validate();
  if (!out.clifford.is_clifford_only())
    throw std::logic_error("expand_t_gates: output still contains T gates");
  return out;
}

std::string serialize_compiled(const CompiledCircuit& c) {
  std::ostringstream os;
  if (!c.magic_inputs.empty()) {
    os << "# magic";
    for (size_t q : c.magic_inputs) os << " " << q;
    os << "\n";
  }
  os << serialize_circuit(c.clifford);
  return os.str();
}

CompiledCircuit parse_compiled(std::string_view text) {
  CompiledCircuit out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok != "#") break;
    if (!(ls >> tok) || tok != "magic") continue;  // other comments are fine
    uint64_t q;
    while (ls >> q) out.magic_inputs.push_back(q);
    if (!ls.eof()) throw std::invalid_argument("parse_compiled: bad '# magic' directive");
  }
  out.clifford = parse_circuit(text);
  for (size_t i = 0; i < out.magic_inputs.size(); i++) {
    if (out.magic_inputs[i] >= out.clifford.num_qubits)
      throw std::invalid_argument("parse_compiled: magic input out of range");
    if (i && out.magic_inputs[i] <= out.magic_inputs[i - 1])
      throw std::invalid_argument("parse_compiled: magic inputs must ascend");
  }
  return out;
}

}  // namespace cliffcert
