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

#ifndef CLIFFCERT_PAULI_HPP
#define CLIFFCERT_PAULI_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cliffcert {

// An n-qubit Pauli operator with bit-packed X/Z parts.
//
// The stored value is i^phase * prod_q X_q^{x_q} Z_q^{z_q}, with the X part
// written to the left of the Z part on every qubit. Under that convention
// Y = i * X * Z, so e.g. the string "+Y" is stored as x=1, z=1, phase=1.
class PauliString {
 public:
  explicit PauliString(size_t num_qubits);

  // Parses "+XZ_Y", "-iYX", "ZZ" (sign defaults to +). '_' and 'I' both
  // denote identity. Throws std::invalid_argument on malformed input.
  static PauliString from_string(std::string_view text);

  size_t num_qubits() const { return n_; }

  bool x_bit(size_t q) const;
  bool z_bit(size_t q) const;
  void set_x(size_t q, bool v);
  void set_z(size_t q, bool v);

  // Exponent k in the stored value i^k * prod X^x Z^z, in {0,1,2,3}.
  int phase_exponent() const { return phase_; }
  void set_phase_exponent(int k);

  // +1 or -1 for Hermitian operators (sign relative to the I/X/Y/Z letters).
  // Throws std::logic_error if the operator is not Hermitian.
  int hermitian_sign() const;

  bool commutes_with(const PauliString& other) const;

  // In-place product this := this * rhs, tracking the i^k phase.
  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) {
    lhs *= rhs;
    return lhs;
  }

  // Sign prefix (+, -, +i, -i) followed by one letter per qubit, identity
  // printed as '_'. Qubit 0 is the leftmost letter.
  std::string str() const;

  bool operator==(const PauliString&) const = default;

  const std::vector<uint64_t>& x_words() const { return x_; }
  const std::vector<uint64_t>& z_words() const { return z_; }

 private:
  size_t n_;
  std::vector<uint64_t> x_, z_;
  uint8_t phase_ = 0;
};

}  // namespace cliffcert

#endif
