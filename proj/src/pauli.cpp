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

#include "cliffcert/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace cliffcert {

namespace {

size_t words_for(size_t bits) { return (bits + 63) / 64; }

int popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  int total = 0;
  for (size_t w = 0; w < a.size(); w++) total += std::popcount(a[w] & b[w]);
  return total;
}

}  // namespace

PauliString::PauliString(size_t num_qubits)
    : n_(num_qubits), x_(words_for(num_qubits), 0), z_(words_for(num_qubits), 0) {}

PauliString PauliString::from_string(std::string_view text) {
  size_t pos = 0;
  int phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    pos++;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = (phase + 1) & 3;
    pos++;
  }
  if (pos == text.size())
    throw std::invalid_argument("PauliString: need at least one letter after the sign");
  PauliString p(text.size() - pos);
  size_t q = 0;
  int xz_count = 0;
  for (; pos < text.size(); pos++, q++) {
    switch (text[pos]) {
      case '_':
      case 'I':
        break;
      case 'X':
        p.set_x(q, true);
        break;
      case 'Y':
        p.set_x(q, true);
        p.set_z(q, true);
        xz_count++;
        break;
      case 'Z':
        p.set_z(q, true);
        break;
      default:
        throw std::invalid_argument("PauliString::from_string: bad character '" +
                                    std::string(1, text[pos]) + "'");
    }
  }
  // The textual sign is relative to the I/X/Y/Z letters; fold in the i per Y
  // that the X-then-Z storage convention introduces.
  p.phase_ = static_cast<uint8_t>((phase + xz_count) & 3);
  return p;
}

bool PauliString::x_bit(size_t q) const {
  if (q >= n_) throw std::out_of_range("PauliString::x_bit: qubit out of range");
  return (x_[q >> 6] >> (q & 63)) & 1;
}

bool PauliString::z_bit(size_t q) const {
  if (q >= n_) throw std::out_of_range("PauliString::z_bit: qubit out of range");
  return (z_[q >> 6] >> (q & 63)) & 1;
}

void PauliString::set_x(size_t q, bool v) {
  if (q >= n_) throw std::out_of_range("PauliString::set_x: qubit out of range");
  uint64_t mask = uint64_t{1} << (q & 63);
  x_[q >> 6] = v ? (x_[q >> 6] | mask) : (x_[q >> 6] & ~mask);
}

void PauliString::set_z(size_t q, bool v) {
  if (q >= n_) throw std::out_of_range("PauliString::set_z: qubit out of range");
  uint64_t mask = uint64_t{1} << (q & 63);
  z_[q >> 6] = v ? (z_[q >> 6] | mask) : (z_[q >> 6] & ~mask);
}

void PauliString::set_phase_exponent(int k) { phase_ = static_cast<uint8_t>(k & 3); }

int PauliString::hermitian_sign() const {
  int letter_phase = (phase_ - popcount_and(x_, z_)) & 3;
  if (letter_phase == 0) return 1;
  if (letter_phase == 2) return -1;
  throw std::logic_error("PauliString::hermitian_sign: operator is not Hermitian");
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("PauliString::commutes_with: size mismatch");
  int anti = popcount_and(x_, other.z_) + popcount_and(z_, other.x_);
  return (anti & 1) == 0;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliString::operator*=: size mismatch");
  // Z^{z1} X^{x2} = (-1)^{z1 x2} X^{x2} Z^{z1} on each qubit.
  int swaps = popcount_and(z_, rhs.x_);
  phase_ = static_cast<uint8_t>((phase_ + rhs.phase_ + 2 * (swaps & 1)) & 3);
  for (size_t w = 0; w < x_.size(); w++) {
    x_[w] ^= rhs.x_[w];
    z_[w] ^= rhs.z_[w];
  }
  return *this;
}

std::string PauliString::str() const {
  static const char* kSign[4] = {"+", "+i", "-", "-i"};
  int letter_phase = (phase_ - popcount_and(x_, z_)) & 3;
  std::string out = kSign[letter_phase];
  out.reserve(out.size() + n_);
  for (size_t q = 0; q < n_; q++) {
    bool x = x_bit(q), z = z_bit(q);
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : '_');
  }
  return out;
}

}  // namespace cliffcert
