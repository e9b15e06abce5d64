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

#include "cliffcert/tableau.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace cliffcert {

namespace {

void set_row_bit(uint64_t* col, size_t row, bool v) {
  uint64_t mask = uint64_t{1} << (row & 63);
  col[row >> 6] = v ? (col[row >> 6] | mask) : (col[row >> 6] & ~mask);
}

}  // namespace

Tableau::Tableau(size_t num_qubits)
    : n_(num_qubits),
      words_((2 * num_qubits + 63) / 64),
      x_(num_qubits * words_, 0),
      z_(num_qubits * words_, 0),
      sign_(words_, 0) {
  if (num_qubits == 0) throw std::invalid_argument("Tableau: need at least one qubit");
  for (size_t i = 0; i < n_; i++) {
    set_row_bit(xcol(i), i, true);       // destabilizer i = X_i
    set_row_bit(zcol(i), n_ + i, true);  // stabilizer i = Z_i
  }
}

void Tableau::check_qubit(size_t q, const char* op) const {
  if (q >= n_) throw std::out_of_range(std::string(op) + ": qubit index out of range");
}

void Tableau::apply_h(size_t q) {
  check_qubit(q, "apply_h");
  uint64_t* xc = xcol(q);
  uint64_t* zc = zcol(q);
  for (size_t w = 0; w < words_; w++) {
    uint64_t x = xc[w], z = zc[w];
    sign_[w] ^= x & z;  // Y -> -Y
    xc[w] = z;
    zc[w] = x;
  }
}

void Tableau::apply_s(size_t q) {
  check_qubit(q, "apply_s");
  uint64_t* xc = xcol(q);
  uint64_t* zc = zcol(q);
  for (size_t w = 0; w < words_; w++) {
    uint64_t x = xc[w], z = zc[w];
    sign_[w] ^= x & z;  // Y -> -X
    zc[w] = z ^ x;
  }
}

void Tableau::apply_cz(size_t a, size_t b) {
  check_qubit(a, "apply_cz");
  check_qubit(b, "apply_cz");
  if (a == b) throw std::invalid_argument("apply_cz: qubits must be distinct");
  uint64_t* xa = xcol(a);
  uint64_t* za = zcol(a);
  uint64_t* xb = xcol(b);
  uint64_t* zb = zcol(b);
  for (size_t w = 0; w < words_; w++) {
    uint64_t xav = xa[w], zav = za[w], xbv = xb[w], zbv = zb[w];
    // XX -> YY (+), XY -> -YX: a sign flip exactly when both X parts are set
    // and exactly one Z part is.
    sign_[w] ^= xav & xbv & (zav ^ zbv);
    za[w] = zav ^ xbv;
    zb[w] = zbv ^ xav;
  }
}

PauliString Tableau::extract_row(size_t row) const {
  PauliString p(n_);
  int y_count = 0;
  for (size_t q = 0; q < n_; q++) {
    bool x = row_bit(xcol(q), row);
    bool z = row_bit(zcol(q), row);
    if (x) p.set_x(q, true);
    if (z) p.set_z(q, true);
    if (x && z) y_count++;
  }
  int sign_bit = row_bit(sign_.data(), row) ? 2 : 0;
  p.set_phase_exponent((sign_bit + y_count) & 3);
  return p;
}

PauliString Tableau::stabilizer_row(size_t i) const {
  if (i >= n_) throw std::out_of_range("stabilizer_row: index out of range");
  return extract_row(n_ + i);
}

PauliString Tableau::destabilizer_row(size_t i) const {
  if (i >= n_) throw std::out_of_range("destabilizer_row: index out of range");
  return extract_row(i);
}

bool Tableau::deterministic_outcome(size_t q) const {
  // No stabilizer anticommutes with Z_q, so Z_q is (up to sign) the product
  // of the stabilizer rows whose paired destabilizer has an X on qubit q.
  const uint64_t* xq = xcol(q);
  PauliString acc(n_);
  for (size_t i = 0; i < n_; i++) {
    if (row_bit(xq, i)) acc *= stabilizer_row(i);
  }
  return acc.hermitian_sign() < 0;
}

MeasureResult Tableau::measure_z(size_t q, Rng& rng) {
  check_qubit(q, "measure_z");
  const uint64_t* xq = xcol(q);
  for (size_t w = n_ >> 6; w < words_; w++) {
    uint64_t bits = xq[w];
    if (w == (n_ >> 6)) bits &= ~((uint64_t{1} << (n_ & 63)) - 1);  // stab rows only
    if (bits) {
      size_t pivot = w * 64 + std::countr_zero(bits);
      bool outcome = rand_bit(rng);
      collapse(q, pivot, outcome);
      return {outcome, false};
    }
  }
  return {deterministic_outcome(q), true};
}

double Tableau::postselect_z(size_t q, bool outcome) {
  check_qubit(q, "postselect_z");
  const uint64_t* xq = xcol(q);
  for (size_t w = n_ >> 6; w < words_; w++) {
    uint64_t bits = xq[w];
    if (w == (n_ >> 6)) bits &= ~((uint64_t{1} << (n_ & 63)) - 1);
    if (bits) {
      size_t pivot = w * 64 + std::countr_zero(bits);
      collapse(q, pivot, outcome);
      return 0.5;
    }
  }
  return deterministic_outcome(q) == outcome ? 1.0 : 0.0;
}

void Tableau::collapse(size_t q, size_t pivot, bool outcome) {
  // Anticommuting rows other than the pivot absorb the pivot row; the phase
  // of each product is tracked mod 4 in two bit-planes across all rows at
  // once (acc0 = units bit, acc1 = twos bit).
  std::vector<uint64_t> mask(xcol(q), xcol(q) + words_);
  set_row_bit(mask.data(), pivot, false);

  bool any = false;
  for (size_t w = 0; w < words_; w++) any |= mask[w] != 0;

  if (any) {
    std::vector<uint64_t> acc0(words_, 0), acc1(words_, 0);
    for (size_t c = 0; c < n_; c++) {
      uint64_t* xc = xcol(c);
      uint64_t* zc = zcol(c);
      bool px = row_bit(xc, pivot);
      bool pz = row_bit(zc, pivot);
      if (!px && !pz) continue;
      for (size_t w = 0; w < words_; w++) {
        uint64_t xm = xc[w], zm = zc[w];
        uint64_t plus, minus;  // rows gaining a factor +i / -i on this qubit
        if (px && pz) {
          plus = zm & ~xm;   // Y*Z = iX
          minus = xm & ~zm;  // Y*X = -iZ
        } else if (px) {
          plus = xm & zm;    // X*Y = iZ
          minus = zm & ~xm;  // X*Z = -iY
        } else {
          plus = xm & ~zm;   // Z*X = iY
          minus = xm & zm;   // Z*Y = -iX
        }
        plus &= mask[w];
        minus &= mask[w];
        uint64_t carry = acc0[w] & plus;
        acc0[w] ^= plus;
        acc1[w] ^= carry;
        // -i == +3i: add one, then two
        carry = acc0[w] & minus;
        acc0[w] ^= minus;
        acc1[w] ^= carry;
        acc1[w] ^= minus;
        if (px) xc[w] ^= mask[w];
        if (pz) zc[w] ^= mask[w];
      }
    }
    // Phase sums over full rows are always real (i exponent 0 or 2 mod 4).
    bool pivot_sign = row_bit(sign_.data(), pivot);
    for (size_t w = 0; w < words_; w++) {
      if (pivot_sign) sign_[w] ^= mask[w];
      sign_[w] ^= acc1[w];
    }
  }

  // The old pivot stabilizer becomes the destabilizer paired with the fresh
  // +-Z_q stabilizer that replaces it.
  size_t dest = pivot - n_;
  for (size_t c = 0; c < n_; c++) {
    uint64_t* xc = xcol(c);
    uint64_t* zc = zcol(c);
    set_row_bit(xc, dest, row_bit(xc, pivot));
    set_row_bit(zc, dest, row_bit(zc, pivot));
    set_row_bit(xc, pivot, false);
    set_row_bit(zc, pivot, false);
  }
  set_row_bit(sign_.data(), dest, row_bit(sign_.data(), pivot));
  set_row_bit(zcol(q), pivot, true);
  set_row_bit(sign_.data(), pivot, outcome);
}

void Tableau::audit() const {
  std::vector<PauliString> destab, stab;
  destab.reserve(n_);
  stab.reserve(n_);
  for (size_t i = 0; i < n_; i++) {
    destab.push_back(destabilizer_row(i));
    stab.push_back(stabilizer_row(i));
  }
  for (size_t i = 0; i < n_; i++) {
    stab[i].hermitian_sign();    // throws if a row picked up an imaginary phase
    destab[i].hermitian_sign();
    for (size_t j = i + 1; j < n_; j++) {
      if (!stab[i].commutes_with(stab[j]))
        throw std::logic_error("Tableau::audit: stabilizers " + std::to_string(i) +
                               "," + std::to_string(j) + " anticommute");
      if (!destab[i].commutes_with(destab[j]))
        throw std::logic_error("Tableau::audit: destabilizers " + std::to_string(i) +
                               "," + std::to_string(j) + " anticommute");
    }
    for (size_t j = 0; j < n_; j++) {
      bool expect_anti = (i == j);
      if (destab[i].commutes_with(stab[j]) == expect_anti)
        throw std::logic_error("Tableau::audit: destabilizer " + std::to_string(i) +
                               " has wrong pairing with stabilizer " + std::to_string(j));
    }
  }
}

}  // namespace cliffcert
