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

#ifndef CLIFFCERT_TABLEAU_HPP
#define CLIFFCERT_TABLEAU_HPP

#include <cstdint>
#include <vector>

#include "cliffcert/pauli.hpp"
#include "cliffcert/rand.hpp"

namespace cliffcert {

struct MeasureResult {
  bool outcome;        // measured bit; Z eigenvalue is (-1)^outcome
  bool deterministic;  // true when the state already fixed the outcome
};

// Destabilizer/stabilizer tableau for states reachable from |0...0> with
// H, S and CZ. Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers.
//
// Storage is column-major: for each qubit there is one bit-vector over the
// 2n rows holding that qubit's X bits, and one holding its Z bits. A gate on
// a qubit then touches a couple of contiguous words per 64 rows, which keeps
// gate application fast for large n.
class Tableau {
 public:
  explicit Tableau(size_t num_qubits);  // the |0...0> state

  size_t num_qubits() const { return n_; }

  void apply_h(size_t q);
  void apply_s(size_t q);
  void apply_cz(size_t a, size_t b);

  // Z measurement. Random outcomes consume one bit from rng.
  MeasureResult measure_z(size_t q, Rng& rng);

  // Forces the outcome of a Z measurement and returns the probability of
  // that branch: 1.0 or 0.0 when the outcome is determined (the state is
  // only collapsed in the 0.5 case; a 0.0 branch leaves it untouched).
  double postselect_z(size_t q, bool outcome);

  PauliString stabilizer_row(size_t i) const;
  PauliString destabilizer_row(size_t i) const;

  // Checks the symplectic structure (stabilizers commute pairwise, each
  // destabilizer anticommutes with exactly its partner). O(n^2) row pairs.
  // Throws std::logic_error on violation.
  void audit() const;

  bool operator==(const Tableau&) const = default;

 private:
  uint64_t* xcol(size_t q) { return x_.data() + q * words_; }
  uint64_t* zcol(size_t q) { return z_.data() + q * words_; }
  const uint64_t* xcol(size_t q) const { return x_.data() + q * words_; }
  const uint64_t* zcol(size_t q) const { return z_.data() + q * words_; }

  bool row_bit(const uint64_t* col, size_t row) const {
    return (col[row >> 6] >> (row & 63)) & 1;
  }

  void check_qubit(size_t q, const char* op) const;
  PauliString extract_row(size_t row) const;
  bool deterministic_outcome(size_t q) const;
  void collapse(size_t q, size_t pivot, bool outcome);

  size_t n_;
  size_t words_;  // words per 2n-row bit column
  std::vector<uint64_t> x_, z_;  // n_ columns * words_ each
  std::vector<uint64_t> sign_;   // one bit per row
};

}  // namespace cliffcert

#endif
