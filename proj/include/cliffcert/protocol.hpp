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

#ifndef CLIFFCERT_PROTOCOL_HPP
#define CLIFFCERT_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliffcert/circuit.hpp"
#include "cliffcert/dense.hpp"
#include "cliffcert/magic_compile.hpp"
#include "cliffcert/magic_test.hpp"

namespace cliffcert {

// A promise problem instance: a verifier circuit (T gates allowed) reading a
// witness on qubits [0, witness_qubits), ancillas above, and one designated
// classical bit whose value decides acceptance. a and b are the claimed
// acceptance probabilities for yes and no instances.
struct QMAInstance {
  Circuit verifier;
  size_t witness_qubits = 0;
  double a = 0.0;
  double b = 0.0;
  size_t accept_bit = 0;
  bool accept_value = false;
  // Exact extremal acceptance over pure witnesses, when known (filled in by
  // build_toy_instance from the dense oracle).
  std::optional<double> a_star, b_star;

  void validate() const;
};

// Instance files: <prefix>.circ holds the verifier text, <prefix>.json the
// scalar fields. load validates both.
void save_instance(const QMAInstance& inst, const std::string& prefix);
QMAInstance load_instance(const std::string& prefix);

struct VerifyOptions {
  // Skip the certification test and hand the verifier exact resource states.
  // Reproduces bare verifier statistics; for diagnostics only.
  bool bypass_test = false;
};

struct VerifyResult {
  TestOutcome test;
  bool test_passed = false;
  bool accepted = false;  // accepted implies test_passed
};

// One protocol round: run the certification test on Merlin's message, reject
// on failure, otherwise wire the s surviving qubits (ascending position
// order) into the compiled verifier's resource inputs, the witness into
// qubits [0, p), ancillas |0>, execute densely with measurement feedback and
// read the accept bit. Requires tp.s == the verifier's T count, tp.p ==
// witness_qubits, and a compiled width of at most 20 qubits.
VerifyResult arthur_verify(const QMAInstance& inst, const MerlinState& merlin,
                           const TestParams& tp, Rng& rng,
                           const VerifyOptions& opts = {});

struct TrialRecord {
  uint64_t trial = 0;
  uint64_t seed = 0;
  int64_t x_plus = 0, z_plus = 0;
  bool test_passed = false;
  bool accepted = false;
};

struct AcceptanceEstimate {
  uint64_t trials = 0;
  uint64_t test_passed = 0;
  uint64_t accepted = 0;
  double p_hat = 0.0;
  WilsonInterval ci{0.0, 0.0};  // 99% Wilson interval on p_hat
  std::vector<TrialRecord> records;  // per-trial log, filled when requested
};

// Monte Carlo over independent protocol rounds. Trial t uses
// Rng(derive_stream_seed(seed, t)), so results are reproducible and
// independent of the job count (jobs > 1 splits trials across threads).
AcceptanceEstimate estimate_acceptance(const QMAInstance& inst, const MerlinState& merlin,
                                       const TestParams& tp, uint64_t trials, uint64_t seed,
                                       int jobs = 1, const VerifyOptions& opts = {},
                                       bool keep_records = false);

// Acceptance bounds of the combined protocol in terms of the bare verifier's
// a and b, at the reference operating point (honest failure 1/10, certified
// deviation 1/10 + statistical slack folded into the constant):
//   a' = 9a/10, b' = 9b/10 + 9/100 + 1/10, gap = a' - b'.
struct GapArithmetic {
  double a_prime = 0.0;
  double b_prime = 0.0;
  double gap = 0.0;
};
GapArithmetic completeness_soundness_gap(double a, double b);

// Fixed single-witness-qubit demonstration instance: T then H on the
// witness, measure Z, accept on outcome 0. The acceptance operator is a 2x2
// projector; its eigendecomposition yields the extremal witnesses and the
// exact a* (top eigenvalue) and b* (bottom).
struct ToyInstance {
  QMAInstance instance;
  StateVector honest_witness;     // maximizes acceptance (probability a*)
  StateVector rejecting_witness;  // orthogonal complement (probability b*)
};
ToyInstance build_toy_instance();

}  // namespace cliffcert

#endif
