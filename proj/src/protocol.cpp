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

#include "cliffcert/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace cliffcert {

namespace {

constexpr size_t kMaxDenseQubits = 20;

StateVector exact_resource_states(size_t s) {
  StateVector sv(0);
  for (size_t i = 0; i < s; i++) sv = tensor(sv, magic_ket());
  return sv;
}

}  // namespace

void QMAInstance::validate() const {
  verifier.validate();
  if (witness_qubits > verifier.num_qubits)
    throw std::invalid_argument("QMAInstance: more witness qubits than circuit qubits");
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("QMAInstance: a and b must lie in [0, 1]");
  if (accept_bit >= verifier.num_cbits)
    throw std::invalid_argument("QMAInstance: accept bit out of range");
}

void save_instance(const QMAInstance& inst, const std::string& prefix) {
  inst.validate();
  {
    std::ofstream f(prefix + ".circ");
    if (!f) throw std::runtime_error("save_instance: cannot write " + prefix + ".circ");
    f << serialize_circuit(inst.verifier);
  }
  nlohmann::json j{{"p", inst.witness_qubits},
                   {"a", inst.a},
                   {"b", inst.b},
                   {"accept_bit", inst.accept_bit},
                   {"accept_value", inst.accept_value}};
  if (inst.a_star) j["a_star"] = *inst.a_star;
  if (inst.b_star) j["b_star"] = *inst.b_star;
  std::ofstream f(prefix + ".json");
  if (!f) throw std::runtime_error("save_instance: cannot write " + prefix + ".json");
  f << j.dump(2) << "\n";
}

QMAInstance load_instance(const std::string& prefix) {
  std::ifstream cf(prefix + ".circ");
  if (!cf) throw std::runtime_error("load_instance: cannot read " + prefix + ".circ");
  std::stringstream buf;
  buf << cf.rdbuf();

  std::ifstream jf(prefix + ".json");
  if (!jf) throw std::runtime_error("load_instance: cannot read " + prefix + ".json");
  nlohmann::json j = nlohmann::json::parse(jf);

  QMAInstance inst;
  inst.verifier = parse_circuit(buf.str());
  inst.witness_qubits = j.at("p").get<size_t>();
  inst.a = j.at("a").get<double>();
  inst.b = j.at("b").get<double>();
  inst.accept_bit = j.at("accept_bit").get<size_t>();
  inst.accept_value = j.at("accept_value").get<bool>();
  if (j.contains("a_star") && !j["a_star"].is_null()) inst.a_star = j["a_star"].get<double>();
  if (j.contains("b_star") && !j["b_star"].is_null()) inst.b_star = j["b_star"].get<double>();
  inst.validate();
  return inst;
}

VerifyResult arthur_verify(const QMAInstance& inst, const MerlinState& merlin,
                           const TestParams& tp, Rng& rng, const VerifyOptions& opts) {
  inst.validate();
  size_t s = count_magic_states(inst.verifier);
  if (tp.s != s)
    throw std::invalid_argument("arthur_verify: tp.s must equal the verifier's T count");
  if (tp.p != inst.witness_qubits)
    throw std::invalid_argument("arthur_verify: tp.p must equal the witness qubit count");
  if (merlin.witness.num_qubits() != inst.witness_qubits)
    throw std::invalid_argument("arthur_verify: witness register has the wrong size");

  CompiledCircuit compiled = expand_t_gates(inst.verifier);
  if (compiled.clifford.num_qubits > kMaxDenseQubits)
    throw std::invalid_argument("arthur_verify: compiled verifier too wide for dense execution");

  VerifyResult res;
  StateVector sigma(0);
  if (opts.bypass_test) {
    res.test.passed = true;
    res.test.sigma.resize(s);
    for (size_t i = 0; i < s; i++) res.test.sigma[i] = i;
    sigma = exact_resource_states(s);
  } else {
    TestRun run = run_test_full(merlin, tp, rng, true);
    res.test = run.outcome;
    if (!res.test.passed) return res;
    sigma = std::move(*run.sigma_state);
  }
  res.test_passed = true;

  size_t ancillas = inst.verifier.num_qubits - inst.witness_qubits;
  StateVector initial = tensor(tensor(merlin.witness, basis_ket(ancillas, 0)), sigma);
  DenseRunResult dres = run_circuit_dense(compiled.clifford, initial, rng);
  res.accepted = dres.cbits[inst.accept_bit] == static_cast<uint8_t>(inst.accept_value);
  return res;
}

AcceptanceEstimate estimate_acceptance(const QMAInstance& inst, const MerlinState& merlin,
                                       const TestParams& tp, uint64_t trials, uint64_t seed,
                                       int jobs, const VerifyOptions& opts,
                                       bool keep_records) {
  if (trials == 0) throw std::invalid_argument("estimate_acceptance: need at least one trial");
  if (jobs < 1) jobs = 1;
  uint64_t num_jobs = std::min<uint64_t>(static_cast<uint64_t>(jobs), trials);

  AcceptanceEstimate est;
  est.trials = trials;
  if (keep_records) est.records.resize(trials);

  std::vector<uint64_t> passed(num_jobs, 0), accepted(num_jobs, 0);
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&](uint64_t w, uint64_t lo, uint64_t hi) {
    try {
      for (uint64_t t = lo; t < hi; t++) {
        uint64_t trial_seed = derive_stream_seed(seed, t);
        Rng rng(trial_seed);
        VerifyResult r = arthur_verify(inst, merlin, tp, rng, opts);
        passed[w] += r.test_passed;
        accepted[w] += r.accepted;
        if (keep_records)
          est.records[t] = {t,        trial_seed,    r.test.x_plus,
                            r.test.z_plus, r.test_passed, r.accepted};
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (num_jobs == 1) {
    worker(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    for (uint64_t w = 0; w < num_jobs; w++) {
      uint64_t lo = trials * w / num_jobs;
      uint64_t hi = trials * (w + 1) / num_jobs;
      pool.emplace_back(worker, w, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (uint64_t w = 0; w < num_jobs; w++) {
    est.test_passed += passed[w];
    est.accepted += accepted[w];
  }
  est.p_hat = static_cast<double>(est.accepted) / static_cast<double>(trials);
  est.ci = wilson_interval(est.accepted, trials, kWilsonZ99);
  return est;
}

GapArithmetic completeness_soundness_gap(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::domain_error("completeness_soundness_gap: a and b must lie in [0, 1]");
  GapArithmetic g;
  g.a_prime = 9.0 * a / 10.0;
  g.b_prime = 9.0 * b / 10.0 + 9.0 / 100.0 + 1.0 / 10.0;
  // Algebraically a' - b'; evaluated over a common denominator so that
  // decimal inputs give decimal gaps (2/3, 1/3 -> exactly 0.11).
  g.gap = (90.0 * a - 90.0 * b - 19.0) / 100.0;
  return g;
}

ToyInstance build_toy_instance() {
  Circuit v;
  v.num_qubits = 1;
  v.num_cbits = 1;
  v.instructions = {Instruction::t(0), Instruction::h(0), Instruction::mz(0, 0)};

  // Acceptance operator of the outcome-0 event: (HT)^dag |0><0| HT.
  Eigen::Matrix2cd tg = Eigen::Matrix2cd::Zero();
  tg(0, 0) = 1.0;
  tg(1, 1) = std::polar(1.0, std::numbers::pi / 4);
  Eigen::Matrix2cd hg;
  hg << 1.0, 1.0, 1.0, -1.0;
  hg /= std::numbers::sqrt2;
  Eigen::Matrix2cd proj0 = Eigen::Matrix2cd::Zero();
  proj0(0, 0) = 1.0;
  Eigen::Matrix2cd u = hg * tg;
  Eigen::Matrix2cd accept_op = u.adjoint() * proj0 * u;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(accept_op);
  if (es.info() != Eigen::Success)
    throw std::logic_error("build_toy_instance: eigensolver failed");
  double b_star = std::clamp(es.eigenvalues()(0), 0.0, 1.0);
  double a_star = std::clamp(es.eigenvalues()(1), 0.0, 1.0);

  ToyInstance toy{
      .instance = {.verifier = std::move(v),
                   .witness_qubits = 1,
                   .a = a_star,
                   .b = b_star,
                   .accept_bit = 0,
                   .accept_value = false,
                   .a_star = a_star,
                   .b_star = b_star},
      .honest_witness = StateVector::from_amplitudes(1, es.eigenvectors().col(1)),
      .rejecting_witness = StateVector::from_amplitudes(1, es.eigenvectors().col(0)),
  };
  toy.instance.validate();
  return toy;
}

}  // namespace cliffcert
