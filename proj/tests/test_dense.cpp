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

#include "cliffcert/dense.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using namespace cliffcert;

namespace {

StateVector random_state(size_t n, Rng& rng) {
  return StateVector::from_amplitudes(n, random_ket(size_t{1} << n, rng));
}

Eigen::MatrixXcd random_unitary(size_t dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < g.rows(); i++) g.row(i) = random_ket(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  return qr.householderQ();
}

double pauli_expectation(const StateVector& sv, const char* pauli) {
  Eigen::VectorXcd mapped = pauli_matrix(PauliString::from_string(pauli)) * sv.amplitudes();
  return sv.amplitudes().dot(mapped).real();
}

}  // namespace

TEST_CASE("named kets have the right moments") {
  StateVector m = magic_ket();
  CHECK(std::abs(m.norm() - 1.0) < 1e-15);
  CHECK(std::abs(pauli_expectation(m, "X") + 1.0 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(pauli_expectation(m, "Z") + 1.0 / std::numbers::sqrt2) < 1e-15);

  StateVector t = t_ancilla_ket();
  CHECK(std::abs(pauli_expectation(t, "Z")) < 1e-15);
  CHECK(std::abs(pauli_expectation(t, "X") - 1.0 / std::numbers::sqrt2) < 1e-15);

  CHECK(std::abs(pauli_expectation(plus_ket(), "X") - 1.0) < 1e-15);
  CHECK(basis_ket(3, 0b101).amplitude(5) == cdouble(1.0));
  CHECK_THROWS_AS(basis_ket(2, 4), std::invalid_argument);
}

TEST_CASE("gate fast paths match explicit matrices") {
  Rng rng(0x2718ull);
  for (int rep = 0; rep < 30; rep++) {
    size_t n = 1 + rand_below(rng, 4);
    StateVector sv = random_state(n, rng);
    size_t q = rand_below(rng, n);

    auto check_gate = [&](Instruction ins, void (StateVector::*fast)(size_t)) {
      StateVector a = sv;
      (a.*fast)(q);
      Eigen::VectorXcd want = oracles::gate_unitary(n, ins) * sv.amplitudes();
      CHECK((a.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-13);
    };
    check_gate(Instruction::h(static_cast<uint32_t>(q)), &StateVector::apply_h);
    check_gate(Instruction::s(static_cast<uint32_t>(q)), &StateVector::apply_s);
    check_gate(Instruction::t(static_cast<uint32_t>(q)), &StateVector::apply_t);

    if (n >= 2) {
      size_t b = (q + 1 + rand_below(rng, n - 1)) % n;
      StateVector a = sv;
      a.apply_cz(q, b);
      Eigen::VectorXcd want =
          oracles::gate_unitary(n, Instruction::cz(static_cast<uint32_t>(q),
                                                   static_cast<uint32_t>(b))) *
          sv.amplitudes();
      CHECK((a.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("apply_unitary handles scattered targets") {
  Rng rng(0x31415ull);
  for (int rep = 0; rep < 20; rep++) {
    size_t n = 2 + rand_below(rng, 3);
    StateVector sv = random_state(n, rng);

    // One qubit: H via the general path equals the fast path.
    size_t q = rand_below(rng, n);
    Eigen::MatrixXcd h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::numbers::sqrt2;
    StateVector a = sv, b = sv;
    a.apply_unitary(h, {q});
    b.apply_h(q);
    CHECK((a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);

    // Two qubits, possibly out of order: a random U on (t0, t1) must equal
    // the same U applied after swapping the roles via permutation.
    size_t t0 = rand_below(rng, n);
    size_t t1 = (t0 + 1 + rand_below(rng, n - 1)) % n;
    Eigen::MatrixXcd u = random_unitary(4, rng);
    StateVector direct = sv;
    direct.apply_unitary(u, {t0, t1});

    // Independently: permute (t0, t1) down to (0, 1), apply on the low
    // qubits, permute back.
    std::vector<size_t> perm(n);
    std::vector<size_t> inverse(n);
    std::vector<size_t> rest;
    for (size_t i = 0; i < n; i++)
      if (i != t0 && i != t1) rest.push_back(i);
    perm[0] = t0;
    perm[1] = t1;
    for (size_t i = 0; i < rest.size(); i++) perm[2 + i] = rest[i];
    for (size_t i = 0; i < n; i++) inverse[perm[i]] = i;
    StateVector moved = permute_qubits(sv, perm);
    moved.apply_unitary(u, {0, 1});
    StateVector back = permute_qubits(moved, inverse);
    CHECK((back.amplitudes() - direct.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
  }

  StateVector sv(2);
  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Ones(2, 2);
  CHECK_THROWS_AS(sv.apply_unitary(not_unitary, {0}), std::invalid_argument);
  Eigen::MatrixXcd id4 = Eigen::MatrixXcd::Identity(4, 4);
  CHECK_THROWS_AS(sv.apply_unitary(id4, {1, 1}), std::invalid_argument);
}

TEST_CASE("measurement probabilities and collapse") {
  Rng rng(0x777ull);
  StateVector sv = random_state(3, rng);
  double p1 = sv.prob_z(1, true);
  CHECK(std::abs(sv.prob_z(1, false) + p1 - 1.0) < 1e-12);

  StateVector branch = sv;
  double got = branch.collapse_z(1, true);
  CHECK(std::abs(got - p1) < 1e-12);
  CHECK(std::abs(branch.norm() - 1.0) < 1e-12);
  CHECK(branch.prob_z(1, true) == doctest::Approx(1.0));

  StateVector zero(2);
  CHECK_THROWS_AS(zero.collapse_z(0, true), std::domain_error);

  // measure_z sampling agrees with prob_z in aggregate.
  int ones = 0;
  const int shots = 4000;
  for (int i = 0; i < shots; i++) {
    StateVector copy = sv;
    ones += copy.measure_z(1, rng);
  }
  double freq = static_cast<double>(ones) / shots;
  CHECK(std::abs(freq - p1) < 4.0 * std::sqrt(p1 * (1 - p1) / shots) + 0.01);
}

TEST_CASE("tensor and permute conventions") {
  // tensor(front, back): front owns the low bits.
  StateVector front = basis_ket(1, 1);
  StateVector back = basis_ket(2, 0b10);
  StateVector t = tensor(front, back);
  CHECK(t.num_qubits() == 3);
  CHECK(t.amplitude(0b101) == cdouble(1.0));

  // 0-qubit edge: scalar identity.
  CHECK(tensor(StateVector(0), front) == front);
  CHECK(tensor(front, StateVector(0)) == front);

  // permute: new qubit i = old qubit perm[i].
  StateVector p = permute_qubits(t, {2, 0, 1});
  // old bits (q0,q1,q2) = (1,0,1) -> new (q0,q1,q2) = (old2, old0, old1) = (1,1,0)
  CHECK(p.amplitude(0b011) == cdouble(1.0));
  CHECK_THROWS_AS(permute_qubits(t, {0, 0, 1}), std::invalid_argument);

  Rng rng(5);
  StateVector sv = random_state(4, rng);
  StateVector same = permute_qubits(permute_qubits(sv, {3, 1, 0, 2}), {2, 1, 3, 0});
  CHECK((same.amplitudes() - sv.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("density matrix construction validates") {
  Eigen::MatrixXcd ok(2, 2);
  ok << 0.75, 0.25, 0.25, 0.25;
  CHECK_NOTHROW(DensityMatrix(ok, {2}));

  Eigen::MatrixXcd skew(2, 2);
  skew << 0.5, cdouble(0, 0.5), cdouble(0, 0.5), 0.5;  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix(skew, {2}), std::invalid_argument);

  Eigen::MatrixXcd traceless = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(traceless, {2}), std::invalid_argument);

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.5, 1.0, 1.0, -0.5;  // eigenvalue below -1e-9
  CHECK_THROWS_AS(DensityMatrix(indefinite, {2}), std::invalid_argument);

  CHECK_THROWS_AS(DensityMatrix(ok, {4}), std::invalid_argument);  // dims mismatch
}

TEST_CASE("eigen ensemble reconstructs the state") {
  Rng rng(0xabcdull);
  DensityMatrix rho = random_density({2, 2, 2}, rng);
  auto ens = rho.eigen_ensemble();
  CHECK(!ens.empty());
  double wsum = 0.0;
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(8, 8);
  double prev = 1.0 + 1e-9;
  for (const auto& [w, v] : ens) {
    CHECK(w > 0.0);
    CHECK(w <= prev);
    prev = w;
    wsum += w;
    rebuilt += w * (v * v.adjoint());
  }
  CHECK(std::abs(wsum - 1.0) < 1e-9);
  CHECK((rebuilt - rho.matrix()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("partial trace matches the contraction oracle") {
  Rng rng(0xdadull);
  for (int rep = 0; rep < 15; rep++) {
    DensityMatrix rho = random_density({2, 4, 2}, rng);
    for (std::vector<size_t> keep : {std::vector<size_t>{0}, {1}, {2}, {0, 2}, {1, 2}}) {
      DensityMatrix got = partial_trace(rho, keep);
      Eigen::MatrixXcd want = oracles::partial_trace_oracle(rho.matrix(), {2, 4, 2}, keep);
      CHECK((got.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  DensityMatrix rho = random_density({2, 2}, rng);
  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {1, 0}), std::invalid_argument);
}

TEST_CASE("partial trace of pure states uses little-endian qubit labels") {
  Rng rng(0x9999ull);
  StateVector sv = random_state(4, rng);
  DensityMatrix full = DensityMatrix::from_state(sv);
  for (std::vector<size_t> keep : {std::vector<size_t>{0}, {2}, {1, 3}, {0, 1, 2}}) {
    DensityMatrix got = partial_trace_pure(sv, keep);
    // from_state puts qubit q at index bit q; dims() is most-significant
    // first, so qubit q is subsystem n-1-q of the DensityMatrix.
    std::vector<size_t> keep_subsys;
    for (size_t i = keep.size(); i-- > 0;) keep_subsys.push_back(4 - 1 - keep[i]);
    Eigen::MatrixXcd want =
        oracles::partial_trace_oracle(full.matrix(), full.dims(), keep_subsys);
    CHECK((got.matrix() - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fidelity and trace distance basics") {
  Rng rng(0x1234ull);
  DensityMatrix a = random_density({2, 2}, rng);
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0).epsilon(1e-9));

  // Pure states: F = |<psi|phi>|.
  StateVector psi = random_state(2, rng);
  StateVector phi = random_state(2, rng);
  double overlap = std::abs(psi.amplitudes().dot(phi.amplitudes()));
  double f = fidelity(DensityMatrix::from_state(psi), DensityMatrix::from_state(phi));
  CHECK(f == doctest::Approx(overlap).epsilon(1e-8));

  // Fuchs - van de Graaf for pure states: D = sqrt(1 - F^2).
  double d = trace_distance(DensityMatrix::from_state(psi), DensityMatrix::from_state(phi));
  CHECK(d == doctest::Approx(std::sqrt(1.0 - overlap * overlap)).epsilon(1e-8));

  DensityMatrix b = random_density({2, 2}, rng);
  CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-9));
  double f2 = fidelity(a, b);
  double d2 = trace_distance(a, b);
  CHECK(1.0 - f2 <= d2 + 1e-9);
  CHECK(d2 <= std::sqrt(std::max(0.0, 1.0 - f2 * f2)) + 1e-9);
}

TEST_CASE("dense circuit execution with feedback") {
  // T-gate circuits run via the dense path; unitary part checked against the
  // oracle matrix.
  Rng rng(0x7f7full);
  Circuit c;
  c.num_qubits = 3;
  c.num_cbits = 0;
  c.instructions = {Instruction::h(0), Instruction::t(0), Instruction::cz(0, 2),
                    Instruction::t(2), Instruction::s(1), Instruction::h(2)};
  StateVector init = random_state(3, rng);
  DenseRunResult res = run_circuit_dense(c, init, rng);
  Eigen::VectorXcd want = oracles::circuit_unitary(3, c.instructions) * init.amplitudes();
  CHECK((res.state.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-12);

  // Measurement feedback: teleport-like correction makes the output pure |0>.
  Circuit fb;
  fb.num_qubits = 1;
  fb.num_cbits = 1;
  fb.instructions = {
      Instruction::h(0), Instruction::mz(0, 0),
      // if the + branch collapsed to |1>, flip it back with HZH = X
      Instruction::h(0).when(0), Instruction::s(0).when(0), Instruction::s(0).when(0),
      Instruction::h(0).when(0)};
  for (uint64_t seed = 0; seed < 24; seed++) {
    Rng r2(seed);
    DenseRunResult out = run_circuit_dense(fb, StateVector(1), r2);
    CHECK(std::abs(out.state.prob_z(0, false) - 1.0) < 1e-12);
  }
}

TEST_CASE("branch enumeration covers the outcome tree") {
  Circuit c;
  c.num_qubits = 2;
  c.num_cbits = 2;
  c.instructions = {Instruction::h(0), Instruction::mz(0, 0), Instruction::h(1),
                    Instruction::mz(1, 1)};
  std::vector<Branch> branches = enumerate_branches(c, StateVector(2));
  REQUIRE(branches.size() == 4);
  double total = 0.0;
  for (const Branch& br : branches) {
    CHECK(br.probability == doctest::Approx(0.25).epsilon(1e-12));
    total += br.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Depth-first with outcome 0 first: first branch is 00, last is 11.
  CHECK(branches.front().cbits == std::vector<uint8_t>{0, 0});
  CHECK(branches.back().cbits == std::vector<uint8_t>{1, 1});

  // Deterministic branch pruning: measuring |0> twice yields one branch.
  Circuit d;
  d.num_qubits = 1;
  d.num_cbits = 2;
  d.instructions = {Instruction::mz(0, 0), Instruction::mz(0, 1)};
  CHECK(enumerate_branches(d, StateVector(1)).size() == 1);
}

TEST_CASE("json round trips") {
  Rng rng(0xeeeeull);
  StateVector sv = random_state(3, rng);
  StateVector sv2 = state_from_json(state_to_json(sv));
  CHECK((sv2.amplitudes() - sv.amplitudes()).cwiseAbs().maxCoeff() == 0.0);

  DensityMatrix dm = random_density({2, 4}, rng);
  DensityMatrix dm2 = density_from_json(density_to_json(dm));
  CHECK(dm2.dims() == dm.dims());
  CHECK((dm2.matrix() - dm.matrix()).cwiseAbs().maxCoeff() == 0.0);

  nlohmann::json bad = state_to_json(sv);
  bad["amplitudes"][0][0] = 7.0;  // breaks normalization
  CHECK_THROWS_AS(state_from_json(bad), std::invalid_argument);
}
