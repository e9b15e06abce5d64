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

#ifndef CLIFFCERT_DENSE_HPP
#define CLIFFCERT_DENSE_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "cliffcert/circuit.hpp"
#include "cliffcert/pauli.hpp"
#include "cliffcert/rand.hpp"

#include "json.hpp"

namespace cliffcert {

using cdouble = std::complex<double>;

// Dense n-qubit pure state, little-endian: qubit q is bit q of the
// amplitude index. Kept small on purpose; this module is the brute-force
// reference the fast paths are checked against.
class StateVector {
 public:
  explicit StateVector(size_t num_qubits);  // |0...0>; 0 qubits = scalar 1
  static StateVector from_amplitudes(size_t num_qubits, Eigen::VectorXcd amps);

  size_t num_qubits() const { return n_; }
  size_t dim() const { return static_cast<size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  cdouble amplitude(size_t idx) const { return amps_(static_cast<Eigen::Index>(idx)); }

  void apply_h(size_t q);
  void apply_s(size_t q);
  void apply_t(size_t q);
  void apply_cz(size_t a, size_t b);

  // General k-qubit unitary; u is 2^k x 2^k over little-endian target order
  // (targets[0] is the least significant index bit of u). Checks unitarity
  // to 1e-10 and throws std::invalid_argument otherwise.
  void apply_unitary(const Eigen::MatrixXcd& u, const std::vector<size_t>& targets);

  double prob_z(size_t q, bool outcome) const;

  // Projects qubit q onto `outcome` and renormalizes; returns the branch
  // probability. Throws std::domain_error if the branch has probability
  // below 1e-14 (nothing to renormalize).
  double collapse_z(size_t q, bool outcome);

  // Samples a Z measurement, collapsing the state.
  bool measure_z(size_t q, Rng& rng);

  double norm() const { return amps_.norm(); }

  bool operator==(const StateVector&) const = default;

 private:
  void check_qubit(size_t q, const char* op) const;
  size_t n_;
  Eigen::VectorXcd amps_;
};

// front occupies the low qubit indices of the result, back the high ones.
StateVector tensor(const StateVector& front, const StateVector& back);
// Reorders qubits: new qubit i is old qubit perm[i].
StateVector permute_qubits(const StateVector& sv, const std::vector<size_t>& perm);

// Named single-qubit states.
StateVector magic_ket();       // sin(pi/8)|0> - cos(pi/8)|1>; <X> = <Z> = -1/sqrt2
StateVector t_ancilla_ket();   // (|0> + e^{i pi/4}|1>)/sqrt2, the T-gadget resource
StateVector plus_ket();
StateVector basis_ket(size_t num_qubits, uint64_t bits);

// Density operator over an explicit subsystem split. dims[0] is the most
// significant index factor (matrix = kron(subsystem 0, subsystem 1, ...)).
// Construction validates Hermiticity and unit trace to 1e-10 and positive
// semidefiniteness down to eigenvalues >= -1e-9. Total dimension is capped
// at 256; this type exists for small oracle computations only.
class DensityMatrix {
 public:
  DensityMatrix(Eigen::MatrixXcd mat, std::vector<size_t> dims);
  static DensityMatrix pure(const Eigen::VectorXcd& ket, std::vector<size_t> dims);
  // All-qubit density operator of a pure state. The index convention is kept
  // little-endian to match StateVector (bit q of the row index is qubit q);
  // dims() reports one 2 per qubit.
  static DensityMatrix from_state(const StateVector& sv);

  const Eigen::MatrixXcd& matrix() const { return mat_; }
  const std::vector<size_t>& dims() const { return dims_; }
  size_t dim() const { return static_cast<size_t>(mat_.rows()); }

  // Spectral decomposition as an ensemble of pure states, eigenvalues
  // descending, entries below 1e-12 dropped.
  std::vector<std::pair<double, Eigen::VectorXcd>> eigen_ensemble() const;

 private:
  std::vector<size_t> dims_;
  Eigen::MatrixXcd mat_;
};

// Traces out all subsystems not listed in keep (indices into dims(), kept in
// their original order). Throws std::invalid_argument on empty or invalid keep.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<size_t>& keep);

// Reduced density operator of a pure state on the given qubits (ascending,
// little-endian in the result: bit j of the result index is keep[j]).
DensityMatrix partial_trace_pure(const StateVector& sv, const std::vector<size_t>& keep);

// Uhlmann fidelity F = Tr sqrt( sqrt(a) b sqrt(a) ), in [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

// (1/2) Tr |a - b|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Best product-state approximation on a bipartite state: over states of the
// form |x><x| (x) sigma, the squared fidelity to rho attains its maximum
//   max_sigma F(|x><x| (x) sigma, rho)^2 = <x| Tr_2 rho |x>,
// at sigma = <x| rho |x> / <x| Tr_2 rho |x> (a partial inner product on
// subsystem 1). rho must have exactly two subsystems; x lives on the first.
// Throws std::domain_error when <x| Tr_2 rho |x> vanishes.
struct ProductFidelityResult {
  double max_fidelity_sq;
  DensityMatrix maximizer;  // the optimal sigma on subsystem 2
};
ProductFidelityResult max_product_fidelity(const DensityMatrix& rho,
                                           const Eigen::VectorXcd& x);

// Dense circuit semantics (any instruction mix, including T).
struct DenseRunResult {
  StateVector state;
  std::vector<uint8_t> cbits;
};
DenseRunResult run_circuit_dense(const Circuit& c, const StateVector& initial, Rng& rng);

// All measurement branches with probability above prune_threshold, in
// depth-first order with outcome 0 explored first.
struct Branch {
  double probability;
  std::vector<uint8_t> cbits;
  StateVector state;
};
std::vector<Branch> enumerate_branches(const Circuit& c, const StateVector& initial,
                                       double prune_threshold = 1e-12);

// Dense 2^n x 2^n matrix of a Pauli operator (little-endian qubit order).
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

// Haar-ish random test states: complex Gaussian ket, Ginibre density matrix.
Eigen::VectorXcd random_ket(size_t dim, Rng& rng);
DensityMatrix random_density(const std::vector<size_t>& dims, Rng& rng);

// JSON forms: amplitudes / matrix entries as [re, im] pairs, matrices
// row-major. The from_ functions revalidate through the normal constructors.
nlohmann::json state_to_json(const StateVector& sv);
StateVector state_from_json(const nlohmann::json& j);
nlohmann::json density_to_json(const DensityMatrix& dm);
DensityMatrix density_from_json(const nlohmann::json& j);

}  // namespace cliffcert

#endif
