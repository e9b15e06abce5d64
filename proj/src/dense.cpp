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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cliffcert {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kEigenFloor = -1e-9;
constexpr size_t kMaxDenseDim = 256;

double clamped_sqrt(double v, const char* what) {
  if (v < kEigenFloor)
    throw std::domain_error(std::string(what) + ": eigenvalue " + std::to_string(v) +
                            " below tolerance floor");
  return v > 0 ? std::sqrt(v) : 0.0;
}

// Box-Muller on the portable uniform generator, so results are identical
// across standard libraries.
double gaussian(Rng& rng) {
  double u1 = rand_double(rng);
  while (u1 <= 0) u1 = rand_double(rng);
  double u2 = rand_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

StateVector::StateVector(size_t num_qubits) : n_(num_qubits) {
  // 0 qubits is the scalar state 1: the identity of tensor(), handy for
  // optional registers (e.g. an empty witness).
  if (num_qubits > 24)
    throw std::invalid_argument("StateVector: qubit count out of supported range");
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  amps_(0) = 1.0;
}

StateVector StateVector::from_amplitudes(size_t num_qubits, Eigen::VectorXcd amps) {
  StateVector sv(num_qubits);
  if (amps.size() != sv.amps_.size())
    throw std::invalid_argument("StateVector::from_amplitudes: wrong dimension");
  if (std::abs(amps.norm() - 1.0) > kHermitianTol)
    throw std::invalid_argument("StateVector::from_amplitudes: state is not normalized");
  sv.amps_ = std::move(amps);
  return sv;
}

void StateVector::check_qubit(size_t q, const char* op) const {
  if (q >= n_) throw std::out_of_range(std::string(op) + ": qubit index out of range");
}

void StateVector::apply_h(size_t q) {
  check_qubit(q, "apply_h");
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  size_t bit = size_t{1} << q;
  for (size_t i = 0; i < dim(); i++) {
    if (i & bit) continue;
    cdouble a0 = amps_(static_cast<Eigen::Index>(i));
    cdouble a1 = amps_(static_cast<Eigen::Index>(i | bit));
    amps_(static_cast<Eigen::Index>(i)) = inv_sqrt2 * (a0 + a1);
    amps_(static_cast<Eigen::Index>(i | bit)) = inv_sqrt2 * (a0 - a1);
  }
}

void StateVector::apply_s(size_t q) {
  check_qubit(q, "apply_s");
  size_t bit = size_t{1} << q;
  for (size_t i = 0; i < dim(); i++)
    if (i & bit) amps_(static_cast<Eigen::Index>(i)) *= cdouble(0, 1);
}

void StateVector::apply_t(size_t q) {
  check_qubit(q, "apply_t");
  size_t bit = size_t{1} << q;
  cdouble phase = std::polar(1.0, std::numbers::pi / 4);
  for (size_t i = 0; i < dim(); i++)
    if (i & bit) amps_(static_cast<Eigen::Index>(i)) *= phase;
}

void StateVector::apply_cz(size_t a, size_t b) {
  check_qubit(a, "apply_cz");
  check_qubit(b, "apply_cz");
  if (a == b) throw std::invalid_argument("apply_cz: qubits must be distinct");
  size_t mask = (size_t{1} << a) | (size_t{1} << b);
  for (size_t i = 0; i < dim(); i++)
    if ((i & mask) == mask) amps_(static_cast<Eigen::Index>(i)) = -amps_(static_cast<Eigen::Index>(i));
}

void StateVector::apply_unitary(const Eigen::MatrixXcd& u, const std::vector<size_t>& targets) {
  size_t k = targets.size();
  if (k == 0 || k > n_) throw std::invalid_argument("apply_unitary: bad target count");
  Eigen::Index block = Eigen::Index{1} << k;
  if (u.rows() != block || u.cols() != block)
    throw std::invalid_argument("apply_unitary: matrix dimension does not match targets");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(block, block)).cwiseAbs().maxCoeff() >
      kHermitianTol)
    throw std::invalid_argument("apply_unitary: matrix is not unitary");
  size_t tmask = 0;
  for (size_t t : targets) {
    check_qubit(t, "apply_unitary");
    if (tmask & (size_t{1} << t))
      throw std::invalid_argument("apply_unitary: duplicate target");
    tmask |= size_t{1} << t;
  }
  Eigen::VectorXcd in(block), out(block);
  for (size_t base = 0; base < dim(); base++) {
    if (base & tmask) continue;
    for (size_t g = 0; g < static_cast<size_t>(block); g++) {
      size_t idx = base;
      for (size_t b = 0; b < k; b++)
        if (g & (size_t{1} << b)) idx |= size_t{1} << targets[b];
      in(static_cast<Eigen::Index>(g)) = amps_(static_cast<Eigen::Index>(idx));
    }
    out = u * in;
    for (size_t g = 0; g < static_cast<size_t>(block); g++) {
      size_t idx = base;
      for (size_t b = 0; b < k; b++)
        if (g & (size_t{1} << b)) idx |= size_t{1} << targets[b];
      amps_(static_cast<Eigen::Index>(idx)) = out(static_cast<Eigen::Index>(g));
    }
  }
}

double StateVector::prob_z(size_t q, bool outcome) const {
  check_qubit(q, "prob_z");
  size_t bit = size_t{1} << q;
  double p = 0;
  for (size_t i = 0; i < dim(); i++)
    if (((i & bit) != 0) == outcome) p += std::norm(amps_(static_cast<Eigen::Index>(i)));
  return p;
}

double StateVector::collapse_z(size_t q, bool outcome) {
  double p = prob_z(q, outcome);
  if (p < 1e-14) throw std::domain_error("collapse_z: branch probability is zero");
  size_t bit = size_t{1} << q;
  double scale = 1.0 / std::sqrt(p);
  for (size_t i = 0; i < dim(); i++) {
    if (((i & bit) != 0) == outcome)
      amps_(static_cast<Eigen::Index>(i)) *= scale;
    else
      amps_(static_cast<Eigen::Index>(i)) = 0;
  }
  return p;
}

bool StateVector::measure_z(size_t q, Rng& rng) {
  double p1 = prob_z(q, true);
  bool outcome = rand_double(rng) < p1;
  collapse_z(q, outcome);
  return outcome;
}

StateVector tensor(const StateVector& front, const StateVector& back) {
  size_t n = front.num_qubits() + back.num_qubits();
  Eigen::VectorXcd amps(Eigen::Index{1} << n);
  for (size_t j = 0; j < back.dim(); j++)
    for (size_t i = 0; i < front.dim(); i++)
      amps(static_cast<Eigen::Index>((j << front.num_qubits()) | i)) =
          back.amplitude(j) * front.amplitude(i);
  return StateVector::from_amplitudes(n, std::move(amps));
}

StateVector permute_qubits(const StateVector& sv, const std::vector<size_t>& perm) {
  size_t n = sv.num_qubits();
  if (perm.size() != n) throw std::invalid_argument("permute_qubits: wrong permutation size");
  std::vector<bool> seen(n, false);
  for (size_t p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("permute_qubits: not a permutation");
    seen[p] = true;
  }
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(sv.dim()));
  for (size_t idx = 0; idx < sv.dim(); idx++) {
    size_t src = 0;
    for (size_t b = 0; b < n; b++)
      if (idx & (size_t{1} << b)) src |= size_t{1} << perm[b];
    amps(static_cast<Eigen::Index>(idx)) = sv.amplitude(src);
  }
  return StateVector::from_amplitudes(n, std::move(amps));
}

StateVector magic_ket() {
  Eigen::VectorXcd amps(2);
  amps << std::sin(std::numbers::pi / 8), -std::cos(std::numbers::pi / 8);
  return StateVector::from_amplitudes(1, std::move(amps));
}

StateVector t_ancilla_ket() {
  Eigen::VectorXcd amps(2);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  amps << inv_sqrt2, std::polar(inv_sqrt2, std::numbers::pi / 4);
  return StateVector::from_amplitudes(1, std::move(amps));
}

StateVector plus_ket() {
  Eigen::VectorXcd amps(2);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  amps << inv_sqrt2, inv_sqrt2;
  return StateVector::from_amplitudes(1, std::move(amps));
}

StateVector basis_ket(size_t num_qubits, uint64_t bits) {
  StateVector sv(num_qubits);
  if (bits >> num_qubits)
    throw std::invalid_argument("basis_ket: bit pattern wider than register");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sv.dim()));
  amps(static_cast<Eigen::Index>(bits)) = 1.0;
  return StateVector::from_amplitudes(num_qubits, std::move(amps));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd mat, std::vector<size_t> dims)
    : dims_(std::move(dims)), mat_(std::move(mat)) {
  size_t total = 1;
  for (size_t d : dims_) {
    if (d == 0) throw std::invalid_argument("DensityMatrix: zero subsystem dimension");
    total *= d;
  }
  if (dims_.empty() || total > kMaxDenseDim)
    throw std::invalid_argument("DensityMatrix: unsupported dimension");
  if (mat_.rows() != static_cast<Eigen::Index>(total) || mat_.cols() != mat_.rows())
    throw std::invalid_argument("DensityMatrix: matrix does not match dims");
  if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(mat_.trace().real() - 1.0) > kHermitianTol ||
      std::abs(mat_.trace().imag()) > kHermitianTol)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenFloor)
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& ket, std::vector<size_t> dims) {
  if (std::abs(ket.norm() - 1.0) > kHermitianTol)
    throw std::invalid_argument("DensityMatrix::pure: ket is not normalized");
  return DensityMatrix(ket * ket.adjoint(), std::move(dims));
}

DensityMatrix DensityMatrix::from_state(const StateVector& sv) {
  return pure(sv.amplitudes(), std::vector<size_t>(sv.num_qubits(), 2));
}

std::vector<std::pair<double, Eigen::VectorXcd>> DensityMatrix::eigen_ensemble() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_);
  std::vector<std::pair<double, Eigen::VectorXcd>> out;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; i--) {
    double w = es.eigenvalues()(i);
    if (w > 1e-12) out.emplace_back(w, es.eigenvectors().col(i));
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<size_t>& keep) {
  const std::vector<size_t>& dims = rho.dims();
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing kept");
  std::vector<bool> kept(dims.size(), false);
  for (size_t k : keep) {
    if (k >= dims.size() || kept[k])
      throw std::invalid_argument("partial_trace: bad subsystem index");
    kept[k] = true;
  }
  for (size_t i = 1; i < keep.size(); i++)
    if (keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be strictly ascending");

  // Strides in the row index; dims[0] is most significant.
  std::vector<size_t> stride(dims.size());
  size_t acc = 1;
  for (size_t i = dims.size(); i-- > 0;) {
    stride[i] = acc;
    acc *= dims[i];
  }
  size_t keep_dim = 1;
  for (size_t k : keep) keep_dim *= dims[k];
  std::vector<size_t> trace_subs;
  size_t trace_dim = 1;
  for (size_t i = 0; i < dims.size(); i++)
    if (!kept[i]) {
      trace_subs.push_back(i);
      trace_dim *= dims[i];
    }

  auto offset_of = [&](const std::vector<size_t>& subs, size_t flat) {
    size_t off = 0;
    for (size_t i = subs.size(); i-- > 0;) {
      size_t d = dims[subs[i]];
      off += (flat % d) * stride[subs[i]];
      flat /= d;
    }
    return off;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(keep_dim),
                                                static_cast<Eigen::Index>(keep_dim));
  for (size_t rk = 0; rk < keep_dim; rk++) {
    size_t roff = offset_of(keep, rk);
    for (size_t ck = 0; ck < keep_dim; ck++) {
      size_t coff = offset_of(keep, ck);
      cdouble sum = 0;
      for (size_t t = 0; t < trace_dim; t++) {
        size_t toff = offset_of(trace_subs, t);
        sum += rho.matrix()(static_cast<Eigen::Index>(roff + toff),
                            static_cast<Eigen::Index>(coff + toff));
      }
      out(static_cast<Eigen::Index>(rk), static_cast<Eigen::Index>(ck)) = sum;
    }
  }
  std::vector<size_t> out_dims;
  for (size_t k : keep) out_dims.push_back(dims[k]);
  return DensityMatrix(std::move(out), std::move(out_dims));
}

DensityMatrix partial_trace_pure(const StateVector& sv, const std::vector<size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace_pure: nothing kept");
  for (size_t i = 0; i < keep.size(); i++) {
    if (keep[i] >= sv.num_qubits())
      throw std::invalid_argument("partial_trace_pure: qubit out of range");
    if (i && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace_pure: keep must be strictly ascending");
  }
  size_t k = keep.size();
  size_t rest = sv.num_qubits() - k;
  std::vector<size_t> others;
  {
    std::vector<bool> kept(sv.num_qubits(), false);
    for (size_t q : keep) kept[q] = true;
    for (size_t q = 0; q < sv.num_qubits(); q++)
      if (!kept[q]) others.push_back(q);
  }
  auto spread = [](size_t flat, const std::vector<size_t>& positions) {
    size_t idx = 0;
    for (size_t b = 0; b < positions.size(); b++)
      if (flat & (size_t{1} << b)) idx |= size_t{1} << positions[b];
    return idx;
  };
  size_t kd = size_t{1} << k, td = size_t{1} << rest;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kd),
                                                static_cast<Eigen::Index>(kd));
  for (size_t t = 0; t < td; t++) {
    size_t toff = spread(t, others);
    for (size_t r = 0; r < kd; r++) {
      cdouble ar = sv.amplitude(spread(r, keep) | toff);
      if (ar == cdouble(0, 0)) continue;
      for (size_t c = 0; c < kd; c++)
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            ar * std::conj(sv.amplitude(spread(c, keep) | toff));
    }
  }
  return DensityMatrix(std::move(out), std::vector<size_t>(k, 2));
}

namespace {

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXd root = es.eigenvalues();
  for (Eigen::Index i = 0; i < root.size(); i++)
    root(i) = clamped_sqrt(root(i), what);
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  Eigen::MatrixXcd ra = matrix_sqrt_psd(a.matrix(), "fidelity");
  Eigen::MatrixXcd inner = ra * b.matrix() * ra;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner, Eigen::EigenvaluesOnly);
  double f = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); i++)
    f += clamped_sqrt(es.eigenvalues()(i), "fidelity");
  return std::min(f, 1.0);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix() - b.matrix(),
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

ProductFidelityResult max_product_fidelity(const DensityMatrix& rho,
                                           const Eigen::VectorXcd& x) {
  if (rho.dims().size() != 2)
    throw std::invalid_argument("max_product_fidelity: rho must be bipartite");
  size_t d1 = rho.dims()[0], d2 = rho.dims()[1];
  if (x.size() != static_cast<Eigen::Index>(d1))
    throw std::invalid_argument("max_product_fidelity: x does not match subsystem 1");
  if (std::abs(x.norm() - 1.0) > kHermitianTol)
    throw std::invalid_argument("max_product_fidelity: x is not normalized");

  // <x| rho |x> taken on subsystem 1 only: a d2 x d2 operator.
  Eigen::MatrixXcd cond = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d2),
                                                 static_cast<Eigen::Index>(d2));
  for (size_t i1 = 0; i1 < d1; i1++)
    for (size_t j1 = 0; j1 < d1; j1++) {
      cdouble w = std::conj(x(static_cast<Eigen::Index>(i1))) * x(static_cast<Eigen::Index>(j1));
      if (w == cdouble(0, 0)) continue;
      for (size_t i2 = 0; i2 < d2; i2++)
        for (size_t j2 = 0; j2 < d2; j2++)
          cond(static_cast<Eigen::Index>(i2), static_cast<Eigen::Index>(j2)) +=
              w * rho.matrix()(static_cast<Eigen::Index>(i1 * d2 + i2),
                               static_cast<Eigen::Index>(j1 * d2 + j2));
    }
  double weight = cond.trace().real();
  if (weight < 1e-12)
    throw std::domain_error(
        "max_product_fidelity: <x|Tr_2 rho|x> vanishes; no conditional state exists");
  return {weight, DensityMatrix(cond / weight, {d2})};
}

DenseRunResult run_circuit_dense(const Circuit& c, const StateVector& initial, Rng& rng) {
  c.validate();
  if (initial.num_qubits() != c.num_qubits)
    throw std::invalid_argument("run_circuit_dense: initial state size mismatch");
  DenseRunResult res{initial, std::vector<uint8_t>(c.num_cbits, 0)};
  for (const Instruction& ins : c.instructions) {
    if (ins.condition >= 0 && !res.cbits[static_cast<size_t>(ins.condition)]) continue;
    switch (ins.op) {
      case Op::GateH:
        res.state.apply_h(ins.q0);
        break;
      case Op::GateS:
        res.state.apply_s(ins.q0);
        break;
      case Op::GateT:
        res.state.apply_t(ins.q0);
        break;
      case Op::GateCZ:
        res.state.apply_cz(ins.q0, ins.q1);
        break;
      case Op::MeasureZ:
        res.cbits[ins.c0] = res.state.measure_z(ins.q0, rng) ? 1 : 0;
        break;
      case Op::ClassicalXor:
        res.cbits[ins.c2] = res.cbits[ins.c0] ^ res.cbits[ins.c1];
        break;
    }
  }
  return res;
}

namespace {

void enumerate_rec(const Circuit& c, size_t at, StateVector state,
                   std::vector<uint8_t> cbits, double prob, double prune,
                   std::vector<Branch>& out) {
  for (size_t i = at; i < c.instructions.size(); i++) {
    const Instruction& ins = c.instructions[i];
    if (ins.condition >= 0 && !cbits[static_cast<size_t>(ins.condition)]) continue;
    switch (ins.op) {
      case Op::GateH:
        state.apply_h(ins.q0);
        break;
      case Op::GateS:
        state.apply_s(ins.q0);
        break;
      case Op::GateT:
        state.apply_t(ins.q0);
        break;
      case Op::GateCZ:
        state.apply_cz(ins.q0, ins.q1);
        break;
      case Op::ClassicalXor:
        cbits[ins.c2] = cbits[ins.c0] ^ cbits[ins.c1];
        break;
      case Op::MeasureZ: {
        double p0 = state.prob_z(ins.q0, false);
        for (int outcome = 0; outcome < 2; outcome++) {
          double pb = outcome ? 1.0 - p0 : p0;
          if (prob * pb <= prune) continue;
          StateVector next = state;
          next.collapse_z(ins.q0, outcome != 0);
          std::vector<uint8_t> cb = cbits;
          cb[ins.c0] = static_cast<uint8_t>(outcome);
          enumerate_rec(c, i + 1, std::move(next), std::move(cb), prob * pb, prune, out);
        }
        return;
      }
    }
  }
  out.push_back(Branch{prob, std::move(cbits), std::move(state)});
}

}  // namespace

std::vector<Branch> enumerate_branches(const Circuit& c, const StateVector& initial,
                                       double prune_threshold) {
  c.validate();
  if (initial.num_qubits() != c.num_qubits)
    throw std::invalid_argument("enumerate_branches: initial state size mismatch");
  std::vector<Branch> out;
  enumerate_rec(c, 0, initial, std::vector<uint8_t>(c.num_cbits, 0), 1.0,
                prune_threshold, out);
  return out;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  size_t n = p.num_qubits();
  if (n > 8) throw std::invalid_argument("pauli_matrix: too many qubits for a dense matrix");
  static const Eigen::Matrix2cd kI = Eigen::Matrix2cd::Identity();
  static const Eigen::Matrix2cd kX = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd kY =
      (Eigen::Matrix2cd() << 0, cdouble(0, -1), cdouble(0, 1), 0).finished();
  static const Eigen::Matrix2cd kZ = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  size_t dim = size_t{1} << n;
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (size_t r = 0; r < dim; r++)
    for (size_t cidx = 0; cidx < dim; cidx++) {
      cdouble v = 1.0;
      for (size_t q = 0; q < n && v != cdouble(0, 0); q++) {
        bool x = p.x_bit(q), z = p.z_bit(q);
        const Eigen::Matrix2cd& m = x ? (z ? kY : kX) : (z ? kZ : kI);
        v *= m(static_cast<Eigen::Index>((r >> q) & 1), static_cast<Eigen::Index>((cidx >> q) & 1));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cidx)) = v;
    }
  // Fold in the sign relative to the I/X/Y/Z letters.
  static const cdouble kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int y_count = 0;
  for (size_t q = 0; q < n; q++)
    if (p.x_bit(q) && p.z_bit(q)) y_count++;
  return kPhase[(p.phase_exponent() - y_count) & 3] * out;
}

Eigen::VectorXcd random_ket(size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_ket: zero dimension");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); i++) v(i) = cdouble(gaussian(rng), gaussian(rng));
  v.normalize();
  return v;
}

DensityMatrix random_density(const std::vector<size_t>& dims, Rng& rng) {
  size_t total = 1;
  for (size_t d : dims) total *= d;
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (Eigen::Index r = 0; r < g.rows(); r++)
    for (Eigen::Index c = 0; c < g.cols(); c++) g(r, c) = cdouble(gaussian(rng), gaussian(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Symmetrize away the last bits of rounding noise before validation.
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(std::move(rho), dims);
}

nlohmann::json state_to_json(const StateVector& sv) {
  nlohmann::json amps = nlohmann::json::array();
  for (size_t i = 0; i < sv.dim(); i++) {
    cdouble a = sv.amplitude(i);
    amps.push_back({a.real(), a.imag()});
  }
  return {{"num_qubits", sv.num_qubits()}, {"amplitudes", amps}};
}

StateVector state_from_json(const nlohmann::json& j) {
  size_t n = j.at("num_qubits").get<size_t>();
  const nlohmann::json& amps = j.at("amplitudes");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); i++)
    v(static_cast<Eigen::Index>(i)) = cdouble(amps[i].at(0).get<double>(), amps[i].at(1).get<double>());
  return StateVector::from_amplitudes(n, std::move(v));
}

nlohmann::json density_to_json(const DensityMatrix& dm) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < dm.matrix().rows(); r++) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < dm.matrix().cols(); c++) {
      cdouble v = dm.matrix()(r, c);
      row.push_back({v.real(), v.imag()});
    }
    rows.push_back(std::move(row));
  }
  return {{"dims", dm.dims()}, {"matrix", rows}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  std::vector<size_t> dims = j.at("dims").get<std::vector<size_t>>();
  const nlohmann::json& rows = j.at("matrix");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(rows.size()));
  for (size_t r = 0; r < rows.size(); r++) {
    if (rows[r].size() != rows.size())
      throw std::invalid_argument("density_from_json: matrix is not square");
    for (size_t c = 0; c < rows.size(); c++)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          cdouble(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
  }
  return DensityMatrix(std::move(m), std::move(dims));
}

}  // namespace cliffcert
