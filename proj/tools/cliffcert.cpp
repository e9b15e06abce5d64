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
//
// Command-line front end. Subcommands:
//   params         derive and print test parameters
//   run test       Monte Carlo certification-test runs against a strategy
//   run protocol   end-to-end protocol rounds on the built-in toy instance
//   run fidelity   product-fidelity identity spot checks on random states
//   run equiv      compiled-vs-source channel equivalence on random circuits
//   run bench      stabilizer engine throughput benchmark (soft check)
// Reports go to stdout as JSON; per-trial logs and sweep curves go to CSV
// files. Exit codes: 0 ok, 1 usage or configuration error, 2 a built-in
// consistency check failed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliffcert/circuit.hpp"
#include "cliffcert/dense.hpp"
#include "cliffcert/magic_compile.hpp"
#include "cliffcert/magic_test.hpp"
#include "cliffcert/protocol.hpp"
#include "cliffcert/rand.hpp"
#include "cliffcert/stats.hpp"
#include "cliffcert/tableau.hpp"
#include "cliffcert/version.hpp"

namespace cc = cliffcert;

namespace {

struct Options {
  size_t s = 1;
  size_t p = 0;
  double delta1 = 0.05;
  double epsilon = 0.1;
  std::string mode = "relaxed";
  int64_t r_override = 0;    // 0 means "derive"
  double l_override = -1.0;  // negative means "derive"
  uint64_t trials = 1000;
  uint64_t seed = 1;
  std::string strategy = "honest";
  int jobs = 1;
  std::string out;         // per-trial CSV path
  std::string emit_curve;  // sweep CSV path (run test only)
  uint64_t instances = 0;  // fidelity/equiv; default filled per command
  uint64_t probes = 100;   // sampled states per fidelity instance
};

cc::TestParams resolve_params(const Options& o, size_t s, size_t p) {
  cc::DeriveOverrides ov;
  if (o.r_override > 0) ov.r = o.r_override;
  if (o.l_override >= 0.0) ov.l = o.l_override;
  return cc::derive_params(s, p, o.delta1, o.epsilon, cc::param_mode_from_string(o.mode), ov);
}

nlohmann::json base_config(const Options& o) {
  return {{"s", o.s},           {"p", o.p},
          {"delta1", o.delta1}, {"epsilon", o.epsilon},
          {"mode", o.mode},     {"r_override", o.r_override},
          {"l_override", o.l_override}};
}

void print_report(const std::string& command, nlohmann::json config, uint64_t seed,
                  double duration_seconds, nlohmann::json results) {
  nlohmann::json report{{"tool", "cliffcert"},
                        {"version", cc::kVersion},
                        {"command", command},
                        {"config", std::move(config)},
                        {"seed", seed},
                        {"duration_seconds", duration_seconds},
                        {"results", std::move(results)}};
  std::cout << report.dump(2) << "\n";
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// The +1 probabilities a strategy presents to each observable; used to
// compute the exact pass probability the empirical rate is checked against.
struct StrategyProbs {
  double px, pz;
};

cc::MerlinState test_strategy(const std::string& spec, const cc::TestParams& tp,
                              StrategyProbs& probs) {
  cc::StateVector witness = cc::basis_ket(tp.p, 0);  // placeholder |0...0>
  if (spec == "honest") {
    probs = {cc::kMagicPlusProb, cc::kMagicPlusProb};
    return cc::MerlinState::honest(witness);
  }
  if (spec == "zeros") {
    probs = {0.5, 1.0};
    return cc::MerlinState::all_zeros(tp.p);
  }
  if (spec == "boundary") {
    double q = cc::kMagicPlusProb + tp.delta2;
    probs = {q, q};
    return cc::MerlinState::iid(cc::boundary_iid_state(tp.delta2), witness);
  }
  if (spec.rfind("iid:", 0) == 0) {
    auto comma = spec.find(',', 4);
    if (comma == std::string::npos)
      throw std::invalid_argument("strategy iid wants iid:<px>,<pz>");
    double px = std::stod(spec.substr(4, comma - 4));
    double pz = std::stod(spec.substr(comma + 1));
    probs = {px, pz};
    return cc::MerlinState::iid(cc::iid_state_from_plus_probs(px, pz), witness);
  }
  throw std::invalid_argument("unknown strategy '" + spec +
                              "' (want honest|zeros|boundary|iid:<px>,<pz>)");
}

double exact_pass_prob(const cc::TestParams& tp, const StrategyProbs& probs) {
  if (tp.threshold < 0) return 0.0;
  return cc::binom_cdf(tp.threshold, tp.r, probs.px) *
         cc::binom_cdf(tp.threshold, tp.r, probs.pz);
}

struct TestTrialRow {
  uint64_t seed = 0;
  int64_t x = 0, z = 0;
  bool passed = false;
};

// Trial t runs on Rng(derive_stream_seed(seed, t)): reproducible and
// independent of how trials are split across jobs.
std::vector<TestTrialRow> run_test_trials(const cc::MerlinState& merlin,
                                          const cc::TestParams& tp, uint64_t trials,
                                          uint64_t seed, int jobs) {
  std::vector<TestTrialRow> rows(trials);
  uint64_t num_jobs = std::min<uint64_t>(std::max(jobs, 1), trials);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&](uint64_t lo, uint64_t hi) {
    try {
      for (uint64_t t = lo; t < hi; t++) {
        uint64_t trial_seed = cc::derive_stream_seed(seed, t);
        cc::Rng rng(trial_seed);
        cc::TestOutcome out = cc::run_test(merlin, tp, rng);
        rows[t] = {trial_seed, out.x_plus, out.z_plus, out.passed};
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  if (num_jobs == 1) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    for (uint64_t w = 0; w < num_jobs; w++)
      pool.emplace_back(worker, trials * w / num_jobs, trials * (w + 1) / num_jobs);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

int cmd_params(const Options& o) {
  Stopwatch timer;
  cc::TestParams tp = resolve_params(o, o.s, o.p);
  nlohmann::json results{{"params", cc::params_to_json(tp)},
                         {"honest_pass_prob_exact", cc::honest_pass_prob_exact(tp)},
                         {"clt_approx_f", cc::clt_approx_f(tp)}};
  // Without padding (l = 0) both bounds are infinite; JSON has no inf, so the
  // keys stay present but null.
  double bound = cc::soundness_bound(tp);
  double level = cc::significance_level(tp, 0.01);
  results["soundness_bound"] = std::isfinite(bound) ? nlohmann::json(bound) : nullptr;
  results["significance_level_at_delta_0.01"] =
      std::isfinite(level) ? nlohmann::json(level) : nullptr;
  print_report("params", base_config(o), o.seed, timer.seconds(), std::move(results));
  return 0;
}

int cmd_run_test(const Options& o) {
  Stopwatch timer;
  cc::TestParams tp = resolve_params(o, o.s, o.p);
  StrategyProbs probs{};
  cc::MerlinState merlin = test_strategy(o.strategy, tp, probs);
  if (o.trials == 0) throw std::invalid_argument("--trials must be at least 1");

  std::vector<TestTrialRow> rows = run_test_trials(merlin, tp, o.trials, o.seed, o.jobs);
  uint64_t passed = 0;
  double x_sum = 0.0, z_sum = 0.0;
  for (const TestTrialRow& row : rows) {
    passed += row.passed;
    x_sum += static_cast<double>(row.x);
    z_sum += static_cast<double>(row.z);
  }
  double pass_rate = static_cast<double>(passed) / static_cast<double>(o.trials);
  double exact = exact_pass_prob(tp, probs);
  cc::WilsonInterval ci = cc::wilson_interval(passed, o.trials, cc::kWilsonZ99);
  double slack = 3.0 / static_cast<double>(o.trials) + 1e-12;
  bool check = exact >= ci.lo - slack && exact <= ci.hi + slack;

  nlohmann::json results{{"params", cc::params_to_json(tp)},
                         {"strategy", o.strategy},
                         {"plus_prob_x", probs.px},
                         {"plus_prob_z", probs.pz},
                         {"trials", o.trials},
                         {"passed", passed},
                         {"pass_rate", pass_rate},
                         {"exact_pass_prob", exact},
                         {"ci99_lo", ci.lo},
                         {"ci99_hi", ci.hi},
                         {"x_mean", x_sum / static_cast<double>(o.trials)},
                         {"z_mean", z_sum / static_cast<double>(o.trials)},
                         {"check_name", "pass_rate_within_ci_of_exact"},
                         {"check_passed", check}};

  if (!o.out.empty()) {
    std::ofstream f = open_csv(o.out);
    f << "trial,seed,x,z,passed\n";
    for (uint64_t t = 0; t < o.trials; t++)
      f << t << "," << rows[t].seed << "," << rows[t].x << "," << rows[t].z << ","
        << (rows[t].passed ? 1 : 0) << "\n";
    results["trials_csv"] = o.out;
  }

  if (!o.emit_curve.empty()) {
    // Sweep the i.i.d. +1 probability from the honest point up past the
    // boundary the threshold is calibrated against.
    std::ofstream f = open_csv(o.emit_curve);
    f << "shift,plus_prob,empirical_pass_rate,exact_pass_prob\n";
    const int points = 21;
    double max_shift = std::min(2.0 * tp.delta2, 0.999 - cc::kMagicPlusProb);
    for (int i = 0; i < points; i++) {
      double shift = max_shift * i / (points - 1);
      double q = cc::kMagicPlusProb + shift;
      cc::MerlinState sweep = cc::MerlinState::iid(cc::iid_state_from_plus_probs(q, q));
      uint64_t point_seed = cc::derive_stream_seed(o.seed, 0x1000000ULL + i);
      std::vector<TestTrialRow> sweep_rows =
          run_test_trials(sweep, tp, o.trials, point_seed, o.jobs);
      uint64_t sweep_passed = 0;
      for (const TestTrialRow& row : sweep_rows) sweep_passed += row.passed;
      double empirical = static_cast<double>(sweep_passed) / static_cast<double>(o.trials);
      double point_exact = exact_pass_prob(tp, {q, q});
      f << shift << "," << q << "," << empirical << "," << point_exact << "\n";
    }
    results["curve_csv"] = o.emit_curve;
  }

  nlohmann::json config = base_config(o);
  config["trials"] = o.trials;
  config["strategy"] = o.strategy;
  config["jobs"] = o.jobs;
  print_report("run test", std::move(config), o.seed, timer.seconds(), std::move(results));
  return check ? 0 : 2;
}

int cmd_run_protocol(const Options& o) {
  Stopwatch timer;
  cc::ToyInstance toy = cc::build_toy_instance();
  const cc::QMAInstance& inst = toy.instance;
  size_t s = cc::count_magic_states(inst.verifier);
  cc::TestParams tp = resolve_params(o, s, inst.witness_qubits);
  if (o.trials == 0) throw std::invalid_argument("--trials must be at least 1");

  cc::MerlinState merlin;
  double expected = 0.0;
  double hpp = cc::honest_pass_prob_exact(tp);
  if (o.strategy == "honest") {
    merlin = cc::MerlinState::honest(toy.honest_witness);
    expected = *inst.a_star * hpp;
  } else if (o.strategy == "reject") {
    merlin = cc::MerlinState::honest(toy.rejecting_witness);
    expected = *inst.b_star * hpp;
  } else if (o.strategy == "zeros") {
    merlin = cc::MerlinState::all_zeros(inst.witness_qubits);
    expected = 0.0;
  } else {
    throw std::invalid_argument("unknown strategy '" + o.strategy +
                                "' (want honest|reject|zeros)");
  }

  bool want_records = !o.out.empty();
  cc::AcceptanceEstimate est =
      cc::estimate_acceptance(inst, merlin, tp, o.trials, o.seed, o.jobs, {}, want_records);
  double slack = 3.0 / static_cast<double>(o.trials) + 1e-12;
  bool check = expected >= est.ci.lo - slack && expected <= est.ci.hi + slack;

  cc::GapArithmetic gap = cc::completeness_soundness_gap(inst.a, inst.b);
  nlohmann::json results{{"params", cc::params_to_json(tp)},
                         {"strategy", o.strategy},
                         {"trials", est.trials},
                         {"test_passed", est.test_passed},
                         {"accepted", est.accepted},
                         {"p_hat", est.p_hat},
                         {"ci99_lo", est.ci.lo},
                         {"ci99_hi", est.ci.hi},
                         {"expected_acceptance", expected},
                         {"honest_pass_prob_exact", hpp},
                         {"a", inst.a},
                         {"b", inst.b},
                         {"a_star", *inst.a_star},
                         {"b_star", *inst.b_star},
                         {"a_prime", gap.a_prime},
                         {"b_prime", gap.b_prime},
                         {"gap", gap.gap},
                         {"check_name", "acceptance_within_ci_of_expected"},
                         {"check_passed", check}};

  if (want_records) {
    std::ofstream f = open_csv(o.out);
    f << "trial,seed,x,z,passed,accepted\n";
    for (const cc::TrialRecord& rec : est.records)
      f << rec.trial << "," << rec.seed << "," << rec.x_plus << "," << rec.z_plus << ","
        << (rec.test_passed ? 1 : 0) << "," << (rec.accepted ? 1 : 0) << "\n";
    results["trials_csv"] = o.out;
  }

  nlohmann::json config = base_config(o);
  config["trials"] = o.trials;
  config["strategy"] = o.strategy;
  config["jobs"] = o.jobs;
  print_report("run protocol", std::move(config), o.seed, timer.seconds(), std::move(results));
  return check ? 0 : 2;
}

int cmd_run_fidelity(const Options& o) {
  Stopwatch timer;
  uint64_t instances = o.instances == 0 ? 200 : o.instances;
  const std::vector<std::vector<size_t>> dim_sets = {{2, 2}, {2, 4}, {4, 4}};
  cc::Rng rng(o.seed);
  double max_violation = 0.0;
  uint64_t checked = 0;

  for (uint64_t i = 0; i < instances; i++) {
    const std::vector<size_t>& dims = dim_sets[i % dim_sets.size()];
    cc::DensityMatrix rho = cc::random_density(dims, rng);
    Eigen::VectorXcd x = cc::random_ket(dims[0], rng);
    cc::DensityMatrix reduced = cc::partial_trace(rho, {0});
    double rhs = (x.adjoint() * reduced.matrix() * x)(0, 0).real();
    if (rhs < 1e-12) continue;  // degenerate draw; the identity needs rhs > 0
    checked++;

    cc::ProductFidelityResult res = cc::max_product_fidelity(rho, x);
    max_violation = std::max(max_violation, std::abs(res.max_fidelity_sq - rhs));

    // Sampled product states must stay at or below the closed-form maximum.
    Eigen::MatrixXcd xproj = x * x.adjoint();
    for (uint64_t probe = 0; probe < o.probes; probe++) {
      Eigen::VectorXcd y = cc::random_ket(dims[1], rng);
      Eigen::MatrixXcd yproj = y * y.adjoint();
      Eigen::MatrixXcd prod(rho.dim(), rho.dim());
      for (size_t a = 0; a < dims[0]; a++)
        for (size_t b = 0; b < dims[0]; b++)
          prod.block(static_cast<Eigen::Index>(a * dims[1]),
                     static_cast<Eigen::Index>(b * dims[1]),
                     static_cast<Eigen::Index>(dims[1]),
                     static_cast<Eigen::Index>(dims[1])) = xproj(a, b) * yproj;
      double f = cc::fidelity(cc::DensityMatrix(std::move(prod), dims), rho);
      max_violation = std::max(max_violation, f * f - rhs);
    }
  }

  bool check = max_violation <= 1e-9;
  nlohmann::json results{{"instances", instances},
                         {"instances_checked", checked},
                         {"probes_per_instance", o.probes},
                         {"max_violation", max_violation},
                         {"check_name", "max_violation_at_most_1e-9"},
                         {"check_passed", check}};
  nlohmann::json config{{"instances", instances}, {"probes", o.probes}};
  print_report("run fidelity", std::move(config), o.seed, timer.seconds(), std::move(results));
  return check ? 0 : 2;
}

int cmd_run_equiv(const Options& o) {
  Stopwatch timer;
  uint64_t instances = o.instances == 0 ? 50 : o.instances;
  cc::Rng rng(o.seed);

  // Informationally complete single-qubit inputs, tensored over 3 qubits.
  std::vector<cc::StateVector> kets;
  kets.push_back(cc::basis_ket(1, 0));
  kets.push_back(cc::basis_ket(1, 1));
  kets.push_back(cc::plus_ket());
  Eigen::VectorXcd yplus(2);
  yplus << 1.0 / std::sqrt(2.0), cc::cdouble(0.0, 1.0 / std::sqrt(2.0));
  kets.push_back(cc::StateVector::from_amplitudes(1, yplus));

  double max_dist = 0.0;
  for (uint64_t i = 0; i < instances; i++) {
    size_t t_count = cc::rand_below(rng, 5);
    cc::Circuit source = cc::random_clifford_t_circuit(3, 30, t_count, rng);
    cc::CompiledCircuit compiled = cc::expand_t_gates(source);

    cc::StateVector magic(0);
    for (size_t m = 0; m < compiled.magic_inputs.size(); m++)
      magic = cc::tensor(magic, cc::magic_ket());

    for (size_t in = 0; in < 64; in++) {
      cc::StateVector input = cc::tensor(
          cc::tensor(kets[in & 3], kets[(in >> 2) & 3]), kets[(in >> 4) & 3]);
      // The source circuit is unitary, so a single dense run is its channel.
      cc::Rng scratch(1);
      cc::StateVector src = cc::run_circuit_dense(source, input, scratch).state;
      Eigen::MatrixXcd src_mat = src.amplitudes() * src.amplitudes().adjoint();

      Eigen::MatrixXcd cmp_mat = Eigen::MatrixXcd::Zero(8, 8);
      cc::StateVector initial = cc::tensor(input, magic);
      for (const cc::Branch& br : cc::enumerate_branches(compiled.clifford, initial))
        cmp_mat += br.probability *
                   cc::partial_trace_pure(br.state, {0, 1, 2}).matrix();

      double dist = cc::trace_distance(cc::DensityMatrix(std::move(cmp_mat), {8}),
                                       cc::DensityMatrix(std::move(src_mat), {8}));
      max_dist = std::max(max_dist, dist);
    }
  }

  bool check = max_dist <= 1e-9;
  nlohmann::json results{{"instances", instances},
                         {"inputs_per_instance", 64},
                         {"max_trace_distance", max_dist},
                         {"check_name", "max_trace_distance_at_most_1e-9"},
                         {"check_passed", check}};
  nlohmann::json config{{"instances", instances}};
  print_report("run equiv", std::move(config), o.seed, timer.seconds(), std::move(results));
  return check ? 0 : 2;
}

int cmd_run_bench(const Options& o) {
  Stopwatch timer;
  const size_t n = 1024;
  const uint64_t total_gates = 5'000'000;
  const uint64_t batch = 1'000'000;

  // Pregenerate a batch of gates so the loop times the engine, not the RNG.
  cc::Rng rng(o.seed);
  std::vector<uint8_t> kind(batch);
  std::vector<uint32_t> qa(batch), qb(batch);
  for (uint64_t i = 0; i < batch; i++) {
    kind[i] = static_cast<uint8_t>(cc::rand_below(rng, 3));
    qa[i] = static_cast<uint32_t>(cc::rand_below(rng, n));
    uint32_t other = static_cast<uint32_t>(cc::rand_below(rng, n - 1));
    qb[i] = other == qa[i] ? static_cast<uint32_t>(n - 1) : other;
  }

  cc::Tableau tab(n);
  Stopwatch gate_timer;
  for (uint64_t done = 0; done < total_gates; done += batch) {
    for (uint64_t i = 0; i < batch; i++) {
      switch (kind[i]) {
        case 0: tab.apply_h(qa[i]); break;
        case 1: tab.apply_s(qa[i]); break;
        default: tab.apply_cz(qa[i], qb[i]); break;
      }
    }
  }
  double seconds = gate_timer.seconds();
  double rate = static_cast<double>(total_gates) / seconds;
  bool floor_met = rate >= 1e6;

  nlohmann::json results{{"qubits", n},
                         {"gates", total_gates},
                         {"seconds", seconds},
                         {"gates_per_second", rate},
                         {"floor_gates_per_second", 1e6},
                         {"floor_met", floor_met}};
  nlohmann::json config{{"qubits", n}, {"gates", total_gates}};
  print_report("run bench", std::move(config), o.seed, timer.seconds(), std::move(results));
  return 0;  // throughput misses are reported, not fatal
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified magic-state testing and Clifford-verifier protocol toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_param_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--s", o.s, "surviving resource states");
    cmd->add_option("--p", o.p, "witness qubits");
    cmd->add_option("--delta1", o.delta1, "per-observable significance target");
    cmd->add_option("--epsilon", o.epsilon, "honest-failure budget");
    cmd->add_option("--mode", o.mode, "strict|relaxed");
    cmd->add_option("--r-override", o.r_override, "replace the derived r");
    cmd->add_option("--l-override", o.l_override, "replace the derived l");
  };
  auto add_trial_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--out", o.out, "per-trial CSV path");
  };

  CLI::App* params = app.add_subcommand("params", "derive test parameters");
  add_param_flags(params);
  params->add_option("--seed", o.seed, "recorded in the report");

  CLI::App* run = app.add_subcommand("run", "execute an experiment");
  run->require_subcommand(1);

  CLI::App* test = run->add_subcommand("test", "certification test Monte Carlo");
  add_param_flags(test);
  add_trial_flags(test);
  test->add_option("--strategy", o.strategy, "honest|zeros|boundary|iid:<px>,<pz>");
  test->add_option("--emit-curve", o.emit_curve, "overlap-sweep CSV path");

  CLI::App* protocol = run->add_subcommand("protocol", "toy-instance protocol rounds");
  add_param_flags(protocol);
  add_trial_flags(protocol);
  protocol->add_option("--strategy", o.strategy, "honest|reject|zeros");

  CLI::App* fidelity = run->add_subcommand("fidelity", "product-fidelity spot checks");
  fidelity->add_option("--instances", o.instances, "random instances (default 200)");
  fidelity->add_option("--probes", o.probes, "sampled states per instance");
  fidelity->add_option("--seed", o.seed, "master seed");

  CLI::App* equiv = run->add_subcommand("equiv", "compiled channel equivalence");
  equiv->add_option("--instances", o.instances, "random circuits (default 50)");
  equiv->add_option("--seed", o.seed, "master seed");

  CLI::App* bench = run->add_subcommand("bench", "stabilizer engine throughput");
  bench->add_option("--seed", o.seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (params->parsed()) return cmd_params(o);
    if (test->parsed()) return cmd_run_test(o);
    if (protocol->parsed()) return cmd_run_protocol(o);
    if (fidelity->parsed()) return cmd_run_fidelity(o);
    if (equiv->parsed()) return cmd_run_equiv(o);
    if (bench->parsed()) return cmd_run_bench(o);
  } catch (const std::exception& e) {
    std::cerr << "cliffcert: " << e.what() << "\n";
    return 1;
  }
  return 1;  // unreachable with require_subcommand, defensive
}
