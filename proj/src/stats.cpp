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

#include "cliffcert/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <limits>
#include <stdexcept>

namespace cliffcert {

namespace {

// Above this, summation gives way to the regularized incomplete beta.
constexpr int64_t kExactSumLimit = 10'000'000;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_prob_open(double v, const char* what) {
  if (!(v > 0.0) || !(v < 1.0))
    throw std::domain_error(std::string(what) + " must lie in (0, 1)");
}

double log_pmf_lgamma(int64_t j, int64_t r, double logp, double log1mp) {
  return std::lgamma(static_cast<double>(r) + 1) - std::lgamma(static_cast<double>(j) + 1) -
         std::lgamma(static_cast<double>(r - j) + 1) + static_cast<double>(j) * logp +
         static_cast<double>(r - j) * log1mp;
}

// Anchor log pmf(j). The lgamma form has absolute error ~1e-7 at arguments
// around 1e7, which would leak straight into the result, so prefer the
// beta-density identity pmf(j; r, p) = f_{Beta(j+1, r-j+1)}(p) / (r + 1)
// (boost evaluates it to a few ulp) whenever it does not underflow.
double log_pmf_anchored(int64_t j, int64_t r, double p, double logp, double log1mp) {
  double lg = log_pmf_lgamma(j, r, logp, log1mp);
  if (lg > -700.0) {
    double dens = boost::math::ibeta_derivative(static_cast<double>(j) + 1,
                                                static_cast<double>(r - j) + 1, p);
    if (dens > 0) return std::log(dens) - std::log1p(static_cast<double>(r));
  }
  return lg;
}

double binom_logcdf_sum(int64_t k, int64_t r, double p) {
  double logp = std::log(p), log1mp = std::log1p(-p);
  int64_t mode = static_cast<int64_t>(std::floor((static_cast<double>(r) + 1) * p));
  if (mode > r) mode = r;
  int64_t jstar = std::min(k, mode);  // largest term of the partial sum
  double anchor = log_pmf_anchored(jstar, r, p, logp, log1mp);

  // Sum outward from the peak so every term is a plain ratio product off the
  // anchor (u = 1 there exactly: no exp() seed to lose precision, let alone
  // drop into the subnormal range). On either flank the terms decay
  // monotonically, so once one falls below 1e-24 of the peak the remainder
  // is under r * 1e-24 <= 1e-17 relative and can be dropped. Neumaier
  // compensation keeps the mixed magnitudes honest.
  double sum = 0.0, comp = 0.0;
  auto add = [&sum, &comp](double u) {
    double t = sum + u;
    if (std::abs(sum) >= std::abs(u))
      comp += (sum - t) + u;
    else
      comp += (u - t) + sum;
    sum = t;
  };
  add(1.0);
  double u = 1.0;
  for (int64_t j = jstar; j > 0; j--) {
    u *= (static_cast<double>(j) * (1 - p)) / (static_cast<double>(r - j + 1) * p);
    if (u < 1e-24) break;
    add(u);
  }
  u = 1.0;
  for (int64_t j = jstar; j < k; j++) {
    u *= (static_cast<double>(r - j) * p) / (static_cast<double>(j + 1) * (1 - p));
    if (u < 1e-24) break;
    add(u);
  }
  return anchor + std::log(sum + comp);
}

}  // namespace

double inv_phi(double alpha) {
  check_prob_open(alpha, "inv_phi: alpha");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 120; i++) {
    double mid = 0.5 * (lo + hi);
    double tail = 0.5 * std::erfc(mid / std::sqrt(2.0));
    if (tail > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double binom_logcdf(int64_t k, int64_t r, double prob) {
  if (r < 1) throw std::domain_error("binom_logcdf: r must be >= 1");
  if (!(prob >= 0.0) || !(prob <= 1.0))
    throw std::domain_error("binom_logcdf: prob must lie in [0, 1]");
  if (k < 0) return kNegInf;
  if (k >= r) return 0.0;
  if (prob == 0.0) return 0.0;
  if (prob == 1.0) return kNegInf;
  if (r <= kExactSumLimit) return binom_logcdf_sum(k, r, prob);
  // P[X <= k] = I_{1-p}(r-k, k+1)
  double v = boost::math::ibeta(static_cast<double>(r - k), static_cast<double>(k) + 1,
                                1.0 - prob);
  return v > 0 ? std::log(v) : kNegInf;
}

double binom_cdf(int64_t k, int64_t r, double prob) {
  if (r < 1) throw std::domain_error("binom_cdf: r must be >= 1");
  if (!(prob >= 0.0) || !(prob <= 1.0))
    throw std::domain_error("binom_cdf: prob must lie in [0, 1]");
  if (k < 0) return 0.0;
  if (k >= r) return 1.0;
  if (prob == 0.0) return 1.0;
  if (prob == 1.0) return 0.0;
  if (r <= kExactSumLimit) return std::exp(binom_logcdf_sum(k, r, prob));
  return boost::math::ibeta(static_cast<double>(r - k), static_cast<double>(k) + 1,
                            1.0 - prob);
}

int64_t threshold_from_prob(double delta1, double prob, int64_t r) {
  check_prob_open(delta1, "threshold_from_prob: delta1");
  check_prob_open(prob, "threshold_from_prob: prob");
  if (r < 1) throw std::domain_error("threshold_from_prob: r must be >= 1");

  const double log_delta1 = std::log(delta1);
  int64_t f;
  if (r <= kExactSumLimit) {
    // Walk the running CDF up in log space until it crosses delta1.
    double logp = std::log(prob), log1mp = std::log1p(-prob);
    double logterm = static_cast<double>(r) * log1mp;  // k = 0
    double logcdf = logterm;
    f = -1;
    for (int64_t k = 0; k < r && logcdf <= log_delta1; k++) {
      f = k;
      logterm += std::log(static_cast<double>(r - k) * prob) -
                 std::log((static_cast<double>(k) + 1) * (1 - prob));
      double hi2 = std::max(logcdf, logterm), lo2 = std::min(logcdf, logterm);
      logcdf = hi2 + std::log1p(std::exp(lo2 - hi2));
    }
    // The walk accumulates rounding drift; settle the boundary against the
    // anchored summation so F is exactly consistent with binom_logcdf.
    while (f >= 0 && binom_logcdf(f, r, prob) > log_delta1) f--;
    while (f < r - 1 && binom_logcdf(f + 1, r, prob) <= log_delta1) f++;
  } else {
    if (binom_cdf(0, r, prob) > delta1) return -1;
    int64_t lo = 0, hi = r;  // cdf(lo) <= delta1 < cdf(hi)
    while (hi - lo > 1) {
      int64_t mid = lo + (hi - lo) / 2;
      if (binom_cdf(mid, r, prob) <= delta1)
        lo = mid;
      else
        hi = mid;
    }
    f = lo;
  }
  return f;
}

int64_t threshold_f(double delta1, double delta2, int64_t r) {
  return threshold_from_prob(delta1, kMagicPlusProb + delta2, r);
}

double clt_approx_f(int64_t r, double delta1, double delta2) {
  double p = kMagicPlusProb + delta2;
  check_prob_open(p, "clt_approx_f: kMagicPlusProb + delta2");
  return static_cast<double>(r) * p -
         std::sqrt(static_cast<double>(r) * p * (1 - p)) * inv_phi(delta1);
}

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z) {
  if (trials == 0) throw std::domain_error("wilson_interval: no trials");
  if (successes > trials)
    throw std::domain_error("wilson_interval: successes exceed trials");
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (phat + z2 / (2 * n)) / denom;
  double spread = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  return {center - spread, center + spread};
}

}  // namespace cliffcert
