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

#ifndef CLIFFCERT_STATS_HPP
#define CLIFFCERT_STATS_HPP

#include <cmath>
#include <cstdint>

namespace cliffcert {

// Probability of the +1 outcome when the resource state
// sin(pi/8)|0> - cos(pi/8)|1> is measured in either the X or the Z basis:
// 1/2 - 1/(2 sqrt 2). Its variance term p(1-p) is exactly 1/8.
inline const double kMagicPlusProb = 0.5 - 0.5 / std::sqrt(2.0);

// Inverse upper-tail of the standard normal: returns x with
// integral_x^inf exp(-t^2/2)/sqrt(2 pi) dt = alpha. Bisection on erfc;
// alpha must lie in (0, 1).
double inv_phi(double alpha);

// log P[Binomial(r, prob) <= k]. Exact log-space summation (window around
// the dominant terms, compensated accumulation, beta-density anchored) for
// r <= 1e7; regularized incomplete beta above that. Relative accuracy about
// 1e-12 in the exact regime, limited by the incomplete beta above it.
double binom_logcdf(int64_t k, int64_t r, double prob);
double binom_cdf(int64_t k, int64_t r, double prob);

// Largest F in [0, r] with P[Binomial(r, prob) <= F] <= delta1, or -1 when
// even F = 0 overshoots (a test that can never pass). delta1 and prob must
// lie in (0, 1).
int64_t threshold_from_prob(double delta1, double prob, int64_t r);

// Same with prob = kMagicPlusProb + delta2 (requires the sum to stay in (0,1)).
int64_t threshold_f(double delta1, double delta2, int64_t r);

// Gaussian approximation of threshold_f: r*p - sqrt(r*p*(1-p)) * inv_phi(delta1)
// with p = kMagicPlusProb + delta2. Continuous; used for cross-checks and
// quick sizing, never for the pass/fail decision.
double clt_approx_f(int64_t r, double delta1, double delta2);

// Wilson score interval for a binomial proportion at normal quantile z.
struct WilsonInterval {
  double lo, hi;
  double half_width() const { return 0.5 * (hi - lo); }
};
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z);

// 99% two-sided normal quantile used for reported confidence intervals.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

}  // namespace cliffcert

#endif
