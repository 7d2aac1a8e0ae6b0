// Copyright 2026 tsgen contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Statistical test helpers for the suites. Everything here is independent
// of the library implementation under test.

#ifndef TSGEN_TESTS_STAT_ORACLES_HPP
#define TSGEN_TESTS_STAT_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracles {

// Regularized upper incomplete gamma Q(a, x) by series / continued fraction
// (Numerical Recipes style).
inline double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // Series for P(a,x); Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - gln);
    return 1.0 - p;
  }
  // Continued fraction for Q(a,x).
  double b = x + 1.0 - a;
  double c = 1e308;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

// p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_p(double chi2, int df) {
  return gamma_q(static_cast<double>(df) / 2.0, chi2 / 2.0);
}

// Pearson chi-square p-value for observed counts vs expected probabilities
// over the same ordered buckets.
inline double chi_square_gof_p(const std::map<int64_t, int64_t>& observed,
                               const std::map<int64_t, double>& expected_probs,
                               int64_t n_draws) {
  double chi2 = 0.0;
  int buckets = 0;
  for (const auto& [key, prob] : expected_probs) {
    if (prob <= 0.0) continue;
    const double expected = prob * static_cast<double>(n_draws);
    auto it = observed.find(key);
    const double obs = it == observed.end()
                           ? 0.0
                           : static_cast<double>(it->second);
    chi2 += (obs - expected) * (obs - expected) / expected;
    ++buckets;
  }
  if (buckets < 2) throw std::invalid_argument("need >= 2 buckets");
  return chi_square_p(chi2, buckets - 1);
}

// One-sided sign test: p = P(X >= successes) for X ~ Binomial(trials, 1/2).
inline double sign_test_p(int64_t successes, int64_t trials) {
  if (trials <= 0) return 1.0;
  double log_half = std::log(0.5);
  double p = 0.0;
  for (int64_t k = successes; k <= trials; ++k) {
    const double log_term = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(trials - k + 1.0) +
                            static_cast<double>(trials) * log_half;
    p += std::exp(log_term);
  }
  return p < 1.0 ? p : 1.0;
}

}  // namespace oracles

#endif  // TSGEN_TESTS_STAT_ORACLES_HPP
