#pragma once

// Brute-force reference for the two-sided binomial test at p = 1/2. Builds
// every outcome probability in long double by the multiplicative recurrence
// and sums the ones no more likely than the observed outcome, using the
// usual 1e-7 relative slack for ties. Shares nothing with the library's
// log-space tail evaluation.

#include <cmath>
#include <cstdint>
#include <vector>

namespace greetground::testing {

class BinomialOracle {
 public:
  explicit BinomialOracle(std::uint64_t n) : n_(n), pmf_(n + 1) {
    pmf_[0] = std::ldexp(1.0L, -static_cast<int>(n));
    for (std::uint64_t j = 1; j <= n; ++j)
      pmf_[j] = pmf_[j - 1] * static_cast<long double>(n - j + 1) / static_cast<long double>(j);
  }

  long double p_value(std::uint64_t k) const {
    const long double threshold = pmf_[k] * (1.0L + 1e-7L);
    long double sum = 0.0L;
    for (std::uint64_t j = 0; j <= n_; ++j)
      if (pmf_[j] <= threshold) sum += pmf_[j];
    return sum > 1.0L ? 1.0L : sum;
  }

 private:
  std::uint64_t n_;
  std::vector<long double> pmf_;
};

}  // namespace greetground::testing
