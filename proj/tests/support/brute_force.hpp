#pragma once

// Test-only reference enumeration. Deliberately naive: every outcome carries
// its own rational weight and records are tallied straight into rationals.

#include <algorithm>
#include <numeric>
#include <vector>

#include "records/rational.hpp"

namespace records::testing {

struct BruteForce {
  Rational e_total{0}, e_unmarked{0}, e_marked{0}, weight{0};
  std::vector<Rational> a;               // P(A_k)
  std::vector<std::vector<Rational>> b;  // P(B_{l,k}) as [l-1][k-1]
};

inline BruteForce brute_force(const std::vector<int>& base, const Rational& p) {
  const auto n = base.size();
  BruteForce out;
  out.a.assign(n, Rational{0});
  out.b.assign(n, std::vector<Rational>(n, Rational{0}));
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) slots.push_back(i);
    Rational w{1};
    for (std::size_t i = 0; i < n; ++i) w *= (mask >> i & 1U) ? p : 1 - p;
    Rational ways{1};
    for (std::size_t i = 2; i <= slots.size(); ++i) ways *= i;
    w /= ways;

    std::vector<std::size_t> source(slots.size());
    std::iota(source.begin(), source.end(), 0);
    do {
      std::vector<int> x = base;
      std::vector<bool> marked(n, false);
      for (std::size_t j = 0; j < slots.size(); ++j) {
        x[slots[j]] = base[slots[source[j]]];
        marked[slots[j]] = true;
      }
      out.weight += w;
      for (std::size_t i = 0; i < n; ++i) {
        bool record = true;
        for (std::size_t j = 0; j < i; ++j) record = record && x[j] < x[i];
        if (!record) continue;
        out.e_total += w;
        if (marked[i]) {
          out.e_marked += w;
          out.b[static_cast<std::size_t>(x[i] - 1)][i] += w;
        } else {
          out.e_unmarked += w;
          out.a[i] += w;
        }
      }
    } while (std::next_permutation(source.begin(), source.end()));
  }
  return out;
}

}  // namespace records::testing
