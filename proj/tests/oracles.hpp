#pragma once

// Brute-force reference computations for the tests. Nothing here calls the
// code paths it is used to check: authorization is recomputed from the raw
// minimal-coalition masks and utilities straight from V1/V2.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool authorized(const std::vector<std::uint32_t>& mins, std::uint32_t s) {
  for (auto x : mins)
    if ((x & s) == x) return true;
  return false;
}

inline double v_utility(const std::vector<std::uint32_t>& mins, const std::vector<double>& values, double cost,
                        std::uint32_t revealers, int i) {
  const bool recovered = authorized(mins, revealers);
  const bool paid = (revealers >> (i - 1)) & 1U;
  return (recovered ? values[static_cast<std::size_t>(i - 1)] : 0.0) - (paid ? cost : 0.0);
}

/// E_i with participant i disclosing with probability x, by summing over
/// all 2^n pure realizations.
inline double expected_utility(const std::vector<std::uint32_t>& mins, int n, const std::vector<double>& values,
                               double cost, std::vector<double> alpha, int i, double x) {
  alpha[static_cast<std::size_t>(i - 1)] = x;
  double total = 0.0;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) w *= (m >> j) & 1U ? alpha[static_cast<std::size_t>(j)] : 1.0 - alpha[static_cast<std::size_t>(j)];
    total += w * v_utility(mins, values, cost, m, i);
  }
  return total;
}

struct Split {
  double pivotal = 0, authorized = 0, neither = 0;
};

/// alpha is the full profile; entry i is ignored.
inline Split pivot_split(const std::vector<std::uint32_t>& mins, int n, const std::vector<double>& alpha, int i) {
  Split s;
  const std::uint32_t self = 1U << (i - 1);
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    if (m & self) continue;
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i - 1) continue;
      w *= (m >> j) & 1U ? alpha[static_cast<std::size_t>(j)] : 1.0 - alpha[static_cast<std::size_t>(j)];
    }
    if (authorized(mins, m)) s.authorized += w;
    else if (authorized(mins, m | self)) s.pivotal += w;
    else s.neither += w;
  }
  return s;
}

/// Pure Nash equilibria of the V1/V2 game as revealer masks, ascending.
inline std::vector<std::uint32_t> pure_ne(const std::vector<std::uint32_t>& mins, int n,
                                          const std::vector<double>& values, double cost) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1U << n); ++m) {
    bool stable = true;
    for (int i = 1; i <= n && stable; ++i) {
      const std::uint32_t flipped = m ^ (1U << (i - 1));
      if (v_utility(mins, values, cost, flipped, i) > v_utility(mins, values, cost, m, i) + 1e-9) stable = false;
    }
    if (stable) out.push_back(m);
  }
  return out;
}

/// Naive sum of c_j x^j mod p.
inline std::uint64_t poly_eval(const std::vector<std::uint64_t>& coeffs, std::uint64_t x, std::uint64_t p) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (auto c : coeffs) {
    total = (total + c * power) % p;
    power = power * x % p;
  }
  return total;
}

}  // namespace oracle
