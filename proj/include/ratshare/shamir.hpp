#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ratshare/access_structure.hpp"
#include "ratshare/error.hpp"
#include "ratshare/finite_field.hpp"

namespace ratshare {

struct Share {
  int participant;
  FieldElement x;
  FieldElement y;

  friend bool operator==(const Share&, const Share&) = default;
};

struct Dealing {
  std::uint64_t p;
  int n;
  int k;
  std::vector<Share> shares;
};

namespace detail {

inline void check_shamir_params(std::uint64_t p, int k, int n) {
  if (n < 1 || static_cast<std::uint64_t>(n) >= p)
    throw Error(ErrorCode::TooManyParticipants,
                "need 1 <= n < p, got n=" + std::to_string(n) + " p=" + std::to_string(p));
  if (k < 1 || k > n)
    throw Error(ErrorCode::BadThreshold,
                "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
}

}  // namespace detail

/// Deals shares of `secret` with coefficients a_1..a_{k-1} taken from
/// `draw(p)`, which must return a value in [0, p). Participant i is
/// evaluated at x = i.
template <typename CoefficientSource>
Dealing deal_with(const FieldElement& secret, int k, int n, CoefficientSource&& draw) {
  const std::uint64_t p = secret.modulus();
  detail::check_shamir_params(p, k, n);
  const PrimeField field(p);

  std::vector<FieldElement> coeffs{secret};
  for (int j = 1; j < k; ++j) coeffs.emplace_back(field, static_cast<std::uint64_t>(draw(p)));

  Dealing out{p, n, k, {}};
  out.shares.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    FieldElement x(field, static_cast<std::uint64_t>(i));
    out.shares.push_back(Share{i, x, poly_eval(coeffs, x)});
  }
  return out;
}

/// Seeded dealing; the coefficient stream is a function of the seed only.
inline Dealing deal(const FieldElement& secret, int k, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return deal_with(secret, k, n, [&rng](std::uint64_t p) {
    return std::uniform_int_distribution<std::uint64_t>(0, p - 1)(rng);
  });
}

inline FieldElement reconstruct(std::span<const Share> shares, std::uint64_t p) {
  if (shares.empty()) throw Error(ErrorCode::EmptyInput, "no shares supplied");
  std::vector<Point> points;
  points.reserve(shares.size());
  for (const auto& s : shares) {
    if (s.x.modulus() != p || s.y.modulus() != p)
      throw Error(ErrorCode::MixedFields, "share of participant " + std::to_string(s.participant) +
                                              " is not in GF(" + std::to_string(p) + ")");
    points.push_back(Point{s.x, s.y});
  }
  return interpolate_at_zero(points);
}

struct CoalitionAudit {
  Coalition coalition;
  /// Range of per-(secret, share-tuple) consistent polynomial counts.
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  bool uniform = false;
};

struct PerfectnessReport {
  std::uint64_t p;
  int k;
  int n;
  std::vector<CoalitionAudit> unauthorized;
  /// Authorized coalitions checked, and those that failed to reconstruct.
  std::uint64_t authorized_checked = 0;
  std::vector<Coalition> reconstruction_failures;
  bool pass = false;
};

inline constexpr std::uint64_t kMaxAuditP = 101;
inline constexpr int kMaxAuditN = 6;
inline constexpr std::uint64_t kMaxAuditPolynomials = 4'000'000;

/// Enumerates every polynomial of degree < k over GF(p) and checks that
/// each coalition below the threshold sees the same share-tuple
/// distribution for every secret, and that every coalition at or above
/// the threshold interpolates the secret.
inline PerfectnessReport perfectness_audit(std::uint64_t p, int k, int n) {
  const PrimeField field(p);
  detail::check_shamir_params(p, k, n);
  std::uint64_t total = 1;
  for (int j = 0; j < k; ++j) total *= p;
  if (p > kMaxAuditP || n > kMaxAuditN || total > kMaxAuditPolynomials)
    throw Error(ErrorCode::AuditTooLarge,
                "audit bounds: p <= 101, n <= 6, p^k <= 4e6 (p=" + std::to_string(p) +
                    " k=" + std::to_string(k) + " n=" + std::to_string(n) + ")");

  const std::uint32_t subsets = 1U << n;
  // Tables for sub-threshold coalitions: counts[secret * p^|S| + tuple].
  std::vector<std::vector<std::uint64_t>> counts(subsets);
  std::vector<std::uint64_t> tuple_space(subsets, 1);
  for (std::uint32_t m = 0; m < subsets; ++m) {
    const int size = std::popcount(m);
    if (size >= k) continue;
    for (int j = 0; j < size; ++j) tuple_space[m] *= p;
    counts[m].assign(p * tuple_space[m], 0);
  }

  PerfectnessReport report{p, k, n, {}, 0, {}, false};
  std::vector<bool> failed(subsets, false);
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(k), FieldElement(field, 0));
  std::vector<FieldElement> ys;
  std::vector<Point> pts;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (auto& c : coeffs) {
      c = FieldElement(field, rest % p);
      rest /= p;
    }
    const std::uint64_t secret = coeffs[0].value();
    ys.clear();
    for (int i = 1; i <= n; ++i) ys.push_back(poly_eval(coeffs, FieldElement(field, static_cast<std::uint64_t>(i))));

    for (std::uint32_t m = 0; m < subsets; ++m) {
      if (std::popcount(m) < k) {
        std::uint64_t tuple = 0;
        for (std::uint32_t b = m; b != 0; b &= b - 1) {
          tuple = tuple * p + ys[static_cast<std::size_t>(std::countr_zero(b))].value();
        }
        ++counts[m][secret * tuple_space[m] + tuple];
      } else {
        pts.clear();
        for (std::uint32_t b = m; b != 0; b &= b - 1) {
          const int idx = std::countr_zero(b);
          pts.push_back(Point{FieldElement(field, static_cast<std::uint64_t>(idx + 1)),
                              ys[static_cast<std::size_t>(idx)]});
        }
        if (interpolate_at_zero(pts) != coeffs[0]) failed[m] = true;
      }
    }
  }

  bool pass = true;
  for (std::uint32_t m = 0; m < subsets; ++m) {
    if (std::popcount(m) >= k) {
      ++report.authorized_checked;
      if (failed[m]) {
        report.reconstruction_failures.emplace_back(m);
        pass = false;
      }
      continue;
    }
    const auto& table = counts[m];
    CoalitionAudit audit{Coalition(m), table.front(), table.front(), true};
    for (std::uint64_t s = 0; s < p; ++s) {
      for (std::uint64_t t = 0; t < tuple_space[m]; ++t) {
        const std::uint64_t c = table[s * tuple_space[m] + t];
        audit.min_count = std::min(audit.min_count, c);
        audit.max_count = std::max(audit.max_count, c);
        if (c != table[t]) audit.uniform = false;
      }
    }
    pass = pass && audit.uniform;
    report.unauthorized.push_back(audit);
  }
  report.pass = pass;
  return report;
}

}  // namespace ratshare
