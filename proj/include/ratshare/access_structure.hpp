#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "ratshare/error.hpp"

namespace ratshare {

inline constexpr int kMaxParticipants = 20;

/// A set of participants. Participant i (1-based) occupies bit i-1.
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t mask) : mask_(mask) {}
  constexpr Coalition(std::initializer_list<int> ids) {
    for (int id : ids) mask_ |= bit(id);
  }
  static Coalition from_ids(std::span<const int> ids) {
    Coalition c;
    for (int id : ids) {
      if (id < 1 || id > kMaxParticipants)
        throw Error(ErrorCode::OutOfRangeParticipant, "participant id " + std::to_string(id));
      c.mask_ |= bit(id);
    }
    return c;
  }
  static constexpr Coalition all(int n) {
    return Coalition(n >= 32 ? ~0U : ((1U << n) - 1U));
  }

  constexpr std::uint32_t mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr int size() const noexcept { return std::popcount(mask_); }
  constexpr bool contains(int id) const noexcept { return (mask_ & bit(id)) != 0; }
  constexpr bool subset_of(Coalition o) const noexcept { return (mask_ & ~o.mask_) == 0; }

  constexpr Coalition with(int id) const noexcept { return Coalition(mask_ | bit(id)); }
  constexpr Coalition without(int id) const noexcept { return Coalition(mask_ & ~bit(id)); }

  /// 1-based member ids, ascending.
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  /// Characteristic vector over participants 1..n.
  std::vector<int> characteristic(int n) const {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= n; ++i) v[static_cast<std::size_t>(i - 1)] = contains(i) ? 1 : 0;
    return v;
  }

  friend constexpr bool operator==(Coalition, Coalition) = default;
  friend constexpr auto operator<=>(Coalition a, Coalition b) { return a.mask_ <=> b.mask_; }

 private:
  static constexpr std::uint32_t bit(int id) { return 1U << (id - 1); }
  std::uint32_t mask_ = 0;
};

/// Monotone access structure, stored as the antichain of minimal
/// authorized coalitions in ascending mask order.
class AccessStructure {
 public:
  static AccessStructure threshold(int n, int k) {
    check_n(n);
    if (k < 1 || k > n)
      throw Error(ErrorCode::BadThreshold,
                  "k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    std::vector<Coalition> mins;
    for (std::uint32_t m = 0; m < (1U << n); ++m)
      if (std::popcount(m) == k) mins.emplace_back(m);
    return AccessStructure(n, std::move(mins), k);
  }

  static AccessStructure general(int n, std::span<const Coalition> coalitions) {
    check_n(n);
    if (coalitions.empty()) throw Error(ErrorCode::EmptyList, "no coalitions given");
    const Coalition everyone = Coalition::all(n);
    for (Coalition c : coalitions) {
      if (c.empty()) throw Error(ErrorCode::EmptyCoalition, "empty coalition");
      if (!c.subset_of(everyone))
        throw Error(ErrorCode::OutOfRangeParticipant,
                    "coalition mentions a participant beyond n=" + std::to_string(n));
    }
    std::vector<Coalition> sorted(coalitions.begin(), coalitions.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Coalition> mins;
    for (Coalition c : sorted) {
      bool minimal = std::none_of(sorted.begin(), sorted.end(),
                                  [c](Coalition o) { return o != c && o.subset_of(c); });
      if (minimal) mins.push_back(c);
    }
    const int k = detect_threshold(n, mins);
    return AccessStructure(n, std::move(mins), k);
  }

  static AccessStructure general(int n, std::initializer_list<Coalition> coalitions) {
    return general(n, std::span<const Coalition>(coalitions.begin(), coalitions.size()));
  }

  int n() const noexcept { return n_; }
  const std::vector<Coalition>& min_coalitions() const noexcept { return mins_; }

  /// k when this structure is exactly k-out-of-n, else 0.
  int threshold_k() const noexcept { return threshold_k_; }
  bool is_threshold() const noexcept { return threshold_k_ > 0; }

  bool is_authorized(Coalition s) const {
    check_subset(s);
    return authorized_unchecked(s);
  }

  bool authorized_unchecked(Coalition s) const noexcept {
    if (threshold_k_ > 0) return s.size() >= threshold_k_;
    return std::any_of(mins_.begin(), mins_.end(), [s](Coalition x) { return x.subset_of(s); });
  }

  bool is_self_sufficient(int i) const {
    check_participant(i);
    return std::find(mins_.begin(), mins_.end(), Coalition{i}) != mins_.end();
  }

  void check_participant(int i) const {
    if (i < 1 || i > n_)
      throw Error(ErrorCode::OutOfRangeParticipant,
                  "participant " + std::to_string(i) + " outside 1.." + std::to_string(n_));
  }

  void check_subset(Coalition s) const {
    if (!s.subset_of(Coalition::all(n_)))
      throw Error(ErrorCode::OutOfRangeParticipant,
                  "coalition mentions a participant beyond n=" + std::to_string(n_));
  }

  friend bool operator==(const AccessStructure& a, const AccessStructure& b) {
    return a.n_ == b.n_ && a.mins_ == b.mins_;
  }

 private:
  AccessStructure(int n, std::vector<Coalition> mins, int k)
      : n_(n), mins_(std::move(mins)), threshold_k_(k) {}

  static void check_n(int n) {
    if (n < 1 || n > kMaxParticipants)
      throw Error(ErrorCode::TooManyParticipants,
                  "n=" + std::to_string(n) + " outside [1, " + std::to_string(kMaxParticipants) + "]");
  }

  static int detect_threshold(int n, const std::vector<Coalition>& mins) {
    const int k = mins.front().size();
    if (std::any_of(mins.begin(), mins.end(), [k](Coalition c) { return c.size() != k; })) return 0;
    // C(n, k) by multiplicative formula; n <= 20 keeps it exact.
    std::uint64_t count = 1;
    for (int j = 1; j <= k; ++j) count = count * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    return mins.size() == count ? k : 0;
  }

  int n_;
  std::vector<Coalition> mins_;
  int threshold_k_;
};

inline AccessStructure make_threshold(int n, int k) { return AccessStructure::threshold(n, k); }
inline AccessStructure make_general(int n, std::span<const Coalition> coalitions) {
  return AccessStructure::general(n, coalitions);
}

}  // namespace ratshare
