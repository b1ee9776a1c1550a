#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "muset/space.hpp"

namespace muset {

enum class CoverMode { fast, generic };

inline std::string cover_mode_name(CoverMode m) {
  return m == CoverMode::fast ? "fast" : "generic";
}

inline std::optional<CoverMode> cover_mode_from_name(std::string_view n) {
  if (n == "fast") return CoverMode::fast;
  if (n == "generic") return CoverMode::generic;
  return std::nullopt;
}

/// The exhausting sequence C_1 ⊆ C_2 ⊆ ... of ring sets with
/// μ(C_{n+1} - C_n) >= 2^(n+1) (and μ(C_1) >= 2), together with the induced
/// partition D_n = C_n - C_{n-1}, C_0 = ∅, so μ(D_n) >= 2^n and the D_n are
/// pairwise disjoint with union Ω.
///
/// `generic` mode runs the enumeration scan: C_{n} is the minimal prefix
/// union of the space enumeration whose new mass beyond C_{n-1} reaches 2^n.
/// `fast` mode uses closed forms: [-2^n, 2^n) resp. {0,...,2^(n+1)-2}.
///
/// Extension of the memo is serialized; reads of computed prefixes are safe
/// from concurrent threads.
class CoverSystem {
 public:
  CoverSystem(SpaceInstance space, CoverMode mode,
              long long scan_guard = 1'000'000)
      : space_(space), mode_(mode), scan_guard_(scan_guard),
        scan_union_(space.empty()) {}

  const SpaceInstance& space() const { return space_; }
  CoverMode mode() const { return mode_; }
  std::string descriptor() const { return cover_mode_name(mode_); }

  /// C_n for n >= 0; C_0 is the empty set.
  RingSet level(int n) const {
    if (n < 0) throw std::out_of_range("cover level must be >= 0");
    if (n == 0) return space_.empty();
    std::lock_guard<std::recursive_mutex> lock(mu_);
    extend_to(n);
    return c_[static_cast<std::size_t>(n - 1)];
  }

  /// D_n = C_n - C_{n-1} for n >= 1.
  RingSet partition_piece(int n) const {
    if (n < 1) throw std::out_of_range("partition index must be >= 1");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    extend_to(n);
    while (static_cast<int>(d_.size()) < n) {
      int k = static_cast<int>(d_.size()) + 1;
      d_.push_back(ring_difference(level(k), level(k - 1)));
    }
    return d_[static_cast<std::size_t>(n - 1)];
  }

  Rat partition_measure(int n) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    while (static_cast<int>(dmeas_.size()) < n)
      dmeas_.push_back(
          exact_measure(partition_piece(static_cast<int>(dmeas_.size()) + 1)));
    return dmeas_[static_cast<std::size_t>(n - 1)];
  }

  /// Some n with e ⊆ C_n (the least one this search finds). Terminates for
  /// every ring set of the space.
  int locate(const RingSet& e) const {
    if (e.space() != space_.id)
      throw usage_error("ring set belongs to a different space");
    for (int n = 1;; ++n) {
      if (n > max_locate_levels_)
        throw cover_assumption_error("cover does not absorb the given set");
      if (ring_subset(e, level(n))) return n;
    }
  }

 private:
  void extend_to(int n) const {
    while (static_cast<int>(c_.size()) < n) {
      int lvl = static_cast<int>(c_.size()) + 1;
      if (mode_ == CoverMode::fast) {
        c_.push_back(fast_level(lvl));
        continue;
      }
      const RingSet prev =
          c_.empty() ? space_.empty() : c_.back();
      Rat target = Rat::pow2(lvl);
      long long steps = 0;
      while (exact_measure(ring_difference(scan_union_, prev)) < target) {
        if (++steps > scan_guard_)
          throw cover_assumption_error(
              "enumeration scan guard tripped; space would need infinite "
              "total measure for the scan to finish");
        scan_union_ = ring_union(scan_union_, space_.enumerate(scan_next_));
        ++scan_next_;
      }
      c_.push_back(scan_union_);
    }
  }

  RingSet fast_level(int n) const {
    if (space_.id == Space::lebesgue_line) {
      Rat r = Rat::pow2(n);
      return RingSet::lebesgue({Interval(-r, r)});
    }
    if (n > 26)
      throw cover_assumption_error("fast counting cover level too large");
    Nat count = (Nat(1) << (n + 1)) - 1;
    std::vector<Nat> elems(count);
    for (Nat v = 0; v < count; ++v) elems[v] = v;
    return RingSet::counting(std::move(elems));
  }

  SpaceInstance space_;
  CoverMode mode_;
  long long scan_guard_;
  static constexpr int max_locate_levels_ = 4096;

  mutable std::recursive_mutex mu_;
  mutable std::vector<RingSet> c_;
  mutable std::vector<RingSet> d_;
  mutable std::vector<Rat> dmeas_;
  mutable RingSet scan_union_;
  mutable Int scan_next_ = 0;
};

using CoverPtr = std::shared_ptr<const CoverSystem>;

inline CoverPtr make_cover(SpaceInstance space, CoverMode mode) {
  return std::make_shared<CoverSystem>(space, mode);
}

/// Names record which cover they were built against; operations only
/// combine names over matching covers.
inline bool same_cover(const CoverSystem& a, const CoverSystem& b) {
  return a.space().id == b.space().id && a.mode() == b.mode();
}

}  // namespace muset
