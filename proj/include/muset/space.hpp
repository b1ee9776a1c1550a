#pragma once

#include <string>

#include "muset/enumeration.hpp"
#include "muset/ring_set.hpp"

namespace muset {

/// One of the two concrete computable measure spaces: the real line with
/// Lebesgue measure, or the naturals with counting measure. Both have
/// infinite total measure. The enumerator is a fixed bijection onto the
/// generating ring; `rank` is its exact inverse.
struct SpaceInstance {
  Space id;

  std::string descriptor() const { return space_name(id); }

  RingSet empty() const { return RingSet::empty(id); }

  RingSet enumerate(const Int& n) const {
    return enumeration::enumerate_set(id, n);
  }

  Int rank(const RingSet& r) const {
    if (r.space() != id)
      throw usage_error("ring set belongs to a different space");
    return enumeration::set_rank(r);
  }

  friend bool operator==(const SpaceInstance& a, const SpaceInstance& b) {
    return a.id == b.id;
  }
};

inline SpaceInstance lebesgue_line() {
  return SpaceInstance{Space::lebesgue_line};
}

inline SpaceInstance counting_naturals() {
  return SpaceInstance{Space::counting_naturals};
}

}  // namespace muset
