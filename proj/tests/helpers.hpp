#pragma once

#include <random>
#include <vector>

#include "muset/muset.hpp"

namespace testutil {

using muset::Interval;
using muset::Nat;
using muset::Rat;
using muset::RingSet;
using muset::Space;

// All randomness in the suite is seeded, so runs are reproducible.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Rat random_rational(std::mt19937_64& g, int num_range = 40,
                           int den_range = 6) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rat(num(g), den(g));
}

inline RingSet random_lebesgue_set(std::mt19937_64& g, int max_parts = 4) {
  std::uniform_int_distribution<int> count(0, max_parts);
  int k = count(g);
  std::vector<Interval> parts;
  for (int i = 0; i < k; ++i) {
    Rat a = random_rational(g);
    Rat b = random_rational(g);
    if (a == b) b = a + Rat(1, 3);
    parts.emplace_back(muset::min(a, b), muset::max(a, b));
  }
  return RingSet::lebesgue(std::move(parts));
}

inline RingSet random_counting_set(std::mt19937_64& g, int max_parts = 6,
                                   Nat range = 40) {
  std::uniform_int_distribution<int> count(0, max_parts);
  std::uniform_int_distribution<Nat> elem(0, range);
  int k = count(g);
  std::vector<Nat> elems;
  for (int i = 0; i < k; ++i) elems.push_back(elem(g));
  return RingSet::counting(std::move(elems));
}

inline RingSet random_set(std::mt19937_64& g, Space space) {
  return space == Space::lebesgue_line ? random_lebesgue_set(g)
                                       : random_counting_set(g);
}

// Sample points for the pointwise membership oracle: every endpoint of both
// sets, midpoints, and uniform random rationals across the joint span.
inline std::vector<Rat> sample_points(const RingSet& a, const RingSet& b,
                                      std::mt19937_64& g, int random_count) {
  std::vector<Rat> pts;
  auto add_endpoints = [&pts](const RingSet& s) {
    for (const auto& iv : s.intervals()) {
      pts.push_back(iv.lo);
      pts.push_back(iv.hi);
      pts.push_back((iv.lo + iv.hi) / Rat(2));
      pts.push_back(iv.lo - Rat(1, 7));
      pts.push_back(iv.hi + Rat(1, 7));
    }
  };
  add_endpoints(a);
  add_endpoints(b);
  for (int i = 0; i < random_count; ++i) pts.push_back(random_rational(g, 60, 8));
  return pts;
}

inline std::vector<Nat> sample_naturals(Nat range, std::mt19937_64& g,
                                        int random_count) {
  std::vector<Nat> pts;
  for (Nat v = 0; v <= 8; ++v) pts.push_back(v);
  std::uniform_int_distribution<Nat> elem(0, range);
  for (int i = 0; i < random_count; ++i) pts.push_back(elem(g));
  return pts;
}

}  // namespace testutil
