#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "muset/errors.hpp"
#include "muset/rat.hpp"
#include "muset/ring_set.hpp"

// A deterministic bijection n |-> canonical ring set, one per space, with a
// computable inverse (rank). Layout:
//
//   index 0, 2, 4, ...  : diagonal enumeration of all canonical sets that
//                         are not scale sets, via Cantor pairing over
//                         (interval count, endpoint data); rationals are
//                         indexed by the Calkin-Wilf tree.
//   index 1, 3, 5, ...  : the "scale" sets S_j — [-2^j, 2^j) on the line,
//                         {0,...,2^(j+1)-2} on the naturals — so prefix
//                         unions reach measure 2^(j+1) within ~2j indices.
//
// The interleaving keeps cover construction (minimal prefix of the
// enumeration with a given measure) linear in the target level instead of
// exponential, while staying a total injective surjection.

namespace muset::enumeration {

inline Int cantor_pair(const Int& x, const Int& y) {
  return (x + y) * (x + y + 1) / 2 + y;
}

inline std::pair<Int, Int> cantor_unpair(const Int& z) {
  Int w = (boost::multiprecision::sqrt(Int(8 * z + 1)) - 1) / 2;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  while (w * (w + 1) / 2 > z) --w;
  Int y = z - w * (w + 1) / 2;
  Int x = w - y;
  return {x, y};
}

inline Int tuple_pair(const std::vector<Int>& coords) {
  Int t = coords.back();
  for (std::size_t i = coords.size() - 1; i-- > 0;)
    t = cantor_pair(coords[i], t);
  return t;
}

inline std::vector<Int> tuple_unpair(Int t, std::size_t arity) {
  std::vector<Int> coords(arity);
  for (std::size_t i = 0; i + 1 < arity; ++i) {
    auto [x, rest] = cantor_unpair(t);
    coords[i] = x;
    t = rest;
  }
  coords[arity - 1] = t;
  return coords;
}

// --- Calkin-Wilf tree: breadth-first index n >= 1 <-> positive rational ---

inline Rat calkin_wilf(const Int& n) {
  if (n < 1) throw std::domain_error("calkin_wilf requires n >= 1");
  Int a = 1, b = 1;
  long top = static_cast<long>(boost::multiprecision::msb(n));
  for (long i = top - 1; i >= 0; --i) {
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i)))
      a += b;
    else
      b += a;
  }
  return Rat(a, b);
}

// Index of a positive rational, or nullopt if it exceeds `cap`.
// Batches the walk along continued-fraction runs, so huge-coefficient
// rationals (like 2^40) bail out immediately instead of looping.
inline std::optional<Int> calkin_wilf_rank_capped(const Rat& q,
                                                  const Int& cap) {
  if (!(Rat(0) < q)) throw std::domain_error("calkin_wilf rank of non-positive");
  Int p = q.num(), d = q.den();
  long cap_bits = cap >= 1 ? static_cast<long>(boost::multiprecision::msb(cap)) + 1 : 0;
  std::vector<std::pair<Int, bool>> runs;  // (count, bit), leaf-to-root
  Int depth = 0;
  while (!(p == 1 && d == 1)) {
    Int k;
    bool bit;
    if (p > d) {
      k = d == 1 ? Int(p - 1) : Int(p / d);
      p = d == 1 ? Int(1) : Int(p % d);
      bit = true;
    } else {
      k = p == 1 ? Int(d - 1) : Int(d / p);
      d = p == 1 ? Int(1) : Int(d % p);
      bit = false;
    }
    depth += k;
    if (depth + 1 > cap_bits) return std::nullopt;  // rank needs more bits
    runs.emplace_back(k, bit);
  }
  Int n = 1;
  for (auto it = runs.rbegin(); it != runs.rend(); ++it)
    for (Int c = 0; c < it->first; ++c) n = n * 2 + (it->second ? 1 : 0);
  return n <= cap ? std::optional<Int>(n) : std::nullopt;
}

inline Int calkin_wilf_rank(const Rat& q) {
  // Generous guard: ranks longer than this are not materializable anyway.
  Int cap = Int(1) << 4096;
  auto r = calkin_wilf_rank_capped(q, cap);
  if (!r) throw usage_error("enumeration rank too large to materialize");
  return *r;
}

// --- Bijections N <-> Q and N <-> Q_{>0} built on the tree ---

inline Rat rational_at(const Int& n) {
  if (n == 0) return Rat(0);
  if (boost::multiprecision::bit_test(n, 0)) return calkin_wilf((n + 1) / 2);
  return -calkin_wilf(n / 2);
}

inline Int rational_rank(const Rat& x) {
  if (x.is_zero()) return 0;
  Int r = calkin_wilf_rank(abs(x));
  return x.is_negative() ? Int(2 * r) : Int(2 * r - 1);
}

inline Rat positive_rational_at(const Int& n) { return calkin_wilf(n + 1); }

inline Int positive_rational_rank(const Rat& x) {
  return calkin_wilf_rank(x) - 1;
}

// --- Diagonal enumeration of all canonical sets (backbone not skipped) ---

inline RingSet diagonal_at(Space space, const Int& i) {
  if (i == 0) return RingSet::empty(space);
  auto [blocks, t] = cantor_unpair(i - 1);
  if (blocks > 1024) throw usage_error("enumeration index too large");
  std::size_t k = static_cast<std::size_t>(blocks);  // blocks + 1 components
  std::vector<Int> c = tuple_unpair(t, 2 * k + 2);
  if (space == Space::lebesgue_line) {
    std::vector<Interval> parts;
    Rat lo = rational_at(c[0]);
    Rat hi = lo + positive_rational_at(c[1]);
    parts.emplace_back(lo, hi);
    for (std::size_t m = 1; m <= k; ++m) {
      lo = hi + positive_rational_at(c[2 * m]);
      hi = lo + positive_rational_at(c[2 * m + 1]);
      parts.emplace_back(lo, hi);
    }
    return RingSet::lebesgue(std::move(parts));
  }
  std::vector<Nat> elems;
  auto push_run = [&elems](const Int& x, const Int& y) {
    if (y > Int(std::numeric_limits<Nat>::max()) || y - x > (Int(1) << 26))
      throw usage_error("counting enumeration element too large");
    for (Nat v = static_cast<Nat>(x); v <= static_cast<Nat>(y); ++v)
      elems.push_back(v);
  };
  Int a = c[0];
  Int b = a + c[1];
  push_run(a, b);
  for (std::size_t m = 1; m <= k; ++m) {
    a = b + 2 + c[2 * m];
    b = a + c[2 * m + 1];
    push_run(a, b);
  }
  return RingSet::counting(std::move(elems));
}

inline Int diagonal_rank(const RingSet& r) {
  if (r.is_empty()) return 0;
  std::vector<Int> c;
  if (r.space() == Space::lebesgue_line) {
    const auto& parts = r.intervals();
    c.push_back(rational_rank(parts[0].lo));
    c.push_back(positive_rational_rank(parts[0].length()));
    for (std::size_t m = 1; m < parts.size(); ++m) {
      c.push_back(positive_rational_rank(parts[m].lo - parts[m - 1].hi));
      c.push_back(positive_rational_rank(parts[m].length()));
    }
    return cantor_pair(Int(parts.size() - 1), tuple_pair(c)) + 1;
  }
  const auto& ns = r.naturals();
  std::vector<std::pair<Nat, Nat>> runs;
  Nat a = ns[0], b = ns[0];
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] == b + 1) {
      b = ns[i];
    } else {
      runs.emplace_back(a, b);
      a = b = ns[i];
    }
  }
  runs.emplace_back(a, b);
  c.push_back(Int(runs[0].first));
  c.push_back(Int(runs[0].second - runs[0].first));
  for (std::size_t m = 1; m < runs.size(); ++m) {
    c.push_back(Int(runs[m].first - runs[m - 1].second - 2));
    c.push_back(Int(runs[m].second - runs[m].first));
  }
  return cantor_pair(Int(runs.size() - 1), tuple_pair(c)) + 1;
}

// --- Scale (backbone) sets ---

inline RingSet scale_set(Space space, long j) {
  if (space == Space::lebesgue_line) {
    Rat r = Rat::pow2(j);
    return RingSet::lebesgue({Interval(-r, r)});
  }
  if (j > 26) throw usage_error("counting scale set too large to materialize");
  Nat count = (Nat(1) << (j + 1)) - 1;
  std::vector<Nat> elems(count);
  for (Nat v = 0; v < count; ++v) elems[v] = v;
  return RingSet::counting(std::move(elems));
}

inline std::optional<long> scale_index_of(const RingSet& r) {
  if (r.space() == Space::lebesgue_line) {
    const auto& parts = r.intervals();
    if (parts.size() != 1) return std::nullopt;
    const Rat& hi = parts[0].hi;
    if (!hi.is_integer() || hi < Rat(2)) return std::nullopt;
    if (!(parts[0].lo == -hi)) return std::nullopt;
    const Int& v = hi.num();
    long j = static_cast<long>(boost::multiprecision::msb(v));
    if (Int(1) << static_cast<unsigned>(j) != v) return std::nullopt;
    return j;
  }
  const auto& ns = r.naturals();
  if (ns.size() < 3 || ns.front() != 0 || ns.back() != ns.size() - 1)
    return std::nullopt;  // must be the contiguous block {0..size-1}
  Nat size_plus = ns.size() + 1;
  if ((size_plus & (size_plus - 1)) != 0) return std::nullopt;
  long j = 0;
  while ((Nat(1) << (j + 1)) < size_plus) ++j;
  return j;
}

// Diagonal rank of scale set j, or nullopt if it exceeds `cap`. Cheap even
// for large j: the underlying tree rank saturates fast.
inline std::optional<Int> scale_diagonal_rank_capped(Space space, long j,
                                                     const Int& cap) {
  if (space == Space::lebesgue_line) {
    // coords: (rational_rank(-2^j), positive_rational_rank(2^(j+1)))
    Rat p = Rat::pow2(j);
    auto r1 = calkin_wilf_rank_capped(p, cap);
    if (!r1) return std::nullopt;
    Int c0 = 2 * *r1;  // rank of the negative rational -2^j
    auto r2 = calkin_wilf_rank_capped(p + p, cap);
    if (!r2) return std::nullopt;
    Int c1 = *r2 - 1;
    Int rank = cantor_pair(0, cantor_pair(c0, c1)) + 1;
    return rank <= cap ? std::optional<Int>(rank) : std::nullopt;
  }
  if (j > 62) return std::nullopt;  // rank far beyond any practical cap
  Int len = (Int(1) << (j + 1)) - 2;
  Int rank = cantor_pair(0, cantor_pair(Int(0), len)) + 1;
  return rank <= cap ? std::optional<Int>(rank) : std::nullopt;
}

// Number of scale sets whose diagonal rank is <= cap (ranks grow strictly
// with j, so the first miss ends the count).
inline long scale_ranks_within(Space space, const Int& cap) {
  long count = 0;
  for (long j = 1;; ++j) {
    if (!scale_diagonal_rank_capped(space, j, cap)) break;
    ++count;
  }
  return count;
}

// --- The full enumeration and its inverse ---

inline RingSet enumerate_set(Space space, const Int& n) {
  if (n < 0) throw std::domain_error("enumeration index must be nonnegative");
  if (boost::multiprecision::bit_test(n, 0)) {
    Int j = (n + 1) / 2;
    if (j > 1024) throw usage_error("enumeration index too large");
    return scale_set(space, static_cast<long>(j));
  }
  Int i = n / 2;
  // Skip diagonal slots occupied by scale sets: find s with
  // s - #{scale ranks <= s} == i.
  Int s = i;
  for (;;) {
    Int s2 = i + scale_ranks_within(space, s);
    if (s2 == s) break;
    s = s2;
  }
  return diagonal_at(space, s);
}

inline Int set_rank(const RingSet& r) {
  if (auto j = scale_index_of(r)) return Int(2 * *j - 1);
  Int i = diagonal_rank(r);
  Int skipped = scale_ranks_within(r.space(), i);  // ranks < i (never == i)
  return 2 * (i - skipped);
}

}  // namespace muset::enumeration
