#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "muset/errors.hpp"
#include "muset/rat.hpp"

namespace muset {

enum class Space { lebesgue_line, counting_naturals };

inline std::string space_name(Space s) {
  return s == Space::lebesgue_line ? "lebesgue-line" : "counting-naturals";
}

inline std::optional<Space> space_from_name(std::string_view n) {
  if (n == "lebesgue-line") return Space::lebesgue_line;
  if (n == "counting-naturals") return Space::counting_naturals;
  return std::nullopt;
}

/// Half-open interval [lo, hi) with rational endpoints; never empty.
struct Interval {
  Rat lo;
  Rat hi;

  Interval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (!(lo < hi)) throw std::invalid_argument("interval requires lo < hi");
  }

  Rat length() const { return hi - lo; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

using Nat = std::uint64_t;

/// An element of the countable generating ring: a finite union of rational
/// half-open intervals (real line) or a finite set of naturals. Canonical
/// form is enforced at construction — intervals sorted, pairwise disjoint
/// and non-adjacent; naturals sorted and distinct — so set equality is
/// structural equality. Values are immutable.
class RingSet {
 public:
  static RingSet lebesgue(std::vector<Interval> parts) {
    canonicalize_intervals(parts);
    return RingSet(std::move(parts));
  }

  static RingSet counting(std::vector<Nat> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return RingSet(std::move(elems));
  }

  static RingSet empty(Space s) {
    return s == Space::lebesgue_line ? lebesgue({}) : counting({});
  }

  Space space() const {
    return std::holds_alternative<std::vector<Interval>>(body_)
               ? Space::lebesgue_line
               : Space::counting_naturals;
  }

  bool is_empty() const {
    return space() == Space::lebesgue_line ? intervals().empty()
                                           : naturals().empty();
  }

  const std::vector<Interval>& intervals() const {
    return std::get<std::vector<Interval>>(body_);
  }

  const std::vector<Nat>& naturals() const {
    return std::get<std::vector<Nat>>(body_);
  }

  /// Number of stored components; the unit of work for step budgets.
  std::size_t component_count() const {
    return space() == Space::lebesgue_line ? intervals().size()
                                           : naturals().size();
  }

  bool contains(const Rat& p) const {
    for (const auto& iv : intervals())
      if (!(p < iv.lo) && p < iv.hi) return true;
    return false;
  }

  bool contains(Nat n) const {
    const auto& ns = naturals();
    return std::binary_search(ns.begin(), ns.end(), n);
  }

  friend bool operator==(const RingSet& a, const RingSet& b) {
    return a.body_ == b.body_;
  }
  friend bool operator!=(const RingSet& a, const RingSet& b) {
    return !(a == b);
  }

 private:
  explicit RingSet(std::vector<Interval> parts) : body_(std::move(parts)) {}
  explicit RingSet(std::vector<Nat> elems) : body_(std::move(elems)) {}

  static void canonicalize_intervals(std::vector<Interval>& parts) {
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (auto& iv : parts) {
      if (!merged.empty() && !(merged.back().hi < iv.lo)) {
        if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(iv);
      }
    }
    parts = std::move(merged);
  }

  std::variant<std::vector<Interval>, std::vector<Nat>> body_;
};

namespace detail {

inline void require_same_space(const RingSet& a, const RingSet& b) {
  if (a.space() != b.space())
    throw usage_error("ring sets belong to different spaces (" +
                      space_name(a.space()) + " vs " + space_name(b.space()) +
                      ")");
}

inline std::vector<Interval> interval_difference(
    const std::vector<Interval>& as, const std::vector<Interval>& bs) {
  std::vector<Interval> out;
  std::size_t j = 0;  // first b with b.hi > a.lo; only ever moves forward
  for (const auto& a : as) {
    while (j < bs.size() && !(a.lo < bs[j].hi)) ++j;
    Rat cur = a.lo;
    std::size_t k = j;
    while (k < bs.size() && bs[k].lo < a.hi) {
      if (cur < bs[k].lo) out.emplace_back(cur, bs[k].lo);
      cur = max(cur, bs[k].hi);
      if (!(cur < a.hi)) break;
      ++k;
    }
    if (cur < a.hi) out.emplace_back(cur, a.hi);
  }
  return out;
}

}  // namespace detail

inline RingSet ring_union(const RingSet& a, const RingSet& b) {
  detail::require_same_space(a, b);
  if (a.space() == Space::lebesgue_line) {
    std::vector<Interval> parts = a.intervals();
    parts.insert(parts.end(), b.intervals().begin(), b.intervals().end());
    return RingSet::lebesgue(std::move(parts));
  }
  std::vector<Nat> elems = a.naturals();
  elems.insert(elems.end(), b.naturals().begin(), b.naturals().end());
  return RingSet::counting(std::move(elems));
}

inline RingSet ring_difference(const RingSet& a, const RingSet& b) {
  detail::require_same_space(a, b);
  if (a.space() == Space::lebesgue_line)
    return RingSet::lebesgue(
        detail::interval_difference(a.intervals(), b.intervals()));
  std::vector<Nat> out;
  std::set_difference(a.naturals().begin(), a.naturals().end(),
                      b.naturals().begin(), b.naturals().end(),
                      std::back_inserter(out));
  return RingSet::counting(std::move(out));
}

// Intersection and symmetric difference are the derived ring operations
// a - (a - b) and (a - b) ∪ (b - a).
inline RingSet ring_intersection(const RingSet& a, const RingSet& b) {
  return ring_difference(a, ring_difference(a, b));
}

inline RingSet ring_symmetric_difference(const RingSet& a, const RingSet& b) {
  return ring_union(ring_difference(a, b), ring_difference(b, a));
}

inline bool ring_subset(const RingSet& a, const RingSet& b) {
  return ring_difference(a, b).is_empty();
}

/// Exact measure of a ring element: total interval length, or cardinality.
/// Always a finite nonnegative rational.
inline Rat exact_measure(const RingSet& a) {
  if (a.space() == Space::lebesgue_line) {
    Rat m(0);
    for (const auto& iv : a.intervals()) m += iv.length();
    return m;
  }
  return Rat(static_cast<long long>(a.naturals().size()));
}

// ---------------------------------------------------------------------------
// Textual notation. One set per line, ASCII, whitespace-separated tokens:
//   Lebesgue:  U [p/q,r/s) [p'/q',r'/s') ...   (rationals in lowest terms)
//   Counting:  N {k1,k2,...}                   (strictly increasing)
// The decoder accepts exactly the canonical spellings; anything else is a
// parse error with a position. encode . decode is the identity.
// ---------------------------------------------------------------------------

inline std::string encode(const RingSet& a) {
  std::string out;
  if (a.space() == Space::lebesgue_line) {
    out = "U";
    for (const auto& iv : a.intervals())
      out += " [" + iv.lo.str() + "," + iv.hi.str() + ")";
  } else {
    out = "N {";
    bool first = true;
    for (Nat n : a.naturals()) {
      if (!first) out += ",";
      out += std::to_string(n);
      first = false;
    }
    out += "}";
  }
  return out;
}

namespace detail {

// Parses "p/q" in lowest terms with q > 0. `pos` is advanced past the token.
inline Rat parse_rational(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  bool neg = false;
  if (pos < text.size() && text[pos] == '-') {
    neg = true;
    ++pos;
  }
  auto read_digits = [&](const char* what) {
    std::size_t d0 = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == d0) throw parse_error(pos, std::string("expected ") + what);
    return Int(std::string(text.substr(d0, pos - d0)));
  };
  Int num = read_digits("numerator digits");
  if (pos >= text.size() || text[pos] != '/')
    throw parse_error(pos, "expected '/' in rational");
  ++pos;
  Int den = read_digits("denominator digits");
  if (den == 0) throw parse_error(start, "zero denominator");
  if (boost::multiprecision::gcd(num, den) != 1)
    throw parse_error(start, "rational not in lowest terms");
  if (neg && num == 0) throw parse_error(start, "negative zero");
  return Rat(neg ? Int(-num) : num, den);
}

inline void skip_spaces(std::string_view text, std::size_t& pos) {
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
}

}  // namespace detail

inline RingSet decode(std::string_view text) {
  std::size_t pos = 0;
  detail::skip_spaces(text, pos);
  if (pos >= text.size())
    throw parse_error(pos, "expected 'U' or 'N'");
  char tag = text[pos];
  if (tag == 'U') {
    ++pos;
    std::vector<Interval> parts;
    std::optional<Rat> prev_hi;
    while (true) {
      detail::skip_spaces(text, pos);
      if (pos >= text.size()) break;
      if (text[pos] != '[')
        throw parse_error(pos, "expected '[' starting an interval");
      std::size_t iv_start = pos;
      ++pos;
      Rat lo = detail::parse_rational(text, pos);
      if (pos >= text.size() || text[pos] != ',')
        throw parse_error(pos, "expected ',' in interval");
      ++pos;
      Rat hi = detail::parse_rational(text, pos);
      if (pos >= text.size() || text[pos] != ')')
        throw parse_error(pos, "expected ')' closing interval");
      ++pos;
      if (!(lo < hi)) throw parse_error(iv_start, "empty interval (lo >= hi)");
      if (prev_hi && !(*prev_hi < lo))
        throw parse_error(iv_start,
                          "intervals not sorted, or overlapping/adjacent");
      prev_hi = hi;
      parts.emplace_back(std::move(lo), std::move(hi));
    }
    return RingSet::lebesgue(std::move(parts));
  }
  if (tag == 'N') {
    ++pos;
    detail::skip_spaces(text, pos);
    if (pos >= text.size() || text[pos] != '{')
      throw parse_error(pos, "expected '{'");
    ++pos;
    std::vector<Nat> elems;
    detail::skip_spaces(text, pos);
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
    } else {
      while (true) {
        std::size_t d0 = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (pos == d0) throw parse_error(pos, "expected natural number");
        std::string digits(text.substr(d0, pos - d0));
        if (digits.size() > 1 && digits[0] == '0')
          throw parse_error(d0, "leading zero");
        unsigned long long v = 0;
        try {
          v = std::stoull(digits);
        } catch (const std::out_of_range&) {
          throw parse_error(d0, "natural too large");
        }
        if (!elems.empty() && elems.back() >= v)
          throw parse_error(d0, "naturals not strictly increasing");
        elems.push_back(v);
        if (pos >= text.size()) throw parse_error(pos, "expected ',' or '}'");
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == '}') {
          ++pos;
          break;
        }
        throw parse_error(pos, "expected ',' or '}'");
      }
    }
    detail::skip_spaces(text, pos);
    if (pos != text.size()) throw parse_error(pos, "trailing input");
    return RingSet::counting(std::move(elems));
  }
  throw parse_error(pos, "expected 'U' or 'N'");
}

}  // namespace muset
