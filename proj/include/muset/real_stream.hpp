#pragma once

#include <memory>
#include <optional>
#include <string>

#include "muset/rat.hpp"
#include "muset/stream.hpp"

namespace muset {

/// One approximation step for an extended real: the closed interval
/// [lo, hi], where hi == nullopt stands for +infinity.
struct RealTerm {
  Rat lo;
  std::optional<Rat> hi;

  bool bounded() const { return hi.has_value(); }

  bool contains(const Rat& v) const {
    return !(v < lo) && (!hi || !(*hi < v));
  }

  std::string str() const {
    return lo.str() + " " + (hi ? hi->str() : std::string("INF"));
  }
};

/// A real-number output stream, indexed from 1.
///   interval: brackets [lo_n, hi_n] whose widths shrink to 0 for finite
///             limits; for +infinity the terms escalate as [2^n, INF].
///   lower:    nondecreasing rational lower bounds (hi is always INF).
class RealStream {
 public:
  enum class Kind { interval, lower };

  RealStream(Kind kind, std::shared_ptr<MemoStream<RealTerm>> terms)
      : kind_(kind), terms_(std::move(terms)) {}

  Kind kind() const { return kind_; }
  const RealTerm& at(int n) const { return terms_->at(n); }

 private:
  Kind kind_;
  std::shared_ptr<MemoStream<RealTerm>> terms_;
};

}  // namespace muset
