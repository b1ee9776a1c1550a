#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "muset/cover.hpp"
#include "muset/stream.hpp"

namespace muset {

enum class Regime { finite, infinite };

inline std::string regime_name(Regime r) {
  return r == Regime::finite ? "Finite" : "Infinite";
}

inline std::optional<Regime> regime_from_name(std::string_view n) {
  if (n == "Finite") return Regime::finite;
  if (n == "Infinite") return Regime::infinite;
  return std::nullopt;
}

/// The probability measure induced by the cover partition on a ring set:
/// sum over n of  μ(e ∩ D_n) / μ(D_n) * 2^-n.  The sum is finite because
/// e ⊆ C_k makes every term with n > k vanish. Exact rational.
inline Rat mu_tilde_ring(const CoverSystem& cs, const RingSet& e) {
  if (e.is_empty()) return Rat(0);
  int k = cs.locate(e);
  Rat total(0);
  for (int n = 1; n <= k; ++n) {
    RingSet cut = ring_intersection(e, cs.partition_piece(n));
    if (cut.is_empty()) continue;
    total += exact_measure(cut) / cs.partition_measure(n) * Rat::pow2(-n);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Set schemes: descriptors of target measurable sets with enough analytic
// structure to build valid name streams (and to serve as test oracles).
// ---------------------------------------------------------------------------

/// Target is the ring set itself.
struct RingScheme {
  RingSet set;
};

/// Target is an increasing union of ring stages with finite total measure;
/// tail(k) is a proven nonincreasing bound on the measure outside stage k.
struct MonotoneUnionScheme {
  std::function<RingSet(int)> stage;  // k >= 0, stage(k) ⊆ stage(k+1) ⊆ target
  std::function<Rat(int)> tail;       // μ(target - stage(k)) <= tail(k) -> 0
  std::optional<Rat> total;           // analytic total measure when known
};

/// Target has infinite measure and is exactly known inside growing windows:
/// stage(k) equals target ∩ window(radius(k)), where window(r) is [-r, r)
/// on the line and {0,...,floor(r)} on the naturals, radius -> infinity.
struct WindowedUnionScheme {
  std::function<RingSet(int)> stage;
  std::function<Rat(int)> radius;
};

/// Target is the complement Ω - base of a ring set.
struct CoRingScheme {
  RingSet base;
};

/// Target is the whole space.
struct OmegaScheme {};

class SetScheme {
 public:
  using Body = std::variant<RingScheme, MonotoneUnionScheme,
                            WindowedUnionScheme, CoRingScheme, OmegaScheme>;

  SetScheme(Body body) : body_(std::move(body)) {}  // NOLINT

  const Body& body() const { return body_; }

  Regime regime() const {
    if (std::holds_alternative<RingScheme>(body_) ||
        std::holds_alternative<MonotoneUnionScheme>(body_))
      return Regime::finite;
    return Regime::infinite;
  }

  /// target ∩ e, exactly, when the descriptor supports it.
  std::optional<RingSet> restrict_exact(const RingSet& e) const;

  /// Exact total measure for finite targets when known analytically.
  std::optional<Rat> analytic_total() const {
    if (auto* r = std::get_if<RingScheme>(&body_)) return exact_measure(r->set);
    if (auto* m = std::get_if<MonotoneUnionScheme>(&body_)) return m->total;
    return std::nullopt;
  }

 private:
  Body body_;
};

using SchemePtr = std::shared_ptr<const SetScheme>;

namespace detail {

inline Rat span_radius(const RingSet& e) {
  if (e.is_empty()) return Rat(0);
  if (e.space() == Space::lebesgue_line) {
    const auto& parts = e.intervals();
    return max(abs(parts.front().lo), abs(parts.back().hi));
  }
  return Rat(static_cast<long long>(e.naturals().back()));
}

// Smallest stage index whose window swallows e's span. Radius is
// nondecreasing, so gallop for an upper bound and bisect.
inline int saturation_stage(const WindowedUnionScheme& w, const RingSet& e) {
  Rat span = span_radius(e);
  if (!(w.radius(0) < span)) return 0;
  int lo = 0, hi = 1;
  while (w.radius(hi) < span) {
    lo = hi;
    if (hi > (1 << 28))
      throw usage_error("windowed scheme radius does not grow");
    hi *= 2;
  }
  while (lo + 1 < hi) {
    int mid = lo + (hi - lo) / 2;
    if (w.radius(mid) < span)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace detail

inline std::optional<RingSet> SetScheme::restrict_exact(
    const RingSet& e) const {
  if (auto* r = std::get_if<RingScheme>(&body_))
    return ring_intersection(r->set, e);
  if (auto* c = std::get_if<CoRingScheme>(&body_))
    return ring_difference(e, c->base);
  if (std::holds_alternative<OmegaScheme>(body_)) return e;
  if (auto* w = std::get_if<WindowedUnionScheme>(&body_)) {
    int k = detail::saturation_stage(*w, e);
    return ring_intersection(w->stage(k), e);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

/// A measurable-set name: a lazy stream of ring sets A_1, A_2, ... whose
/// prefix obeys the exact modulus conditions of its regime (see the
/// validators below). The denoted set is semantic; builders certify
/// convergence through their scheme's tail/window structure.
struct MuName {
  CoverPtr cover;
  Regime regime;
  std::shared_ptr<MemoStream<RingSet>> terms;
  SchemePtr provenance;              // optional target descriptor
  std::vector<std::string> promises; // promise tags declared by callers

  const RingSet& term(int n) const { return terms->at(n); }
  Space space() const { return cover->space().id; }
};

/// Same shape under the induced probability measure: the only prefix
/// condition is mu_tilde(A_n Δ A_m) <= 2^-n for n < m.
struct TildeName {
  CoverPtr cover;
  std::shared_ptr<MemoStream<RingSet>> terms;
  SchemePtr provenance;
  std::vector<std::string> promises;

  const RingSet& term(int n) const { return terms->at(n); }
  Space space() const { return cover->space().id; }
};

// ---------------------------------------------------------------------------
// Exact prefix validators
// ---------------------------------------------------------------------------

struct Violation {
  int n;
  int m;  // 0 for single-index conditions
  std::string condition;
  Rat lhs;
  Rat bound;  // the inequality that failed: lhs vs bound
};

struct ValidationReport {
  int length = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string summary() const {
    if (ok()) return "ok (prefix length " + std::to_string(length) + ")";
    std::string s;
    for (const auto& v : violations) {
      s += v.condition + " violated at (" + std::to_string(v.n) + "," +
           std::to_string(v.m) + "): " + v.lhs.str() +
           (v.condition == "growth" ? " < " : " > ") + v.bound.str() + "\n";
    }
    return s;
  }
};

/// Checks the regime's modulus conditions on the first `len` terms, with
/// exact arithmetic. Inspects only finitely many terms, so it always
/// returns; convergence itself is the builders' contract, not checked here.
inline ValidationReport validate_mu_prefix(const MuName& name, int len) {
  ValidationReport rep;
  rep.length = len;
  const CoverSystem& cs = *name.cover;
  if (name.regime == Regime::finite) {
    for (int n = 1; n <= len; ++n)
      for (int m = n + 1; m <= len; ++m) {
        Rat lhs = exact_measure(
            ring_symmetric_difference(name.term(n), name.term(m)));
        Rat bound = Rat::pow2(-n);
        if (lhs > bound)
          rep.violations.push_back({n, m, "finite-symmdiff", lhs, bound});
      }
    return rep;
  }
  for (int n = 1; n <= len; ++n) {
    Rat growth = exact_measure(name.term(n));
    Rat gbound = Rat::pow2(n);
    if (growth < gbound)
      rep.violations.push_back({n, 0, "growth", growth, gbound});
    for (int m = n + 1; m <= len; ++m) {
      Rat bound = Rat::pow2(-n);
      Rat shrink =
          exact_measure(ring_difference(name.term(n), name.term(m)));
      if (shrink > bound)
        rep.violations.push_back({n, m, "shrink", shrink, bound});
      Rat capture = exact_measure(ring_difference(
          ring_intersection(name.term(m), cs.level(n)), name.term(n)));
      if (capture > bound)
        rep.violations.push_back({n, m, "cover-capture", capture, bound});
    }
  }
  return rep;
}

inline ValidationReport validate_tilde_prefix(const TildeName& name, int len) {
  ValidationReport rep;
  rep.length = len;
  for (int n = 1; n <= len; ++n)
    for (int m = n + 1; m <= len; ++m) {
      Rat lhs = mu_tilde_ring(
          *name.cover,
          ring_symmetric_difference(name.term(n), name.term(m)));
      Rat bound = Rat::pow2(-n);
      if (lhs > bound)
        rep.violations.push_back({n, m, "tilde-symmdiff", lhs, bound});
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Regime classification
// ---------------------------------------------------------------------------

/// Decides the regime from the stream alone (the header is redundant).
/// With r = μ(A_1) and m = max(2, ceil(log2(r+1)) + 1): a finite-regime
/// stream forces μ(A_m) <= r + 1/2 < 2^m, an infinite-regime stream forces
/// μ(A_m) >= 2^m. Reads at most m terms; always terminates. On a stream
/// that is not a name of either regime the answer is unspecified.
inline Regime classify(const MuName& name) {
  Rat r = exact_measure(name.term(1));
  long m = ceil_log2(r + Rat(1)) + 1;
  if (m < 2) m = 2;
  return exact_measure(name.term(static_cast<int>(m))) >= Rat::pow2(m)
             ? Regime::infinite
             : Regime::finite;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

inline MuName from_ring(const RingSet& e, CoverPtr cover) {
  if (e.space() != cover->space().id)
    throw usage_error("ring set and cover belong to different spaces");
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [e](int) { return e; });
  auto scheme = std::make_shared<SetScheme>(RingScheme{e});
  return MuName{std::move(cover), Regime::finite, std::move(terms),
                std::move(scheme), {}};
}

inline TildeName from_ring_tilde(const RingSet& e, CoverPtr cover) {
  if (e.space() != cover->space().id)
    throw usage_error("ring set and cover belong to different spaces");
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [e](int) { return e; });
  auto scheme = std::make_shared<SetScheme>(RingScheme{e});
  return TildeName{std::move(cover), std::move(terms), std::move(scheme), {}};
}

/// The cover sequence (C_n) itself is a valid infinite-regime name of Ω.
inline MuName name_of_omega(CoverPtr cover) {
  auto cs = cover;
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [cs](int n) { return cs->level(n); });
  auto scheme = std::make_shared<SetScheme>(OmegaScheme{});
  return MuName{std::move(cover), Regime::infinite, std::move(terms),
                std::move(scheme), {}};
}

namespace detail {

// Schedule for finite monotone schemes: stage index k(n), the least k (not
// below k(n-1)) with tail(k) <= 2^-n. Rejects tails that ever increase.
struct MonotoneSchedule {
  MonotoneUnionScheme scheme;
  std::vector<int> k;
  Rat last_tail = Rat(0);

  int stage_for(int n) {
    while (static_cast<int>(k.size()) < n) {
      int next_n = static_cast<int>(k.size()) + 1;
      int kk = k.empty() ? 0 : k.back();
      Rat bound = Rat::pow2(-next_n);
      Rat t = scheme.tail(kk);
      if (!k.empty() && t > last_tail)
        throw usage_error("scheme tail bound is not nonincreasing");
      int guard = 0;
      while (t > bound) {
        ++kk;
        Rat t2 = scheme.tail(kk);
        if (t2 > t)
          throw usage_error("scheme tail bound is not nonincreasing");
        t = t2;
        if (++guard > 100000)
          throw usage_error("scheme tail bound does not fall to zero");
      }
      last_tail = t;
      k.push_back(kk);
    }
    return k[static_cast<std::size_t>(n - 1)];
  }
};

}  // namespace detail

/// Builds a name meeting the regime conditions from a scheme descriptor.
/// The regime comes from the descriptor, never from the abstract set.
inline MuName name_of_scheme(const SetScheme& scheme, CoverPtr cover) {
  if (std::holds_alternative<OmegaScheme>(scheme.body()))
    return name_of_omega(std::move(cover));
  auto sp = std::make_shared<SetScheme>(scheme);
  if (auto* r = std::get_if<RingScheme>(&scheme.body())) {
    MuName n = from_ring(r->set, std::move(cover));
    n.provenance = sp;
    return n;
  }
  if (auto* m = std::get_if<MonotoneUnionScheme>(&scheme.body())) {
    auto sched = std::make_shared<detail::MonotoneSchedule>(
        detail::MonotoneSchedule{*m, {}, Rat(0)});
    auto terms = std::make_shared<MemoStream<RingSet>>(
        [sched](int n) { return sched->scheme.stage(sched->stage_for(n)); });
    return MuName{std::move(cover), Regime::finite, std::move(terms), sp, {}};
  }
  if (auto* w = std::get_if<WindowedUnionScheme>(&scheme.body())) {
    // A_n = target ∩ C_{j(n)} with j(n) >= max(n, j(n-1)) minimal such that
    // the slice has measure >= 2^n. All three infinite-regime conditions
    // then hold with exact zero slack (nested exact restrictions).
    auto cs = cover;
    WindowedUnionScheme wu = *w;
    auto js = std::make_shared<std::vector<int>>();
    auto gen = [cs, wu, js](int n) {
      int j = js->empty() ? 1 : js->back();
      if (j < n) j = n;
      for (int guard = 0;; ++guard, ++j) {
        if (guard > 100000)
          throw usage_error("windowed scheme never reaches the growth bound");
        RingSet lvl = cs->level(j);
        int k = detail::saturation_stage(wu, lvl);
        RingSet slice = ring_intersection(wu.stage(k), lvl);
        if (exact_measure(slice) >= Rat::pow2(n)) {
          js->push_back(j);
          return slice;
        }
      }
    };
    auto terms = std::make_shared<MemoStream<RingSet>>(gen);
    return MuName{std::move(cover), Regime::infinite, std::move(terms), sp, {}};
  }
  auto* c = std::get_if<CoRingScheme>(&scheme.body());
  if (c->base.space() != cover->space().id)
    throw usage_error("scheme base and cover belong to different spaces");
  auto cs = cover;
  RingSet base = c->base;
  auto js = std::make_shared<std::vector<int>>();
  auto gen = [cs, base, js](int n) {
    int j = js->empty() ? 1 : js->back();
    if (j < n) j = n;
    for (int guard = 0;; ++guard, ++j) {
      if (guard > 100000)
        throw usage_error("co-ring scheme never reaches the growth bound");
      RingSet slice = ring_difference(cs->level(j), base);
      if (exact_measure(slice) >= Rat::pow2(n)) {
        js->push_back(j);
        return slice;
      }
    }
  };
  auto terms = std::make_shared<MemoStream<RingSet>>(gen);
  return MuName{std::move(cover), Regime::infinite, std::move(terms), sp, {}};
}

// --- Built-in schemes -------------------------------------------------------

/// Union over k of [k, k + 2^-k-1): total measure exactly 1.
inline SetScheme geometric_pack_scheme() {
  auto stage = [](int k) {
    std::vector<Interval> parts;
    for (int i = 0; i <= k; ++i)
      parts.emplace_back(Rat(i), Rat(i) + Rat::pow2(-i - 1));
    return RingSet::lebesgue(std::move(parts));
  };
  auto tail = [](int k) { return Rat::pow2(-k - 1); };
  return SetScheme(MonotoneUnionScheme{stage, tail, Rat(1)});
}

inline SetScheme evens_scheme(Space space) {
  if (space == Space::lebesgue_line) {
    auto stage = [](int k) {
      std::vector<Interval> parts;
      for (int i = 0; i <= k; ++i)
        parts.emplace_back(Rat(2 * i), Rat(2 * i + 1));
      return RingSet::lebesgue(std::move(parts));
    };
    auto radius = [](int k) { return Rat(2 * k + 1); };
    return SetScheme(WindowedUnionScheme{stage, radius});
  }
  auto stage = [](int k) {
    std::vector<Nat> elems;
    for (int i = 0; i <= k; ++i) elems.push_back(static_cast<Nat>(2 * i));
    return RingSet::counting(std::move(elems));
  };
  auto radius = [](int k) { return Rat(2 * k + 1); };
  return SetScheme(WindowedUnionScheme{stage, radius});
}

inline SetScheme odds_scheme(Space space) {
  if (space == Space::lebesgue_line) {
    auto stage = [](int k) {
      std::vector<Interval> parts;
      for (int i = 0; i <= k; ++i)
        parts.emplace_back(Rat(2 * i + 1), Rat(2 * i + 2));
      return RingSet::lebesgue(std::move(parts));
    };
    auto radius = [](int k) { return Rat(2 * k + 2); };
    return SetScheme(WindowedUnionScheme{stage, radius});
  }
  auto stage = [](int k) {
    std::vector<Nat> elems;
    for (int i = 0; i <= k; ++i) elems.push_back(static_cast<Nat>(2 * i + 1));
    return RingSet::counting(std::move(elems));
  };
  auto radius = [](int k) { return Rat(2 * k + 2); };
  return SetScheme(WindowedUnionScheme{stage, radius});
}

/// [0, +inf) on the line.
inline SetScheme half_line_scheme() {
  auto stage = [](int k) {
    return RingSet::lebesgue({Interval(Rat(0), Rat(k + 1))});
  };
  auto radius = [](int k) { return Rat(k + 1); };
  return SetScheme(WindowedUnionScheme{stage, radius});
}

/// (-inf, 0) on the line.
inline SetScheme negative_half_line_scheme() {
  auto stage = [](int k) {
    return RingSet::lebesgue({Interval(Rat(-(k + 1)), Rat(0))});
  };
  auto radius = [](int k) { return Rat(k + 1); };
  return SetScheme(WindowedUnionScheme{stage, radius});
}

}  // namespace muset
