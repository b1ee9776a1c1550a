#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "muset/names.hpp"
#include "muset/real_stream.hpp"

namespace muset {

/// Knobs for the partial operations. The step budget caps the work one
/// output term's search may do (counted in probed terms plus the components
/// of every ring set the probe materializes); outside the promise domain
/// the searches would otherwise never finish.
struct OpOptions {
  long long step_budget = 1'000'000;
  std::vector<std::string> promises;
};

namespace detail {

inline void require_same_cover(const CoverSystem& a, const CoverSystem& b) {
  if (!same_cover(a, b))
    throw usage_error("names built over different spaces or covers");
}

inline std::vector<std::string> merge_promises(
    const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& p : b)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

struct BudgetCounter {
  long long used = 0;
  long long budget;
  std::string context;

  void charge(long long amount) {
    used += amount;
    if (used > budget) throw step_budget_exhausted(context, budget);
  }
};

}  // namespace detail

/// Measure of the named set as a shrinking-interval stream. Finite regime:
/// [μ(A_n) - 2^-n, μ(A_n) + 2^-n]. Infinite regime: the escalating
/// encoding [2^n, INF].
inline RealStream mu_of(const MuName& name) {
  if (name.regime == Regime::finite) {
    auto terms = std::make_shared<MemoStream<RealTerm>>([name](int n) {
      Rat v = exact_measure(name.term(n));
      Rat eps = Rat::pow2(-n);
      return RealTerm{v - eps, v + eps};
    });
    return RealStream(RealStream::Kind::interval, std::move(terms));
  }
  auto terms = std::make_shared<MemoStream<RealTerm>>(
      [](int n) { return RealTerm{Rat::pow2(n), std::nullopt}; });
  return RealStream(RealStream::Kind::interval, std::move(terms));
}

/// Union is total: term n is A_{n+1} ∪ B_{n+1}. The one-step shift restores
/// every regime condition by subadditivity of Δ and - over unions, plus
/// C_n ⊆ C_{n+1} for the cover condition.
inline MuName mu_union(const MuName& a, const MuName& b) {
  detail::require_same_cover(*a.cover, *b.cover);
  Regime regime = (a.regime == Regime::infinite || b.regime == Regime::infinite)
                      ? Regime::infinite
                      : Regime::finite;
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [a, b](int n) { return ring_union(a.term(n + 1), b.term(n + 1)); });
  return MuName{a.cover, regime, std::move(terms), nullptr,
                detail::merge_promises(a.promises, b.promises)};
}

namespace detail {

// Finite-regime product schedule shared by intersection and difference:
// the finite input is read at j = n+2 and the other at
// i = max(j, locate(A_j)) + 2, which gives
//   μ(out_n Δ target) <= 2^-j + 2*2^-i <= 2^-(n+2) + 2^-(n+3),
// so pairs n < m stay within 2^-n.
template <typename Op>
inline MuName finite_product(const MuName& fin, const MuName& other, Op op,
                             std::vector<std::string> promises) {
  auto cover = fin.cover;
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [fin, other, cover, op](int n) {
        int j = n + 2;
        const RingSet& aj = fin.term(j);
        int i = std::max(j, cover->locate(aj)) + 2;
        return op(aj, other.term(i));
      });
  return MuName{cover, Regime::finite, std::move(terms), nullptr,
                std::move(promises)};
}

}  // namespace detail

/// Intersection. Total whenever one input is finite-regime; with both
/// infinite it searches for witnesses μ(A_m ∩ B_m) >= 2^n, which finishes
/// for every n exactly when the intersection has infinite measure (the
/// promise). Outside the promise the search runs into the step budget.
inline MuName mu_intersection(const MuName& a, const MuName& b,
                              const OpOptions& opts = {}) {
  detail::require_same_cover(*a.cover, *b.cover);
  Regime ra = classify(a), rb = classify(b);
  auto promises = detail::merge_promises(
      detail::merge_promises(a.promises, b.promises), opts.promises);
  if (ra == Regime::finite || rb == Regime::finite) {
    const MuName& fin = ra == Regime::finite ? a : b;
    const MuName& oth = ra == Regime::finite ? b : a;
    return detail::finite_product(
        fin, oth,
        [](const RingSet& x, const RingSet& y) {
          return ring_intersection(x, y);
        },
        std::move(promises));
  }
  auto ms = std::make_shared<std::vector<int>>();
  long long budget = opts.step_budget;
  auto gen = [a, b, ms, budget](int n) {
    detail::BudgetCounter counter{
        0, budget, "intersection search, term " + std::to_string(n)};
    int m = std::max(ms->empty() ? 1 : ms->back(), n + 1);
    for (;; ++m) {
      const RingSet& am = a.term(m);
      const RingSet& bm = b.term(m);
      RingSet cand = ring_intersection(am, bm);
      counter.charge(1 + static_cast<long long>(am.component_count()) +
                     static_cast<long long>(bm.component_count()));
      if (exact_measure(cand) >= Rat::pow2(n)) {
        ms->push_back(m);
        return cand;
      }
    }
  };
  return MuName{a.cover, Regime::infinite,
                std::make_shared<MemoStream<RingSet>>(gen), nullptr,
                std::move(promises)};
}

/// Difference. Total when the left input is finite-regime; otherwise it
/// searches for μ((A_m - B_m) ∩ C_m) >= 2^n, which finishes for every n
/// exactly when A - B has infinite measure. The C_m restriction keeps the
/// emitted terms inside the cover levels their index promises, which the
/// prefix conditions need when the right input is infinite.
inline MuName mu_difference(const MuName& a, const MuName& b,
                            const OpOptions& opts = {}) {
  detail::require_same_cover(*a.cover, *b.cover);
  Regime ra = classify(a);
  auto promises = detail::merge_promises(
      detail::merge_promises(a.promises, b.promises), opts.promises);
  if (ra == Regime::finite) {
    return detail::finite_product(
        a, b,
        [](const RingSet& x, const RingSet& y) {
          return ring_difference(x, y);
        },
        std::move(promises));
  }
  auto cover = a.cover;
  auto ms = std::make_shared<std::vector<int>>();
  long long budget = opts.step_budget;
  auto gen = [a, b, cover, ms, budget](int n) {
    detail::BudgetCounter counter{
        0, budget, "difference search, term " + std::to_string(n)};
    int m = std::max(ms->empty() ? 1 : ms->back(), n + 1);
    for (;; ++m) {
      const RingSet& am = a.term(m);
      const RingSet& bm = b.term(m);
      RingSet cand =
          ring_intersection(ring_difference(am, bm), cover->level(m));
      counter.charge(1 + static_cast<long long>(am.component_count()) +
                     static_cast<long long>(bm.component_count()));
      if (exact_measure(cand) >= Rat::pow2(n)) {
        ms->push_back(m);
        return cand;
      }
    }
  };
  return MuName{cover, Regime::infinite,
                std::make_shared<MemoStream<RingSet>>(gen), nullptr,
                std::move(promises)};
}

/// Complement. For a finite-regime input the output terms C_{m_n} - A_{j_n}
/// are total: m_n is the least level (not below max(n, m_{n-1})) with
/// μ(C_{m_n}) >= 2^n + μ(A_1) + 1 and j_n = max(m_n, n+1). For an infinite
/// input the promise is that the complement also has infinite measure; the
/// search for μ(C_m - A_j) >= 2^n diverges otherwise (complements of
/// almost-everything are not reachable from these prefixes).
inline MuName mu_complement(const MuName& a, const OpOptions& opts = {}) {
  Regime ra = classify(a);
  auto promises = detail::merge_promises(a.promises, opts.promises);
  auto cover = a.cover;
  auto ms = std::make_shared<std::vector<int>>();
  if (ra == Regime::finite) {
    auto gen = [a, cover, ms](int n) {
      Rat need = Rat::pow2(n) + exact_measure(a.term(1)) + Rat(1);
      int m = std::max(ms->empty() ? 1 : ms->back(), n);
      while (exact_measure(cover->level(m)) < need) ++m;
      ms->push_back(m);
      int j = std::max(m, n + 1);
      return ring_difference(cover->level(m), a.term(j));
    };
    return MuName{cover, Regime::infinite,
                  std::make_shared<MemoStream<RingSet>>(gen), nullptr,
                  std::move(promises)};
  }
  long long budget = opts.step_budget;
  auto gen = [a, cover, ms, budget](int n) {
    detail::BudgetCounter counter{
        0, budget, "complement search, term " + std::to_string(n)};
    int m = std::max(ms->empty() ? 1 : ms->back(), n);
    for (;; ++m) {
      int j = std::max(m, n + 1);
      const RingSet& aj = a.term(j);
      RingSet cand = ring_difference(cover->level(m), aj);
      counter.charge(1 + static_cast<long long>(aj.component_count()));
      if (exact_measure(cand) >= Rat::pow2(n)) {
        ms->push_back(m);
        return cand;
      }
    }
  };
  return MuName{cover, Regime::infinite,
                std::make_shared<MemoStream<RingSet>>(gen), nullptr,
                std::move(promises)};
}

}  // namespace muset
