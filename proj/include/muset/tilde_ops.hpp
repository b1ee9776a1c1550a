#pragma once

#include <map>
#include <memory>

#include "muset/mu_ops.hpp"
#include "muset/names.hpp"
#include "muset/real_stream.hpp"

namespace muset {

/// Value of the induced probability measure on a tilde-named set, as a
/// shrinking-interval stream: term n is [μ̃(A_n) - 2^-n, μ̃(A_n) + 2^-n].
inline RealStream mu_tilde_of(const TildeName& name) {
  auto terms = std::make_shared<MemoStream<RealTerm>>([name](int n) {
    Rat v = mu_tilde_ring(*name.cover, name.term(n));
    Rat eps = Rat::pow2(-n);
    return RealTerm{v - eps, v + eps};
  });
  return RealStream(RealStream::Kind::interval, std::move(terms));
}

/// Interval stream for μ(A ∩ C_level). Approximates μ(A ∩ D_k) by
/// μ(A_m ∩ D_k), whose error is at most 2^(k-m) μ(D_k); summing over
/// k <= level gives the exact error bound 2^-m * W with
/// W = sum 2^k μ(D_k), and the partial sums collapse to μ(A_m ∩ C_level).
inline RealStream mu_restricted(const TildeName& name, int level) {
  if (level < 0) throw std::out_of_range("cover level must be >= 0");
  if (level == 0) {
    auto terms = std::make_shared<MemoStream<RealTerm>>(
        [](int) { return RealTerm{Rat(0), Rat(0)}; });
    return RealStream(RealStream::Kind::interval, std::move(terms));
  }
  auto cover = name.cover;
  Rat weight(0);
  for (int k = 1; k <= level; ++k)
    weight += Rat::pow2(k) * cover->partition_measure(k);
  long shift = ceil_log2(weight);
  auto terms = std::make_shared<MemoStream<RealTerm>>(
      [name, cover, level, weight, shift](int t) {
        int m = static_cast<int>(shift) + t;
        Rat err = Rat::pow2(-m) * weight;
        Rat v = exact_measure(
            ring_intersection(name.term(m), cover->level(level)));
        return RealTerm{v - err, v + err};
      });
  return RealStream(RealStream::Kind::interval, std::move(terms));
}

/// Monotone lower bounds converging to μ(A) from below: term t is the best
/// lower end of mu_restricted(name, n) at precision step t over n <= t,
/// never allowed to decrease. μ(A ∩ C_n) grows to μ(A), so the stream is
/// unbounded exactly for infinite-measure sets.
inline RealStream mu_lower(const TildeName& name) {
  auto cache = std::make_shared<std::map<int, RealStream>>();
  auto prev = std::make_shared<std::optional<Rat>>();
  auto gen = [name, cache, prev](int t) {
    Rat best(0);
    bool have = false;
    for (int n = 1; n <= t; ++n) {
      auto it = cache->find(n);
      if (it == cache->end())
        it = cache->emplace(n, mu_restricted(name, n)).first;
      Rat lo = it->second.at(t).lo;
      if (!have || best < lo) best = lo;
      have = true;
    }
    if (*prev && best < **prev) best = **prev;
    *prev = best;
    return RealTerm{best, std::nullopt};
  };
  return RealStream(RealStream::Kind::lower,
                    std::make_shared<MemoStream<RealTerm>>(gen));
}

/// Every mu-name is a tilde-name after a two-step shift: the induced
/// measure weighs a set at most a quarter of its plain measure inside each
/// partition piece, and beyond level K only the geometric tail 2^-K
/// remains, so μ̃(A_{n+2} Δ A_{m+2}) < 2^-n in both regimes.
inline TildeName reduce_mu_to_tilde(const MuName& a) {
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [a](int n) { return a.term(n + 2); });
  return TildeName{a.cover, std::move(terms), a.provenance, a.promises};
}

namespace detail {

template <typename Op>
inline TildeName tilde_binary(const TildeName& a, const TildeName& b, Op op) {
  require_same_cover(*a.cover, *b.cover);
  auto terms = std::make_shared<MemoStream<RingSet>>(
      [a, b, op](int n) { return op(a.term(n + 1), b.term(n + 1)); });
  return TildeName{a.cover, std::move(terms), nullptr,
                   merge_promises(a.promises, b.promises)};
}

}  // namespace detail

// The three binary set operations are total here: applying them termwise at
// index n+1 works because (X ⋄ Y) Δ (X' ⋄ Y') ⊆ (X Δ X') ∪ (Y Δ Y') for
// union, intersection and difference alike.

inline TildeName tilde_union(const TildeName& a, const TildeName& b) {
  return detail::tilde_binary(a, b, [](const RingSet& x, const RingSet& y) {
    return ring_union(x, y);
  });
}

inline TildeName tilde_intersection(const TildeName& a, const TildeName& b) {
  return detail::tilde_binary(a, b, [](const RingSet& x, const RingSet& y) {
    return ring_intersection(x, y);
  });
}

inline TildeName tilde_difference(const TildeName& a, const TildeName& b) {
  return detail::tilde_binary(a, b, [](const RingSet& x, const RingSet& y) {
    return ring_difference(x, y);
  });
}

/// Complement is total under the induced measure: term n is
/// C_{n+2} - A_{n+2}, good because the mass outside C_m is exactly 2^-m.
inline TildeName tilde_complement(const TildeName& a) {
  auto cover = a.cover;
  auto terms = std::make_shared<MemoStream<RingSet>>([a, cover](int n) {
    return ring_difference(cover->level(n + 2), a.term(n + 2));
  });
  return TildeName{cover, std::move(terms), nullptr, a.promises};
}

}  // namespace muset
