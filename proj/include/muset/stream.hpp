#pragma once

#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace muset {

/// Pull-based stream with a memoized prefix, indexed from 1. Each term is
/// computed exactly once; terms are filled in order, so a generator may read
/// earlier terms of its own stream (the mutex is recursive for that reason).
/// References stay valid across later pulls.
template <typename T>
class MemoStream {
 public:
  explicit MemoStream(std::function<T(int)> gen) : gen_(std::move(gen)) {}

  const T& at(int n) const {
    if (n < 1) throw std::out_of_range("stream index starts at 1");
    std::lock_guard<std::recursive_mutex> lock(mu_);
    while (static_cast<int>(memo_.size()) < n)
      memo_.push_back(gen_(static_cast<int>(memo_.size()) + 1));
    return memo_[static_cast<std::size_t>(n - 1)];
  }

  int materialized() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return static_cast<int>(memo_.size());
  }

 private:
  std::function<T(int)> gen_;
  mutable std::recursive_mutex mu_;
  mutable std::deque<T> memo_;
};

}  // namespace muset
