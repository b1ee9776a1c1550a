#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace muset {

// Malformed textual input. `pos` is a 0-based byte offset into the input.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t pos, const std::string& what)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
        pos_(pos) {}

  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Caller broke a precondition (mismatched spaces, missing promise flag, ...).
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A semi-decision search exceeded its configured budget. The search would
// otherwise keep running; outside the promise domain it never finishes.
class step_budget_exhausted : public std::runtime_error {
 public:
  step_budget_exhausted(std::string context, long long budget)
      : std::runtime_error("step budget (" + std::to_string(budget) +
                           ") exhausted in " + context),
        context_(std::move(context)),
        budget_(budget) {}

  const std::string& context() const { return context_; }
  long long budget() const { return budget_; }

 private:
  std::string context_;
  long long budget_;
};

// The cover construction scanned past its iteration guard. This can only
// happen for a space whose total measure is not actually infinite.
class cover_assumption_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace muset
