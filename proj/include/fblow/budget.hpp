#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace fblow {

/// Resource limits for Groebner computations.  Exceeding any of them throws
/// BudgetExceeded.
struct Budget {
  using Clock = std::chrono::steady_clock;

  std::size_t max_basis = 20000;
  uint64_t max_degree = 200;
  std::optional<Clock::time_point> deadline;

  /// Defaults, with a deadline from FBLOW_BUDGET_SECONDS if set.
  static Budget from_env();
  Budget with_seconds(double seconds) const;

  void check_basis(std::size_t size) const;
  void check_degree(uint64_t degree) const;
  void check_time() const;
};

/// The budget in force on this thread.
const Budget& active_budget();

/// Installs a budget on the current thread for its lifetime.  Worker threads
/// start from the process default, so parallel code re-installs the caller's.
class BudgetScope {
 public:
  explicit BudgetScope(const Budget& b);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  const Budget* previous_;
  Budget budget_;
};

}  // namespace fblow
