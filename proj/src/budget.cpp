#include "fblow/budget.hpp"

#include <cstdlib>
#include <string>

#include "fblow/errors.hpp"

namespace fblow {

namespace {

thread_local const Budget* tl_active = nullptr;

const Budget& process_default() {
  static const Budget b = Budget::from_env();
  return b;
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  if (const char* s = std::getenv("FBLOW_BUDGET_SECONDS"); s != nullptr && *s != '\0') {
    char* end = nullptr;
    double secs = std::strtod(s, &end);
    if (end != s && secs > 0) b = b.with_seconds(secs);
  }
  return b;
}

Budget Budget::with_seconds(double seconds) const {
  Budget b = *this;
  b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  return b;
}

void Budget::check_basis(std::size_t size) const {
  if (size > max_basis) throw BudgetExceeded("basis size exceeds " + std::to_string(max_basis));
}

void Budget::check_degree(uint64_t degree) const {
  if (degree > max_degree) throw BudgetExceeded("degree exceeds " + std::to_string(max_degree));
}

void Budget::check_time() const {
  if (deadline && Clock::now() > *deadline) throw BudgetExceeded("wall-clock budget exhausted");
}

const Budget& active_budget() { return tl_active != nullptr ? *tl_active : process_default(); }

BudgetScope::BudgetScope(const Budget& b) : previous_(tl_active), budget_(b) { tl_active = &budget_; }

BudgetScope::~BudgetScope() { tl_active = previous_; }

}  // namespace fblow
