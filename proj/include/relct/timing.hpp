#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "relct/common.hpp"

namespace relct {

enum class Component { MetaData = 0, PositiveCt = 1, NegativeCt = 2 };

/// Exclusive wall-clock attribution to the three counting components. Scopes
/// nest; time is always charged to the innermost open scope, so an inner
/// scope pauses its parent.
class ComponentClock {
 public:
  using clock = std::chrono::steady_clock;

  class Scope {
   public:
    Scope(ComponentClock* owner, Component c) : owner_(owner) {
      if (owner_) owner_->push(c);
    }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
    ~Scope() {
      if (owner_) owner_->pop();
    }

   private:
    ComponentClock* owner_;
  };

  double ms(Component c) const {
    return std::chrono::duration<double, std::milli>(spent_[static_cast<std::size_t>(c)]).count();
  }
  double total_ms() const { return ms(Component::MetaData) + ms(Component::PositiveCt) + ms(Component::NegativeCt); }

 private:
  void push(Component c) {
    auto now = clock::now();
    if (!stack_.empty()) spent_[static_cast<std::size_t>(stack_.back())] += now - last_;
    stack_.push_back(c);
    last_ = now;
  }
  void pop() {
    auto now = clock::now();
    spent_[static_cast<std::size_t>(stack_.back())] += now - last_;
    stack_.pop_back();
    last_ = now;
  }

  std::array<clock::duration, 3> spent_{};
  std::vector<Component> stack_;
  clock::time_point last_{};
};

inline ComponentClock::Scope charge(ComponentClock* clock, Component c) { return {clock, c}; }

/// Optional wall-clock deadline for a run.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : at_(std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget)) {}

  bool expired() const { return at_ && std::chrono::steady_clock::now() > *at_; }
  void check(const char* where) const {
    if (expired()) throw BudgetExceeded(std::string("time budget exhausted during ") + where);
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace relct
