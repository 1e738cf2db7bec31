#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace schedsim {

// Simulated time is counted in integer ticks; one tick is one microsecond,
// so a millisecond is 1000 ticks. All durations are non-negative and any
// subtraction that would underflow throws rather than wrapping.
using ticks_t = std::uint64_t;
using signed_ticks_t = std::int64_t;

struct TimeDelta {
  ticks_t v = 0;

  constexpr ticks_t count() const { return v; }
  friend constexpr auto operator<=>(TimeDelta, TimeDelta) = default;

  constexpr TimeDelta& operator+=(TimeDelta o) {
    v += o.v;
    return *this;
  }
  constexpr TimeDelta& operator-=(TimeDelta o) {
    if (o.v > v) throw std::logic_error("TimeDelta subtraction underflow");
    v -= o.v;
    return *this;
  }
};

constexpr TimeDelta operator+(TimeDelta a, TimeDelta b) { return TimeDelta{a.v + b.v}; }

constexpr TimeDelta operator-(TimeDelta a, TimeDelta b) {
  a -= b;
  return a;
}

constexpr TimeDelta operator*(TimeDelta a, ticks_t k) { return TimeDelta{a.v * k}; }
constexpr TimeDelta operator*(ticks_t k, TimeDelta a) { return a * k; }

struct TimePoint {
  ticks_t v = 0;

  constexpr ticks_t ticks() const { return v; }
  friend constexpr auto operator<=>(TimePoint, TimePoint) = default;
};

constexpr TimePoint operator+(TimePoint t, TimeDelta d) { return TimePoint{t.v + d.v}; }

// Instants subtract to a duration; asking for a negative duration is a bug
// at the call site, not a representable value.
constexpr TimeDelta operator-(TimePoint a, TimePoint b) {
  if (b.v > a.v) throw std::logic_error("TimePoint subtraction underflow");
  return TimeDelta{a.v - b.v};
}

constexpr TimeDelta ticks(ticks_t n) { return TimeDelta{n}; }
constexpr TimeDelta ms(ticks_t n) { return TimeDelta{n * 1000}; }
constexpr TimePoint at_tick(ticks_t n) { return TimePoint{n}; }
constexpr TimePoint at_ms(ticks_t n) { return TimePoint{n * 1000}; }

}  // namespace schedsim
