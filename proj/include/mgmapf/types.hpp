#pragma once

#include <climits>
#include <stdexcept>
#include <string>

namespace mgmapf {

using VertexId = int;
using AgentId = int;
using Time = int;

// Sentinel for the open upper end of a time interval. Large enough that
// +1 arithmetic never overflows, and compares greater than any real step.
constexpr Time kTimeInf = INT_MAX / 4;

// Sentinel cost for "no path exists". Deliberately not a large finite
// number so it can never silently flow into cost arithmetic.
constexpr int kUnreachable = -1;

inline bool is_reachable(int cost) { return cost >= 0; }

// Closed interval of time steps [lo, hi]; hi == kTimeInf means unbounded.
struct TimeInterval {
  Time lo = 0;
  Time hi = kTimeInf;

  bool contains(Time t) const { return lo <= t && t <= hi; }
  bool unbounded() const { return hi >= kTimeInf; }
  bool operator==(const TimeInterval& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const TimeInterval& o) const { return !(*this == o); }
};

// Bad input text (map or instance files). Message carries the line/field.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally valid input that breaks an instance-level rule.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken solver invariant; never a user error.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mgmapf
