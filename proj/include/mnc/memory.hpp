// Scalar associative memory with identity keys and temperature-scaled
// softmax addressing.
//
// An address q in [0, S-1] is mapped to a key vector by linear interpolation
// between adjacent basis vectors. Attention is softmax(key / tau). With the
// default tau = 1e-4 the off-slot logits sit 1e4 below the peak after
// max-subtraction, so exp() underflows to exactly 0.0 and integer addresses
// behave as hard slot accesses, bit for bit.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mnc/errors.hpp"

namespace mnc {

struct MemoryConfig {
  std::size_t capacity = 1;
  double temperature = 1e-4;
  double write_strength = 1.0;

  void validate() const {
    if (capacity < 1) throw PreconditionError("memory capacity must be >= 1");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
      throw PreconditionError("temperature must be a positive finite real");
    if (!(write_strength > 0.0 && write_strength <= 1.0))
      throw PreconditionError("write strength must lie in (0, 1]");
  }
};

/// Value vector V with V[a] = M(a).
struct MemoryState {
  std::vector<double> values;

  MemoryState() = default;
  explicit MemoryState(std::size_t size, double fill = 0.0) : values(size, fill) {}
  explicit MemoryState(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t a) { return values[a]; }
  double operator[](std::size_t a) const { return values[a]; }

  bool operator==(const MemoryState&) const = default;
};

using AttentionWeights = std::vector<double>;

namespace detail {

inline void check_address(double q, std::size_t capacity) {
  if (!std::isfinite(q) || q < 0.0 || q > static_cast<double>(capacity - 1)) {
    throw AddressingError("address " + std::to_string(q) + " outside [0, " +
                          std::to_string(capacity - 1) + "]");
  }
}

}  // namespace detail

inline std::vector<double> key_vector(double q, std::size_t capacity) {
  detail::check_address(q, capacity);
  std::vector<double> key(capacity, 0.0);
  const double floor_q = std::floor(q);
  const auto lo = static_cast<std::size_t>(floor_q);
  if (floor_q == q) {
    key[lo] = 1.0;
  } else {
    key[lo] = (floor_q + 1.0) - q;
    key[lo + 1] = q - floor_q;
  }
  return key;
}

inline AttentionWeights attention(double q, const MemoryConfig& cfg) {
  AttentionWeights w = key_vector(q, cfg.capacity);
  double peak = -INFINITY;
  for (double& x : w) {
    x /= cfg.temperature;
    peak = std::max(peak, x);
  }
  double total = 0.0;
  for (double& x : w) {
    x = std::exp(x - peak);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

inline double read(const MemoryState& m, double q, const MemoryConfig& cfg) {
  if (m.size() != cfg.capacity)
    throw StructuralError("memory size does not match configured capacity");
  const AttentionWeights w = attention(q, cfg);
  double acc = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a] != 0.0) acc += w[a] * m[a];
  }
  return acc;
}

/// In-place convex write. Cells with zero effective weight are left
/// untouched so that the frame property holds bitwise.
inline void write_inplace(MemoryState& m, double q, double v, const MemoryConfig& cfg) {
  if (!std::isfinite(v)) throw PreconditionError("write value must be finite");
  if (m.size() != cfg.capacity)
    throw StructuralError("memory size does not match configured capacity");
  const AttentionWeights w = attention(q, cfg);
  for (std::size_t a = 0; a < w.size(); ++a) {
    const double strength = cfg.write_strength * w[a];
    if (strength == 0.0) continue;
    m[a] = strength * v + (1.0 - strength) * m[a];
  }
}

inline MemoryState write(MemoryState m, double q, double v, const MemoryConfig& cfg) {
  write_inplace(m, q, v, cfg);
  return m;
}

inline void soft_delete_inplace(MemoryState& m, double q, const MemoryConfig& cfg) {
  if (m.size() != cfg.capacity)
    throw StructuralError("memory size does not match configured capacity");
  const AttentionWeights w = attention(q, cfg);
  for (std::size_t a = 0; a < w.size(); ++a) {
    const double strength = cfg.write_strength * w[a];
    if (strength == 0.0) continue;
    m[a] = (1.0 - strength) * m[a];
  }
}

inline MemoryState soft_delete(MemoryState m, double q, const MemoryConfig& cfg) {
  soft_delete_inplace(m, q, cfg);
  return m;
}

/// Direct cell access at an integer address; the tau -> 0 limit of read().
inline double hard_read(const MemoryState& m, std::size_t a) {
  if (a >= m.size()) throw AddressingError("control address " + std::to_string(a) + " out of range");
  return m[a];
}

}  // namespace mnc
