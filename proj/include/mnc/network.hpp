// Exact ReLU MLP construction.
//
// Every map the controllers and modules need (affine maps, min/max, integer
// indicators, gate inhibition, finite tables) is built here with explicit
// weights. Nothing is trained.
//
// Evaluation order is part of the contract: each unit computes
//   acc = bias; for each column c in ascending order with W(r,c) != 0:
//     acc += W(r,c) * h[c]
// The gate wrap relies on this: its bias -B meets the +B*g term first, so an
// active gate contributes exactly 0 before the core output is added.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mnc/errors.hpp"
#include "mnc/text.hpp"

namespace mnc {

inline constexpr double kDefaultGateBound = 1e6;

enum class Activation { identity, relu };

inline const char* to_string(Activation a) { return a == Activation::relu ? "relu" : "identity"; }

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols) throw StructuralError("ragged matrix literal");
      data.insert(data.end(), row.begin(), row.end());
    }
  }

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  bool operator==(const Matrix&) const = default;
};

struct Layer {
  Matrix weights;
  std::vector<double> bias;
  Activation activation = Activation::identity;

  std::size_t in_dim() const { return weights.cols; }
  std::size_t out_dim() const { return weights.rows; }

  bool operator==(const Layer&) const = default;
};

class MLPNetwork {
 public:
  MLPNetwork() = default;

  MLPNetwork(std::size_t input_dim, std::vector<Layer> layers)
      : input_dim_(input_dim), layers_(std::move(layers)) {
    if (input_dim_ == 0) throw StructuralError("network input width must be positive");
    if (layers_.empty()) throw StructuralError("network needs at least one layer");
    std::size_t width = input_dim_;
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Layer& l = layers_[k];
      if (l.weights.cols != width)
        throw StructuralError("layer " + std::to_string(k) + " expects " +
                              std::to_string(l.weights.cols) + " inputs, previous width is " +
                              std::to_string(width));
      if (l.bias.size() != l.weights.rows || l.weights.data.size() != l.weights.rows * l.weights.cols)
        throw StructuralError("layer " + std::to_string(k) + " has inconsistent shapes");
      if (l.weights.rows == 0) throw StructuralError("layer " + std::to_string(k) + " is empty");
      for (double w : l.weights.data)
        if (!std::isfinite(w)) throw StructuralError("non-finite weight");
      for (double b : l.bias)
        if (!std::isfinite(b)) throw StructuralError("non-finite bias");
      width = l.weights.rows;
    }
    build_sparse();
  }

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return layers_.empty() ? 0 : layers_.back().out_dim(); }
  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }

  std::size_t hidden_units() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k + 1 < layers_.size(); ++k) n += layers_[k].out_dim();
    return n;
  }

  std::size_t nonzero_weights() const {
    std::size_t n = 0;
    for (const auto& s : sparse_) n += s.values.size();
    return n;
  }

  std::vector<double> evaluate(std::span<const double> x) const {
    if (x.size() != input_dim_)
      throw StructuralError("network expects " + std::to_string(input_dim_) + " inputs, got " +
                            std::to_string(x.size()));
    std::vector<double> h(x.begin(), x.end());
    std::vector<double> next;
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const Layer& l = layers_[k];
      const Sparse& s = sparse_[k];
      next.assign(l.out_dim(), 0.0);
      for (std::size_t r = 0; r < l.out_dim(); ++r) {
        double acc = l.bias[r];
        for (std::size_t e = s.row_start[r]; e < s.row_start[r + 1]; ++e)
          acc += s.values[e] * h[s.columns[e]];
        next[r] = (l.activation == Activation::relu && !(acc > 0.0)) ? 0.0 : acc;
      }
      h.swap(next);
    }
    return h;
  }

  std::vector<double> evaluate(std::initializer_list<double> x) const {
    return evaluate(std::span<const double>(x.begin(), x.size()));
  }

  bool operator==(const MLPNetwork& o) const { return input_dim_ == o.input_dim_ && layers_ == o.layers_; }

 private:
  struct Sparse {
    std::vector<std::size_t> row_start;
    std::vector<std::size_t> columns;
    std::vector<double> values;
  };

  void build_sparse() {
    sparse_.clear();
    for (const Layer& l : layers_) {
      Sparse s;
      s.row_start.push_back(0);
      for (std::size_t r = 0; r < l.weights.rows; ++r) {
        for (std::size_t c = 0; c < l.weights.cols; ++c) {
          if (const double w = l.weights(r, c); w != 0.0) {
            s.columns.push_back(c);
            s.values.push_back(w);
          }
        }
        s.row_start.push_back(s.columns.size());
      }
      sparse_.push_back(std::move(s));
    }
  }

  std::size_t input_dim_ = 0;
  std::vector<Layer> layers_;
  std::vector<Sparse> sparse_;
};

// ---------------------------------------------------------------------------
// Primitive builders

inline MLPNetwork build_affine(Matrix weights, std::vector<double> bias) {
  const std::size_t in = weights.cols;
  return MLPNetwork(in, {Layer{std::move(weights), std::move(bias), Activation::identity}});
}

inline MLPNetwork build_identity(std::size_t n) {
  return build_affine(Matrix::identity(n), std::vector<double>(n, 0.0));
}

/// Constant map from n ignored inputs.
inline MLPNetwork build_constant(std::size_t n_inputs, std::vector<double> values) {
  const std::size_t m = values.size();
  return build_affine(Matrix(m, n_inputs), std::move(values));
}

namespace detail {

// Hidden units relu(s), relu(-s), relu(d), relu(-d) with s = x1 + x2 and
// d = x1 - x2; |d| = relu(d) + relu(-d). min/max differ only in the sign of
// the |d| half.
inline MLPNetwork build_extremum2(double abs_sign) {
  Matrix hidden{{1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  Matrix out{{0.5, -0.5, 0.5 * abs_sign, 0.5 * abs_sign}};
  return MLPNetwork(2, {Layer{std::move(hidden), {0, 0, 0, 0}, Activation::relu},
                        Layer{std::move(out), {0}, Activation::identity}});
}

}  // namespace detail

/// min(x1, x2) = (x1 + x2 - |x1 - x2|) / 2.
inline MLPNetwork build_min2() { return detail::build_extremum2(-1.0); }

/// max(x1, x2) = (x1 + x2 + |x1 - x2|) / 2.
inline MLPNetwork build_max2() { return detail::build_extremum2(+1.0); }

namespace detail {

// Selects x1 or x2 bitwise instead of computing (s -/+ |d|) / 2, so the
// result is exact on all doubles with |x| <= 2^52. t = [x1 < x2] comes from
// relu(x2 - x1) driven to exactly 1 by clip stages y -> min(1, K y); with
// K = 2^52 per stage, 22 stages lift the smallest subnormal to 1. Units in
// every layer are ordered (y, x1+, x1-, x2+, x2-) so the gate term meets
// the -B bias before the data terms.
inline MLPNetwork build_select2(bool take_min) {
  constexpr double kB = 9007199254740992.0;  // 2^53
  constexpr double kScale = 4503599627370496.0;  // 2^52
  constexpr int kStages = 22;
  std::vector<Layer> layers;
  // (y, x1+, x1-, x2+, x2-) from (x1, x2)
  layers.push_back(Layer{Matrix{{-1, 1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0, 0, 0, 0, 0}, Activation::relu});
  for (int s = 0; s < kStages; ++s) {
    const double k = s == 0 ? 1.0 : kScale;
    // (p, q, x1+, x1-, x2+, x2-) from (y, ...)
    Matrix up(6, 5);
    up(0, 0) = k;
    up(1, 0) = k;
    for (std::size_t j = 0; j < 4; ++j) up(2 + j, 1 + j) = 1.0;
    layers.push_back(Layer{std::move(up), {0, -1, 0, 0, 0, 0}, Activation::relu});
    // (y, x1+, x1-, x2+, x2-) from (p, q, ...)
    Matrix down(5, 6);
    down(0, 0) = 1.0;
    down(0, 1) = -1.0;
    for (std::size_t j = 0; j < 4; ++j) down(1 + j, 2 + j) = 1.0;
    layers.push_back(Layer{std::move(down), {0, 0, 0, 0, 0}, Activation::relu});
  }
  // t = 1 picks x1 for min (x2 for max); t = 0 picks the other.
  const double first = take_min ? 1.0 : 0.0;
  Matrix pick(4, 5);
  std::vector<double> bias(4);
  for (std::size_t side = 0; side < 2; ++side) {
    const bool when_t = (side == 0) == (first == 1.0);
    for (std::size_t sign = 0; sign < 2; ++sign) {
      const std::size_t row = 2 * side + sign;
      const double sg = sign == 0 ? 1.0 : -1.0;
      pick(row, 0) = when_t ? kB : -kB;
      bias[row] = when_t ? -kB : 0.0;
      pick(row, 1 + 2 * side) = sg;
      pick(row, 2 + 2 * side) = -sg;
    }
  }
  layers.push_back(Layer{std::move(pick), std::move(bias), Activation::relu});
  layers.push_back(Layer{Matrix{{1, -1, 1, -1}}, {0}, Activation::identity});
  return MLPNetwork(2, std::move(layers));
}

}  // namespace detail

/// min(x1, x2) as a comparator that returns one of its inputs bitwise.
inline MLPNetwork build_select_min2() { return detail::build_select2(true); }

/// max(x1, x2) as a comparator that returns one of its inputs bitwise.
inline MLPNetwork build_select_max2() { return detail::build_select2(false); }

/// relu(x - a + 1) - relu(x - a): 1 on integers >= a, 0 on integers <= a - 1.
inline MLPNetwork build_indicator_ge(std::int64_t a) {
  const double ad = static_cast<double>(a);
  Matrix hidden{{1}, {1}};
  Matrix out{{1, -1}};
  return MLPNetwork(1, {Layer{std::move(hidden), {1.0 - ad, -ad}, Activation::relu},
                        Layer{std::move(out), {0}, Activation::identity}});
}

/// indicator_ge(a) - indicator_ge(a + 1): 1 iff x == a on integers.
inline MLPNetwork build_equals(std::int64_t a) {
  const double ad = static_cast<double>(a);
  Matrix hidden{{1}, {1}, {1}, {1}};
  Matrix out{{1, -1, -1, 1}};
  return MLPNetwork(1, {Layer{std::move(hidden), {1.0 - ad, -ad, -ad, -ad - 1.0}, Activation::relu},
                        Layer{std::move(out), {0}, Activation::identity}});
}

// ---------------------------------------------------------------------------
// Structural combinators

/// Rewrites a network so every hidden layer is relu and the output layer is
/// affine. Each non-final identity layer z is split into interleaved units
/// relu(z), relu(-z) and the next layer's weights are doubled accordingly, so
/// exactly one term of every pair is nonzero and evaluation is unchanged bit
/// for bit.
inline MLPNetwork to_relu_canonical(const MLPNetwork& net) {
  std::vector<Layer> layers = net.layers();
  std::vector<Layer> out;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    Layer l = layers[k];
    const bool last = k + 1 == layers.size();
    if (last) {
      const bool needs_affine_tail = l.activation == Activation::relu;
      const std::size_t m = l.out_dim();
      out.push_back(std::move(l));
      if (needs_affine_tail)
        out.push_back(Layer{Matrix::identity(m), std::vector<double>(m, 0.0), Activation::identity});
      break;
    }
    if (l.activation == Activation::relu) {
      out.push_back(std::move(l));
      continue;
    }
    const std::size_t m = l.out_dim();
    Layer split{Matrix(2 * m, l.in_dim()), std::vector<double>(2 * m), Activation::relu};
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < l.in_dim(); ++c) {
        split.weights(2 * r, c) = l.weights(r, c);
        split.weights(2 * r + 1, c) = -l.weights(r, c);
      }
      split.bias[2 * r] = l.bias[r];
      split.bias[2 * r + 1] = -l.bias[r];
    }
    Layer& next = layers[k + 1];
    Matrix widened(next.out_dim(), 2 * m);
    for (std::size_t r = 0; r < next.out_dim(); ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        widened(r, 2 * c) = next.weights(r, c);
        widened(r, 2 * c + 1) = -next.weights(r, c);
      }
    }
    next.weights = std::move(widened);
    out.push_back(std::move(split));
  }
  return MLPNetwork(net.input_dim(), std::move(out));
}

namespace detail {

// Adds one layer of depth to a canonical network without changing its
// values: the affine output z becomes relu(z), relu(-z) followed by their
// difference.
inline MLPNetwork deepen_canonical(const MLPNetwork& net) {
  std::vector<Layer> layers = net.layers();
  Layer last = layers.back();
  layers.pop_back();
  const std::size_t m = last.out_dim();
  Layer split{Matrix(2 * m, last.in_dim()), std::vector<double>(2 * m), Activation::relu};
  Layer merge{Matrix(m, 2 * m), std::vector<double>(m, 0.0), Activation::identity};
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < last.in_dim(); ++c) {
      split.weights(2 * r, c) = last.weights(r, c);
      split.weights(2 * r + 1, c) = -last.weights(r, c);
    }
    split.bias[2 * r] = last.bias[r];
    split.bias[2 * r + 1] = -last.bias[r];
    merge.weights(r, 2 * r) = 1.0;
    merge.weights(r, 2 * r + 1) = -1.0;
  }
  layers.push_back(std::move(split));
  layers.push_back(std::move(merge));
  return MLPNetwork(net.input_dim(), std::move(layers));
}

}  // namespace detail

/// A component of a parallel stack together with the positions of the shared
/// input vector it consumes. Positions must be strictly increasing so the
/// component's accumulation order is preserved.
struct StackItem {
  MLPNetwork net;
  std::vector<std::size_t> inputs;
};

inline MLPNetwork stack_parallel(std::size_t input_dim, const std::vector<StackItem>& items) {
  if (items.empty()) throw StructuralError("stack_parallel needs at least one network");
  std::vector<MLPNetwork> nets;
  std::size_t depth = 0;
  for (const StackItem& it : items) {
    if (it.inputs.size() != it.net.input_dim())
      throw StructuralError("input selection width does not match network input width");
    for (std::size_t i = 0; i < it.inputs.size(); ++i) {
      if (it.inputs[i] >= input_dim) throw StructuralError("input selection out of range");
      if (i > 0 && it.inputs[i] <= it.inputs[i - 1])
        throw StructuralError("input selections must be strictly increasing");
    }
    nets.push_back(to_relu_canonical(it.net));
    depth = std::max(depth, nets.back().depth());
  }
  for (auto& n : nets)
    while (n.depth() < depth) n = detail::deepen_canonical(n);

  std::vector<Layer> layers;
  for (std::size_t k = 0; k < depth; ++k) {
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (const auto& n : nets) {
      rows += n.layers()[k].out_dim();
      cols += n.layers()[k].in_dim();
    }
    if (k == 0) cols = input_dim;
    Layer l{Matrix(rows, cols), std::vector<double>(rows), nets[0].layers()[k].activation};
    std::size_t row0 = 0;
    std::size_t col0 = 0;
    for (std::size_t j = 0; j < nets.size(); ++j) {
      const Layer& src = nets[j].layers()[k];
      for (std::size_t r = 0; r < src.out_dim(); ++r) {
        for (std::size_t c = 0; c < src.in_dim(); ++c) {
          const std::size_t dst_col = k == 0 ? items[j].inputs[c] : col0 + c;
          l.weights(row0 + r, dst_col) = src.weights(r, c);
        }
        l.bias[row0 + r] = src.bias[r];
      }
      row0 += src.out_dim();
      col0 += src.in_dim();
    }
    layers.push_back(std::move(l));
  }
  return MLPNetwork(input_dim, std::move(layers));
}

/// All components read the full shared input.
inline MLPNetwork stack_parallel(const std::vector<MLPNetwork>& nets) {
  if (nets.empty()) throw StructuralError("stack_parallel needs at least one network");
  const std::size_t n = nets.front().input_dim();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::vector<StackItem> items;
  for (const auto& net : nets) {
    if (net.input_dim() != n) throw StructuralError("stack_parallel: input widths differ");
    items.push_back({net, all});
  }
  return stack_parallel(n, items);
}

/// second(first(x)).
inline MLPNetwork compose(const MLPNetwork& first, const MLPNetwork& second) {
  if (first.output_dim() != second.input_dim())
    throw StructuralError("compose: output width " + std::to_string(first.output_dim()) +
                          " does not match input width " + std::to_string(second.input_dim()));
  std::vector<Layer> layers = first.layers();
  layers.insert(layers.end(), second.layers().begin(), second.layers().end());
  return MLPNetwork(first.input_dim(), std::move(layers));
}

/// Wraps core f : R^n -> R^m into (g, x) -> y with
///   y_i = relu(f_i(x) + B g - B) - relu(-f_i(x) + B g - B).
/// For g = 1 this is f(x) exactly; for g = 0 it is exactly 0 whenever
/// |f_i(x)| <= B. The gate is carried through the core's hidden layers as an
/// extra unit (relu(g) = g for g in {0, 1}).
inline MLPNetwork build_gate_wrap(const MLPNetwork& core, double bound = kDefaultGateBound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) throw PreconditionError("gate bound must be positive");
  const MLPNetwork canon = to_relu_canonical(core);
  std::vector<Layer> layers;
  for (const Layer& src : canon.layers()) {
    Layer l{Matrix(src.out_dim() + 1, src.in_dim() + 1), std::vector<double>(src.out_dim() + 1, 0.0),
            src.activation};
    l.weights(0, 0) = 1.0;
    for (std::size_t r = 0; r < src.out_dim(); ++r) {
      for (std::size_t c = 0; c < src.in_dim(); ++c) l.weights(r + 1, c + 1) = src.weights(r, c);
      l.bias[r + 1] = src.bias[r];
    }
    layers.push_back(std::move(l));
  }
  const std::size_t m = core.output_dim();
  Layer gate{Matrix(2 * m, m + 1), std::vector<double>(2 * m, -bound), Activation::relu};
  Layer merge{Matrix(m, 2 * m), std::vector<double>(m, 0.0), Activation::identity};
  for (std::size_t i = 0; i < m; ++i) {
    gate.weights(i, 0) = bound;
    gate.weights(i, i + 1) = 1.0;
    gate.weights(m + i, 0) = bound;
    gate.weights(m + i, i + 1) = -1.0;
    merge.weights(i, i) = 1.0;
    merge.weights(i, m + i) = -1.0;
  }
  layers.push_back(std::move(gate));
  layers.push_back(std::move(merge));
  return MLPNetwork(core.input_dim() + 1, std::move(layers));
}

/// Given K gates followed by an n-wide shared input, returns
///   sum_k wrap(core_k)(g_k, x).
/// With one-hot gates only the selected core contributes, exactly.
inline MLPNetwork build_gated_sum(const std::vector<MLPNetwork>& cores, double bound = kDefaultGateBound) {
  if (cores.empty()) throw StructuralError("gated sum needs at least one core");
  const std::size_t k_count = cores.size();
  const std::size_t n = cores.front().input_dim();
  const std::size_t m = cores.front().output_dim();
  std::vector<StackItem> items;
  for (std::size_t k = 0; k < k_count; ++k) {
    if (cores[k].input_dim() != n || cores[k].output_dim() != m)
      throw StructuralError("gated sum cores must share their interface");
    std::vector<std::size_t> sel{k};
    for (std::size_t i = 0; i < n; ++i) sel.push_back(k_count + i);
    items.push_back({build_gate_wrap(cores[k], bound), std::move(sel)});
  }
  const MLPNetwork stacked = stack_parallel(k_count + n, items);
  Matrix sum(m, k_count * m);
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t i = 0; i < m; ++i) sum(i, k * m + i) = 1.0;
  return compose(stacked, build_affine(std::move(sum), std::vector<double>(m, 0.0)));
}

// ---------------------------------------------------------------------------
// Finite tables

struct TableEntry {
  std::vector<std::int64_t> key;
  std::vector<double> value;
};

/// Removes identical duplicates; a key mapped to two different values is a
/// compile conflict.
inline std::vector<TableEntry> dedupe_table(const std::vector<TableEntry>& entries) {
  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::vector<TableEntry> out;
  for (std::size_t j = 0; j < entries.size(); ++j) {
    const TableEntry& e = entries[j];
    auto [it, fresh] = seen.emplace(e.key, out.size());
    if (fresh) {
      out.push_back(e);
    } else if (out[it->second].value != e.value) {
      std::string key;
      for (std::size_t i = 0; i < e.key.size(); ++i) key += (i ? "," : "") + std::to_string(e.key[i]);
      throw CompileConflictError("table key (" + key + ") maps to two different values (entry " +
                                 std::to_string(j) + ")");
    }
  }
  return out;
}

/// One bump unit per entry: b_j = relu(1 - sum_i |x_i - key_ji|), output
/// sum_j b_j * value_j. Exact on listed keys and zero on integer tuples at
/// L1 distance >= 1 from every key.
inline MLPNetwork build_table(const std::vector<TableEntry>& entries, std::size_t key_width,
                              std::size_t value_width) {
  if (entries.empty()) throw PreconditionError("table needs at least one entry");
  if (key_width == 0 || value_width == 0) throw PreconditionError("table widths must be positive");
  for (const auto& e : entries) {
    if (e.key.size() != key_width || e.value.size() != value_width)
      throw StructuralError("table entry width mismatch");
    for (double v : e.value)
      if (!std::isfinite(v)) throw PreconditionError("table values must be finite");
  }
  const std::vector<TableEntry> table = dedupe_table(entries);
  const std::size_t n = table.size();

  Layer diffs{Matrix(2 * key_width * n, key_width), std::vector<double>(2 * key_width * n), Activation::relu};
  Layer bumps{Matrix(n, 2 * key_width * n), std::vector<double>(n, 1.0), Activation::relu};
  Layer values{Matrix(value_width, n), std::vector<double>(value_width, 0.0), Activation::identity};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < key_width; ++i) {
      const std::size_t row = j * 2 * key_width + 2 * i;
      const double key = static_cast<double>(table[j].key[i]);
      diffs.weights(row, i) = 1.0;
      diffs.bias[row] = -key;
      diffs.weights(row + 1, i) = -1.0;
      diffs.bias[row + 1] = key;
      bumps.weights(j, row) = -1.0;
      bumps.weights(j, row + 1) = -1.0;
    }
    for (std::size_t v = 0; v < value_width; ++v) values.weights(v, j) = table[j].value[v];
  }
  return MLPNetwork(key_width, {std::move(diffs), std::move(bumps), std::move(values)});
}

// ---------------------------------------------------------------------------
// Serialization

/// {"input_dim":n,"layers":[{"activation":"relu","weights":[[...]],"bias":[...]}]}
inline std::string serialize_network(const MLPNetwork& net) {
  std::string out = "{\"input_dim\":" + std::to_string(net.input_dim()) + ",\"layers\":[";
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    const Layer& l = net.layers()[k];
    if (k) out += ',';
    out += "{\"activation\":\"";
    out += to_string(l.activation);
    out += "\",\"weights\":[";
    for (std::size_t r = 0; r < l.out_dim(); ++r) {
      if (r) out += ',';
      out += format_array(std::span<const double>(l.weights.data.data() + r * l.weights.cols, l.weights.cols));
    }
    out += "],\"bias\":" + format_array(l.bias) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace mnc
