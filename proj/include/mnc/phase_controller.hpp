// Analytic controller assembly for phase-scheduled programs.
#pragma once

#include <cstddef>
#include <vector>

#include "mnc/network.hpp"

namespace mnc {

/// Affine map picking rows of the input: out_j = sum_i coeffs[j][i] x_i + offsets[j].
inline MLPNetwork build_linear(std::initializer_list<std::initializer_list<double>> coeffs,
                               std::vector<double> offsets) {
  return build_affine(Matrix(coeffs), std::move(offsets));
}

/// x -> scalar predicate p(c . x + d), with p one of the integer indicators.
inline MLPNetwork on_linear(std::initializer_list<double> coeffs, double offset, const MLPNetwork& predicate) {
  return compose(build_linear({coeffs}, {offset}), predicate);
}

/// Binary AND of two {0,1}-valued networks sharing one input, as min2.
inline MLPNetwork build_and(const MLPNetwork& a, const MLPNetwork& b) {
  return compose(stack_parallel({a, b}), build_min2());
}

/// Controller: control input c (width n_c) -> (gates, addresses).
///
/// gate_nets[k] : c -> g_k, built from integer indicators.
/// address_cores[k] : c -> (read addresses, write addresses) for phase k.
/// The address output is sum_k wrap(address_cores[k])(g_k, c), so every
/// address decision lives inside the network.
inline MLPNetwork build_phase_controller(std::size_t control_width, const std::vector<MLPNetwork>& gate_nets,
                                         const std::vector<MLPNetwork>& address_cores, double bound) {
  const std::size_t k_count = gate_nets.size();
  const MLPNetwork gates = stack_parallel(gate_nets);
  const MLPNetwork front = stack_parallel({gates, build_identity(control_width)});
  const MLPNetwork addresses = build_gated_sum(address_cores, bound);

  std::vector<std::size_t> gate_sel(k_count);
  std::vector<std::size_t> all(k_count + control_width);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (std::size_t i = 0; i < k_count; ++i) gate_sel[i] = i;
  const MLPNetwork back =
      stack_parallel(k_count + control_width, {{build_identity(k_count), gate_sel}, {addresses, all}});
  return compose(front, back);
}

}  // namespace mnc
