#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/itemset.hpp"
#include "sketchlab/estimator/hadamard.hpp"

namespace sketchlab {

struct BruteforceResult {
  /// Bit h is y_h.
  BitVector y;
  double residual_l1 = 0.0;
  /// Rows with |(Ay)_r − counts_r| > zeta1.
  std::size_t entries_over_zeta = 0;
};

/// argmin over y ∈ {0,1}^n of ‖Ay − counts‖₁, ties to the smallest integer
/// Σ y_h 2^h. n ≤ 20; calls with n ≤ 12 re-scan to verify the minimum.
BruteforceResult bruteforce_decode(const HadamardStack& stack, std::span<const double> counts,
                                   double zeta1);

/// min over y ≠ y' of ‖A(y − y')‖₁; 0 when y ↦ Ay is not injective. n ≤ 16.
double min_codeword_gap(const HadamardStack& stack);

/// log_{(q)}(x): base-2 logarithm applied q times, returning 1 as soon as
/// the argument is ≤ 2.
double iterated_log(double x, unsigned q);

struct DecoderConfig {
  /// Per-entry count-error tolerance.
  double zeta1 = 1.0;
  unsigned q = 1;
  /// Tolerated fraction of badly estimated itemsets.
  double gamma = 0.01;
  /// A block passes when its μ-weighted mean |ẑ − z| is ≤ markov_factor·ε;
  /// the analysis expects markov_fraction of blocks to pass.
  double markov_factor = 100.0;
  double markov_fraction = 0.96;
  /// Unnormalized weight μ(T) of each c-itemset; uniform when empty.
  std::function<double(const Itemset&)> weight;

  /// zeta1 = √n / log_{(q+1)}(n).
  static DecoderConfig defaults(std::size_t n, unsigned q = 1);
};

}  // namespace sketchlab
