#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/core/database.hpp"

namespace sketchlab {

/// Hadamard product of factors A_1..A_s (ℓ_j × n each): the L × n matrix,
/// L = ∏ℓ_j, with A[(i_1..i_s), h] = ∏_j A_j[i_j, h]. Row tuples are in
/// row-major order, i_1 most significant.
struct HadamardStack {
  std::vector<BitMatrix> factors;
  BitMatrix product{1, 1};

  std::size_t rows() const { return product.n(); }
  std::size_t cols() const { return product.d(); }
  std::vector<std::size_t> tuple(std::size_t row) const;
  std::size_t row_of(std::span<const std::size_t> tuple) const;
};

/// Rejects an empty factor list, mismatched column counts and L > 2^20.
HadamardStack hadamard_product(std::vector<BitMatrix> factors);

struct SpectralReport {
  double sigma_min = 0.0;
  /// min over probes x of ‖Ax‖₁ / (√L·‖Ax‖₂); 0 when some probe maps to 0.
  double section_ratio = 0.0;
  /// L < n, so some nonzero x has Ax = 0.
  bool rank_deficient = false;
};

/// Exact smallest singular value (dense SVD) and the section ratio over
/// `gaussian_probes` seeded Gaussian probes plus the n coordinate vectors.
SpectralReport spectral_report(const HadamardStack& stack, std::size_t gaussian_probes = 64,
                               std::uint64_t seed = 0);

}  // namespace sketchlab
