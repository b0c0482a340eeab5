#include "sketchlab/estimator/bruteforce.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sketchlab/core/error.hpp"

namespace sketchlab {

namespace {

constexpr std::size_t kMaxN = 20;
constexpr std::size_t kVerifyN = 12;
constexpr double kTieTolerance = 1e-9;

double residual(const HadamardStack& stack, std::span<const double> counts, std::uint64_t y) {
  double sum = 0.0;
  for (std::size_t r = 0; r < stack.rows(); ++r) {
    long ay = 0;
    for (std::size_t h = 0; h < stack.cols(); ++h) {
      ay += static_cast<long>(stack.product.get(r, h) && ((y >> h) & 1U));
    }
    sum += std::abs(static_cast<double>(ay) - counts[r]);
  }
  return sum;
}

bool better(double res, std::uint64_t y, double best_res, std::uint64_t best_y) {
  if (res < best_res - kTieTolerance) return true;
  return res <= best_res + kTieTolerance && y < best_y;
}

}  // namespace

BruteforceResult bruteforce_decode(const HadamardStack& stack, std::span<const double> counts,
                                   double zeta1) {
  const std::size_t n = stack.cols();
  const std::size_t rows = stack.rows();
  if (n > kMaxN) throw InvalidArgument("bruteforce_decode needs n <= 20");
  if (counts.size() != rows) throw InvalidArgument("need one count per Hadamard row");

  // Gray-code walk: consecutive y differ in one bit, so Ay updates by one column.
  std::vector<long> ay(rows, 0);
  std::uint64_t y = 0;
  double best_res = 0.0;
  for (std::size_t r = 0; r < rows; ++r) best_res += std::abs(counts[r]);
  std::uint64_t best_y = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
    const auto h = static_cast<std::size_t>(std::countr_zero(step));
    y ^= std::uint64_t{1} << h;
    const long delta = ((y >> h) & 1U) ? 1 : -1;
    double res = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (stack.product.get(r, h)) ay[r] += delta;
      res += std::abs(static_cast<double>(ay[r]) - counts[r]);
    }
    if (better(res, y, best_res, best_y)) {
      best_res = res;
      best_y = y;
    }
  }

  if (n <= kVerifyN) {
    double check_res = std::numeric_limits<double>::infinity();
    std::uint64_t check_y = 0;
    for (std::uint64_t cand = 0; cand < (std::uint64_t{1} << n); ++cand) {
      const double res = residual(stack, counts, cand);
      if (better(res, cand, check_res, check_y)) {
        check_res = res;
        check_y = cand;
      }
    }
    if (check_y != best_y) throw std::logic_error("bruteforce_decode: Gray-code scan disagrees with re-scan");
  }

  BruteforceResult out;
  out.y = BitVector::from_uint(best_y, n);
  out.residual_l1 = residual(stack, counts, best_y);
  for (std::size_t r = 0; r < rows; ++r) {
    long v = 0;
    for (std::size_t h = 0; h < n; ++h) v += static_cast<long>(stack.product.get(r, h) && out.y.get(h));
    if (std::abs(static_cast<double>(v) - counts[r]) > zeta1) ++out.entries_over_zeta;
  }
  return out;
}

double min_codeword_gap(const HadamardStack& stack) {
  const std::size_t n = stack.cols();
  if (n > 16) throw InvalidArgument("min_codeword_gap needs n <= 16");
  // Differences y − y' range over nonzero {−1,0,1}^n; enumerate in base 3.
  std::uint64_t total = 1;
  for (std::size_t h = 0; h < n; ++h) total *= 3;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> diff(n, 0);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t h = 0; h < n; ++h) {
      diff[h] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    bool nonzero = false;
    for (int x : diff) nonzero |= x != 0;
    if (!nonzero) continue;
    double l1 = 0.0;
    for (std::size_t r = 0; r < stack.rows() && l1 < best; ++r) {
      long s = 0;
      for (std::size_t h = 0; h < n; ++h) s += stack.product.get(r, h) ? diff[h] : 0;
      l1 += std::abs(static_cast<double>(s));
    }
    best = std::min(best, l1);
    if (best == 0.0) break;
  }
  return best;
}

double iterated_log(double x, unsigned q) {
  for (unsigned i = 0; i < q; ++i) {
    if (x <= 2.0) return 1.0;
    x = std::log2(x);
  }
  return x <= 1.0 ? 1.0 : x;
}

DecoderConfig DecoderConfig::defaults(std::size_t n, unsigned q) {
  DecoderConfig config;
  config.q = q;
  config.zeta1 = std::sqrt(static_cast<double>(n)) / iterated_log(static_cast<double>(n), q + 1);
  return config;
}

}  // namespace sketchlab
