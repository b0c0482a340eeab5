#include "sketchlab/estimator/hadamard.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"

namespace sketchlab {

namespace {

constexpr std::size_t kMaxRows = std::size_t{1} << 20;

Eigen::MatrixXd to_dense(const BitMatrix& m) {
  Eigen::MatrixXd out(m.n(), m.d());
  for (std::size_t r = 0; r < m.n(); ++r) {
    for (std::size_t c = 0; c < m.d(); ++c) out(r, c) = m.get(r, c) ? 1.0 : 0.0;
  }
  return out;
}

double section_ratio_of(const Eigen::VectorXd& ax) {
  const double l2 = ax.norm();
  if (l2 == 0.0) return 0.0;
  return ax.lpNorm<1>() / (std::sqrt(static_cast<double>(ax.size())) * l2);
}

}  // namespace

std::vector<std::size_t> HadamardStack::tuple(std::size_t row) const {
  std::vector<std::size_t> t(factors.size());
  for (std::size_t j = factors.size(); j-- > 0;) {
    t[j] = row % factors[j].n();
    row /= factors[j].n();
  }
  return t;
}

std::size_t HadamardStack::row_of(std::span<const std::size_t> tuple) const {
  if (tuple.size() != factors.size()) throw InvalidArgument("tuple length must match factor count");
  std::size_t row = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (tuple[j] >= factors[j].n()) throw InvalidArgument("tuple index out of range");
    row = row * factors[j].n() + tuple[j];
  }
  return row;
}

HadamardStack hadamard_product(std::vector<BitMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("need at least one factor");
  const std::size_t n = factors.front().d();
  std::size_t rows = 1;
  for (const BitMatrix& f : factors) {
    if (f.d() != n) throw InvalidArgument("factors must share their column count");
    if (f.n() > kMaxRows / rows) throw InvalidArgument("Hadamard product exceeds 2^20 rows");
    rows *= f.n();
  }
  HadamardStack stack;
  stack.factors = std::move(factors);
  stack.product = BitMatrix(rows, n);
  const std::size_t wpr = stack.product.words_per_row();
  std::vector<std::uint64_t> acc(wpr);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto t = stack.tuple(r);
    std::fill(acc.begin(), acc.end(), ~std::uint64_t{0});
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto words = stack.factors[j].row(t[j]);
      for (std::size_t w = 0; w < wpr; ++w) acc[w] &= words[w];
    }
    for (std::size_t h = 0; h < n; ++h) stack.product.set(r, h, (acc[h >> 6] >> (h & 63)) & 1U);
  }
  return stack;
}

SpectralReport spectral_report(const HadamardStack& stack, std::size_t gaussian_probes,
                               std::uint64_t seed) {
  SpectralReport report;
  const Eigen::MatrixXd a = to_dense(stack.product);
  report.rank_deficient = stack.rows() < stack.cols();
  if (!report.rank_deficient) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    report.sigma_min = svd.singularValues().minCoeff();
  }
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < stack.cols(); ++h) ratio = std::min(ratio, section_ratio_of(a.col(h)));
  CounterRng rng(seed);
  Eigen::VectorXd x(stack.cols());
  for (std::size_t p = 0; p < gaussian_probes; ++p) {
    for (Eigen::Index h = 0; h < x.size(); ++h) {
      // Box-Muller on two uniforms; 1 - u keeps the logarithm finite.
      const double u1 = 1.0 - rng.uniform();
      const double u2 = rng.uniform();
      x(h) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    ratio = std::min(ratio, section_ratio_of(a * x));
  }
  report.section_ratio = std::isfinite(ratio) ? ratio : 0.0;
  return report;
}

}  // namespace sketchlab
