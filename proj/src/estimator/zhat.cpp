#include "sketchlab/estimator/zhat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "sketchlab/core/error.hpp"

namespace sketchlab {

namespace {

constexpr std::size_t kMaxV = 16;
constexpr double kTolerance = 1e-9;
constexpr double kPivotEps = 1e-12;

// dot[s] = ⟨z, s⟩ for every mask, by peeling the lowest set bit.
void all_dots(const std::vector<double>& z, std::vector<double>& dot) {
  dot[0] = 0.0;
  for (std::uint64_t s = 1; s < dot.size(); ++s) {
    dot[s] = dot[s & (s - 1)] + z[static_cast<std::size_t>(std::countr_zero(s))];
  }
}

void check_shape(const std::vector<double>& answers, std::size_t v) {
  if (v < 1 || v > kMaxV) throw InvalidArgument("zhat_recover needs 1 <= v <= 16");
  if (answers.size() != (std::size_t{1} << v)) throw InvalidArgument("answers must have 2^v entries");
}

// Maximizes obj·x subject to rows x_B = b − A·x_N ≥ 0, x ≥ 0, starting from
// the all-slack basis (b ≥ 0 required). Compact tableau, Bland's rule.
class Simplex {
 public:
  Simplex(std::size_t vars, std::vector<std::vector<double>> a, std::vector<double> b,
          const std::vector<double>& obj)
      : vars_(vars), a_(std::move(a)), b_(std::move(b)), obj_(vars), nonbasic_(vars),
        basic_(b_.size()) {
    for (std::size_t j = 0; j < vars; ++j) {
      obj_[j] = -obj[j];
      nonbasic_[j] = j;
    }
    for (std::size_t i = 0; i < b_.size(); ++i) basic_[i] = vars + i;
  }

  std::vector<double> solve() {
    while (true) {
      std::size_t enter = npos;
      for (std::size_t j = 0; j < vars_; ++j) {
        if (obj_[j] < -kPivotEps && (enter == npos || nonbasic_[j] < nonbasic_[enter])) enter = j;
      }
      if (enter == npos) break;
      std::size_t leave = npos;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < b_.size(); ++i) {
        if (a_[i][enter] <= kPivotEps) continue;
        const double ratio = b_[i] / a_[i][enter];
        if (ratio < best - kPivotEps ||
            (ratio <= best + kPivotEps && leave != npos && basic_[i] < basic_[leave])) {
          if (ratio < best) best = ratio;
          leave = i;
        }
      }
      if (leave == npos) throw DecodeFailure("zhat", "linear program is unbounded");
      pivot(leave, enter);
    }
    std::vector<double> x(vars_, 0.0);
    for (std::size_t i = 0; i < b_.size(); ++i) {
      if (basic_[i] < vars_) x[basic_[i]] = b_[i];
    }
    return x;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void pivot(std::size_t r, std::size_t j) {
    const double p = a_[r][j];
    for (std::size_t k = 0; k < vars_; ++k) a_[r][k] = k == j ? 1.0 / p : a_[r][k] / p;
    b_[r] /= p;
    auto update = [&](std::vector<double>& row, double& rhs) {
      const double f = row[j];
      if (f == 0.0) return;
      for (std::size_t k = 0; k < vars_; ++k) row[k] = k == j ? -f * a_[r][j] : row[k] - f * a_[r][k];
      rhs -= f * b_[r];
    };
    for (std::size_t i = 0; i < b_.size(); ++i) {
      if (i != r) update(a_[i], b_[i]);
    }
    update(obj_, value_);
    std::swap(basic_[r], nonbasic_[j]);
  }

  std::size_t vars_;
  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<double> obj_;
  double value_ = 0.0;
  std::vector<std::size_t> nonbasic_;
  std::vector<std::size_t> basic_;
};

}  // namespace

double zhat_violation(const std::vector<double>& answers, std::size_t v, double epsilon,
                      const std::vector<double>& z) {
  check_shape(answers, v);
  if (z.size() != v) throw InvalidArgument("z must have v entries");
  double worst = 0.0;
  for (double zi : z) worst = std::max({worst, -zi, zi - 1.0});
  std::vector<double> dot(answers.size());
  all_dots(z, dot);
  const double vv = static_cast<double>(v);
  for (std::uint64_t s = 0; s < answers.size(); ++s) {
    worst = std::max(worst, std::abs(dot[s] / vv - answers[s]) - epsilon);
  }
  return worst;
}

std::vector<double> zhat_recover(const std::vector<double>& answers, std::size_t v,
                                 double epsilon) {
  check_shape(answers, v);
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon > 0");
  const double vv = static_cast<double>(v);

  // Minimize the largest excess t over ε: with u = t0 − t, maximize u subject
  //   ±(⟨z,s⟩/v − a_s) ≤ ε + t0 − u,  z_i ≤ 1,  u ≤ t0 + ε,  z, u ≥ 0.
  // t ≥ −ε lets the optimum sit as deep inside the slabs as possible. t0
  // makes every right-hand side nonnegative, so the slack basis is feasible.
  double t0 = 1.0;
  for (double a : answers) t0 = std::max(t0, std::abs(a) + 1.0);
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::uint64_t s = 0; s < answers.size(); ++s) {
    std::vector<double> up(v + 1), down(v + 1);
    for (std::size_t i = 0; i < v; ++i) {
      const double coef = ((s >> i) & 1U) ? 1.0 / vv : 0.0;
      up[i] = coef;
      down[i] = -coef;
    }
    up[v] = down[v] = 1.0;
    rows.push_back(std::move(up));
    rhs.push_back(epsilon + t0 + answers[s]);
    rows.push_back(std::move(down));
    rhs.push_back(epsilon + t0 - answers[s]);
  }
  for (std::size_t i = 0; i <= v; ++i) {
    std::vector<double> bound(v + 1, 0.0);
    bound[i] = 1.0;
    rows.push_back(std::move(bound));
    rhs.push_back(i < v ? 1.0 : t0 + epsilon);
  }
  std::vector<double> objective(v + 1, 0.0);
  objective[v] = 1.0;
  const std::vector<double> x = Simplex(v + 1, std::move(rows), std::move(rhs), objective).solve();

  std::vector<double> z(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(v));
  for (double& zi : z) zi = std::clamp(zi, 0.0, 1.0);
  if (zhat_violation(answers, v, epsilon, z) > kTolerance) {
    throw DecodeFailure("zhat", "no point of [0,1]^v meets every answer within epsilon");
  }
  return z;
}

}  // namespace sketchlab
