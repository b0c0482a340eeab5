#include "sketchlab/estimator/generators.hpp"

#include <string>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"

namespace sketchlab {

namespace {

std::size_t check_factors(std::span<const BitMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("need at least one factor");
  const std::size_t d0 = factors.front().n();
  const std::size_t n = factors.front().d();
  for (const BitMatrix& f : factors) {
    if (f.n() != d0 || f.d() != n) throw InvalidArgument("factors must all be d0 x n");
  }
  return d0;
}

void fill_D0(std::span<const BitMatrix> factors, Database& db) {
  const std::size_t d0 = factors.front().n();
  for (std::size_t t = 0; t < factors.size(); ++t) {
    for (std::size_t i = 0; i < d0; ++i) {
      for (std::size_t j = 0; j < db.n(); ++j) db.set(j, t * d0 + i, factors[t].get(i, j));
    }
  }
}

}  // namespace

std::vector<BitMatrix> gen_random_factors(std::size_t kminus1, std::size_t ell, std::size_t n,
                                          std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<BitMatrix> factors;
  for (std::size_t t = 0; t < kminus1; ++t) {
    BitMatrix f(ell, n);
    for (std::size_t i = 0; i < ell; ++i) {
      for (std::size_t h = 0; h < n; ++h) f.set(i, h, rng.coin());
    }
    factors.push_back(std::move(f));
  }
  return factors;
}

Database build_D0(std::span<const BitMatrix> factors) {
  const std::size_t d0 = check_factors(factors);
  Database db(factors.front().d(), factors.size() * d0);
  fill_D0(factors, db);
  return db;
}

Database build_D1(std::span<const BitMatrix> factors, const BitVector& y) {
  const std::size_t d0 = check_factors(factors);
  const std::size_t n = factors.front().d();
  if (y.size() != n) throw InvalidArgument("y must have n bits");
  Database db(n, factors.size() * d0 + 1);
  fill_D0(factors, db);
  for (std::size_t j = 0; j < n; ++j) db.set(j, factors.size() * d0, y.get(j));
  return db;
}

Database build_D2(std::span<const BitMatrix> factors, const BitVector& yprime, const Codec& ecc) {
  const std::size_t d0 = check_factors(factors);
  const std::size_t n = factors.front().d();
  const BitVector code = ecc.encode(yprime);
  if (code.size() != d0 * n) {
    throw InvalidArgument("inner code must produce d0*n = " + std::to_string(d0 * n) + " bits");
  }
  const std::size_t base = factors.size() * d0;
  Database db(n, base + d0);
  fill_D0(factors, db);
  for (std::size_t i = 0; i < d0; ++i) {
    for (std::size_t j = 0; j < n; ++j) db.set(j, base + i, code.get(i * n + j));
  }
  return db;
}

Itemset d1_itemset(std::size_t d0, std::span<const std::size_t> tuple) {
  std::vector<std::size_t> members;
  for (std::size_t t = 0; t < tuple.size(); ++t) {
    if (tuple[t] >= d0) throw InvalidArgument("tuple index must be < d0");
    members.push_back(t * d0 + tuple[t]);
  }
  members.push_back(tuple.size() * d0);
  return Itemset::from_indices(tuple.size() * d0 + 1, members);
}

Itemset special_itemset(std::size_t d0, std::span<const std::size_t> tuple, std::size_t special) {
  if (special >= d0) throw InvalidArgument("special column must be < d0");
  std::vector<std::size_t> members;
  for (std::size_t t = 0; t < tuple.size(); ++t) {
    if (tuple[t] >= d0) throw InvalidArgument("tuple index must be < d0");
    members.push_back(t * d0 + tuple[t]);
  }
  members.push_back(tuple.size() * d0 + special);
  return Itemset::from_indices((tuple.size() + 1) * d0, members);
}

}  // namespace sketchlab
