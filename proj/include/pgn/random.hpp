#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "pgn/builder.hpp"
#include "pgn/exactnum.hpp"

namespace pgn {

// Random chains with small denominators, for property tests.
class SeedSampler {
 public:
  explicit SeedSampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Rational fraction() { return Rational(uniform(1, 7), 8); }  // in (0, 1)

  // 0 <= x_1 < ... < x_m = x_{m+1} < ... < x_n; x_1 = 0 only when allow_zero.
  Vec first_point(int m, int n, bool allow_zero = false) {
    Vec x;
    Rational v = allow_zero && uniform(0, 3) == 0 ? Rational(0) : Rational(uniform(1, 8), uniform(1, 4));
    x.push_back(v);
    for (int j = 2; j <= n; ++j) {
      if (j == m + 1) {
        x.push_back(x.back());
        continue;
      }
      x.push_back(x.back() + Rational(uniform(1, 12), uniform(1, 4)));
    }
    return x;
  }

  // A successor of x with changed set {k..l}.
  Vec step(const Vec& x, int m, int k, int l) {
    int n = static_cast<int>(x.size());
    Vec y = x;
    auto X = [&](int j) -> const Rational& { return x[static_cast<std::size_t>(j - 1)]; };
    auto Y = [&](int j) -> Rational& { return y[static_cast<std::size_t>(j - 1)]; };
    if (l < n)
      Y(l) = X(l) + fraction() * (X(l + 1) - X(l));
    else
      Y(l) = X(l) + fraction() * (1 + X(l)) * uniform(1, 3);
    for (int j = l - 1; j >= k; --j) {
      if (j == m) {
        Y(j) = Y(j + 1);
        continue;
      }
      const Rational& floor = X(j + 1);
      Y(j) = uniform(0, 3) == 0 ? floor : floor + fraction() * (Y(j + 1) - floor);
    }
    return y;
  }

  Range range(int m, int n) { return {uniform(1, m), uniform(m + 1, n)}; }

  std::vector<Vec> chain_points(int m, int n, int count, bool allow_zero) {
    std::vector<Vec> pts{first_point(m, n, allow_zero)};
    while (static_cast<int>(pts.size()) < count) {
      Range r = range(m, n);
      pts.push_back(step(pts.back(), m, r.k, r.l));
    }
    return pts;
  }

  DivisionPointSeq division_seq(int m, int n, int count) {
    return validate_division_seq(chain_points(m, n, count, true), m);
  }

  // Seed with s points; the closing step is of full type {1..n}.
  SelfSimilarSeed seed(int m, int n, int s) {
    std::vector<Vec> pts = chain_points(m, n, s, false);
    const Vec &first = pts.front(), &last = pts.back();
    Rational stair = 1;
    for (int j = 2; j <= n; ++j) stair = std::max(stair, last[j - 1] / first[j - 2]);
    Rational strict = std::max({Rational(1), last[0] / first[0], last[m] / first[m]});
    Rational rho;
    if (stair > strict && uniform(0, 2) == 0)
      rho = stair;
    else
      rho = std::max(stair, strict) * (1 + fraction());
    return make_seed(pts, m, rho);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace pgn
