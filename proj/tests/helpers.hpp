#pragma once

#include <string>
#include <vector>

#include "pgn/builder.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/nsystem.hpp"

namespace testing_helpers {

using pgn::NSystem;
using pgn::Rational;
using pgn::Vec;

inline Rational R(const char* s) { return Rational::parse(s); }

inline Vec V(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.push_back(Rational(x));
  return out;
}

inline NSystem make_system(int n, long q0, std::initializer_list<long> initial,
                           std::initializer_list<std::pair<long, int>> segs) {
  NSystem sys{n, Rational(q0), V(initial), {}};
  for (auto [end, active] : segs) sys.segments.push_back({Rational(end), active});
  return sys;
}

// n=3 system on [4,7] from the bridge (1,1,2) -> (2,2,3) with m=1.
inline NSystem bridge_example() { return make_system(3, 4, {1, 1, 2}, {{5, 2}, {6, 3}, {7, 1}}); }

inline NSystem ray_example() { return make_system(2, 0, {0, 0}, {{5, 2}}); }

inline std::vector<Vec> dim5_points() {
  return {V({1, 8, 8, 10, 25}), V({8, 10, 10, 25, 51}), V({8, 28, 28, 64, 80})};
}

inline pgn::SelfSimilarSeed dim5_seed() { return pgn::make_seed(dim5_points(), 2, 8); }

}  // namespace testing_helpers
