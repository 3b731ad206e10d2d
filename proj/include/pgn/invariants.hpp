#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgn/builder.hpp"
#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/nsystem.hpp"

namespace pgn {

struct SpectrumPoint {
  ExtReal alpha, beta;
  friend bool operator==(const SpectrumPoint&, const SpectrumPoint&) = default;
};

struct TraceEntry {
  Rational a, am, ap;  // a_i, A_i⁻, A_i⁺
  ExtReal ratio_self;
  std::optional<ExtReal> ratio_cross;  // A_{i+1}⁺ / A_i⁻, absent on the last entry
};

struct InvariantTrace {
  int m = 1;
  std::vector<TraceEntry> entries;
  ExtReal alpha_hat, beta_hat;
};

// (min A_i⁺/A_i⁻, max A_{i+1}⁺/A_i⁻) over one period of points closed by ρ.
// The points need only satisfy the chain constraints non-strictly.
inline SpectrumPoint chi_pair_points(const std::vector<Vec>& points, const Rational& rho, int m) {
  std::optional<ExtReal> lo, hi;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [am, ap] = split_sums(points[i], m);
    Rational next_ap = i + 1 < points.size() ? split_sums(points[i + 1], m).second
                                             : rho * split_sums(points[0], m).second;
    ExtReal self = ext_div(ap, am), cross = ext_div(next_ap, am);
    if (!lo || self < *lo) lo = self;
    if (!hi || cross > *hi) hi = cross;
  }
  return {*lo, *hi};
}

inline SpectrumPoint chi_pair_periodic(const SelfSimilarSeed& seed) {
  return chi_pair_points(seed.seq.points, seed.rho, seed.m());
}

inline InvariantTrace chi_trace_finite(const NSystem& sys, int m) {
  auto d = division_numbers(sys, m);
  if (d.size() < 2) fail(ErrorCode::invalid_argument, "fewer than 2 division numbers");
  InvariantTrace tr;
  tr.m = m;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& [am, ap] = d.sums[i];
    TraceEntry e{d.numbers[i], am, ap, ext_div(ap, am), std::nullopt};
    if (i + 1 < d.size()) e.ratio_cross = ext_div(d.sums[i + 1].second, am);
    if (i == 0 || e.ratio_self < tr.alpha_hat) tr.alpha_hat = e.ratio_self;
    if (e.ratio_cross && (i == 0 || *e.ratio_cross > tr.beta_hat)) tr.beta_hat = *e.ratio_cross;
    tr.entries.push_back(std::move(e));
  }
  return tr;
}

inline std::vector<std::pair<Rational, Rational>> chi_profile(const NSystem& sys, int m) {
  std::vector<std::pair<Rational, Rational>> out;
  auto bps = sys.breakpoints();
  auto values = breakpoint_values(sys);
  for (std::size_t b = 0; b < bps.size(); ++b) {
    auto [sm, sp] = split_sums(values[b], m);
    if (sm.is_zero()) fail(ErrorCode::indeterminate_ratio, "S_m^- vanishes at q=" + bps[b].str());
    out.push_back({bps[b], sp / sm});
  }
  return out;
}

namespace detail {
constexpr int kUnfoldPeriods = 3;
}

// (liminf, limsup) for any m' on the periodic extension of the seed: the
// m'-division set is ρ-invariant, so one window [ρa, ρ²a) of the 3-period
// unfolding contains a full period with its successors.
inline SpectrumPoint chi_pair_self_similar(const SelfSimilarSeed& seed, int mp) {
  NSystem sys = unfold_self_similar(seed, detail::kUnfoldPeriods);
  auto d = division_numbers(sys, mp);
  Rational a1 = sum(seed.seq.points.front());
  Rational lo = seed.rho * a1, hi = seed.rho * lo;
  std::optional<ExtReal> al, be;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d.numbers[i] < lo || d.numbers[i] >= hi) continue;
    const auto& [am, ap] = d.sums[i];
    ExtReal self = ext_div(ap, am), cross = ext_div(d.sums[i + 1].second, am);
    if (!al || self < *al) al = self;
    if (!be || cross > *be) be = cross;
  }
  ensure(al.has_value(), "no division number in the period window");
  return {*al, *be};
}

// Dual pair for S_{m,n}: (χ̲_{n-m}(P), χ̄_{n-m}(P)) computed directly and via the
// opposite system's backwards formulas; both must agree.
inline SpectrumPoint chi_pair_backwards(const SelfSimilarSeed& seed, int m) {
  int n = seed.n();
  if (m < 1 || m >= n) fail(ErrorCode::invalid_argument, "m must lie in 1..n-1");
  SpectrumPoint direct = chi_pair_self_similar(seed, n - m);

  NSystem dual = opposite(unfold_self_similar(seed, detail::kUnfoldPeriods));
  auto d = division_numbers(dual, m);
  Rational a1 = sum(seed.seq.points.front());
  Rational hi = -(seed.rho * a1), lo = seed.rho * hi;  // window (lo, hi]
  std::optional<Rational> low, top;  // χ̲_m(P∨), χ̄_m(P∨)
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d.numbers[i] <= lo || d.numbers[i] > hi) continue;
    const auto& [am, ap] = d.sums[i];
    ensure(am.sign() < 0 && ap.sign() < 0, "opposite system must be negative");
    Rational self = ap / am, cross = d.sums[i + 1].second / am;
    if (!top || self > *top) top = self;
    if (!low || cross < *low) low = cross;
  }
  ensure(low.has_value(), "no division number in the dual window");
  SpectrumPoint dual_route{ExtReal(*top).reciprocal(), ExtReal(*low).reciprocal()};
  ensure(dual_route == direct, "duality routes disagree: direct (" + direct.alpha.str() + ", " +
                                   direct.beta.str() + ") vs dual (" + dual_route.alpha.str() + ", " +
                                   dual_route.beta.str() + ")");
  return direct;
}

}  // namespace pgn
