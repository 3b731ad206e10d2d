#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgn/builder.hpp"
#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/invariants.hpp"

namespace pgn {

struct SeededPoint {
  SelfSimilarSeed seed;
  SpectrumPoint point;
};

// A family member. The seed is absent when the parameters sit on a limit of
// the family (no valid self-similar seed realizes the point).
struct FamilyPoint {
  std::optional<SelfSimilarSeed> seed;
  SpectrumPoint point;
};

inline FamilyPoint regular_family_seed(int n, int m_cons, const Rational& g, const Rational& rho) {
  if (n < 2 || m_cons < 1 || m_cons >= n) fail(ErrorCode::invalid_argument, "need 1 <= m_cons <= n-1");
  if (g < 1) fail(ErrorCode::invalid_argument, "g must be >= 1");
  if (rho < g) fail(ErrorCode::invalid_argument, "rho must be >= g");
  Vec ua;
  for (int i = 0; i < m_cons; ++i) ua.push_back(pow(g, i));
  for (int i = m_cons; i < n; ++i) ua.push_back(pow(g, i - 1));
  Rational alpha = sum(ua, static_cast<std::size_t>(m_cons)) / sum(ua, 0, static_cast<std::size_t>(m_cons));
  FamilyPoint out{std::nullopt, {ExtReal(alpha), ExtReal(rho * alpha)}};
  bool strict = g > 1 || n == 2;
  if (strict && rho > 1) {
    out.seed = make_seed({ua}, m_cons, rho);
    ensure(chi_pair_periodic(*out.seed) == out.point, "regular family closed form disagrees");
  }
  return out;
}

inline SeededPoint s35_family_seed(const Rational& g, int s) {
  if (g < 2) fail(ErrorCode::invalid_argument, "g must be >= 2");
  if (s < 3) fail(ErrorCode::invalid_argument, "s must be >= 3");
  Rational rho = pow(g, s);
  Rational alpha = g * g + 1 - g / (1 + rho);
  std::vector<Rational> b(static_cast<std::size_t>(s + 2)), d(static_cast<std::size_t>(s));
  for (int i = 2; i <= s + 1; ++i) b[i] = pow(g, i - 1) * (1 + rho) - rho;
  d[1] = alpha * (1 + rho) - rho - b[2];
  for (int i = 2; i <= s - 1; ++i) d[i] = alpha * (rho + b[i]) - b[i] - d[i - 1];
  for (int i = 2; i <= s; ++i)
    ensure(rho + b[i] < d[i - 1] && d[i - 1] < b[i + 1], "family inequality fails at i=" + std::to_string(i));

  std::vector<Vec> pts;
  pts.push_back({1, rho, rho, b[2], d[1]});
  for (int i = 2; i <= s - 1; ++i) pts.push_back({rho, b[i], b[i], d[i - 1], d[i]});
  pts.push_back({rho, b[s], b[s], rho * rho, rho * b[2]});
  SeededPoint out{make_seed(pts, 2, rho), {ExtReal(alpha), ExtReal(g * alpha)}};
  ensure(chi_pair_periodic(out.seed) == out.point, "dimension-5 family closed form disagrees");
  return out;
}

inline Rational arc2_alpha(const Rational& g) { return Rational(3, 2) * g * g - g + 1; }
inline Rational arc2_gate_low(const Rational& g) { return 3 * g * g * g - 7 * g * g + 4 * g - 2; }
inline Rational arc2_gate_high(const Rational& g) { return g * g * g - g * g - g - 1; }

struct Arc2Point {
  SelfSimilarSeed seed;
  SpectrumPoint point;
  SpectrumPoint target;
  Rational eps;
};

inline Arc2Point s35_arc2_seed(const Rational& g, const Rational& eps) {
  if (arc2_gate_low(g).sign() < 0)
    fail(ErrorCode::gate_failure, "3g^3-7g^2+4g-2 = " + arc2_gate_low(g).str() + " < 0");
  if (arc2_gate_high(g).sign() > 0)
    fail(ErrorCode::gate_failure, "g^3-g^2-g-1 = " + arc2_gate_high(g).str() + " > 0");
  if (eps.sign() <= 0) fail(ErrorCode::invalid_argument, "eps must be > 0");
  Rational alpha = arc2_alpha(g);
  Rational rho = g / (2 - g), a = 2 * (alpha - g) / g, b = 2 * g - 1, c = 2 * (alpha - g),
           cp = (rho + 1 - g) / g, d = 2 * alpha * (g - 1) + 1;
  Rational one = 1, e1 = 1 + eps;
  std::vector<Vec> pts{{one / rho, one, one, e1, a}, {one, e1, e1, b, c}, {one, b, b, c, d}, {one, cp, cp, rho, rho * e1}};
  SelfSimilarSeed seed;
  try {
    seed = make_seed(pts, 2, rho);
  } catch (const Error& e) {
    fail(ErrorCode::invalid_argument, std::string("eps too large: ") + e.what());
  }
  SpectrumPoint p = chi_pair_periodic(seed);
  return {seed, p, {ExtReal(alpha), ExtReal(g * alpha)}, eps};
}

// Scans eps = 10^-2, 10^-3, ... until the perturbed seed is valid.
inline Arc2Point s35_arc2_seed(const Rational& g) {
  Rational eps(1, 100);
  for (int k = 2; k <= 12; ++k, eps /= 10) {
    try {
      return s35_arc2_seed(g, eps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::invalid_argument) throw;
    }
  }
  fail(ErrorCode::invalid_argument, "no eps down to 1e-12 gives a valid seed");
}

// Increasing maps t -> ν(t) used for deformations.
struct NuSpec {
  enum class Kind { scale_above, flatten } kind = Kind::scale_above;
  Rational threshold, low, high, c = 1, eps = 1;

  static NuSpec scale_above(const Rational& threshold, const Rational& c) {
    if (c < 1) fail(ErrorCode::invalid_argument, "scale_above needs c >= 1");
    NuSpec nu;
    nu.kind = Kind::scale_above;
    nu.threshold = threshold;
    nu.c = c;
    return nu;
  }
  static NuSpec flatten(const Rational& low, const Rational& high, const Rational& eps) {
    if (low.sign() <= 0 || high < low) fail(ErrorCode::invalid_argument, "flatten needs 0 < low <= high");
    if (eps.sign() <= 0 || eps > 1) fail(ErrorCode::invalid_argument, "flatten needs eps in (0,1]");
    NuSpec nu;
    nu.kind = Kind::flatten;
    nu.low = low;
    nu.high = high;
    nu.eps = eps;
    nu.c = (1 - eps) * low / high + eps;
    return nu;
  }

  Rational operator()(const Rational& t) const {
    if (kind == Kind::scale_above) return t <= threshold ? t : c * t;
    if (t <= low) return t;
    if (t <= high) return (1 - eps) * low + eps * t;
    return c * t;
  }
  // +1 when ν(t)/t is non-decreasing, -1 when non-increasing.
  int ratio_trend() const { return kind == Kind::scale_above ? 1 : -1; }
};

inline SeededPoint apply_nu(const SelfSimilarSeed& seed, const NuSpec& nu) {
  auto image = [&](const Vec& v) {
    Vec out;
    for (const auto& x : v) out.push_back(nu(x));
    return out;
  };
  std::vector<Vec> pts;
  for (const auto& p : seed.seq.points) pts.push_back(image(p));
  Vec last = image(seed.point(seed.s()));
  Rational rho = last[0] / pts[0][0];
  for (std::size_t j = 0; j < last.size(); ++j)
    if (last[j] != rho * pts[0][j])
      fail(ErrorCode::not_proportional, "nu-image of the closing point is not a multiple of the first");
  SeededPoint out{make_seed(pts, seed.m(), rho), {}};
  out.point = chi_pair_periodic(out.seed);
  SpectrumPoint before = chi_pair_periodic(seed);
  if (nu.ratio_trend() > 0)
    ensure(out.point.alpha >= before.alpha && out.point.beta >= before.beta, "nu with rising ratio lowered the point");
  else
    ensure(out.point.alpha <= before.alpha && out.point.beta <= before.beta, "nu with falling ratio raised the point");
  return out;
}

struct ExtendedSeed {
  SelfSimilarSeed seed;
  int r = 1;
};

inline ExtendedSeed rectangle_extend(const SelfSimilarSeed& seed) {
  const Vec& first = seed.seq.points.front();
  int r = 1;
  Rational pr = seed.rho;
  while (!(first.back() < pr * first.front())) {
    pr *= seed.rho;
    ++r;
  }
  std::size_t total = static_cast<std::size_t>(2 * r + 1) * seed.s();
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < total; ++i) pts.push_back(seed.point(i));
  ExtendedSeed out{make_seed(pts, seed.m(), pow(seed.rho, 2 * r + 1)), r};
  ensure(chi_pair_periodic(out.seed) == chi_pair_periodic(seed), "extension changed the spectrum point");
  return out;
}

inline SeededPoint rectangle_raise_beta(const SelfSimilarSeed& seed, const Rational& c) {
  ExtendedSeed ext = rectangle_extend(seed);
  return apply_nu(ext.seed, NuSpec::scale_above(seed.seq.points.front().back(), c));
}

inline SeededPoint rectangle_lower_alpha(const SelfSimilarSeed& seed, const Rational& eps) {
  ExtendedSeed ext = rectangle_extend(seed);
  const Vec& p = ext.seed.seq.points[static_cast<std::size_t>(ext.r) * seed.s()];
  return apply_nu(ext.seed, NuSpec::flatten(p.front(), p.back(), eps));
}

enum class Membership { in, out, outside_scope };

inline std::string membership_name(Membership m) {
  switch (m) {
    case Membership::in: return "in";
    case Membership::out: return "out";
    case Membership::outside_scope: return "outside_scope";
  }
  return "?";
}

struct Region {
  enum class Kind { S1n, Sn1n, S24, S35_high, conjecture } kind = Kind::S24;
  int m = 0, n = 0;

  static Region S1n(int n) { return {Kind::S1n, 1, n}; }
  static Region Sn1n(int n) { return {Kind::Sn1n, n - 1, n}; }
  static Region S24() { return {Kind::S24, 2, 4}; }
  static Region S35_high() { return {Kind::S35_high, 3, 5}; }
  static Region conjecture(int m, int n) { return {Kind::conjecture, m, n}; }
};

namespace detail {
inline Membership to_membership(bool b) { return b ? Membership::in : Membership::out; }
}  // namespace detail

inline Membership membership(const Region& region, const SpectrumPoint& p) {
  using detail::to_membership;
  const ExtReal &A = p.alpha, &B = p.beta;
  int n = region.n;
  switch (region.kind) {
    case Region::Kind::S1n: {
      if (A.is_infinite() || A.value().is_zero()) return Membership::out;
      const Rational& a = A.value();
      if (B.is_infinite()) return to_membership(Rational(1, n - 1) <= a && a <= 1);
      const Rational& b = B.value();
      return to_membership(a <= b && 1 / a <= n - 1 && 1 / a >= geometric_sum(a / b, n - 1));
    }
    case Region::Kind::Sn1n: {
      if (B.is_infinite()) return to_membership(A >= ExtReal(n - 1));
      if (A.is_infinite() || A.value().is_zero()) return Membership::out;
      const Rational &a = A.value(), &b = B.value();
      return to_membership(a <= b && a >= n - 1 && a <= geometric_sum(b / a, n - 1));
    }
    case Region::Kind::S24: {
      if (A < ExtReal(1)) return Membership::out;
      if (B.is_infinite()) return Membership::in;
      if (A.is_infinite()) return Membership::out;
      return to_membership(A.value() * A.value() <= B.value());
    }
    case Region::Kind::S35_high: {
      if (A < ExtReal(5)) return Membership::outside_scope;
      if (B.is_infinite()) return Membership::in;
      if (A.is_infinite()) return Membership::out;
      const Rational &a = A.value(), &b = B.value();
      return to_membership(a <= b && (a - 1) * a * a <= b * b);
    }
    case Region::Kind::conjecture: {
      int m = region.m;
      Rational lower(m, n - m);
      if (B.is_infinite()) return to_membership(A >= ExtReal(lower) && (m >= 2 || A <= ExtReal(1)));
      if (A.is_infinite() || A.value().is_zero()) return Membership::out;
      const Rational &a = A.value(), &b = B.value();
      return to_membership(a <= b && lower <= a && a * geometric_sum(a / b, n - m) <= geometric_sum(b / a, m));
    }
  }
  return Membership::out;
}

// Joint spectrum of (β_0, ..., β_{n-2}).
inline bool membership_omega(int n, const std::vector<ExtReal>& beta) {
  if (static_cast<int>(beta.size()) != n - 1) fail(ErrorCode::invalid_argument, "omega vector must have n-1 entries");
  if (beta[0] < ExtReal(Rational(1, n - 1))) return false;
  for (int j = 1; j <= n - 2; ++j) {
    const ExtReal &bj = beta[static_cast<std::size_t>(j)], &prev = beta[static_cast<std::size_t>(j - 1)];
    ExtReal lower = bj.is_infinite() ? ExtReal(j) : ExtReal(j * bj.value() / (bj.value() + j + 1));
    if (prev < lower) return false;
    if (bj.is_infinite()) continue;
    Rational upper = ((n - 1 - j) * bj.value() - 1) / (n - j);
    if (upper.sign() < 0 || prev > ExtReal(upper)) return false;
  }
  return true;
}

// Boundary curves g -> (α(g), g·α(g)) for overlays.
enum class Curve { s24, s35_high, s35_conj, s35_arc2 };

inline Rational curve_alpha(Curve c, const Rational& g) {
  switch (c) {
    case Curve::s24: return g;
    case Curve::s35_high: return g * g + 1;
    case Curve::s35_conj: return (g * g + g + 1) / (1 + 1 / g);
    case Curve::s35_arc2: return arc2_alpha(g);
  }
  return g;
}

inline std::pair<Rational, Rational> curve_g_range(Curve c) {
  switch (c) {
    case Curve::s24: return {1, 10};
    case Curve::s35_high: return {2, 10};
    case Curve::s35_conj: return {1, 10};
    case Curve::s35_arc2: return {Rational(899, 500), Rational(1839, 1000)};
  }
  return {1, 10};
}

}  // namespace pgn
