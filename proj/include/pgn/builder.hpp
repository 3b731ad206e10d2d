#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/nsystem.hpp"

namespace pgn {

struct Range {
  int k = 1, l = 2;
  friend bool operator==(const Range&, const Range&) = default;
  friend auto operator<=>(const Range&, const Range&) = default;
};

struct DivisionPointSeq {
  int m = 1, n = 2;
  std::vector<Vec> points;
  std::vector<Range> ranges;  // ranges[i] describes points[i] -> points[i+1]
};

namespace detail {

[[noreturn]] inline void seq_error(std::size_t i, const std::string& what) {
  fail(ErrorCode::invalid_division_seq, "point " + std::to_string(i + 1) + ": " + what);
}

// a_1 < ... < a_m = a_{m+1} < ... < a_n, optionally with 0 <= a_1.
inline void check_division_point(const Vec& a, int m, std::size_t i, bool nonneg) {
  int n = static_cast<int>(a.size());
  if (n < 2 || m < 1 || m >= n) seq_error(i, "need 1 <= m < n");
  if (nonneg && a[0].sign() < 0) seq_error(i, "a_1 must be >= 0");
  for (int j = 1; j < n; ++j) {
    if (j == m) {
      if (a[j - 1] != a[j]) seq_error(i, "a_m != a_{m+1}");
    } else if (a[j - 1] >= a[j]) {
      seq_error(i, "ordering fails between j=" + std::to_string(j) + " and j=" + std::to_string(j + 1));
    }
  }
}

inline Range check_division_pair(const Vec& a, const Vec& b, int m, std::size_t i) {
  int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) seq_error(i, "dimension mismatch");
  std::vector<int> changed;
  for (int j = 1; j <= n; ++j) {
    if (b[j - 1] < a[j - 1]) seq_error(i, "coordinate j=" + std::to_string(j) + " decreases");
    if (a[j - 1] < b[j - 1]) changed.push_back(j);
  }
  if (changed.empty()) seq_error(i, "consecutive points must be distinct");
  Range r{changed.front(), changed.back()};
  if (static_cast<int>(changed.size()) != r.l - r.k + 1) {
    for (int j = r.k; j <= r.l; ++j)
      if (a[j - 1] == b[j - 1]) seq_error(i, "gap in changed set at j=" + std::to_string(j));
  }
  if (!(r.k <= m && m < r.l)) seq_error(i, "changed set does not straddle m");
  for (int j = r.k + 1; j <= r.l; ++j)
    if (a[j - 1] > b[j - 2]) seq_error(i, "staircase a_j <= b_{j-1} fails at j=" + std::to_string(j));
  return r;
}

}  // namespace detail

inline DivisionPointSeq validate_division_seq(const std::vector<Vec>& points, int m) {
  if (points.size() < 2) fail(ErrorCode::invalid_division_seq, "need at least 2 points");
  DivisionPointSeq seq{m, static_cast<int>(points.front().size()), points, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != seq.n) detail::seq_error(i, "dimension mismatch");
    detail::check_division_point(points[i], m, i, true);
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    seq.ranges.push_back(detail::check_division_pair(points[i], points[i + 1], m, i));
  return seq;
}

// Certifies the defining conditions of the simple bridge; throws on failure.
inline void certify_bridge(const NSystem& sys, const Vec& ua, const Vec& ub, int m, Range r) {
  auto rep = validate(sys);
  ensure(rep.ok(), "bridge fails validation: " + rep.message);
  ensure(is_nondegenerate(sys), "bridge is degenerate");
  ensure(sys.initial == ua, "bridge start mismatch");
  auto values = breakpoint_values(sys);
  ensure(values.back() == ub, "bridge end mismatch");
  int n = sys.n;
  std::vector<int> ties(static_cast<std::size_t>(n), 0);
  for (std::size_t b = 1; b + 1 < values.size(); ++b)
    for (int j = 1; j < n; ++j)
      if (values[b][j - 1] == values[b][j]) ++ties[static_cast<std::size_t>(j)];
  // P_m < P_{m+1} strictly inside; values at segment midpoints are averages of
  // the endpoint values, so endpoints plus breakpoints settle it.
  ensure(ties[static_cast<std::size_t>(m)] == 0, "P_m meets P_{m+1} inside the bridge");
  for (std::size_t s = 0; s + 1 < values.size(); ++s) {
    bool first_tie = values[s][m - 1] == values[s][m];
    bool second_tie = values[s + 1][m - 1] == values[s + 1][m];
    ensure(!(first_tie && second_tie), "P_m = P_{m+1} on a whole segment");
  }
  for (int j = r.k; j < r.l; ++j) {
    if (j == m) continue;
    ensure(ties[static_cast<std::size_t>(j)] == 1,
           "expected exactly one tie P_" + std::to_string(j) + " = P_" + std::to_string(j + 1));
  }
  // S_m^- flat, then rising.
  bool rising = false;
  for (const auto& s : sys.segments) {
    bool low = s.active <= m;
    ensure(!(rising && !low), "S_m^- is not flat-then-diagonal");
    rising = rising || low;
  }
}

// The simple bridge from ua (at a = Σua) to ub (at b = Σub).
inline NSystem bridge(const Vec& ua, const Vec& ub, int m) {
  if (ua.size() != ub.size()) fail(ErrorCode::invalid_division_seq, "dimension mismatch");
  detail::check_division_point(ua, m, 0, false);
  detail::check_division_point(ub, m, 1, false);
  Rational a = sum(ua), b = sum(ub);
  if (a >= b) fail(ErrorCode::invalid_division_seq, "bridge needs a < b");
  Range r = detail::check_division_pair(ua, ub, m, 0);
  int k = r.k, l = r.l;

  NSystem sys{static_cast<int>(ua.size()), a, ua, {}};
  Vec cur = ua;
  Rational q = a;
  auto rise = [&](int j, const Rational& target) {
    Rational len = target - cur[static_cast<std::size_t>(j - 1)];
    ensure(len.sign() >= 0, "bridge move would lower a component");
    if (len.is_zero()) return;
    q += len;
    cur[static_cast<std::size_t>(j - 1)] = target;
    sys.segments.push_back({q, j});
  };
  auto A = [&](int j) { return ua[static_cast<std::size_t>(j - 1)]; };
  auto B = [&](int j) { return ub[static_cast<std::size_t>(j - 1)]; };

  for (int j = m + 1; j < l; ++j) rise(j, A(j + 1));
  rise(l, B(l));
  for (int j = l - 1; j > m; --j) rise(j, B(j));
  for (int j = m; j > k; --j) rise(j, B(j - 1));
  for (int j = k; j <= m; ++j) rise(j, B(j));

  ensure(q == b, "bridge length mismatch");
  certify_bridge(sys, ua, ub, m, r);
  return sys;
}

inline NSystem chain(const DivisionPointSeq& seq) {
  NSystem out{seq.n, sum(seq.points.front()), seq.points.front(), {}};
  for (std::size_t i = 0; i + 1 < seq.points.size(); ++i) {
    NSystem br = bridge(seq.points[i], seq.points[i + 1], seq.m);
    out.segments.insert(out.segments.end(), br.segments.begin(), br.segments.end());
  }
  out = canonicalize(out);
  auto rep = validate(out);
  ensure(rep.ok(), "chain fails validation: " + rep.message);
  ensure(is_nondegenerate(out), "chain is degenerate");
  auto d = division_numbers(out, seq.m);
  ensure(d.size() == seq.points.size(), "chain has extra or missing division numbers");
  for (std::size_t i = 0; i < seq.points.size(); ++i)
    ensure(d.values[i] == seq.points[i], "chain division point differs from anchor");
  return out;
}

struct SelfSimilarSeed {
  DivisionPointSeq seq;  // s points; ranges has s entries, the last one wrapping to ρ·points[0]
  Rational rho;

  int m() const { return seq.m; }
  int n() const { return seq.n; }
  std::size_t s() const { return seq.points.size(); }
  // Point i (0-based), extended by ua^(i+s) = ρ·ua^(i).
  Vec point(std::size_t i) const {
    std::size_t p = i / s();
    return scale(seq.points[i % s()], pow(rho, static_cast<int>(p)));
  }
};

inline SelfSimilarSeed make_seed(const std::vector<Vec>& points, int m, const Rational& rho) {
  if (points.empty()) fail(ErrorCode::invalid_seed, "seed needs at least one point");
  if (rho <= 1) fail(ErrorCode::invalid_seed, "rho must be > 1");
  for (const auto& x : points.front())
    if (x.sign() <= 0) fail(ErrorCode::invalid_seed, "first point must be strictly positive");
  std::vector<Vec> ext = points;
  ext.push_back(scale(points.front(), rho));
  DivisionPointSeq full;
  try {
    full = validate_division_seq(ext, m);
  } catch (const Error& e) {
    fail(ErrorCode::invalid_seed, e.what());
  }
  full.points.pop_back();
  return {full, rho};
}

inline NSystem unfold_self_similar(const SelfSimilarSeed& seed, int periods) {
  if (periods < 1) fail(ErrorCode::invalid_argument, "periods must be >= 1");
  DivisionPointSeq seq{seed.m(), seed.n(), {}, {}};
  std::size_t total = static_cast<std::size_t>(periods) * seed.s();
  for (std::size_t i = 0; i <= total; ++i) seq.points.push_back(seed.point(i));
  for (std::size_t i = 0; i < total; ++i) seq.ranges.push_back(seed.seq.ranges[i % seed.s()]);
  return chain(seq);
}

}  // namespace pgn
