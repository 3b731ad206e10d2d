#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"

namespace pgn {

struct Segment {
  Rational end;
  int active = 1;  // 1-based component with slope 1
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Piecewise affine map on [q0, q1] with slopes in {0,1}, stored as the value
// at q0 plus the list of segments. Components are 1-based in the API.
struct NSystem {
  int n = 2;
  Rational q0;
  Vec initial;
  std::vector<Segment> segments;

  Rational q1() const { return segments.empty() ? q0 : segments.back().end; }
  Rational seg_start(std::size_t i) const { return i == 0 ? q0 : segments[i - 1].end; }

  // q0 followed by every segment end.
  std::vector<Rational> breakpoints() const {
    std::vector<Rational> out{q0};
    for (const auto& s : segments) out.push_back(s.end);
    return out;
  }

  friend bool operator==(const NSystem&, const NSystem&) = default;
};

// P at every breakpoint, aligned with breakpoints().
inline std::vector<Vec> breakpoint_values(const NSystem& sys) {
  std::vector<Vec> out;
  out.reserve(sys.segments.size() + 1);
  out.push_back(sys.initial);
  Rational start = sys.q0;
  for (const auto& s : sys.segments) {
    Vec v = out.back();
    v[static_cast<std::size_t>(s.active - 1)] += s.end - start;
    out.push_back(std::move(v));
    start = s.end;
  }
  return out;
}

enum class ValidationCode { ok, malformed, non_monotone_breakpoints, sum_mismatch, ordering, s3 };

struct ValidationReport {
  ValidationCode code = ValidationCode::ok;
  std::optional<Rational> where;
  std::string message;

  bool ok() const { return code == ValidationCode::ok; }
  std::string rule_id() const {
    switch (code) {
      case ValidationCode::ok: return "ok";
      case ValidationCode::malformed: return "S1-structure";
      case ValidationCode::non_monotone_breakpoints: return "monotone-breakpoints";
      case ValidationCode::sum_mismatch: return "S2-sum";
      case ValidationCode::ordering: return "S2-ordering";
      case ValidationCode::s3: return "S3";
    }
    return "unknown";
  }
};

inline ValidationReport validate(const NSystem& sys) {
  auto bad = [](ValidationCode c, std::optional<Rational> q, std::string msg) {
    return ValidationReport{c, std::move(q), std::move(msg)};
  };
  if (sys.n < 2) return bad(ValidationCode::malformed, std::nullopt, "n must be >= 2");
  if (sys.initial.size() != static_cast<std::size_t>(sys.n))
    return bad(ValidationCode::malformed, std::nullopt, "initial vector has wrong length");
  if (sys.segments.empty()) return bad(ValidationCode::malformed, std::nullopt, "no segments");
  for (std::size_t i = 0; i < sys.segments.size(); ++i) {
    const auto& s = sys.segments[i];
    if (s.active < 1 || s.active > sys.n)
      return bad(ValidationCode::malformed, s.end, "active index out of range");
    if (s.end <= sys.seg_start(i))
      return bad(ValidationCode::non_monotone_breakpoints, s.end, "segment ends must strictly increase");
  }
  if (sum(sys.initial) != sys.q0)
    return bad(ValidationCode::sum_mismatch, sys.q0,
               "initial coordinates sum to " + sum(sys.initial).str() + ", expected " + sys.q0.str());

  auto values = breakpoint_values(sys);
  auto bps = sys.breakpoints();
  for (std::size_t b = 0; b < values.size(); ++b) {
    const Vec& v = values[b];
    for (int j = 0; j + 1 < sys.n; ++j)
      if (v[j] > v[j + 1])
        return bad(ValidationCode::ordering, bps[b],
                   "P_" + std::to_string(j + 1) + " > P_" + std::to_string(j + 2) + " at q=" + bps[b].str());
    if (b == 0 || b + 1 == values.size()) continue;
    int r = sys.segments[b - 1].active, s = sys.segments[b].active;
    if (r < s)
      for (int j = r; j < s; ++j)
        if (v[j - 1] != v[j])
          return bad(ValidationCode::s3, bps[b],
                     "active index rises " + std::to_string(r) + "->" + std::to_string(s) +
                         " without P_" + std::to_string(r) + "=...=P_" + std::to_string(s) + " at q=" +
                         bps[b].str());
  }
  return {};
}

inline void require_valid(const NSystem& sys) {
  auto rep = validate(sys);
  if (!rep.ok()) fail(ErrorCode::invalid_system, rep.rule_id() + ": " + rep.message);
}

inline Vec evaluate(const NSystem& sys, const Rational& q) {
  if (q < sys.q0 || q > sys.q1())
    fail(ErrorCode::out_of_domain, "q=" + q.str() + " outside [" + sys.q0.str() + ", " + sys.q1().str() + "]");
  Vec v = sys.initial;
  Rational start = sys.q0;
  for (const auto& s : sys.segments) {
    if (q <= start) break;
    Rational stop = q < s.end ? q : s.end;
    v[static_cast<std::size_t>(s.active - 1)] += stop - start;
    start = s.end;
  }
  return v;
}

inline Vec sort_vector(Vec x) {
  std::sort(x.begin(), x.end());
  return x;
}

inline std::vector<Rational> switch_numbers(const NSystem& sys) {
  std::vector<Rational> out{sys.q0};
  for (std::size_t i = 0; i + 1 < sys.segments.size(); ++i)
    if (sys.segments[i + 1].active < sys.segments[i].active) out.push_back(sys.segments[i].end);
  if (sys.q1() != sys.q0) out.push_back(sys.q1());
  return out;
}

inline bool is_rigid(const NSystem& sys, const Rational& delta) {
  if (delta.sign() <= 0) fail(ErrorCode::invalid_argument, "delta must be > 0");
  for (const auto& q : switch_numbers(sys)) {
    Vec v = evaluate(sys, q);
    std::set<Rational> seen;
    for (const auto& x : v) {
      if (x.is_zero() || !(x / delta).is_integer() || !seen.insert(x).second) return false;
    }
  }
  return true;
}

inline bool is_nondegenerate(const NSystem& sys) {
  auto values = breakpoint_values(sys);
  for (std::size_t s = 0; s + 1 < values.size(); ++s)
    for (int i = 0; i + 1 < sys.n; ++i)
      if (values[s][i] == values[s][i + 1] && values[s + 1][i] == values[s + 1][i + 1]) return false;
  return true;
}

inline NSystem opposite(const NSystem& sys) {
  NSystem out;
  out.n = sys.n;
  out.q0 = -sys.q1();
  Vec last = evaluate(sys, sys.q1());
  out.initial.reserve(last.size());
  for (auto it = last.rbegin(); it != last.rend(); ++it) out.initial.push_back(-*it);
  for (std::size_t i = sys.segments.size(); i-- > 0;)
    out.segments.push_back({-sys.seg_start(i), sys.n + 1 - sys.segments[i].active});
  return out;
}

inline bool is_n_system(const NSystem& sys) { return sys.initial.front().sign() >= 0; }
inline bool is_backwards_system(const NSystem& sys) { return evaluate(sys, sys.q1()).back().sign() <= 0; }

// Merge consecutive segments sharing an active index.
inline NSystem canonicalize(const NSystem& sys) {
  NSystem out{sys.n, sys.q0, sys.initial, {}};
  for (const auto& s : sys.segments) {
    if (!out.segments.empty() && out.segments.back().active == s.active)
      out.segments.back().end = s.end;
    else
      out.segments.push_back(s);
  }
  return out;
}

struct DivisionData {
  int m = 1;
  std::vector<Rational> numbers;
  std::vector<Vec> values;
  std::vector<std::pair<Rational, Rational>> sums;  // (A⁻, A⁺)

  std::size_t size() const { return numbers.size(); }
  std::optional<std::size_t> index_of(const Rational& q) const {
    auto it = std::lower_bound(numbers.begin(), numbers.end(), q);
    if (it == numbers.end() || *it != q) return std::nullopt;
    return static_cast<std::size_t>(it - numbers.begin());
  }
};

inline std::pair<Rational, Rational> split_sums(const Vec& v, int m) {
  return {sum(v, 0, static_cast<std::size_t>(m)), sum(v, static_cast<std::size_t>(m))};
}

inline DivisionData division_numbers(const NSystem& sys, int m) {
  if (m < 1 || m >= sys.n) fail(ErrorCode::invalid_argument, "m must lie in 1..n-1");
  if (!is_nondegenerate(sys)) fail(ErrorCode::degenerate_system, "division numbers need a non-degenerate system");
  DivisionData d;
  d.m = m;
  auto values = breakpoint_values(sys);
  auto bps = sys.breakpoints();
  for (std::size_t b = 0; b < values.size(); ++b) {
    if (values[b][m - 1] != values[b][m]) continue;
    d.numbers.push_back(bps[b]);
    d.sums.push_back(split_sums(values[b], m));
    d.values.push_back(std::move(values[b]));
  }
  return d;
}

struct IntervalType {
  Rational a, b;
  std::vector<int> changed;
  int k = 0, l = 0;  // 0 when empty
  friend bool operator==(const IntervalType&, const IntervalType&) = default;
};

// Changed set between two m-division points; checks consecutiveness, the
// straddle k <= m < l and the staircase P_j(a) <= P_{j-1}(b).
inline IntervalType type_between(const Vec& pa, const Vec& pb, int m, const Rational& a, const Rational& b) {
  IntervalType t{a, b, {}, 0, 0};
  int n = static_cast<int>(pa.size());
  for (int j = 1; j <= n; ++j)
    if (pa[j - 1] < pb[j - 1]) t.changed.push_back(j);
  if (t.changed.empty()) return t;
  t.k = t.changed.front();
  t.l = t.changed.back();
  ensure(static_cast<int>(t.changed.size()) == t.l - t.k + 1,
         "changed set on [" + a.str() + ", " + b.str() + "] is not consecutive");
  ensure(t.k <= m && m < t.l, "changed set on [" + a.str() + ", " + b.str() + "] does not straddle m");
  for (int j = t.k + 1; j <= t.l; ++j)
    ensure(pa[j - 1] <= pb[j - 2], "staircase P_j(a) <= P_{j-1}(b) fails for j=" + std::to_string(j));
  return t;
}

inline IntervalType interval_type(const NSystem& sys, int m, const Rational& a, const Rational& b) {
  if (a > b) fail(ErrorCode::invalid_argument, "interval_type needs a <= b");
  auto d = division_numbers(sys, m);
  auto ia = d.index_of(a), ib = d.index_of(b);
  if (!ia || !ib) fail(ErrorCode::not_division_number, "endpoints must be " + std::to_string(m) + "-division numbers");
  return type_between(d.values[*ia], d.values[*ib], m, a, b);
}

struct SimpleInterval {
  Rational a, b, t;
  IntervalType type;
};

inline std::vector<SimpleInterval> simple_intervals(const NSystem& sys, int m, const DivisionData& d) {
  std::vector<SimpleInterval> out;
  auto bps = sys.breakpoints();
  auto values = breakpoint_values(sys);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const Rational &a = d.numbers[i], &b = d.numbers[i + 1];
    Rational t = d.sums[i].first + d.sums[i + 1].second;
    ensure(a < t && t < b, "pivot outside the simple interval [" + a.str() + ", " + b.str() + "]");
    Rational base = d.sums[i].first;
    for (std::size_t q = 0; q < bps.size(); ++q) {
      if (bps[q] < a || bps[q] > b) continue;
      Rational s = sum(values[q], 0, static_cast<std::size_t>(m));
      Rational expect = bps[q] <= t ? base : base + (bps[q] - t);
      ensure(s == expect, "S_m^- is not flat-then-diagonal on [" + a.str() + ", " + b.str() + "]");
    }
    out.push_back({a, b, t, type_between(d.values[i], d.values[i + 1], m, a, b)});
  }
  return out;
}

inline std::vector<SimpleInterval> simple_intervals(const NSystem& sys, int m) {
  return simple_intervals(sys, m, division_numbers(sys, m));
}

struct GraphEdge {
  Rational qa, ya, qb, yb;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
  friend auto operator<=>(const GraphEdge& x, const GraphEdge& y) {
    if (auto c = x.qa <=> y.qa; c != 0) return c;
    if (auto c = x.ya <=> y.ya; c != 0) return c;
    if (auto c = x.qb <=> y.qb; c != 0) return c;
    return x.yb <=> y.yb;
  }
};

// One edge per component per segment, duplicates included.
inline std::vector<GraphEdge> combined_graph_export(const NSystem& sys) {
  std::vector<GraphEdge> out;
  auto values = breakpoint_values(sys);
  auto bps = sys.breakpoints();
  for (std::size_t s = 0; s + 1 < values.size(); ++s)
    for (int j = 0; j < sys.n; ++j) out.push_back({bps[s], values[s][j], bps[s + 1], values[s + 1][j]});
  return out;
}

// Rebuilds a non-degenerate system from its combined graph alone. Duplicate
// edges are collapsed first; the result is in canonical (merged) form.
inline NSystem reconstruct_from_combined_graph(int n, std::vector<GraphEdge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.empty()) fail(ErrorCode::invalid_argument, "empty graph");
  std::set<Rational> cuts;
  for (const auto& e : edges) {
    if (e.qb <= e.qa) fail(ErrorCode::invalid_argument, "edge with empty extent");
    Rational slope = (e.yb - e.ya) / (e.qb - e.qa);
    if (slope != 0 && slope != 1) fail(ErrorCode::invalid_argument, "edge slope outside {0,1}");
    cuts.insert(e.qa);
    cuts.insert(e.qb);
  }
  std::vector<Rational> qs(cuts.begin(), cuts.end());
  NSystem out;
  out.n = n;
  out.q0 = qs.front();
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
    const Rational &u = qs[i], &v = qs[i + 1];
    Rational mid = (u + v) / 2;
    std::vector<std::pair<Rational, bool>> here;  // value at mid, rising
    Vec at_u;
    for (const auto& e : edges) {
      if (e.qa > u || e.qb < v) continue;
      bool rising = e.yb != e.ya;
      here.push_back({e.ya + (rising ? mid - e.qa : Rational(0)), rising});
      at_u.push_back(e.ya + (rising ? u - e.qa : Rational(0)));
    }
    if (here.size() != static_cast<std::size_t>(n))
      fail(ErrorCode::invalid_argument, "graph does not have n branches over (" + u.str() + ", " + v.str() + ")");
    std::sort(here.begin(), here.end());
    int active = 0;
    for (int j = 0; j < n; ++j) {
      if (j + 1 < n && here[j].first == here[j + 1].first)
        fail(ErrorCode::degenerate_system, "coinciding branches over an open interval");
      if (here[j].second) {
        if (active) fail(ErrorCode::invalid_argument, "two rising branches");
        active = j + 1;
      }
    }
    if (!active) fail(ErrorCode::invalid_argument, "no rising branch");
    if (i == 0) out.initial = sort_vector(at_u);
    out.segments.push_back({v, active});
  }
  return canonicalize(out);
}

}  // namespace pgn
