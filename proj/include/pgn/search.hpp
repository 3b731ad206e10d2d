#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "pgn/builder.hpp"
#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/invariants.hpp"
#include "pgn/lp.hpp"

namespace pgn {

struct Pattern {
  int m = 1, n = 2;
  std::vector<Range> ranges;

  std::size_t s() const { return ranges.size(); }
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      if (i) out += '-';
      out += std::to_string(ranges[i].k) + ":" + std::to_string(ranges[i].l);
    }
    return out;
  }
  static Pattern parse(int m, int n, const std::string& text) {
    Pattern p{m, n, {}};
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto dash = text.find('-', pos);
      std::string item = text.substr(pos, dash == std::string::npos ? std::string::npos : dash - pos);
      auto colon = item.find(':');
      if (colon == std::string::npos) fail(ErrorCode::parse_error, "pattern item '" + item + "' needs k:l");
      auto num = [&](std::string_view t) {
        int v = 0;
        auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || end != t.data() + t.size())
          fail(ErrorCode::parse_error, "pattern item '" + item + "' needs integers k:l");
        return v;
      };
      std::string_view view(item);
      p.ranges.push_back({num(view.substr(0, colon)), num(view.substr(colon + 1))});
      if (dash == std::string::npos) break;
      pos = dash + 1;
    }
    p.check();
    return p;
  }
  void check() const {
    if (ranges.empty()) fail(ErrorCode::invalid_argument, "pattern needs at least one range");
    for (const auto& r : ranges)
      if (!(1 <= r.k && r.k <= m && m < r.l && r.l <= n))
        fail(ErrorCode::invalid_argument, "range " + std::to_string(r.k) + ":" + std::to_string(r.l) + " does not straddle m");
  }
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

namespace detail {

inline std::size_t var_index(const Pattern& p, std::size_t i, int j) {
  return i * static_cast<std::size_t>(p.n) + static_cast<std::size_t>(j - 1);
}

}  // namespace detail

struct SearchLP {
  LPInstance inst;
  int slack_var = -1;  // index of the strictness variable, if any
};

// Linear constraints on the s·n coordinates for fixed ρ, α, g.  With
// with_slack, strict parts read "diff >= t" for an extra variable t <= 1.
inline SearchLP build_search_lp(const Pattern& p, const Rational& rho, const Rational& alpha, const Rational& g,
                                const Rational& margin, bool with_slack) {
  p.check();
  std::size_t s = p.s(), nv = s * static_cast<std::size_t>(p.n);
  SearchLP out;
  out.inst.num_vars = static_cast<int>(nv + (with_slack ? 1 : 0));
  if (with_slack) out.slack_var = static_cast<int>(nv);
  std::size_t width = static_cast<std::size_t>(out.inst.num_vars);

  auto coord = [&](std::size_t i, int j) {
    Vec c(width);
    if (i == s)
      c[detail::var_index(p, 0, j)] = rho;
    else
      c[detail::var_index(p, i, j)] = 1;
    return c;
  };
  auto diff = [&](Vec a, const Vec& b) {
    for (std::size_t t = 0; t < a.size(); ++t) a[t] -= b[t];
    return a;
  };
  auto strict = [&](Vec d, const std::string& tag) {
    if (with_slack) {
      d[static_cast<std::size_t>(out.slack_var)] = -1;
      out.inst.add(std::move(d), Rel::ge, 0, tag, true);
    } else {
      out.inst.add(std::move(d), Rel::ge, margin, tag, true);
    }
  };
  auto sums = [&](std::size_t i, const Rational& w_lo, const Rational& w_hi) {
    Vec c(width);
    for (int j = 1; j <= p.n; ++j) {
      Vec x = coord(i, j);
      const Rational& w = j <= p.m ? w_lo : w_hi;
      for (std::size_t t = 0; t < width; ++t)
        if (!x[t].is_zero()) c[t] += w * x[t];
    }
    return c;
  };

  out.inst.add(coord(0, 1), Rel::eq, 1, "normalization");
  for (std::size_t i = 0; i < s; ++i)
    for (int j = 1; j < p.n; ++j) {
      Vec d = diff(coord(i, j + 1), coord(i, j));
      if (j == p.m)
        out.inst.add(std::move(d), Rel::eq, 0, "ordering");
      else
        strict(std::move(d), "ordering");
    }
  for (std::size_t i = 0; i < s; ++i) {
    const Range& r = p.ranges[i];
    std::string tag = i + 1 == s ? "wrap" : "transition";
    for (int j = 1; j <= p.n; ++j) {
      Vec d = diff(coord(i + 1, j), coord(i, j));
      if (j < r.k || j > r.l)
        out.inst.add(std::move(d), Rel::eq, 0, tag);
      else
        strict(std::move(d), tag);
    }
    for (int j = r.k + 1; j <= r.l; ++j) out.inst.add(diff(coord(i, j), coord(i + 1, j - 1)), Rel::le, 0, "staircase");
  }
  for (std::size_t i = 0; i < s; ++i) {
    out.inst.add(sums(i, -alpha, 1), Rel::ge, 0, "ratio_lower");
    Vec up = sums(i + 1, 0, 1);
    Vec lo = sums(i, g * alpha, 0);
    out.inst.add(diff(up, lo), Rel::le, 0, "ratio_upper");
  }
  if (with_slack) {
    Vec t(width);
    t[static_cast<std::size_t>(out.slack_var)] = 1;
    out.inst.add(std::move(t), Rel::le, 1, "margin");
  }
  return out;
}

inline LPInstance build_lp(const Pattern& p, const Rational& rho, const Rational& alpha, const Rational& g,
                           const Rational& margin) {
  return build_search_lp(p, rho, alpha, g, margin, false).inst;
}

// Coordinates of the s points from an LP solution.
inline std::vector<Vec> witness_points(const Pattern& p, const Vec& x) {
  std::vector<Vec> pts(p.s(), Vec(static_cast<std::size_t>(p.n)));
  for (std::size_t i = 0; i < p.s(); ++i)
    for (int j = 1; j <= p.n; ++j) pts[i][static_cast<std::size_t>(j - 1)] = x[detail::var_index(p, i, j)];
  return pts;
}

struct MaxAlphaResult {
  Rational alpha_lo, alpha_hi;
  std::vector<Vec> witness;
  std::optional<SelfSimilarSeed> seed;
  std::optional<SpectrumPoint> seed_point;
  int solves = 0;
};

// Most strictly ordered feasible point at α; a seed when its slack is positive.
inline std::optional<SelfSimilarSeed> strict_witness_seed(const Pattern& p, const Rational& rho, const Rational& alpha,
                                                          const Rational& g) {
  SearchLP lp = build_search_lp(p, rho, alpha, g, 0, true);
  Vec obj(static_cast<std::size_t>(lp.inst.num_vars));
  obj[static_cast<std::size_t>(lp.slack_var)] = 1;
  LPResult r = lp_maximize(lp.inst, obj);
  if (!r.feasible() || r.value.sign() <= 0) return std::nullopt;
  Vec x(r.x.begin(), r.x.end() - 1);
  return make_seed(witness_points(p, x), p.m, rho);
}

inline MaxAlphaResult max_alpha(const Pattern& p, const Rational& rho, const Rational& g, const Rational& lo,
                                const Rational& hi, int iters, const Rational& margin = 0) {
  if (rho <= 1) fail(ErrorCode::invalid_argument, "rho must be > 1");
  if (lo >= hi) fail(ErrorCode::bracket_invalid, "window must satisfy lo < hi");
  MaxAlphaResult out;
  auto solve = [&](const Rational& a) {
    ++out.solves;
    return lp_feasible(build_lp(p, rho, a, g, margin));
  };
  LPResult at_lo = solve(lo);
  if (!at_lo.feasible()) fail(ErrorCode::bracket_invalid, "infeasible at the lower end " + lo.str());
  if (solve(hi).feasible()) fail(ErrorCode::bracket_invalid, "feasible at the upper end " + hi.str());
  auto lift = [&](const Vec& x) { return chi_pair_points(witness_points(p, x), rho, p.m).alpha.value(); };
  out.alpha_lo = std::max(lo, lift(at_lo.x));
  out.alpha_hi = hi;
  out.witness = witness_points(p, at_lo.x);
  for (int it = 0; it < iters; ++it) {
    Rational mid = (out.alpha_lo + out.alpha_hi) / 2;
    LPResult r = solve(mid);
    if (r.feasible()) {
      Rational reach = lift(r.x);
      ensure(reach < out.alpha_hi, "witness ratio reaches an infeasible level");
      out.alpha_lo = std::max(mid, reach);
      out.witness = witness_points(p, r.x);
    } else {
      out.alpha_hi = mid;
    }
  }
  // The boundary is often a simple fraction just above the last feasible midpoint.
  Rational simple = simplest_between(out.alpha_lo, out.alpha_hi);
  if (simple > out.alpha_lo && simple < out.alpha_hi) {
    LPResult r = solve(simple);
    if (r.feasible()) {
      out.alpha_lo = std::max(simple, lift(r.x));
      out.witness = witness_points(p, r.x);
    }
  }
  if (margin.is_zero()) {
    out.seed = strict_witness_seed(p, rho, out.alpha_lo, g);
    if (out.seed) out.seed_point = chi_pair_periodic(*out.seed);
  }
  return out;
}

inline std::vector<Pattern> enumerate_patterns(int m, int n, int s, bool dedup) {
  if (m < 1 || m >= n || s < 1) fail(ErrorCode::invalid_argument, "need 1 <= m < n and s >= 1");
  std::vector<Range> choices;
  for (int k = 1; k <= m; ++k)
    for (int l = m + 1; l <= n; ++l) choices.push_back({k, l});
  std::vector<Pattern> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
  for (;;) {
    bool keep = true;
    if (dedup)
      for (int r = 1; r < s && keep; ++r) {
        std::vector<std::size_t> rot(idx.begin() + r, idx.end());
        rot.insert(rot.end(), idx.begin(), idx.begin() + r);
        if (rot < idx) keep = false;
      }
    if (keep) {
      Pattern p{m, n, {}};
      for (auto i : idx) p.ranges.push_back(choices[i]);
      out.push_back(std::move(p));
    }
    int pos = s - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == choices.size()) idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return out;
}

inline std::vector<Rational> default_rho_grid(const Rational& g, int s) {
  std::vector<Rational> out;
  Rational base = pow(g, s);
  for (int j = -2; j <= 2; ++j) {
    Rational r = base * pow2(j);
    if (r > 1 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int default_threads() {
  if (const char* env = std::getenv("PGN_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

// Runs fn(0..count-1) on up to `threads` workers; results land by index.
template <class T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) out[i] = fn(i);
  };
  int t = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

struct ProbeConfig {
  int m = 2, n = 5;
  std::vector<Rational> g_grid;
  int s_max = 2;
  std::optional<std::vector<Rational>> rho_grid;  // default_rho_grid when absent
  int iters = 60;
  int threads = 1;
  bool all_rows = false;
  int scan_points = 32;
};

struct ProbeRow {
  int m = 0, n = 0;
  Rational g;
  Pattern pattern;
  Rational rho, alpha_lo, alpha_hi, beta;
};

namespace detail {

inline bool probe_row_before(const ProbeRow& a, const ProbeRow& b) {
  if (a.g != b.g) return a.g < b.g;
  if (a.alpha_lo != b.alpha_lo) return a.alpha_lo > b.alpha_lo;
  if (a.pattern.ranges != b.pattern.ranges) return a.pattern.ranges < b.pattern.ranges;
  return a.rho < b.rho;
}

}  // namespace detail

inline std::vector<ProbeRow> probe_boundary(const ProbeConfig& cfg) {
  struct Task {
    Rational g, rho;
    Pattern pattern;
  };
  std::vector<Task> tasks;
  for (const auto& g : cfg.g_grid)
    for (int s = 1; s <= cfg.s_max; ++s) {
      auto rhos = cfg.rho_grid ? *cfg.rho_grid : default_rho_grid(g, s);
      for (const auto& p : enumerate_patterns(cfg.m, cfg.n, s, true))
        for (const auto& rho : rhos)
          if (rho > 1) tasks.push_back({g, rho, p});
    }
  Rational floor_alpha(cfg.n - cfg.m, cfg.m);
  const Rational cap = pow2(20);
  // Feasible α form a window that usually misses the floor, so a coarse scan
  // locates it before bisecting on its upper edge. Narrow windows can be missed.
  std::function<std::optional<ProbeRow>(std::size_t)> run = [&](std::size_t i) -> std::optional<ProbeRow> {
    const Task& t = tasks[i];
    auto feasible = [&](const Rational& a) { return lp_feasible(build_lp(t.pattern, t.rho, a, t.g, 0)).feasible(); };
    Rational top = floor_alpha * geometric_sum(t.g, cfg.n - 1);
    if (top <= floor_alpha) top = floor_alpha + 1;
    Rational step = (top - floor_alpha) / cfg.scan_points;
    std::optional<Rational> lo;
    for (int k = cfg.scan_points; k >= 0 && !lo; --k) {
      Rational a = floor_alpha + step * k;
      if (feasible(a)) lo = a;
    }
    if (!lo) return std::nullopt;
    Rational hi = *lo + step;
    while (feasible(hi)) {
      if (hi > cap) return std::nullopt;
      *lo = hi;
      hi *= 2;
    }
    auto r = max_alpha(t.pattern, t.rho, t.g, *lo, hi, cfg.iters);
    return ProbeRow{cfg.m, cfg.n, t.g, t.pattern, t.rho, r.alpha_lo, r.alpha_hi, t.g * r.alpha_lo};
  };
  auto results = parallel_map(tasks.size(), cfg.threads, run);
  std::vector<ProbeRow> rows;
  for (auto& r : results)
    if (r) rows.push_back(std::move(*r));
  std::sort(rows.begin(), rows.end(), detail::probe_row_before);
  if (cfg.all_rows) return rows;
  std::vector<ProbeRow> best;
  for (auto& r : rows)
    if (best.empty() || best.back().g != r.g) best.push_back(std::move(r));
  return best;
}

}  // namespace pgn
