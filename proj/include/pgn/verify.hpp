#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pgn/builder.hpp"
#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"
#include "pgn/invariants.hpp"
#include "pgn/nsystem.hpp"
#include "pgn/spectra.hpp"

namespace pgn {

enum class CheckStatus { pass, fail, not_applicable };

inline std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "?";
}

struct Check {
  std::string rule;
  std::string location;
  CheckStatus status = CheckStatus::pass;
  std::optional<Rational> slack;
  std::string note;
};

struct AuditReport {
  std::vector<Check> checks;

  bool ok() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
  }
  std::size_t count(const std::string& rule, std::optional<CheckStatus> status = std::nullopt) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) {
      return c.rule == rule && (!status || c.status == *status);
    }));
  }
  std::optional<Rational> min_slack(const std::string& rule) const {
    std::optional<Rational> out;
    for (const auto& c : checks)
      if (c.rule == rule && c.slack && (!out || *c.slack < *out)) out = c.slack;
    return out;
  }
  void merge(const AuditReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
  // Records "bound - value >= 0".
  void bound(const std::string& rule, const std::string& where, const Rational& slack, std::string note = {}) {
    checks.push_back({rule, where, slack.sign() >= 0 ? CheckStatus::pass : CheckStatus::fail, slack, std::move(note)});
  }
  void skip(const std::string& rule, const std::string& where, std::string note) {
    checks.push_back({rule, where, CheckStatus::not_applicable, std::nullopt, std::move(note)});
  }
};

namespace detail {
inline std::string span(const Rational& a, const Rational& b) { return "[" + a.str() + ", " + b.str() + "]"; }
}  // namespace detail

inline AuditReport check_validation(const NSystem& sys) {
  AuditReport rep;
  auto v = validate(sys);
  if (v.ok()) {
    rep.checks.push_back({"validate", detail::span(sys.q0, sys.q1()), CheckStatus::pass, std::nullopt, {}});
  } else {
    rep.checks.push_back({v.rule_id(), v.where ? "q=" + v.where->str() : "structure", CheckStatus::fail,
                          std::nullopt, v.message});
  }
  return rep;
}

inline AuditReport check_type_staircase(const NSystem& sys, int m) {
  AuditReport rep;
  auto d = division_numbers(sys, m);
  int n = sys.n;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t k = i + 1; k < d.size(); ++k) {
      const Vec &pa = d.values[i], &pb = d.values[k];
      std::string where = detail::span(d.numbers[i], d.numbers[k]);
      std::vector<int> changed;
      for (int j = 1; j <= n; ++j)
        if (pa[j - 1] < pb[j - 1]) changed.push_back(j);
      Check c{"type_kl", where, CheckStatus::pass, std::nullopt, {}};
      if (changed.empty()) {
        c.status = CheckStatus::fail;
        c.note = "empty type";
      } else {
        int lo = changed.front(), hi = changed.back();
        if (static_cast<int>(changed.size()) != hi - lo + 1 || !(lo <= m && m < hi)) {
          c.status = CheckStatus::fail;
          c.note = "type is not {k..l} with k <= m < l";
        } else {
          Rational slack = pb[lo - 1] - pa[lo];
          for (int j = lo + 1; j <= hi; ++j) slack = std::min(slack, pb[j - 2] - pa[j - 1]);
          c.slack = slack;
          if (slack.sign() < 0) c.status = CheckStatus::fail;
          c.note = "k=" + std::to_string(lo) + " l=" + std::to_string(hi);
        }
      }
      rep.checks.push_back(std::move(c));
    }
  return rep;
}

inline AuditReport check_chi_extrema(const NSystem& sys, int m) {
  AuditReport rep;
  auto d = division_numbers(sys, m);
  auto profile = chi_profile(sys, m);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const Rational &a = d.numbers[i], &b = d.numbers[i + 1];
    std::optional<Rational> hi, lo;
    for (const auto& [q, chi] : profile) {
      if (q < a || q > b) continue;
      if (!hi || chi > *hi) hi = chi;
      if (!lo || chi < *lo) lo = chi;
    }
    Rational closed_max = d.sums[i + 1].second / d.sums[i].first;
    Rational closed_min = std::min(d.sums[i].second / d.sums[i].first, d.sums[i + 1].second / d.sums[i + 1].first);
    std::string where = detail::span(a, b);
    Check cmax{"chi_extrema_max", where, *hi == closed_max ? CheckStatus::pass : CheckStatus::fail,
               closed_max - *hi, "max " + hi->str()};
    Check cmin{"chi_extrema_min", where, *lo == closed_min ? CheckStatus::pass : CheckStatus::fail,
               *lo - closed_min, "min " + lo->str()};
    rep.checks.push_back(std::move(cmax));
    rep.checks.push_back(std::move(cmin));
  }
  return rep;
}

// For every suffix of the 1-division list holding n-2 intervals of full type,
// picks the greedy sequence and checks the summed inequality.
inline AuditReport check_mm_lemma(const NSystem& sys) {
  int n = sys.n;
  if (n < 3) fail(ErrorCode::invalid_argument, "check_mm_lemma needs n >= 3");
  AuditReport rep;
  auto d = division_numbers(sys, 1);
  std::vector<int> ell;
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    ell.push_back(type_between(d.values[i], d.values[i + 1], 1, d.numbers[i], d.numbers[i + 1]).l);
  std::size_t applied = 0;
  for (std::size_t start = 0; start < ell.size(); ++start) {
    auto full = std::count(ell.begin() + static_cast<long>(start), ell.end(), n);
    if (full < n - 2) break;
    std::vector<std::size_t> pick;
    std::size_t next = start;
    for (int j = 1; j <= n - 2; ++j) {
      while (ell[next] < n - j + 1) ++next;
      pick.push_back(next++);
    }
    std::string where = detail::span(d.numbers[pick.front()], d.numbers[pick.back() + 1]);
    bool props = true;
    for (std::size_t i = 1; i < pick.size(); ++i) {
      auto t = type_between(d.values[pick[i - 1] + 1], d.values[pick[i]], 1, d.numbers[pick[i - 1] + 1],
                            d.numbers[pick[i]]);
      if (t.l > n - static_cast<int>(i) - 1) props = false;
    }
    Rational lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < pick.size(); ++i) {
      auto [am, ap] = d.sums[pick[i]];
      auto [bm, bp] = d.sums[pick[i] + 1];
      lhs += ap - am;
      rhs += i + 1 < pick.size() ? bp : bm;
    }
    if (!props)
      rep.checks.push_back({"mm_lemma_selection", where, CheckStatus::fail, std::nullopt, "selection breaks (P2)"});
    rep.bound("mm_lemma_eq2", where, rhs - lhs);
    ++applied;
  }
  if (!applied) {
    auto full = std::count(ell.begin(), ell.end(), n);
    rep.skip("mm_lemma_eq2", detail::span(sys.q0, sys.q1()),
             "found " + std::to_string(full) + " full-type intervals, need " + std::to_string(n - 2));
  }
  return rep;
}

inline AuditReport check_global_bounds(const SelfSimilarSeed& seed) {
  AuditReport rep;
  int n = seed.n();
  for (int mp = 1; mp < n; ++mp) {
    SpectrumPoint pt = mp == seed.m() ? chi_pair_periodic(seed) : chi_pair_self_similar(seed, mp);
    std::string where = "m=" + std::to_string(mp) + " (" + pt.alpha.str() + ", " + pt.beta.str() + ")";
    ensure(pt.alpha.is_finite(), "alpha is infinite for a periodic seed");
    const Rational& a = pt.alpha.value();
    rep.bound("global_lower", where, a - Rational(n - mp, mp));
    if (pt.beta.is_infinite()) {
      rep.skip("global_finite_bounds", where, "beta is infinite");
      continue;
    }
    const Rational& b = pt.beta.value();
    rep.bound("global_order", where, b - a);
    Rational g = b / a;
    if (mp == 1 && n >= 3) {
      rep.bound("mm_n_sys_lower", where, a - (n - 1));
      rep.bound("mm_n_sys_upper", where, geometric_sum(g, n - 1) - a);
    }
    if (mp == n - 1 && n >= 3) {
      SpectrumPoint dual = chi_pair_backwards(seed, 1);
      ensure(dual == pt, "backwards route disagrees with the direct pair");
      Rational top = 1 / a, low = 1 / b;  // χ̄_1, χ̲_1 of the opposite system
      rep.bound("mm_bn_sys_upper", where, Rational(n - 1) - top);
      rep.bound("mm_bn_sys_lower", where, top - geometric_sum(low / top, n - 1));
    }
    if (n == 4 && mp == 2) {
      rep.bound("ri_lower", where, a - 1);
      rep.bound("ri_square", where, b - a * a);
    }
    if (n == 5 && mp == 2) {
      rep.bound("dim5_cond_lower", where, a - Rational(3, 2));
      rep.bound("dim5_cond", where, g * g + 1 - a);
      if (a > 2 && 3 * (a - 2) * (a - 2) >= 4)
        rep.bound("more_prop1", where, arc2_alpha(g) - a);
      else
        rep.skip("more_prop1", where, "alpha below 2(1+1/sqrt 3)");
    }
  }
  return rep;
}

inline AuditReport audit_s35_blocs(const NSystem& sys) {
  if (sys.n != 5) fail(ErrorCode::invalid_argument, "audit_s35_blocs needs n = 5");
  AuditReport rep;
  auto d = division_numbers(sys, 2);
  std::string whole = detail::span(sys.q0, sys.q1());
  if (d.size() < 2) {
    rep.skip("s35_blocs", whole, "fewer than 2 division numbers");
    return rep;
  }
  auto tr = chi_trace_finite(sys, 2);
  if (tr.alpha_hat.is_infinite() || tr.beta_hat.is_infinite() || tr.alpha_hat <= ExtReal(1)) {
    rep.skip("s35_blocs", whole, "finite-horizon ratios outside 1 < alpha <= beta < inf");
    return rep;
  }
  const Rational alpha = tr.alpha_hat.value(), g = tr.beta_hat.value() / alpha;
  auto intervals = simple_intervals(sys, 2, d);
  std::vector<std::size_t> top;  // intervals moving P_5
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (intervals[i].type.l == 5) top.push_back(i);

  auto type_of = [&](std::size_t from, std::size_t to) {  // division indices
    return type_between(d.values[from], d.values[to], 2, d.numbers[from], d.numbers[to]);
  };
  auto full = [&](std::size_t idx) { return intervals[idx].type.k == 1; };  // l = 5 already
  auto p1 = [&](std::size_t div) -> const Rational& { return d.values[div][0]; };
  auto is_type = [](const IntervalType& t, int k, int l) { return !t.changed.empty() && t.k == k && t.l == l; };

  const Rational bound1 = g * (g * g + g + 1) / (g + 1), bound2 = 2 * g, bound3 = g * (g / 2 + 1),
                 bound45 = arc2_alpha(g);
  std::string note = "alpha_hat=" + alpha.str() + " g_hat=" + g.str();
  std::size_t hits = 0;
  for (std::size_t t = 0; t + 1 < top.size(); ++t) {
    std::size_t i1 = top[t], i2 = top[t + 1];
    Rational a1 = intervals[i1].a, b2 = intervals[i2].b;
    if (is_type(type_of(i1 + 1, i2), 1, 4)) {
      rep.bound("s35_bloc_lemma2", detail::span(a1, b2), bound2 - alpha, note);
      ++hits;
    }
    if (p1(i1) == p1(i2) && full(i2)) {
      rep.bound("s35_bloc_lemma4", detail::span(a1, b2), bound45 - alpha, note);
      ++hits;
    }
    if (t + 2 >= top.size()) continue;
    std::size_t i3 = top[t + 2];
    std::string where = detail::span(a1, intervals[i3].b);
    if (full(i1) && full(i2) && full(i3)) {
      rep.bound("s35_bloc_lemma1", where, bound1 - alpha, note);
      ++hits;
    }
    bool tail123 = is_type(type_of(i2 + 1, i3), 1, 3);
    if (p1(i1) < p1(i2) && tail123) {
      rep.bound("s35_bloc_lemma3", where, bound3 - alpha, note);
      ++hits;
    }
    if (p1(i1) == p1(i2 + 1) && tail123) {
      rep.bound("s35_bloc_lemma5", where, bound45 - alpha, note);
      ++hits;
    }
  }
  rep.checks.push_back({"s35_blocs", whole, CheckStatus::pass, std::nullopt,
                        std::to_string(top.size() < 2 ? 0 : top.size() - 1) + " blocs, " + std::to_string(hits) +
                            " lemma configurations; " + note});
  return rep;
}

}  // namespace pgn
