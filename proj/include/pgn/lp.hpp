#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgn/error.hpp"
#include "pgn/exactnum.hpp"

namespace pgn {

enum class Rel { le, ge, eq };

struct LinearConstraint {
  Vec coeffs;  // dense, one per variable
  Rel rel = Rel::le;
  Rational rhs;
  std::string tag;
  bool strict = false;  // a relaxed strict inequality "diff >= margin"
};

// Feasible set {x >= 0 : every constraint holds}. Variables are implicitly
// non-negative.
struct LPInstance {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;

  LinearConstraint& add(Vec coeffs, Rel rel, Rational rhs, std::string tag, bool strict = false) {
    coeffs.resize(static_cast<std::size_t>(num_vars));
    constraints.push_back({std::move(coeffs), rel, std::move(rhs), std::move(tag), strict});
    return constraints.back();
  }
};

inline bool satisfies(const LinearConstraint& c, const Vec& x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < c.coeffs.size(); ++j)
    if (!c.coeffs[j].is_zero()) lhs += c.coeffs[j] * x[j];
  switch (c.rel) {
    case Rel::le: return lhs <= c.rhs;
    case Rel::ge: return lhs >= c.rhs;
    case Rel::eq: return lhs == c.rhs;
  }
  return false;
}

inline bool satisfies(const LPInstance& inst, const Vec& x) {
  if (static_cast<int>(x.size()) != inst.num_vars) return false;
  for (const auto& v : x)
    if (v.sign() < 0) return false;
  for (const auto& c : inst.constraints)
    if (!satisfies(c, x)) return false;
  return true;
}

namespace detail {

// Affine form c·y + k over the reduced variables.
struct Affine {
  Vec c;
  Rational k;
};

// Equalities substituted away; what remains is {A y <= b, y >= 0}.
struct Reduced {
  bool infeasible = false;
  int full_vars = 0;
  std::vector<int> kept;             // reduced index -> original variable
  std::vector<Affine> expr;          // original variable -> affine in reduced vars
  std::vector<Vec> A;
  Vec b;

  Vec lift(const Vec& y) const {
    Vec x;
    for (const auto& e : expr) {
      Rational v = e.k;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!e.c[j].is_zero()) v += e.c[j] * y[j];
      x.push_back(v);
    }
    return x;
  }
};

inline Reduced presolve(const LPInstance& inst) {
  std::size_t nv = static_cast<std::size_t>(inst.num_vars);
  // Work in the original coordinates first: expr[i] over all nv variables.
  std::vector<Affine> expr(nv, Affine{Vec(nv), Rational(0)});
  for (std::size_t i = 0; i < nv; ++i) expr[i].c[i] = 1;
  std::vector<bool> eliminated(nv, false);
  Reduced red;
  red.full_vars = inst.num_vars;

  auto substitute = [&](const Vec& coeffs) {
    Affine out{Vec(nv), Rational(0)};
    for (std::size_t i = 0; i < nv; ++i) {
      if (coeffs[i].is_zero()) continue;
      out.k += coeffs[i] * expr[i].k;
      for (std::size_t j = 0; j < nv; ++j)
        if (!expr[i].c[j].is_zero()) out.c[j] += coeffs[i] * expr[i].c[j];
    }
    return out;
  };

  for (const auto& con : inst.constraints) {
    if (con.rel != Rel::eq) continue;
    Affine f = substitute(con.coeffs);
    Rational rhs = con.rhs - f.k;
    std::size_t p = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (!f.c[j].is_zero()) {
        p = j;
        break;
      }
    if (p == nv) {
      if (!rhs.is_zero()) red.infeasible = true;
      continue;
    }
    // x_p = (rhs - Σ_{j≠p} f_j x_j) / f_p
    Affine sol{Vec(nv), rhs / f.c[p]};
    for (std::size_t j = 0; j < nv; ++j)
      if (j != p && !f.c[j].is_zero()) sol.c[j] = -f.c[j] / f.c[p];
    for (auto& e : expr) {
      if (e.c[p].is_zero()) continue;
      Rational w = e.c[p];
      e.c[p] = 0;
      e.k += w * sol.k;
      for (std::size_t j = 0; j < nv; ++j)
        if (!sol.c[j].is_zero()) e.c[j] += w * sol.c[j];
    }
    eliminated[p] = true;
  }

  std::vector<int> index(nv, -1);
  for (std::size_t j = 0; j < nv; ++j)
    if (!eliminated[j]) {
      index[j] = static_cast<int>(red.kept.size());
      red.kept.push_back(static_cast<int>(j));
    }
  std::size_t nr = red.kept.size();
  auto compress = [&](const Affine& a) {
    Affine out{Vec(nr), a.k};
    for (std::size_t j = 0; j < nv; ++j)
      if (!a.c[j].is_zero()) out.c[static_cast<std::size_t>(index[j])] = a.c[j];
    return out;
  };
  for (const auto& e : expr) red.expr.push_back(compress(e));

  auto add_le = [&](const Affine& f, const Rational& rhs) {  // f <= rhs
    Vec row = f.c;
    Rational r = rhs - f.k;
    bool all_zero = std::all_of(row.begin(), row.end(), [](const Rational& v) { return v.is_zero(); });
    if (all_zero) {
      if (r.sign() < 0) red.infeasible = true;
      return;
    }
    red.A.push_back(std::move(row));
    red.b.push_back(std::move(r));
  };
  auto negate = [](Affine f) {
    for (auto& v : f.c) v = -v;
    f.k = -f.k;
    return f;
  };
  for (const auto& con : inst.constraints) {
    if (con.rel == Rel::eq) continue;
    Affine f = compress(substitute(con.coeffs));
    if (con.rel == Rel::le)
      add_le(f, con.rhs);
    else
      add_le(negate(f), -con.rhs);
  }
  for (std::size_t j = 0; j < nv; ++j)
    if (eliminated[j]) add_le(negate(red.expr[j]), 0);
  return red;
}

// Dictionary simplex over exact rationals with Bland's rule:
// maximize c·x subject to A x <= b, x >= 0.
class Simplex {
 public:
  Simplex(const std::vector<Vec>& A, const Vec& b, const Vec& c)
      : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), B_(m_), N_(n_ + 1),
        D_(static_cast<std::size_t>(m_ + 2), Vec(static_cast<std::size_t>(n_ + 2))) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) at(i, j) = A[i][j];
      B_[i] = n_ + i;
      at(i, n_) = -1;
      at(i, n_ + 1) = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      at(m_, j) = -c[j];
    }
    N_[n_] = -1;
    at(m_ + 1, n_) = 1;
  }

  enum class Status { optimal, infeasible, unbounded };

  Status solve(Vec& x, Rational& value) {
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    if (m_ > 0 && at(r, n_ + 1).sign() < 0) {
      pivot(r, n_);
      if (!run(2) || at(m_ + 1, n_ + 1).sign() < 0) return Status::infeasible;
      for (int i = 0; i < m_; ++i) {
        if (B_[i] != -1) continue;
        for (int j = 0; j <= n_; ++j)
          if (!at(i, j).is_zero()) {
            pivot(i, j);
            break;
          }
      }
    }
    bool bounded = run(1);
    x.assign(static_cast<std::size_t>(n_), Rational(0));
    for (int i = 0; i < m_; ++i)
      if (B_[i] >= 0 && B_[i] < n_) x[static_cast<std::size_t>(B_[i])] = at(i, n_ + 1);
    value = at(m_, n_ + 1);
    return bounded ? Status::optimal : Status::unbounded;
  }

 private:
  Rational& at(int i, int j) { return D_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  void pivot(int r, int s) {
    Vec& row = D_[static_cast<std::size_t>(r)];
    Rational inv = Rational(1) / row[static_cast<std::size_t>(s)];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      Vec& cur = D_[static_cast<std::size_t>(i)];
      if (cur[static_cast<std::size_t>(s)].is_zero()) continue;
      Rational f = cur[static_cast<std::size_t>(s)] * inv;
      for (int j = 0; j < n_ + 2; ++j)
        if (!row[static_cast<std::size_t>(j)].is_zero()) cur[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)] * f;
      cur[static_cast<std::size_t>(s)] = row[static_cast<std::size_t>(s)] * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) row[static_cast<std::size_t>(j)] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) at(i, s) *= -inv;
    row[static_cast<std::size_t>(s)] = inv;
    std::swap(B_[r], N_[s]);
  }

  bool run(int phase) {
    int x = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (N_[j] == -phase) continue;
        if (at(x, j).sign() < 0 && (s == -1 || N_[j] < N_[s])) s = j;
      }
      if (s == -1) return true;
      int r = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (at(i, s).sign() <= 0) continue;
        Rational ratio = at(i, n_ + 1) / at(i, s);
        if (r == -1 || ratio < best || (ratio == best && B_[i] < B_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> B_, N_;
  std::vector<Vec> D_;
};

}  // namespace detail

struct LPResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  Vec x;
  Rational value;
  bool feasible() const { return status != Status::infeasible; }
};

// Maximizes objective·x over the instance.
inline LPResult lp_maximize(const LPInstance& inst, const Vec& objective) {
  auto red = detail::presolve(inst);
  LPResult out;
  if (red.infeasible) return out;
  std::size_t nr = red.kept.size();
  Vec c(nr);
  Rational shift = 0;
  for (std::size_t i = 0; i < objective.size(); ++i) {
    if (objective[i].is_zero()) continue;
    shift += objective[i] * red.expr[i].k;
    for (std::size_t j = 0; j < nr; ++j) c[j] += objective[i] * red.expr[i].c[j];
  }
  detail::Simplex sx(red.A, red.b, c);
  Vec y;
  Rational val;
  auto st = sx.solve(y, val);
  if (st == detail::Simplex::Status::infeasible) return out;
  out.status = st == detail::Simplex::Status::optimal ? LPResult::Status::optimal : LPResult::Status::unbounded;
  out.x = red.lift(y);
  out.value = val + shift;
  ensure(satisfies(inst, out.x), "simplex witness violates a constraint");
  return out;
}

inline LPResult lp_feasible(const LPInstance& inst) {
  return lp_maximize(inst, Vec(static_cast<std::size_t>(inst.num_vars)));
}

// Fourier–Motzkin decision; nullopt when the row count passes the cap.
inline std::optional<bool> fm_feasible(const LPInstance& inst, std::size_t cap = 20000) {
  auto red = detail::presolve(inst);
  if (red.infeasible) return false;
  std::size_t nr = red.kept.size();
  using Row = std::pair<Vec, Rational>;
  std::map<Vec, Rational> rows;
  bool bad = false;
  auto insert = [&](Vec a, Rational rhs) {
    std::size_t lead = a.size();
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!a[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead == a.size()) {
      if (rhs.sign() < 0) bad = true;
      return;
    }
    Rational s = abs(a[lead]);
    for (auto& v : a) v /= s;
    rhs /= s;
    auto it = rows.find(a);
    if (it == rows.end())
      rows.emplace(std::move(a), std::move(rhs));
    else if (rhs < it->second)
      it->second = rhs;
  };
  for (std::size_t i = 0; i < red.A.size(); ++i) insert(red.A[i], red.b[i]);
  for (std::size_t j = 0; j < nr; ++j) {
    Vec a(nr);
    a[j] = -1;
    insert(a, 0);
  }
  std::vector<bool> done(nr, false);
  for (std::size_t step = 0; step < nr && !bad; ++step) {
    std::size_t var = nr;
    long best = -1;
    for (std::size_t j = 0; j < nr; ++j) {
      if (done[j]) continue;
      long p = 0, q = 0;
      for (const auto& [a, r] : rows) {
        if (a[j].sign() > 0) ++p;
        if (a[j].sign() < 0) ++q;
      }
      long cost = p * q - p - q;
      if (var == nr || cost < best) {
        var = j;
        best = cost;
      }
    }
    done[var] = true;
    std::vector<Row> pos, neg;
    std::map<Vec, Rational> rest;
    for (auto& [a, r] : rows) {
      if (a[var].sign() > 0)
        pos.push_back({a, r});
      else if (a[var].sign() < 0)
        neg.push_back({a, r});
      else
        rest.emplace(a, r);
    }
    rows = std::move(rest);
    for (const auto& [ap, rp] : pos)
      for (const auto& [an, rn] : neg) {
        Rational wp = -an[var], wn = ap[var];
        Vec a(nr);
        for (std::size_t j = 0; j < nr; ++j) a[j] = wp * ap[j] + wn * an[j];
        a[var] = 0;
        insert(std::move(a), wp * rp + wn * rn);
        if (rows.size() > cap) return std::nullopt;
      }
  }
  return !bad;
}

}  // namespace pgn
