#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "pgn/error.hpp"

namespace pgn {

// Canonical exact rational. Wraps mpq_class so expression templates never leak
// into user code and every value is stored in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v) : q_(mpz_class(std::to_string(v))) {}
  Rational(unsigned v) : q_(v) {}
  Rational(unsigned long v) : q_(v) {}
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
  explicit Rational(const mpz_class& v) : q_(v) {}
  explicit Rational(const mpq_class& v) : q_(v) { q_.canonicalize(); }

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) fail(ErrorCode::invalid_argument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  // Accepts "p/q" or an integer "p". Decimal points and exponents are rejected.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto bad = [&]() -> Rational { fail(ErrorCode::parse_error, "not a rational: '" + s + "'"); };
    if (s.empty()) return bad();
    auto valid_int = [](std::string_view t, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) return bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) return bad();
    return Rational(n, d);
  }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  // Canonical text: "p/q", or "p" when q = 1.
  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) fail(ErrorCode::invalid_argument, "division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline std::strong_ordering rat_cmp(const Rational& a, const Rational& b) { return a <=> b; }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, int e) {
  Rational b = base, out = 1;
  bool inv = e < 0;
  unsigned u = inv ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
  while (u) {
    if (u & 1u) out *= b;
    b *= b;
    u >>= 1;
  }
  return inv ? Rational(1) / out : out;
}

inline Rational pow2(int e) { return pow(Rational(2), e); }

// 1 + x + ... + x^(count-1)
inline Rational geometric_sum(const Rational& x, int count) {
  Rational s = 0, p = 1;
  for (int i = 0; i < count; ++i, p *= x) s += p;
  return s;
}

inline mpz_class floor_of(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

// Smallest-denominator rational in [lo, hi], for 0 <= lo <= hi.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo.sign() < 0 || hi < lo) fail(ErrorCode::invalid_argument, "simplest_between needs 0 <= lo <= hi");
  Rational fl(floor_of(lo));
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return fl + 1;
  return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

// Round-half-away-from-zero decimal rendering; display only.
inline std::string to_decimal(const Rational& r, int digits = 12) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits < 0 ? 0 : digits));
  mpz_class num = abs(r).num() * scale * 2 + r.den();
  mpz_class den = r.den() * 2;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits))
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  bool negative = r.sign() < 0 && q != 0;
  return (negative ? "-" : "") + body;
}

// Point of [0, ∞] with ∞ on top.
class ExtReal {
 public:
  ExtReal() : v_(Rational(0)) {}
  ExtReal(const Rational& v) : v_(v) {
    if (v.sign() < 0) fail(ErrorCode::invalid_argument, "ExtReal must be >= 0, got " + v.str());
  }
  ExtReal(int v) : ExtReal(Rational(v)) {}
  static ExtReal infinity() {
    ExtReal e;
    e.v_.reset();
    return e;
  }
  static ExtReal parse(std::string_view text) {
    if (text == "inf") return infinity();
    return ExtReal(Rational::parse(text));
  }

  bool is_finite() const { return v_.has_value(); }
  bool is_infinite() const { return !v_.has_value(); }
  const Rational& value() const {
    if (!v_) fail(ErrorCode::invalid_argument, "value() on infinity");
    return *v_;
  }
  std::string str() const { return v_ ? v_->str() : "inf"; }
  std::string decimal(int digits = 12) const { return v_ ? to_decimal(*v_, digits) : "inf"; }

  ExtReal reciprocal() const {
    if (!v_) return ExtReal(0);
    if (v_->is_zero()) return infinity();
    return ExtReal(Rational(1) / *v_);
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (!a.v_ || !b.v_) {
      if (!a.v_ && !b.v_) return std::strong_ordering::equal;
      return a.v_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return *a.v_ <=> *b.v_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtReal& e) { return os << e.str(); }

 private:
  std::optional<Rational> v_;
};

// a/b in [0, ∞]; 0/0 is an error.
inline ExtReal ext_div(const Rational& a, const Rational& b) {
  if (a.sign() < 0 || b.sign() < 0)
    fail(ErrorCode::invalid_argument, "ext_div expects non-negative operands");
  if (b.is_zero()) {
    if (a.is_zero()) fail(ErrorCode::indeterminate_ratio, "indeterminate ratio 0/0");
    return ExtReal::infinity();
  }
  return ExtReal(a / b);
}

using Vec = std::vector<Rational>;

inline Rational sum(const Vec& v, std::size_t lo = 0, std::size_t hi = static_cast<std::size_t>(-1)) {
  Rational s = 0;
  if (hi > v.size()) hi = v.size();
  for (std::size_t i = lo; i < hi; ++i) s += v[i];
  return s;
}

inline Vec scale(const Vec& v, const Rational& c) {
  Vec out(v);
  for (auto& x : out) x *= c;
  return out;
}

}  // namespace pgn

template <>
struct std::hash<pgn::Rational> {
  std::size_t operator()(const pgn::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
