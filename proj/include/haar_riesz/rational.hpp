#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <type_traits>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "haar_riesz/errors.hpp"

namespace haar_riesz {

/// Exact signed rational backed by GMP. Always stored in lowest terms with a
/// positive denominator, so structural equality is value equality.
class Rational {
 public:
  Rational() = default;
  template <std::integral Int>
  Rational(Int value)  // NOLINT(google-explicit-constructor)
      : q_(from_int(value)) {}
  Rational(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "num/den" or an integer "n". Unreduced input is accepted.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& v) {
      const auto b = v.find_first_not_of(" \t\r\n");
      const auto e = v.find_last_not_of(" \t\r\n");
      v = (b == std::string::npos) ? std::string() : v.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw InputError("empty rational literal");
    if (s.front() == '+') s.erase(0, 1);
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    trim(num);
    trim(den);
    auto valid_int = [](const std::string& v, bool allow_sign) {
      if (v.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && v[0] == '-') i = 1;
      if (i == v.size()) return false;
      for (; i < v.size(); ++i) {
        if (v[i] < '0' || v[i] > '9') return false;
      }
      return true;
    };
    if (!valid_int(num, true) || !valid_int(den, false)) {
      throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw InputError("rational with zero denominator: '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  /// 2^exponent, exponent may be negative.
  static Rational pow2(long exponent) {
    mpz_class one = 1;
    mpz_class big;
    mpz_mul_2exp(big.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
    return exponent >= 0 ? Rational(mpq_class(big, 1)) : Rational(mpq_class(1, big));
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  double to_double() const { return q_.get_d(); }

  /// Always "num/den", including integers ("3/1").
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational reciprocal() const {
    if (is_zero()) throw InputError("reciprocal of zero");
    return Rational(mpq_class(1 / q_));
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static mpq_class from_int(std::integral auto value) {
    if constexpr (std::is_signed_v<decltype(value)>) {
      return mpq_class(static_cast<long>(value));
    } else {
      return mpq_class(static_cast<unsigned long>(value));
    }
  }

  mpq_class q_;
};

inline Rational square(const Rational& x) { return x * x; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace haar_riesz
