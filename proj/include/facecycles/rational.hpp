#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <vector>

#include "facecycles/errors.hpp"

namespace fc {

using Integer = mpz_class;

/**
 * An exact rational number. Always held in canonical form: denominator
 * positive, gcd(|numerator|, denominator) = 1. Arithmetic never rounds.
 */
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}                  // NOLINT: implicit by design
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT
  explicit Rational(const Integer& n) : v_(n) {}

  Rational(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Parses "p/q" or "p" with optional sign; q must be positive. Rejects
  /// anything else (in particular decimal floats).
  static Rational parse(const std::string& s) {
    auto bad = [&] { return InputError("cannot parse rational '" + s + "'"); };
    if (s.empty()) throw bad();
    std::string::size_type slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw bad();
    Integer n(num, 10), d(den, 10);
    if (d <= 0) throw InputError("rational '" + s + "' has non-positive denominator");
    return Rational(n, d);
  }

  Integer numerator() const { return v_.get_num(); }
  Integer denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  std::string str() const {
    std::string s = v_.get_num().get_str();
    if (!is_integer()) s += "/" + v_.get_den().get_str();
    return s;
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}

  static bool valid_int(const std::string& s, bool allow_sign) {
    std::string::size_type i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

/// A point is a coordinate vector over the exact rational field. All points
/// of one polytope share the same length (the ambient dimension).
using Point = std::vector<Rational>;

}  // namespace fc
