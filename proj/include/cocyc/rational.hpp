#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace cocyc {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or a decimal literal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Natural log of a positive big integer, accurate to double precision even
/// when the value overflows a double.
double log_bigint(const BigInt& value);

/// num/den in lowest terms (gmpxx leaves two-argument construction unreduced).
inline Rational ratio(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q);
inline double to_double(double x) { return x; }

/// A finite sum  sum_k c_k * log(r_k)  with rational coefficients c_k and
/// positive rational bases r_k, or the value -infinity.
///
/// Equality is decided exactly: multiplying through by the common denominator
/// of the coefficients turns both sides into products of integer powers of
/// rationals, which are compared in GMP.
class ExactLogSum {
public:
  ExactLogSum() = default;

  static ExactLogSum negative_infinity();

  /// Adds coeff * log(base). base must be positive; base == 1 is dropped.
  void add_term(const Rational& coeff, const Rational& base);
  void add(const ExactLogSum& other);
  ExactLogSum scaled(const Rational& factor) const;

  bool is_negative_infinity() const { return neg_inf_; }
  const std::map<Rational, Rational>& terms() const { return terms_; }

  double to_double() const;

  friend bool operator==(const ExactLogSum& a, const ExactLogSum& b);

private:
  bool neg_inf_ = false;
  // base -> accumulated coefficient
  std::map<Rational, Rational> terms_;
};

}  // namespace cocyc
