#include "cocyc/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cocyc {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = text.find('.');
  if (dot == std::string::npos && text.find_first_of("eE") == std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    return q;
  }
  if (text.find_first_of("eE") != std::string::npos)
    throw std::invalid_argument("exponent notation not supported for exact values: " + text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  BigInt num;
  if (num.set_str(digits.empty() ? "0" : digits, 10) != 0)
    throw std::invalid_argument("bad decimal literal: " + text);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_len));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double log_bigint(const BigInt& value) {
  if (value <= 0) throw std::domain_error("log of non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double to_double(const Rational& q) { return q.get_d(); }

ExactLogSum ExactLogSum::negative_infinity() {
  ExactLogSum s;
  s.neg_inf_ = true;
  return s;
}

void ExactLogSum::add_term(const Rational& coeff_in, const Rational& base_in) {
  Rational coeff = coeff_in, base = base_in;
  coeff.canonicalize();
  base.canonicalize();
  if (base <= 0) throw std::domain_error("log of non-positive rational");
  if (coeff == 0 || base == 1) return;
  auto [it, inserted] = terms_.try_emplace(base, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void ExactLogSum::add(const ExactLogSum& other) {
  if (other.neg_inf_) neg_inf_ = true;
  for (const auto& [base, coeff] : other.terms_) add_term(coeff, base);
}

ExactLogSum ExactLogSum::scaled(const Rational& factor) const {
  if (factor <= 0) throw std::domain_error("ExactLogSum can only be scaled by a positive factor");
  ExactLogSum out;
  out.neg_inf_ = neg_inf_;
  for (const auto& [base, coeff] : terms_) out.add_term(coeff * factor, base);
  return out;
}

double ExactLogSum::to_double() const {
  if (neg_inf_) return -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& [base, coeff] : terms_) {
    double lb = log_bigint(base.get_num()) - log_bigint(base.get_den());
    total += cocyc::to_double(coeff) * lb;
  }
  return total;
}

bool operator==(const ExactLogSum& a, const ExactLogSum& b) {
  if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
  // a - b as a single term map
  ExactLogSum diff = a;
  for (const auto& [base, coeff] : b.terms_) diff.add_term(-coeff, base);
  if (diff.terms_.empty()) return true;

  BigInt common = 1;
  for (const auto& [base, coeff] : diff.terms_) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), coeff.get_den().get_mpz_t());
  }
  // prod base^(coeff*common) == 1, split into positive and negative exponents
  Rational lhs = 1, rhs = 1;
  for (const auto& [base, coeff] : diff.terms_) {
    Rational scaled = coeff * common;
    BigInt e = scaled.get_num();
    Rational& side = e > 0 ? lhs : rhs;
    BigInt mag = abs(e);
    if (!mag.fits_ulong_p()) throw std::overflow_error("exponent too large for exact log comparison");
    unsigned long k = mag.get_ui();
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
    side *= Rational(num, den);
  }
  return lhs == rhs;
}

}  // namespace cocyc
