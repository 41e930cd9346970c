#pragma once

// Exact Laurent polynomials in y = L^{1/2} and truncated q-series with such
// coefficients.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dtloc {

using BigInt = mpz_class;

/// Laurent polynomial in y with arbitrary-precision integer coefficients.
/// No stored coefficient is ever zero.
class HalfLaurent {
public:
  using Terms = std::map<std::int64_t, BigInt>;

  HalfLaurent() = default;
  HalfLaurent(std::initializer_list<std::pair<std::int64_t, long>> terms);

  static HalfLaurent constant(const BigInt &c) { return monomial(0, c); }
  static HalfLaurent monomial(std::int64_t exponent, const BigInt &c = 1);

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(std::int64_t exponent) const;

  /// Sum of all coefficients (the y -> 1 specialization).
  BigInt specialize_y1() const;
  /// y -> 1/y.
  HalfLaurent invert_y() const;

  /// `c*y^k` terms by ascending k joined with " + "; `y^0` is elided and the
  /// zero polynomial renders as "0".
  std::string render() const;

  HalfLaurent &operator+=(const HalfLaurent &other);
  HalfLaurent &operator-=(const HalfLaurent &other);
  HalfLaurent &operator*=(const HalfLaurent &other);
  /// Adds c*y^k in place.
  void add_term(std::int64_t exponent, const BigInt &c);

  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent &b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent &b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent &a, const HalfLaurent &b);
  friend bool operator==(const HalfLaurent &a, const HalfLaurent &b) { return a.terms_ == b.terms_; }

private:
  Terms terms_;
};

HalfLaurent hl_add(const HalfLaurent &a, const HalfLaurent &b);
HalfLaurent hl_mul(const HalfLaurent &a, const HalfLaurent &b);
BigInt hl_specialize_y1(const HalfLaurent &a);
HalfLaurent hl_invert_y(const HalfLaurent &a);

/// q-series truncated at an inclusive order, coefficients in HalfLaurent.
class TruncatedSeries {
public:
  explicit TruncatedSeries(int order = 0);
  TruncatedSeries(int order, std::vector<HalfLaurent> coeffs);

  /// The series 1 at the given order.
  static TruncatedSeries one(int order);

  int order() const { return order_; }
  const std::vector<HalfLaurent> &coeffs() const { return coeffs_; }
  const HalfLaurent &operator[](int degree) const { return coeffs_.at(degree); }
  HalfLaurent &operator[](int degree) { return coeffs_.at(degree); }

  TruncatedSeries invert_y() const;
  /// Substitutes q -> -q.
  TruncatedSeries negate_q() const;
  std::vector<BigInt> specialize_y1() const;

  friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

private:
  int order_;
  std::vector<HalfLaurent> coeffs_;
};

/// Cauchy product truncated at the common order; throws std::invalid_argument
/// on order mismatch.
TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b);

} // namespace dtloc
