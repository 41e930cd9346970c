#include "dtloc/half_laurent.hpp"

#include <stdexcept>

namespace dtloc {

HalfLaurent::HalfLaurent(std::initializer_list<std::pair<std::int64_t, long>> terms) {
  for (const auto &[k, c] : terms)
    add_term(k, BigInt(c));
}

HalfLaurent HalfLaurent::monomial(std::int64_t exponent, const BigInt &c) {
  HalfLaurent p;
  p.add_term(exponent, c);
  return p;
}

BigInt HalfLaurent::coefficient(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void HalfLaurent::add_term(std::int64_t exponent, const BigInt &c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (inserted)
    return;
  it->second += c;
  if (it->second == 0)
    terms_.erase(it);
}

BigInt HalfLaurent::specialize_y1() const {
  BigInt sum = 0;
  for (const auto &[k, c] : terms_)
    sum += c;
  return sum;
}

HalfLaurent HalfLaurent::invert_y() const {
  HalfLaurent out;
  for (const auto &[k, c] : terms_)
    out.terms_.emplace(-k, c);
  return out;
}

std::string HalfLaurent::render() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[k, c] : terms_) {
    if (!out.empty())
      out += " + ";
    out += c.get_str();
    if (k != 0)
      out += "*y^" + std::to_string(k);
  }
  return out;
}

HalfLaurent &HalfLaurent::operator+=(const HalfLaurent &other) {
  for (const auto &[k, c] : other.terms_)
    add_term(k, c);
  return *this;
}

HalfLaurent &HalfLaurent::operator-=(const HalfLaurent &other) {
  for (const auto &[k, c] : other.terms_)
    add_term(k, -c);
  return *this;
}

HalfLaurent &HalfLaurent::operator*=(const HalfLaurent &other) {
  *this = *this * other;
  return *this;
}

HalfLaurent operator*(const HalfLaurent &a, const HalfLaurent &b) {
  HalfLaurent out;
  for (const auto &[ka, ca] : a.terms_)
    for (const auto &[kb, cb] : b.terms_)
      out.add_term(ka + kb, ca * cb);
  return out;
}

HalfLaurent hl_add(const HalfLaurent &a, const HalfLaurent &b) { return a + b; }
HalfLaurent hl_mul(const HalfLaurent &a, const HalfLaurent &b) { return a * b; }
BigInt hl_specialize_y1(const HalfLaurent &a) { return a.specialize_y1(); }
HalfLaurent hl_invert_y(const HalfLaurent &a) { return a.invert_y(); }

TruncatedSeries::TruncatedSeries(int order) : order_(order) {
  if (order < 0)
    throw std::invalid_argument("series order must be non-negative");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

TruncatedSeries::TruncatedSeries(int order, std::vector<HalfLaurent> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
  if (order < 0)
    throw std::invalid_argument("series order must be non-negative");
  if (coeffs_.size() != static_cast<std::size_t>(order) + 1)
    throw std::invalid_argument("series needs exactly order+1 coefficients");
}

TruncatedSeries TruncatedSeries::one(int order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = HalfLaurent::constant(1);
  return s;
}

TruncatedSeries TruncatedSeries::invert_y() const {
  TruncatedSeries out(order_);
  for (int n = 0; n <= order_; ++n)
    out.coeffs_[n] = coeffs_[n].invert_y();
  return out;
}

TruncatedSeries TruncatedSeries::negate_q() const {
  TruncatedSeries out = *this;
  for (int n = 1; n <= order_; n += 2)
    out.coeffs_[n] = HalfLaurent() - coeffs_[n];
  return out;
}

std::vector<BigInt> TruncatedSeries::specialize_y1() const {
  std::vector<BigInt> out;
  out.reserve(coeffs_.size());
  for (const auto &c : coeffs_)
    out.push_back(c.specialize_y1());
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series order mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
  TruncatedSeries out(a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a[i].is_zero())
      continue;
    for (int j = 0; i + j <= a.order(); ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

} // namespace dtloc
