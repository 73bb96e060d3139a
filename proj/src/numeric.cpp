#include "permcollide/numeric.hpp"

#include <cmath>
#include <utility>

namespace permcollide {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

double rational_to_double(const BigInt& num, const BigInt& den) {
  using boost::multiprecision::divide_qr;
  using boost::multiprecision::msb;
  if (den.is_zero()) throw std::invalid_argument("rational_to_double: zero denominator");
  if (num.is_zero()) return 0.0;
  const bool negative = (num < 0) != (den < 0);
  BigInt n2 = abs(num);
  BigInt d2 = abs(den);

  // Scale so the integer quotient has 53 or 54 bits, then round by hand.
  // num in [2^a, 2^(a+1)), den in [2^b, 2^(b+1)) puts the scaled quotient in
  // [2^52, 2^54).
  const long diff = static_cast<long>(msb(n2)) - static_cast<long>(msb(d2));
  const long s = 53 - diff;
  if (s > 0) n2 <<= s; else if (s < 0) d2 <<= -s;
  BigInt q, r;
  divide_qr(n2, d2, q, r);

  std::uint64_t mant = q.convert_to<std::uint64_t>();
  long e2;  // result = mant * 2^e2 after rounding
  if (mant >> 53) {  // 54 bits: drop one, fold it into the rounding decision
    const std::uint64_t dropped = mant & 1;
    mant >>= 1;
    if (dropped && (!r.is_zero() || (mant & 1))) ++mant;
    e2 = -(s - 1);
  } else {  // 53 bits: round on the remainder against the divisor
    const BigInt twice_r = r << 1;
    const int cmp = twice_r.compare(d2);
    if (cmp > 0 || (cmp == 0 && (mant & 1))) ++mant;
    e2 = -s;
  }
  if (mant == (std::uint64_t{1} << 53)) {
    mant >>= 1;
    ++e2;
  }
  const double v = std::ldexp(static_cast<double>(mant), static_cast<int>(e2));
  return negative ? -v : v;
}

double rational_to_double(const BigRational& r) {
  return rational_to_double(numerator(r), denominator(r));
}

ExactProb::ExactProb(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("ExactProb: zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_ < 0 || num_ > den_) {
    throw std::invalid_argument("ExactProb: value outside [0, 1]: " + num_.str() + "/" + den_.str());
  }
  BigInt g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string ExactProb::str() const { return num_.str() + "/" + den_.str(); }

std::strong_ordering ExactProb::operator<=>(const ExactProb& o) const {
  const int c = BigInt(num_ * o.den_).compare(BigInt(o.num_ * den_));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactProb prob_from_rational(const BigRational& r) {
  return ExactProb(numerator(r), denominator(r));
}

}  // namespace permcollide
