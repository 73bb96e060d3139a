#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace permcollide {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Thrown when a request exceeds a configured resource cap. The message names
// the cap so callers can tell a policy limit from a domain error.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigInt factorial(unsigned n);

// Correctly rounded (nearest, ties to even) double value of num/den, den > 0.
double rational_to_double(const BigInt& num, const BigInt& den);
double rational_to_double(const BigRational& r);

// An exact probability: a reduced fraction constrained to [0, 1].
class ExactProb {
 public:
  ExactProb() = default;  // zero
  ExactProb(BigInt num, BigInt den);

  static ExactProb zero() { return ExactProb(); }
  static ExactProb one() { return ExactProb(1, 1); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  BigRational rational() const { return BigRational(num_, den_); }
  double to_double() const { return rational_to_double(num_, den_); }
  std::string str() const;  // always "p/q", e.g. "1/1", "3/8"

  friend bool operator==(const ExactProb& a, const ExactProb& b) = default;
  std::strong_ordering operator<=>(const ExactProb& o) const;

 private:
  BigInt num_{0};
  BigInt den_{1};
};

ExactProb prob_from_rational(const BigRational& r);

}  // namespace permcollide
