#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
// High-precision reals for the few places that leave exact arithmetic
// (Denef densities at non-integral exponents, Euler products).
using Real = boost::multiprecision::mpfr_float_100;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Base class for all errors thrown by this library.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input file / fan axiom violations. CLI maps these to exit code 1.
struct validation_error : error {
  explicit validation_error(const std::string& msg) : error(msg) {}
};

/// A point was claimed to lie in a cone but does not.
struct membership_error : error {
  explicit membership_error(const std::string& msg) : error(msg) {}
};

/// An operation requiring a pointed cone received a non-pointed one.
struct not_pointed_error : error {
  explicit not_pointed_error(const std::string& msg) : error(msg) {}
};

/// Evaluation hit a pole; carries the vanishing linear form when known.
struct pole_error : error {
  IntVec vanishing_form;
  explicit pole_error(const std::string& msg, IntVec form = {})
      : error(msg), vanishing_form(std::move(form)) {}
};

inline Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

/// gcd of a vector, always >= 0; gcd of the zero vector is 0.
inline Int vec_gcd(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = int_gcd(g, x);
  return g;
}

/// Divide by the gcd so that the coordinate gcd is 1. Zero vectors pass
/// through unchanged.
inline IntVec primitivize(IntVec v) {
  Int g = vec_gcd(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline bool is_zero(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline IntVec negate(IntVec v) {
  for (Int& x : v) x = -x;
  return v;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

inline Int int_pow(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace toric
