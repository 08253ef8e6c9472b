#pragma once

#include "toric/numeric.hpp"

namespace toric {

/// Univariate polynomial over Q, dense coefficients, c[i] on x^i.
struct Poly {
  RatVec c;

  static Poly constant(const Rat& v) { return Poly{{v}}; }
  static Poly monomial(std::size_t k, const Rat& v = 1) {
    Poly p;
    p.c.assign(k + 1, Rat(0));
    p.c[k] = v;
    return p;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const {
    for (const Rat& v : c)
      if (v != 0) return false;
    return true;
  }
  /// Multiplicity of the root x = 0 (0 for a nonzero constant term).
  std::size_t valuation() const {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) return i;
    return c.size();
  }

  Poly operator+(const Poly& o) const {
    Poly r;
    r.c.assign(std::max(c.size(), o.c.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r;
    r.c.assign(std::max(c.size(), o.c.size()), Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    r.trim();
    return r;
  }
  bool operator==(const Poly& o) const { return (*this - o).is_zero(); }
};

/// Quotient of polynomials; equality by cross multiplication, no gcd.
struct RatFun {
  Poly num;
  Poly den = Poly::constant(1);

  static RatFun constant(const Rat& v) {
    return RatFun{Poly::constant(v), Poly::constant(1)};
  }

  RatFun operator+(const RatFun& o) const {
    return RatFun{num * o.den + o.num * den, den * o.den};
  }
  RatFun operator-(const RatFun& o) const {
    return RatFun{num * o.den - o.num * den, den * o.den};
  }
  RatFun operator*(const RatFun& o) const {
    return RatFun{num * o.num, den * o.den};
  }
  bool operator==(const RatFun& o) const { return num * o.den == o.num * den; }
  bool is_zero() const { return num.is_zero(); }

  /// Pole order at x = 0 (negative means a zero of that order).
  long pole_order_at_zero() const {
    if (num.is_zero()) throw error("pole order of the zero function");
    return static_cast<long>(den.valuation()) -
           static_cast<long>(num.valuation());
  }
};

}  // namespace toric
