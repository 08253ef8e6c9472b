#include "toric/density.hpp"

#include <algorithm>

namespace toric {

namespace {

struct OrbitSetup {
  // orbit index per ray, orbit sizes
  std::vector<std::size_t> orbit_of;
  std::vector<std::size_t> size;
  std::vector<std::vector<std::size_t>> cones;  // fixed cones to sum over
};

OrbitSetup orbit_setup(const Fan& f, const GroupAction* action) {
  OrbitSetup s;
  if (action) {
    s.orbit_of.resize(f.ray_count());
    s.size.assign(action->ray_orbits().size(), 0);
    for (std::size_t i = 0; i < f.ray_count(); ++i) {
      s.orbit_of[i] = action->orbit_of(i);
      s.size[s.orbit_of[i]] = action->ray_orbits()[s.orbit_of[i]].size();
    }
    s.cones = action->fixed_cones();
  } else {
    s.orbit_of.resize(f.ray_count());
    for (std::size_t i = 0; i < f.ray_count(); ++i) s.orbit_of[i] = i;
    s.size.assign(f.ray_count(), 1);
    s.cones = f.cones();
  }
  return s;
}

// orbit exponents f*(2+z), checked for convergence
RatVec orbit_exponents(const OrbitSetup& s, const RatVec& z) {
  if (z.size() != s.size.size())
    throw error("density: z must have one entry per ray orbit");
  RatVec e(z.size());
  for (std::size_t o = 0; o < z.size(); ++o) {
    e[o] = Rat(static_cast<long>(s.size[o])) * (Rat(2) + z[o]);
    if (e[o] == 0) throw pole_error("density pole: q^{f(2+z)} = 1");
    if (z[o] < -2)
      throw error("density diverges: need z > -2 on every orbit");
  }
  return e;
}

// distinct ray orbits meeting a fixed cone
std::vector<std::size_t> cone_orbits(const OrbitSetup& s,
                                     const std::vector<std::size_t>& cone) {
  std::vector<std::size_t> orbs;
  for (std::size_t i : cone) {
    std::size_t o = s.orbit_of[i];
    if (std::find(orbs.begin(), orbs.end(), o) == orbs.end()) orbs.push_back(o);
  }
  return orbs;
}

}  // namespace

double DensityValue::to_double() const { return approx.convert_to<double>(); }

DensityValue denef_density(const LocalDensityQuery& qry) {
  const Fan& f = *qry.fan;
  if (qry.q < 2) throw error("density: q must be a prime power >= 2");
  OrbitSetup s = orbit_setup(f, qry.action);
  RatVec expo = orbit_exponents(s, qry.z);

  bool integral = true;
  for (const Rat& e : expo)
    if (denominator(e) != 1) integral = false;

  DensityValue out;
  out.exact = integral;
  if (integral) {
    Rat total = 0;
    for (const auto& cone : s.cones) {
      Rat term = 1;
      for (std::size_t o : cone_orbits(s, cone)) {
        long e = expo[o].convert_to<long>();
        if (e > 0) {
          term /= Rat(int_pow(qry.q, static_cast<unsigned long>(e)) - 1);
        } else {
          // q^e with e < 0: 1/(q^e - 1) = q^{-e}/(1 - q^{-e})
          Int p = int_pow(qry.q, static_cast<unsigned long>(-e));
          term *= Rat(p) / (Rat(1) - Rat(p));
        }
      }
      total += term;
    }
    out.rational = total;
    out.approx = Real(numerator(total)) / Real(denominator(total));
  } else {
    Real lq = log(Real(qry.q));
    Real total = 0;
    for (const auto& cone : s.cones) {
      Real term = 1;
      for (std::size_t o : cone_orbits(s, cone)) {
        Real e = Real(numerator(expo[o])) / Real(denominator(expo[o]));
        term /= exp(e * lq) - 1;
      }
      total += term;
    }
    out.approx = total;
  }
  return out;
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
  std::vector<unsigned long> out;
  if (bound < 2) return out;
  std::vector<char> sieve(bound + 1, 1);
  for (unsigned long p = 2; p <= bound; ++p) {
    if (!sieve[p]) continue;
    out.push_back(p);
    for (unsigned long k = p * p; k <= bound; k += p) sieve[k] = 0;
  }
  return out;
}

EulerProductResult euler_product(const Fan& f, const RatVec& z,
                                 unsigned long prime_bound,
                                 const GroupAction* action) {
  OrbitSetup s = orbit_setup(f, action);
  for (const Rat& zi : z)
    if (zi <= Rat(-1, 2))
      throw error("euler_product: need z > -1/2 for the normalized tail");

  bool integral = true;
  {
    RatVec expo = orbit_exponents(s, z);
    for (const Rat& e : expo)
      if (denominator(e) != 1) integral = false;
  }

  EulerProductResult res;
  std::vector<unsigned long> ps = primes_up_to(prime_bound);
  res.primes_used = ps.size();
  if (integral) {
    Rat raw = 1, norm = 1;
    for (unsigned long p : ps) {
      LocalDensityQuery q{&f, action, Int(p), z};
      Rat d = denef_density(q).rational;
      raw *= d;
      Rat lfac = 1;
      for (std::size_t o = 0; o < s.size.size(); ++o) {
        // one Euler factor of L(2 + z) per orbit: (1 - q^{-f(2+z)})
        Rat e = Rat(static_cast<long>(s.size[o])) * (Rat(2) + z[o]);
        long el = e.convert_to<long>();
        lfac *= Rat(1) - Rat(1, int_pow(Int(p), static_cast<unsigned long>(el)));
      }
      norm *= d * lfac;
    }
    Real rr = Real(numerator(raw)) / Real(denominator(raw));
    Real nr = Real(numerator(norm)) / Real(denominator(norm));
    res.raw = rr.convert_to<double>();
    res.normalized = nr.convert_to<double>();
  } else {
    Real raw = 1, norm = 1;
    for (unsigned long p : ps) {
      LocalDensityQuery q{&f, action, Int(p), z};
      Real d = denef_density(q).approx;
      raw *= d;
      Real lfac = 1;
      Real lp = log(Real(p));
      for (std::size_t o = 0; o < s.size.size(); ++o) {
        Rat e = Rat(static_cast<long>(s.size[o])) * (Rat(2) + z[o]);
        Real er = Real(numerator(e)) / Real(denominator(e));
        lfac *= Real(1) - exp(-er * lp);
      }
      norm *= d * lfac;
    }
    res.raw = raw.convert_to<double>();
    res.normalized = norm.convert_to<double>();
  }
  return res;
}

}  // namespace toric
