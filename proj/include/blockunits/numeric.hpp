#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockunits {

using Rational = mpq_class;

// mpq_class has no long long constructor; long is 64-bit on this target
inline Rational rat(long long x) { return Rational(static_cast<long>(x)); }
inline Rational rat(long long num, long long den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline long long to_ll(const Rational& x) {
  if (!is_integer(x)) throw std::invalid_argument("not an integer: " + x.get_str());
  if (!x.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
  return x.get_num().get_si();
}

inline std::string rat_str(const Rational& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

inline long long mod_pos(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long pow_mod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod_pos(b, m);
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long long> prime_factors(long long n) {
  std::vector<long long> ps;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::vector<long long> divisors(long long n) {
  std::vector<long long> ds;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline long long euler_phi(long long n) {
  long long r = n;
  for (long long p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

inline long long mobius(long long n) {
  long long m = 1;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

// Solve x = a mod m, x = b mod n for coprime m, n.
inline long long crt(long long a, long long m, long long b, long long n) {
  for (long long x = mod_pos(a, m); x < m * n; x += m)
    if (x % n == mod_pos(b, n)) return x;
  throw std::invalid_argument("crt: no solution");
}

}  // namespace blockunits
