#pragma once

#include <vector>

#include "blockunits/numeric.hpp"

namespace blockunits::cyclo {

// Exact element of the N-th cyclotomic field. Coefficients are rationals
// indexed by exponent class 0..N-1, kept in the canonical form obtained by
// reducing modulo the N-th cyclotomic polynomial, so two values of the same
// order are equal iff their coefficient arrays are equal. Mixed-order
// arithmetic lifts to the least common multiple order.
class CycNumber {
 public:
  CycNumber() : order_(1), coeffs_(1, Rational(0)) {}

  static CycNumber from_rational(const Rational& q) {
    CycNumber x;
    x.coeffs_[0] = q;
    return x;
  }
  static CycNumber from_int(long long n) { return from_rational(rat(n)); }
  // zeta_N^k
  static CycNumber root(long long order, long long k);

  long long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  // same value in the M-th field (order must divide M)
  CycNumber lifted_to(long long M) const;

  CycNumber operator-() const;
  friend CycNumber operator+(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator-(const CycNumber& a, const CycNumber& b);
  friend CycNumber operator*(const CycNumber& a, const CycNumber& b);
  CycNumber& operator+=(const CycNumber& b) { return *this = *this + b; }
  friend CycNumber operator*(const Rational& q, const CycNumber& a);
  friend bool operator==(const CycNumber& a, const CycNumber& b);
  friend bool operator!=(const CycNumber& a, const CycNumber& b) {
    return !(a == b);
  }

  // field automorphism zeta -> zeta^c, gcd(c, order) = 1
  CycNumber galois(long long c) const;
  // complex conjugation
  CycNumber conj() const { return galois(order_ - 1 == 0 ? 1 : order_ - 1); }

  // sum over the full Galois group of the order-N field, as a rational
  Rational trace_to_rationals() const;

  std::string to_string() const;

 private:
  void reduce();

  long long order_;
  std::vector<Rational> coeffs_;
};

// element of Gal(Q(zeta_N)/Q): zeta -> zeta^residue
struct GaloisElement {
  long long order;
  long long residue;
  bool operator==(const GaloisElement&) const = default;
};

// orbit sum of x under a composition-closed set of Galois elements
CycNumber relative_trace(const CycNumber& x,
                         const std::vector<GaloisElement>& subgroup);

// Galois group of the N-th cyclotomic extension of the p-adic rationals as a
// subgroup of (Z/N)^*: with N = p^a * N', the residues c with c = p^k mod N'
// for some k and c arbitrary mod p^a. Sorted by residue.
std::vector<GaloisElement> local_decomposition_group(long long N, long long p);

// partition of the exponent set into orbits under multiplication by the
// subgroup; each orbit sorted, orbits ordered by least element
std::vector<std::vector<long long>> orbits(
    const std::vector<GaloisElement>& subgroup,
    const std::vector<long long>& exponents, long long N);

// coefficients of the N-th cyclotomic polynomial (degree phi(N)), cached
const std::vector<long long>& cyclotomic_polynomial(long long N);

}  // namespace blockunits::cyclo
