#include "blockunits/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace blockunits::cyclo {

namespace {

std::map<long long, std::vector<long long>> phi_cache;
std::mutex phi_mutex;

// exact division of integer polynomials, remainder must vanish
std::vector<long long> poly_div(std::vector<long long> num,
                                const std::vector<long long>& den) {
  int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
  std::vector<long long> quot(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    if (num[i] == 0) continue;
    long long q = num[i] / den[dd];
    quot[i - dd] = q;
    for (int k = 0; k <= dd; ++k) num[i - dd + k] -= q * den[k];
  }
  for (long long c : num)
    if (c != 0) throw std::logic_error("cyclotomic division not exact");
  return quot;
}

std::vector<long long> compute_cyclotomic(long long N) {
  std::vector<long long> poly(N + 1, 0);
  poly[0] = -1;
  poly[N] = 1;  // x^N - 1
  for (long long d : divisors(N))
    if (d < N) poly = poly_div(poly, cyclotomic_polynomial(d));
  return poly;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(long long N) {
  {
    std::lock_guard<std::mutex> lock(phi_mutex);
    auto it = phi_cache.find(N);
    if (it != phi_cache.end()) return it->second;
  }
  std::vector<long long> poly = compute_cyclotomic(N);
  std::lock_guard<std::mutex> lock(phi_mutex);
  return phi_cache.emplace(N, std::move(poly)).first->second;
}

void CycNumber::reduce() {
  const std::vector<long long>& phi = cyclotomic_polynomial(order_);
  int deg = (int)phi.size() - 1;
  for (int i = (int)coeffs_.size() - 1; i >= deg; --i) {
    if (coeffs_[i] == 0) continue;
    Rational q = coeffs_[i];
    coeffs_[i] = 0;
    for (int k = 0; k < deg; ++k) coeffs_[i - deg + k] -= q * rat(phi[k]);
  }
}

CycNumber CycNumber::root(long long order, long long k) {
  if (order < 1) throw std::invalid_argument("root order must be positive");
  CycNumber x;
  x.order_ = order;
  x.coeffs_.assign(order, Rational(0));
  x.coeffs_[mod_pos(k, order)] = 1;
  x.reduce();
  return x;
}

bool CycNumber::is_zero() const {
  for (const Rational& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycNumber::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational CycNumber::rational_value() const {
  if (!is_rational()) throw std::invalid_argument("value is not rational");
  return coeffs_[0];
}

CycNumber CycNumber::lifted_to(long long M) const {
  if (M % order_ != 0) throw std::invalid_argument("order does not divide target");
  if (M == order_) return *this;
  CycNumber x;
  x.order_ = M;
  x.coeffs_.assign(M, Rational(0));
  long long step = M / order_;
  for (size_t i = 0; i < coeffs_.size(); ++i) x.coeffs_[i * step] = coeffs_[i];
  x.reduce();
  return x;
}

CycNumber CycNumber::operator-() const {
  CycNumber x = *this;
  for (Rational& c : x.coeffs_) c = -c;
  return x;
}

CycNumber operator+(const CycNumber& a, const CycNumber& b) {
  long long M = lcm_ll(a.order_, b.order_);
  CycNumber x = a.lifted_to(M), y = b.lifted_to(M);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  return x;
}

CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }

CycNumber operator*(const CycNumber& a, const CycNumber& b) {
  long long M = lcm_ll(a.order_, b.order_);
  CycNumber x = a.lifted_to(M), y = b.lifted_to(M);
  CycNumber z;
  z.order_ = M;
  z.coeffs_.assign(M, Rational(0));
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < y.coeffs_.size(); ++j) {
      if (y.coeffs_[j] == 0) continue;
      z.coeffs_[(i + j) % M] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  z.reduce();
  return z;
}

CycNumber operator*(const Rational& q, const CycNumber& a) {
  CycNumber x = a;
  for (Rational& c : x.coeffs_) c *= q;
  return x;
}

bool operator==(const CycNumber& a, const CycNumber& b) {
  long long M = lcm_ll(a.order_, b.order_);
  return a.lifted_to(M).coeffs_ == b.lifted_to(M).coeffs_;
}

CycNumber CycNumber::galois(long long c) const {
  c = mod_pos(c, order_);
  if (gcd_ll(c, order_) != 1)
    throw std::invalid_argument("galois residue not coprime to order");
  CycNumber x;
  x.order_ = order_;
  x.coeffs_.assign(order_, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    x.coeffs_[(i * c) % order_] += coeffs_[i];
  x.reduce();
  return x;
}

Rational CycNumber::trace_to_rationals() const {
  // trace(zeta^k) is the Ramanujan sum c_N(k)
  Rational t = 0;
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    long long g = gcd_ll((long long)k, order_);
    long long m = order_ / g;
    t += coeffs_[k] * rat(mobius(m) * (euler_phi(order_) / euler_phi(m)));
  }
  return t;
}

std::string CycNumber::to_string() const {
  if (is_rational()) return coeffs_[0].get_str();
  std::string s;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[i].get_str() + "*z" + std::to_string(order_) + "^" +
         std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

CycNumber relative_trace(const CycNumber& x,
                         const std::vector<GaloisElement>& subgroup) {
  CycNumber sum;
  for (const GaloisElement& g : subgroup) sum += x.galois(g.residue);
  return sum;
}

std::vector<GaloisElement> local_decomposition_group(long long N, long long p) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  long long pa = 1;
  long long Nprime = N;
  while (Nprime % p == 0) {
    Nprime /= p;
    pa *= p;
  }
  std::set<long long> frob;  // powers of p mod N'
  long long f = 1 % Nprime;
  while (!frob.count(f)) {
    frob.insert(f);
    f = (__int128)f * p % Nprime;
  }
  std::vector<GaloisElement> out;
  for (long long c = 0; c < N; ++c) {
    if (gcd_ll(c, N) != 1) continue;
    if (frob.count(c % Nprime)) out.push_back({N, c});
  }
  return out;
}

std::vector<std::vector<long long>> orbits(
    const std::vector<GaloisElement>& subgroup,
    const std::vector<long long>& exponents, long long N) {
  std::set<long long> pool(exponents.begin(), exponents.end());
  std::set<long long> todo = pool;
  std::vector<std::vector<long long>> out;
  while (!todo.empty()) {
    long long e = *todo.begin();
    std::set<long long> orb{e};
    for (const GaloisElement& g : subgroup) {
      long long img = mod_pos((long long)((__int128)g.residue * e % N), N);
      if (pool.count(img)) orb.insert(img);
    }
    std::vector<long long> v;
    for (long long x : orb) {
      v.push_back(x);
      todo.erase(x);
    }
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace blockunits::cyclo
