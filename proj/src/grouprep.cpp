#include "blockunits/grouprep.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace blockunits::grouprep {

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues) os << i.where << ": " << i.what << "\n";
  return os.str();
}

void CharacterTable::build_index() {
  class_idx_.clear();
  char_idx_.clear();
  for (size_t i = 0; i < classes.size(); ++i) class_idx_[classes[i].id] = (int)i;
  for (size_t i = 0; i < characters.size(); ++i)
    char_idx_[characters[i].id] = (int)i;
}

void CharacterTable::ensure_index() const {
  if (class_idx_.size() != classes.size() ||
      char_idx_.size() != characters.size())
    const_cast<CharacterTable*>(this)->build_index();
}

int CharacterTable::class_index(const std::string& id) const {
  ensure_index();
  auto it = class_idx_.find(id);
  if (it == class_idx_.end()) throw std::invalid_argument("unknown class: " + id);
  return it->second;
}

int CharacterTable::char_index(const std::string& id) const {
  ensure_index();
  auto it = char_idx_.find(id);
  if (it == char_idx_.end())
    throw std::invalid_argument("unknown character: " + id);
  return it->second;
}

int CharacterTable::identity_class() const {
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].element_order == 1) return (int)i;
  throw std::logic_error("table has no identity class");
}

Rational CharacterTable::degree(int chi) const {
  return characters[chi].values[identity_class()].rational_value();
}

int CharacterTable::power_class(int cls, long long k) const {
  long long n = classes[cls].element_order;
  k = mod_pos(k, n);
  if (k == 0) return identity_class();
  // only prime maps are stored; move to a congruent exponent whose prime
  // factors all divide the exponent
  std::set<long long> usable;
  for (long long p : prime_factors(exponent)) usable.insert(p);
  long long kk = k;
  bool found = false;
  for (int tries = 0; tries < 4096 && !found; ++tries, kk += n) {
    found = true;
    for (long long f : prime_factors(kk))
      if (!usable.count(f)) {
        found = false;
        break;
      }
  }
  if (!found)
    throw std::invalid_argument("power " + std::to_string(k) +
                                " is not reachable through stored prime maps");
  kk -= n;
  int cur = cls;
  while (kk > 1) {
    long long p = prime_factors(kk).front();
    auto it = classes[cur].power_map.find(p);
    if (it == classes[cur].power_map.end())
      throw std::invalid_argument("missing power map for prime " +
                                  std::to_string(p));
    cur = class_index(it->second);
    kk /= p;
  }
  return cur;
}

std::vector<long long> CharacterTable::class_sizes() const {
  std::vector<long long> sizes;
  for (size_t k = 0; k < classes.size(); ++k) {
    CycNumber cent;
    for (size_t c = 0; c < characters.size(); ++c)
      cent += value((int)c, (int)k) * value((int)c, (int)k).conj();
    if (!cent.is_rational())
      throw std::invalid_argument("centralizer order not rational at class " +
                                  classes[k].id);
    Rational r = cent.rational_value();
    if (!is_integer(r) || r <= 0)
      throw std::invalid_argument("centralizer order not a positive integer");
    long long cz = to_ll(r);
    if (order % cz != 0)
      throw std::invalid_argument(
          "centralizer order does not divide group order");
    sizes.push_back(order / cz);
  }
  return sizes;
}

namespace {

// Classes grouped so that element orders of different groups are coprime;
// an inner-product partial sum over one group lies in a cyclotomic field
// linearly disjoint from the others, so the full sum is rational iff each
// partial sum is.
std::vector<std::vector<int>> coprime_class_families(
    const std::vector<ClassInfo>& classes) {
  int n = (int)classes.size();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::map<long long, int> prime_owner;
  for (int i = 0; i < n; ++i) {
    for (long long p : prime_factors(classes[i].element_order)) {
      auto [it, fresh] = prime_owner.emplace(p, i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

ValidationReport CharacterTable::validate() const {
  ensure_index();
  ValidationReport rep;
  if (classes.empty() || characters.empty()) {
    rep.add(group_name, "empty class or character list");
    return rep;
  }
  std::set<std::string> ids;
  int identities = 0;
  for (const ClassInfo& c : classes) {
    if (!ids.insert(c.id).second) rep.add(c.id, "duplicate class id");
    if (c.element_order < 1) rep.add(c.id, "element order must be positive");
    else if (exponent % c.element_order != 0)
      rep.add(c.id, "element order does not divide exponent");
    identities += (c.element_order == 1);
  }
  if (identities != 1) {
    rep.add(group_name, "expected exactly one identity class");
    return rep;
  }
  for (const ClassInfo& c : classes) {
    for (long long p : prime_factors(exponent)) {
      auto it = c.power_map.find(p);
      if (it == c.power_map.end()) {
        rep.add(c.id, "missing power map for prime " + std::to_string(p));
        continue;
      }
      if (!class_idx_.count(it->second)) {
        rep.add(c.id, "power map target does not exist: " + it->second);
        continue;
      }
      long long target_order = classes[class_idx_.at(it->second)].element_order;
      if (c.element_order % target_order != 0)
        rep.add(c.id, "power class order does not divide element order");
    }
  }
  std::set<std::string> cids;
  for (const Character& ch : characters) {
    if (!cids.insert(ch.id).second) rep.add(ch.id, "duplicate character id");
    if (ch.values.size() != classes.size()) {
      rep.add(ch.id, "value count does not match class count");
      return rep;
    }
    const CycNumber& deg = ch.values[identity_class()];
    if (!deg.is_rational() || !is_integer(deg.rational_value()) ||
        deg.rational_value() <= 0)
      rep.add(ch.id, "degree is not a positive integer");
  }
  if (!rep.ok()) return rep;

  // column orthogonality, diagonal: centralizer orders and class sizes
  std::vector<long long> sizes;
  try {
    sizes = class_sizes();
  } catch (const std::exception& e) {
    rep.add(group_name, e.what());
    return rep;
  }
  long long total = 0;
  for (long long s : sizes) total += s;
  if (total != order)
    rep.add(group_name, "class sizes do not sum to group order");

  // row orthogonality, evaluated family by family
  std::vector<std::vector<int>> families = coprime_class_families(classes);
  for (size_t a = 0; a < characters.size(); ++a) {
    for (size_t b = a; b < characters.size(); ++b) {
      Rational sum = 0;
      bool bad = false;
      for (const std::vector<int>& fam : families) {
        CycNumber part;
        for (int k : fam)
          part += rat(sizes[k]) *
                  (value((int)a, k) * value((int)b, k).conj());
        if (!part.is_rational()) {
          rep.add(characters[a].id + "," + characters[b].id,
                  "inner product is not rational");
          bad = true;
          break;
        }
        sum += part.rational_value();
      }
      if (bad) continue;
      Rational expect = (a == b) ? rat(order) : Rational(0);
      if (sum != expect)
        rep.add(characters[a].id + "," + characters[b].id,
                "row orthogonality fails: got " + sum.get_str());
    }
  }
  return rep;
}

ValidationReport UnitCandidate::validate(const CharacterTable& table) const {
  ValidationReport rep;
  if (order < 1) {
    rep.add("candidate", "order must be positive");
    return rep;
  }
  for (long long d : divisors(order)) {
    if (d == order) continue;
    auto it = pa.find(d);
    if (it == pa.end()) {
      rep.add("candidate", "missing partial augmentations for power " +
                               std::to_string(d));
      continue;
    }
    long long sum = 0;
    for (const auto& [cls, eps] : it->second) {
      int ci;
      try {
        ci = table.class_index(cls);
      } catch (const std::exception&) {
        rep.add("pa[" + std::to_string(d) + "]", "unknown class " + cls);
        continue;
      }
      sum += eps;
      long long o = table.classes[ci].element_order;
      if (eps != 0 && o == 1)
        rep.add("pa[" + std::to_string(d) + "]",
                "nonzero augmentation at the identity class");
      if (eps != 0 && (order / d) % o != 0)
        rep.add("pa[" + std::to_string(d) + "]",
                "support at class " + cls + " of order " + std::to_string(o) +
                    " not dividing " + std::to_string(order / d));
    }
    if (sum != 1)
      rep.add("pa[" + std::to_string(d) + "]",
              "partial augmentations sum to " + std::to_string(sum));
  }
  for (const auto& [d, m] : pa)
    if (d < 1 || order % d != 0 || d == order)
      rep.add("candidate", "pa key " + std::to_string(d) +
                               " is not a proper divisor of the order");
  return rep;
}

UnitCandidate UnitCandidate::power(long long d) const {
  if (d < 1 || order % d != 0)
    throw std::invalid_argument("power index must divide order");
  UnitCandidate u;
  u.order = order / d;
  for (long long dd : divisors(u.order)) {
    if (dd == u.order) continue;
    u.pa[dd] = pa.at(d * dd);
  }
  return u;
}

UnitCandidate UnitCandidate::class_indicator(const CharacterTable& table,
                                             const std::string& cls) {
  int ci = table.class_index(cls);
  UnitCandidate u;
  u.order = table.classes[ci].element_order;
  for (long long d : divisors(u.order)) {
    if (d == u.order) continue;
    u.pa[d] = {{table.classes[table.power_class(ci, d)].id, 1}};
  }
  return u;
}

CycNumber extended_char_value(const CharacterTable& table,
                              const std::string& chi, const UnitCandidate& u,
                              long long d) {
  if (d < 1 || u.order % d != 0)
    throw std::invalid_argument("d must divide the order");
  int c = table.char_index(chi);
  if (d == u.order) return CycNumber::from_rational(table.degree(c));
  CycNumber val;
  for (const auto& [cls, eps] : u.pa.at(d)) {
    if (eps == 0) continue;
    val += rat(eps) * table.value(c, table.class_index(cls));
  }
  return val;
}

Rational multiplicity(const CharacterTable& table, const std::string& chi,
                      const UnitCandidate& u, long long k) {
  long long n = u.order;
  Rational acc = 0;
  for (long long d : divisors(n)) {
    long long nd = n / d;
    // chi(u^d) lies in the order-(n/d) field, whatever order it is stored at
    CycNumber term =
        extended_char_value(table, chi, u, d) * CycNumber::root(nd, -k);
    // trace over Q(zeta_{n/d}): full trace scaled down by the index
    acc += term.trace_to_rationals() * rat(euler_phi(nd)) /
           rat(euler_phi(term.order()));
  }
  return acc / rat(n);
}

MultiplicityGrid multiplicity_grid(const CharacterTable& table,
                                   const std::string& chi,
                                   const UnitCandidate& u) {
  MultiplicityGrid g;
  g.chi = chi;
  g.mu.reserve(u.order);
  for (long long k = 0; k < u.order; ++k)
    g.mu.push_back(multiplicity(table, chi, u, k));
  return g;
}

HelpReport help_feasible(const CharacterTable& table, const UnitCandidate& u) {
  HelpReport rep;
  for (long long d : divisors(u.order)) {
    if (d == u.order) continue;
    UnitCandidate ud = u.power(d);
    for (const Character& ch : table.characters) {
      for (long long k = 0; k < ud.order; ++k) {
        Rational m = multiplicity(table, ch.id, ud, k);
        if (!is_integer(m) || m < 0) {
          rep.feasible = false;
          rep.first_violation = HelpViolation{ch.id, d, k, m};
          return rep;
        }
      }
    }
  }
  return rep;
}

bool is_trivial_pattern(const UnitCandidate& u) {
  for (const auto& [d, m] : u.pa)
    for (const auto& [cls, eps] : m)
      if (eps < 0) return false;
  return true;
}

}  // namespace blockunits::grouprep
