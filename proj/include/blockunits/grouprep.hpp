#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockunits/cyclo.hpp"

namespace blockunits::grouprep {

using cyclo::CycNumber;

struct ValidationIssue {
  std::string where;
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  void add(std::string where, std::string what) {
    issues.push_back({std::move(where), std::move(what)});
  }
  std::string summary() const;
};

struct ClassInfo {
  std::string id;
  long long element_order = 1;
  // image class of g^t for each prime t dividing the group exponent
  std::map<long long, std::string> power_map;
};

struct Character {
  std::string id;
  std::vector<CycNumber> values;  // one per class, in class order
};

class CharacterTable {
 public:
  std::string group_name;
  long long order = 0;
  long long exponent = 1;
  std::vector<ClassInfo> classes;
  std::vector<Character> characters;

  ValidationReport validate() const;
  void build_index();  // call after mutation, before use

  int class_index(const std::string& id) const;
  int char_index(const std::string& id) const;
  int identity_class() const;

  const CycNumber& value(int chi, int cls) const {
    return characters[chi].values[cls];
  }
  Rational degree(int chi) const;

  // class of g^k for g in class cls, chasing prime power maps
  int power_class(int cls, long long k) const;

  // class sizes recovered from column orthogonality (validate() checks them)
  std::vector<long long> class_sizes() const;

 private:
  void ensure_index() const;
  mutable std::map<std::string, int> class_idx_, char_idx_;
};

// Candidate torsion unit of order n given by the partial augmentations of
// its powers u^d for all proper divisors d of n (d = n is the identity and
// is implicit).
struct UnitCandidate {
  long long order = 1;
  std::map<long long, std::map<std::string, long long>> pa;

  ValidationReport validate(const CharacterTable& table) const;
  // the candidate u^d, of order order/d
  UnitCandidate power(long long d) const;
  // indicator candidate of the cyclic group generated by class cls
  static UnitCandidate class_indicator(const CharacterTable& table,
                                       const std::string& cls);
};

struct MultiplicityGrid {
  std::string chi;
  std::vector<Rational> mu;  // index k: multiplicity of zeta_n^k

  Rational total() const {
    Rational t = 0;
    for (const Rational& m : mu) t += m;
    return t;
  }
};

// chi(u^d) = sum over classes of pa_[d] times the character value;
// d = n contributes the degree
CycNumber extended_char_value(const CharacterTable& table,
                              const std::string& chi, const UnitCandidate& u,
                              long long d);

// eigenvalue multiplicity of zeta_n^k for u on the representation of chi,
// as a raw rational (integrality is what HeLP tests)
Rational multiplicity(const CharacterTable& table, const std::string& chi,
                      const UnitCandidate& u, long long k);

MultiplicityGrid multiplicity_grid(const CharacterTable& table,
                                   const std::string& chi,
                                   const UnitCandidate& u);

struct HelpViolation {
  std::string chi;
  long long d = 1;  // power of the candidate
  long long k = 0;  // eigenvalue exponent
  Rational value;
};

struct HelpReport {
  bool feasible = true;
  std::optional<HelpViolation> first_violation;
};

// every eigenvalue multiplicity of every power of u on every irreducible
// character must be a nonnegative integer
HelpReport help_feasible(const CharacterTable& table, const UnitCandidate& u);

// all partial augmentations of all powers nonnegative (rational conjugacy to
// a trivial unit)
bool is_trivial_pattern(const UnitCandidate& u);

}  // namespace blockunits::grouprep
