#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blockunits/brauer.hpp"
#include "blockunits/partition.hpp"

namespace blockunits::decider {

using brauer::BlockDescriptor;
using grouprep::CharacterTable;
using grouprep::UnitCandidate;

// candidate rejected by integrality/nonnegativity of eigenvalue multiplicities
struct HelpInfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// block data outside the engine's scope (defect != 1, skew fields, bad tree)
struct IneligibleInstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CharLocal {
  long long m = 0;  // residue degree of the ramified eigenvalue field
  long long e = 0;  // (p-1)/m
  std::vector<long long> zeta_reps;          // orbit minima in (Z/p)^*
  std::vector<long long> stabilizer_image;   // subgroup of (Z/p)^*, size m
};

// m, e and the orbit representatives of primitive p-th roots for chi: the
// stabilizer of chi's values inside the inertia part of the local Galois
// group acts on the p-th roots; m is the orbit size.
CharLocal compute_m_of_chi(const CharacterTable& table, const std::string& chi,
                           long long p);

// filtration by I_1^mu0 followed by I_m^{mu[i]}
bool eigen_filtration_exists(const Partition& M, long long mu0,
                             const std::vector<long long>& mu, long long m,
                             long long p);

// filtration by the incident-edge modules
bool tree_filtration_exists(const Partition& M,
                            const std::vector<Partition>& factors);

struct GammaBound {
  int index;       // gamma subscript
  long long rhs;
  bool is_lower;   // gamma_index >= rhs, else <=
  std::string origin;

  bool holds(const Partition& P) const {
    long long g = index <= 0 ? P.rows() : P.gamma(index);
    return is_lower ? g >= rhs : g <= rhs;
  }
};

using PairKey = std::pair<std::string, long long>;  // (char or edge id, j)

struct Instance {
  const CharacterTable* table = nullptr;
  BlockDescriptor block;
  UnitCandidate unit;
  long long p = 0, r = 1, n = 0;
  long long xi_exp = 0;    // exponent of the fixed r-th root inside zeta_n
  long long zeta_exp = 0;  // exponent of the fixed primitive p-th root

  std::vector<std::string> chars;                      // block characters
  std::map<std::string, std::vector<long long>> grid;  // integral multiplicities
  std::map<std::string, CharLocal> local;
  std::map<std::string, int> sign;                     // per vertex id
  std::map<std::string, std::vector<long long>> dim4;  // per char, per j

  std::map<PairKey, PairKey> char_rep, edge_rep;       // Galois pair orbits

  long long mu_at(const std::string& chi, long long exponent) const {
    return grid.at(chi)[mod_pos(exponent, n)];
  }
  int vertex_of_char(const std::string& chi) const;
};

// assemble, validate and precompute an instance for decide(); throws
// HelpInfeasibleError / IneligibleInstanceError / std::invalid_argument
Instance build_instance(const BlockDescriptor& block, const UnitCandidate& unit);

// as build_instance but with the multiplicity grids supplied directly
Instance build_instance_from_grids(
    const BlockDescriptor& block, long long n,
    const std::map<std::string, std::vector<Rational>>& grids);

// order-p instance for a group with Sylow subgroup of order p; multiplicities
// are built by the closed forms for the principal block and cross-checked
// against the generic eigenvalue-multiplicity computation
Instance build_sylow_p_instance(const CharacterTable& table, long long p,
                                const std::map<std::string, long long>& pa,
                                const BlockDescriptor& principal_block);

struct Assignment {
  std::map<PairKey, Partition> M;  // keyed by (char id, j) orbit reps
  std::map<PairKey, Partition> S;  // keyed by (brauer id, j) orbit reps
};

struct Verdict {
  bool sat = false;
  Assignment witness;                    // valid when sat
  unsigned long long nodes = 0;          // search nodes explored
  std::string first_failure;             // first failing constraint family
};

struct DecideOptions {
  bool pruning = true;
  int threads = 1;
};

Verdict decide(const Instance& inst, const DecideOptions& opts = {});

// re-verification of a witness using only the tableaux primitives, checked
// on every (char, j) pair of the block
bool verify_witness(const Instance& inst, const Assignment& a);

// necessary inequalities on the edge module of (edge, j) from the subtrees
// on both sides of the edge (subtrees containing the exceptional vertex are
// skipped)
std::vector<GammaBound> gamma_bounds_for_edge(const Instance& inst,
                                              const std::string& edge_id,
                                              long long j);

// necessary inequalities on the module of an exceptional character
std::vector<GammaBound> gamma_bounds_exceptional(const Instance& inst,
                                                 long long j);

}  // namespace blockunits::decider
