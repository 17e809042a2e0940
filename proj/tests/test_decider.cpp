#include <doctest.h>

#include "blockunits/decider.hpp"
#include "blockunits/psl2.hpp"

using namespace blockunits;
using namespace blockunits::decider;
using grouprep::CharacterTable;
using grouprep::UnitCandidate;

namespace {

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

const CharacterTable& psl216() {
  static CharacterTable t = psl2::character_table(16);
  return t;
}

UnitCandidate order15_unit() {
  UnitCandidate u;
  u.order = 15;
  u.pa[1] = {{"15c", -1}, {"15d", 2}};
  u.pa[3] = {{"5a", 1}};
  u.pa[5] = {{"3a", 1}};
  return u;
}

brauer::BlockDescriptor block_of(const CharacterTable& t,
                                 const brauer::BrauerTree& tree) {
  return brauer::BlockDescriptor{&t, tree, true};
}

}  // namespace

TEST_CASE("local degrees and orbit representatives") {
  const CharacterTable& t = psl216();
  CharLocal c1 = compute_m_of_chi(t, "chi1", 5);
  CHECK(c1.m == 4);
  CHECK(c1.e == 1);
  CHECK(c1.zeta_reps == std::vector<long long>{1});

  CharLocal c12 = compute_m_of_chi(t, "chi12", 5);
  CHECK(c12.m == 2);
  CHECK(c12.e == 2);
  CHECK(c12.zeta_reps == std::vector<long long>{1, 2});

  CharLocal c17 = compute_m_of_chi(t, "chi17", 5);
  CHECK(c17.m == 1);
  CHECK(c17.e == 4);

  CharLocal d11 = compute_m_of_chi(t, "chi11", 3);
  CHECK(d11.m == 2);
  CHECK(d11.e == 1);
  CharLocal d17 = compute_m_of_chi(t, "chi17", 3);
  CHECK(d17.m == 1);
  CHECK(d17.e == 2);
}

TEST_CASE("eigenvalue filtrations") {
  CHECK(eigen_filtration_exists(P({5}), 1, {1}, 4, 5));
  CHECK(eigen_filtration_exists(P({4, 1}), 1, {1}, 4, 5));
  CHECK_FALSE(eigen_filtration_exists(P({3, 2}), 1, {1}, 4, 5));
}

TEST_CASE("tree filtrations") {
  CHECK(tree_filtration_exists(P({3, 2}), {P({1}), P({3, 1})}));
  CHECK(tree_filtration_exists(P({5, 2}), {P({1}), P({5, 1})}));
  CHECK_FALSE(tree_filtration_exists(P({2}), {P({1}), P({2})}));
}

TEST_CASE("order-15 multiplicity grids match the worked values") {
  const CharacterTable& t = psl216();
  UnitCandidate u = order15_unit();
  REQUIRE(u.validate(t).ok());
  CHECK(grouprep::help_feasible(t, u).feasible);
  CHECK_FALSE(grouprep::is_trivial_pattern(u));

  auto grid = [&](const std::string& chi) {
    std::vector<long long> g;
    for (long long k = 0; k < 15; ++k)
      g.push_back(to_ll(grouprep::multiplicity(t, chi, u, k)));
    return g;
  };

  std::vector<long long> g1 = grid("chi1");
  CHECK(g1[0] == 1);
  for (int k = 1; k < 15; ++k) CHECK(g1[k] == 0);

  std::vector<long long> g10 = grid("chi10");
  CHECK(g10[0] == 2);
  for (int k = 1; k < 15; ++k) CHECK(g10[k] == 1);

  std::vector<long long> g11 = grid("chi11");
  for (int k = 0; k < 15; ++k) CHECK(g11[k] == ((k == 5 || k == 10) ? 2 : 1));

  std::vector<long long> g12 = grid("chi12");
  for (int k = 0; k < 15; ++k) CHECK(g12[k] == ((k == 6 || k == 9) ? 2 : 1));

  std::vector<long long> g17 = grid("chi17");
  for (int k = 0; k < 15; ++k) {
    long long want = 1;
    if (k == 1 || k == 14) want = 3;
    if (k == 4 || k == 11) want = 0;
    CHECK(g17[k] == want);
  }

  std::vector<long long> g2 = grid("chi2");
  for (int k = 0; k < 15; ++k) CHECK(g2[k] == 1);
}

TEST_CASE("integrality violations are caught") {
  const CharacterTable& t = psl216();
  UnitCandidate u;
  u.order = 15;
  u.pa[1] = {{"15a", 2}, {"15b", -1}};
  u.pa[3] = {{"5a", 1}};
  u.pa[5] = {{"3a", 1}};
  REQUIRE(u.validate(t).ok());
  grouprep::HelpReport rep = grouprep::help_feasible(t, u);
  CHECK_FALSE(rep.feasible);
  REQUIRE(rep.first_violation.has_value());
  CHECK(rep.first_violation->chi == "chi12");
  CHECK(rep.first_violation->value == rat(4, 3));
}

TEST_CASE("principal 3-block of psl(2,16) is satisfiable with the expected witness") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 3);
  Instance inst = build_instance(block_of(t, trees.principal), order15_unit());
  CHECK(inst.r == 5);
  CHECK(inst.dim4.at("chi10") == std::vector<long long>{4, 3, 3, 3, 3});
  CHECK(inst.dim4.at("chi11") == std::vector<long long>{5, 3, 3, 3, 3});

  Verdict v = decide(inst);
  REQUIRE(v.sat);
  CHECK(verify_witness(inst, v.witness));
  CHECK(v.witness.M.at({"chi10", 0}) == P({3, 1}));
  CHECK(v.witness.M.at({"chi1", 0}) == P({1}));
}

TEST_CASE("non-principal 3-block forces the shared edge module") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 3);
  REQUIRE(trees.nonprincipal.size() == 2);
  Instance inst =
      build_instance(block_of(t, trees.nonprincipal[0]), order15_unit());
  CHECK(inst.dim4.at("chi12") == std::vector<long long>{3, 4, 3, 3, 4});
  CHECK(inst.dim4.at("chi17") == std::vector<long long>{3, 4, 3, 3, 4});

  Verdict v = decide(inst);
  REQUIRE(v.sat);
  // the only consistent choice for the edge module at the mixed levels
  CHECK(v.witness.S.at({"psi11", 1}) == P({2, 1, 1}));

  // the alternatives admitted by one character each fail against the other
  auto [mu12_0, mus12] = std::pair<long long, std::vector<long long>>{
      inst.mu_at("chi12", inst.xi_exp * 1),
      {inst.mu_at("chi12", inst.xi_exp * 1 + inst.zeta_exp * 1)}};
  CHECK(eigen_filtration_exists(P({3, 1}), mu12_0, mus12, 2, 3));
  CHECK_FALSE(eigen_filtration_exists(P({1, 1, 1, 1}), mu12_0, mus12, 2, 3));
  long long mu17_0 = inst.mu_at("chi17", inst.xi_exp * 1);
  std::vector<long long> mus17{
      inst.mu_at("chi17", inst.xi_exp * 1 + inst.zeta_exp * 1),
      inst.mu_at("chi17", inst.xi_exp * 1 + inst.zeta_exp * 2)};
  CHECK(eigen_filtration_exists(P({1, 1, 1, 1}), mu17_0, mus17, 1, 3));
  CHECK_FALSE(eigen_filtration_exists(P({3, 1}), mu17_0, mus17, 1, 3));
  CHECK(eigen_filtration_exists(P({2, 1, 1}), mu17_0, mus17, 1, 3));
  CHECK(eigen_filtration_exists(P({2, 1, 1}), mu12_0, mus12, 2, 3));
}

TEST_CASE("both 5-blocks of psl(2,16) are satisfiable") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 5);
  Instance prin = build_instance(block_of(t, trees.principal), order15_unit());
  CHECK(prin.r == 3);
  Verdict v1 = decide(prin);
  REQUIRE(v1.sat);
  CHECK(v1.witness.M.at({"chi10", 0}) == P({5, 1}));

  Instance nonp =
      build_instance(block_of(t, trees.nonprincipal[0]), order15_unit());
  Verdict v2 = decide(nonp);
  REQUIRE(v2.sat);
  CHECK(v2.witness.M.at({"chi11", 0}) == P({5}));
}

TEST_CASE("verdicts are deterministic across pruning and threads") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 5);
  Instance inst = build_instance(block_of(t, trees.principal), order15_unit());
  Verdict base = decide(inst, {true, 1});
  for (DecideOptions o : {DecideOptions{false, 1}, DecideOptions{true, 4},
                          DecideOptions{false, 4}}) {
    Verdict v = decide(inst, o);
    CHECK(v.sat == base.sat);
    CHECK(v.witness.M == base.witness.M);
    CHECK(v.witness.S == base.witness.S);
  }
}

TEST_CASE("sylow instance for psl(2,11): indicators in, impostors out") {
  CharacterTable t = psl2::character_table(11);
  auto trees = psl2::brauer_trees(11, 5);
  brauer::BlockDescriptor block{&t, trees.principal, true};

  Instance good = build_sylow_p_instance(t, 5, {{"5a", 1}}, block);
  Verdict vg = decide(good);
  CHECK(vg.sat);

  Instance bad = build_sylow_p_instance(t, 5, {{"5a", 2}, {"5b", -1}}, block);
  Verdict vb = decide(bad);
  CHECK_FALSE(vb.sat);
  CHECK_FALSE(vb.first_failure.empty());
}

TEST_CASE("ineligible and infeasible inputs raise distinct errors") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 5);

  brauer::BlockDescriptor noskew{&t, trees.principal, false};
  CHECK_THROWS_AS(build_instance(noskew, order15_unit()),
                  IneligibleInstanceError);

  brauer::BlockDescriptor baddefect{&t, trees.principal, true};
  baddefect.tree.exceptional = {baddefect.tree.exceptional->first, 4};
  CHECK_THROWS_AS(build_instance(baddefect, order15_unit()),
                  IneligibleInstanceError);

  UnitCandidate broken;
  broken.order = 15;
  broken.pa[1] = {{"15a", 2}, {"15b", -1}};
  broken.pa[3] = {{"5a", 1}};
  broken.pa[5] = {{"3a", 1}};
  CHECK_THROWS_AS(build_instance(block_of(t, trees.principal), broken),
                  HelpInfeasibleError);
}

TEST_CASE("gamma bound families instantiate on the order-2t tree") {
  CharacterTable t41 = psl2::character_table(41);
  auto trees = psl2::brauer_trees(41, 5);
  brauer::BlockDescriptor block{&t41, trees.principal, true};

  // order-10 candidate with the distinguished augmentation pattern
  int g0 = t41.class_index("10a");
  UnitCandidate u;
  u.order = 10;
  u.pa[1] = {{t41.classes[t41.power_class(g0, 2)].id, 1},
             {t41.classes[t41.power_class(g0, 3)].id, 1},
             {t41.classes[t41.power_class(g0, 4)].id, -1}};
  u.pa[2] = {{t41.classes[t41.power_class(g0, 2)].id, 1}};
  u.pa[5] = {{t41.classes[t41.power_class(g0, 5)].id, 1}};
  REQUIRE(u.validate(t41).ok());

  Instance inst = build_instance(block, u);
  // the Steinberg side pins gamma_2 of the edge module to (q-1)/2t at the
  // negative eigenvalue level
  auto bounds = gamma_bounds_for_edge(inst, "e2", 1);
  bool found = false;
  for (const GammaBound& b : bounds)
    if (!b.is_lower && b.index == 2 && b.rhs == 4) found = true;
  CHECK(found);
  auto exc = gamma_bounds_exceptional(inst, 1);
  CHECK_FALSE(exc.empty());
}

TEST_CASE("grids that vary along a zeta orbit are surfaced, not chosen") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 5);
  brauer::BlockDescriptor block = block_of(t, trees.principal);
  Instance base = build_instance(block, order15_unit());
  // corrupt one grid so the multiplicities stop being constant on the
  // stabilizer orbit of the p-th roots
  std::map<std::string, std::vector<Rational>> grids;
  for (const std::string& chi : base.chars) {
    std::vector<Rational> row;
    for (long long v : base.grid.at(chi)) row.push_back(rat(v));
    grids[chi] = row;
  }
  std::swap(grids["chi12"][6], grids["chi12"][12]);
  CHECK_THROWS_AS(build_instance_from_grids(block, 15, grids),
                  std::invalid_argument);
}

TEST_CASE("instances built from explicit grids decide like the candidate") {
  const CharacterTable& t = psl216();
  auto trees = psl2::brauer_trees(16, 5);
  brauer::BlockDescriptor block = block_of(t, trees.principal);
  Instance direct = build_instance(block, order15_unit());
  std::map<std::string, std::vector<Rational>> grids;
  for (const std::string& chi : direct.chars) {
    std::vector<Rational> row;
    for (long long v : direct.grid.at(chi)) row.push_back(rat(v));
    grids[chi] = row;
  }
  Instance from_grids = build_instance_from_grids(block, 15, grids);
  Verdict a = decide(direct), b = decide(from_grids);
  CHECK(a.sat == b.sat);
  CHECK(a.witness.M == b.witness.M);
  CHECK(a.witness.S == b.witness.S);
}

TEST_CASE("trivial unit at the order-3 class splits the degree-16 character") {
  const CharacterTable& t = psl216();
  UnitCandidate u = UnitCandidate::class_indicator(t, "3a");
  CHECK(grouprep::multiplicity(t, "chi10", u, 0) == 6);
  CHECK(grouprep::multiplicity(t, "chi10", u, 1) == 5);
  CHECK(grouprep::multiplicity(t, "chi10", u, 2) == 5);
}

TEST_CASE("extended values expand over the augmentation support") {
  const CharacterTable& t = psl216();
  UnitCandidate u = order15_unit();
  int c17 = t.char_index("chi17");
  cyclo::CycNumber expect =
      -t.value(c17, t.class_index("15c")) +
      rat(2) * t.value(c17, t.class_index("15d"));
  CHECK(grouprep::extended_char_value(t, "chi17", u, 1) == expect);
  CHECK(grouprep::extended_char_value(t, "chi17", u, 15) ==
        cyclo::CycNumber::from_int(17));
}

TEST_CASE("exceptional candidates at q=41 obey the published gamma ceiling") {
  CharacterTable t41 = psl2::character_table(41);
  auto trees = psl2::brauer_trees(41, 5);
  brauer::BlockDescriptor block{&t41, trees.principal, true};
  int g0 = t41.class_index("10a");
  UnitCandidate u;
  u.order = 10;
  u.pa[1] = {{t41.classes[t41.power_class(g0, 2)].id, 1},
             {t41.classes[t41.power_class(g0, 3)].id, 1},
             {t41.classes[t41.power_class(g0, 4)].id, -1}};
  u.pa[2] = {{t41.classes[t41.power_class(g0, 2)].id, 1}};
  u.pa[5] = {{t41.classes[t41.power_class(g0, 5)].id, 1}};
  Instance inst = build_instance(block, u);

  // the exceptional character of the principal block at the negative level:
  // every module passing the eigenvalue filtration has gamma_4 <= 3
  std::string eta = trees.principal.vertices[1].chars[0];
  const CharLocal& L = inst.local.at(eta);
  REQUIRE(L.m == 2);
  long long mu0 = inst.mu_at(eta, inst.xi_exp * 1);
  std::vector<long long> mus;
  for (long long c : L.zeta_reps)
    mus.push_back(inst.mu_at(eta, inst.xi_exp * 1 + inst.zeta_exp * c));
  long long dim = mu0;
  for (long long x : mus) dim += L.m * x;
  int admitted = 0;
  for (const Partition& M : partitions_of((int)dim, 5)) {
    if (!eigen_filtration_exists(M, mu0, mus, L.m, 5)) continue;
    ++admitted;
    CHECK(M.gamma(4) <= 3);  // (q-1)/2t - 1
  }
  CHECK(admitted > 0);
}

TEST_CASE("accepted modules obey the min/max gamma consequences") {
  // any module passing the eigenvalue filtration satisfies
  // gamma_m >= max(mu_i) and gamma_{p-m+1} <= min(mu_i)
  struct Case {
    long long p, m;
    long long mu0;
    std::vector<long long> mus;
  };
  std::vector<Case> cases = {
      {5, 2, 1, {2, 1}}, {5, 2, 0, {1, 1}}, {5, 4, 2, {2}},
      {7, 2, 1, {1, 2, 0}}, {7, 3, 2, {1, 1}}, {7, 6, 1, {1}},
  };
  for (const Case& c : cases) {
    long long dim = c.mu0;
    for (long long x : c.mus) dim += c.m * x;
    long long mx = 0, mn = c.mus[0];
    for (long long x : c.mus) {
      mx = std::max(mx, x);
      mn = std::min(mn, x);
    }
    int accepted = 0;
    for (const Partition& M : partitions_of((int)dim, (int)c.p)) {
      if (!eigen_filtration_exists(M, c.mu0, c.mus, c.m, c.p)) continue;
      ++accepted;
      CHECK(M.gamma((int)c.m) >= mx);
      CHECK(M.gamma((int)(c.p - c.m + 1)) <= mn);
    }
    CHECK(accepted > 0);
  }
}
