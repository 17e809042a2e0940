// Command-line front end: tableau queries, eigenvalue multiplicities,
// integrality checks, block decisions, table/tree generation, and the
// bundled reproduction suites.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "blockunits/decider.hpp"
#include "blockunits/io.hpp"
#include "blockunits/psl2.hpp"
#include "blockunits/tableaux.hpp"

using namespace blockunits;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnsat = 10;
constexpr int kExitHelp = 11;
constexpr int kExitIneligible = 12;

struct Options {
  std::string format = "text";
  int threads = 1;
  bool pruning = true;
  bool witness = true;
};

bool structured(const Options& o) { return o.format == "structured"; }

grouprep::CharacterTable load_table(const std::string& ref) {
  if (ref.rfind("psl2:", 0) == 0)
    return psl2::character_table(std::stoll(ref.substr(5)));
  return io::table_from_json(io::load_json_file(ref));
}

grouprep::UnitCandidate load_unit(const std::string& ref) {
  return io::unit_from_json(io::load_json_file(ref));
}

void print_verdict(const decider::Verdict& v, const Options& o) {
  if (structured(o)) {
    io::json j = io::to_json(v);
    if (!o.witness) j.erase("witness");
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << (v.sat ? "SAT" : "UNSAT") << "\n";
  std::cout << "nodes explored: " << v.nodes << "\n";
  if (!v.sat) {
    std::cout << "first failing constraint family: " << v.first_failure << "\n";
  } else if (o.witness) {
    for (const auto& [k, p] : v.witness.M)
      std::cout << "M " << k.first << "@" << k.second << " = " << p.to_string()
                << "\n";
    for (const auto& [k, p] : v.witness.S)
      std::cout << "S " << k.first << "@" << k.second << " = " << p.to_string()
                << "\n";
  }
}

int run_decide_on_bundle(const io::Bundle& b, const Options& o) {
  brauer::BlockDescriptor block{&b.table, b.tree, b.skewfield_free};
  decider::Instance inst = decider::build_instance(block, b.unit);
  decider::Verdict v = decider::decide(inst, {o.pruning, o.threads});
  print_verdict(v, o);
  return v.sat ? kExitOk : kExitUnsat;
}

// ---------------------------------------------------------------------
// reproduction suites

struct CheckList {
  int failures = 0;
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

grouprep::UnitCandidate psl216_order15_unit() {
  grouprep::UnitCandidate u;
  u.order = 15;
  u.pa[1] = {{"15c", -1}, {"15d", 2}};
  u.pa[3] = {{"5a", 1}};
  u.pa[5] = {{"3a", 1}};
  return u;
}

Partition P(std::vector<int> v) { return Partition(std::move(v)); }

int reproduce_psl2_16(const Options& o) {
  CheckList cl;
  grouprep::CharacterTable table = psl2::character_table(16);
  cl.check("character table of psl(2,16) validates", table.validate().ok());
  grouprep::UnitCandidate u = psl216_order15_unit();
  cl.check("order-15 candidate ingests", u.validate(table).ok());
  cl.check("order-15 candidate is non-trivial", !grouprep::is_trivial_pattern(u));
  cl.check("order-15 candidate passes the integrality test",
           grouprep::help_feasible(table, u).feasible);

  struct BlockRun {
    std::string name;
    brauer::BrauerTree tree;
  };
  psl2::TreeBundle t3 = psl2::brauer_trees(16, 3);
  psl2::TreeBundle t5 = psl2::brauer_trees(16, 5);
  std::vector<BlockRun> runs = {{"p=3 principal", t3.principal},
                                {"p=3 non-principal", t3.nonprincipal.at(0)},
                                {"p=5 principal", t5.principal},
                                {"p=5 non-principal", t5.nonprincipal.at(0)}};
  for (const BlockRun& run : runs) {
    brauer::BlockDescriptor block{&table, run.tree, true};
    try {
      decider::Instance inst = decider::build_instance(block, u);
      decider::Verdict v = decider::decide(inst, {o.pruning, o.threads});
      cl.check(run.name + " decides SAT", v.sat);
      if (v.sat)
        cl.check(run.name + " witness re-verifies",
                 decider::verify_witness(inst, v.witness));
    } catch (const std::exception& e) {
      cl.check(run.name + " decides SAT", false, e.what());
    }
  }

  // the published assignment, checked verbatim against both conditions
  {
    brauer::BlockDescriptor block{&table, t3.nonprincipal.at(0), true};
    decider::Instance inst = decider::build_instance(block, u);
    decider::Assignment a;
    a.M[{"chi12", 0}] = P({3});
    a.M[{"chi12", 1}] = P({2, 1, 1});
    a.M[{"chi12", 2}] = P({3});
    a.M[{"chi16", 0}] = P({3});
    a.M[{"chi16", 1}] = P({2, 1, 1});
    a.M[{"chi16", 2}] = P({3});
    a.S[{"psi11", 0}] = P({3});
    a.S[{"psi11", 1}] = P({2, 1, 1});
    a.S[{"psi11", 2}] = P({3});
    cl.check("p=3 non-principal published assignment verifies",
             decider::verify_witness(inst, a));
    // each one-character alternative fails against the other character
    long long E = inst.xi_exp, Z = inst.zeta_exp;
    bool alt1_12 = decider::eigen_filtration_exists(
        P({3, 1}), inst.mu_at("chi12", E), {inst.mu_at("chi12", E + Z)}, 2, 3);
    bool alt1_17 = decider::eigen_filtration_exists(
        P({3, 1}), inst.mu_at("chi17", E),
        {inst.mu_at("chi17", E + Z), inst.mu_at("chi17", E + 2 * Z)}, 1, 3);
    bool alt2_12 = decider::eigen_filtration_exists(
        P({1, 1, 1, 1}), inst.mu_at("chi12", E), {inst.mu_at("chi12", E + Z)},
        2, 3);
    bool alt2_17 = decider::eigen_filtration_exists(
        P({1, 1, 1, 1}), inst.mu_at("chi17", E),
        {inst.mu_at("chi17", E + Z), inst.mu_at("chi17", E + 2 * Z)}, 1, 3);
    cl.check("alternative edge module [3,1] passes one character only",
             alt1_12 && !alt1_17);
    cl.check("alternative edge module [1,1,1,1] passes one character only",
             alt2_17 && !alt2_12);
  }
  {
    brauer::BlockDescriptor block{&table, t3.principal, true};
    decider::Instance inst = decider::build_instance(block, u);
    decider::Assignment a;
    a.M[{"chi1", 0}] = P({1});
    for (long long j : {1, 2}) a.M[{"chi1", j}] = P({});
    a.M[{"chi10", 0}] = P({3, 1});
    a.M[{"chi11", 0}] = P({3, 2});
    for (long long j : {1, 2}) {
      a.M[{"chi10", j}] = P({3});
      a.M[{"chi11", j}] = P({3});
    }
    a.S[{"psi1", 0}] = P({1});
    a.S[{"psi10", 0}] = P({3, 1});
    for (long long j : {1, 2}) {
      a.S[{"psi1", j}] = P({});
      a.S[{"psi10", j}] = P({3});
    }
    cl.check("p=3 principal published assignment verifies",
             decider::verify_witness(inst, a));
  }
  {
    brauer::BlockDescriptor block{&table, t5.principal, true};
    decider::Instance inst = decider::build_instance(block, u);
    decider::Assignment a;
    a.M[{"chi1", 0}] = P({1});
    a.M[{"chi1", 1}] = P({});
    a.M[{"chi10", 0}] = P({5, 1});
    a.M[{"chi10", 1}] = P({5});
    a.M[{"chi12", 0}] = P({5, 2});
    a.M[{"chi12", 1}] = P({5});
    a.S[{"psi1", 0}] = P({1});
    a.S[{"psi1", 1}] = P({});
    a.S[{"psi10", 0}] = P({5, 1});
    a.S[{"psi10", 1}] = P({5});
    cl.check("p=5 principal published assignment verifies",
             decider::verify_witness(inst, a));
  }
  {
    brauer::BlockDescriptor block{&table, t5.nonprincipal.at(0), true};
    decider::Instance inst = decider::build_instance(block, u);
    decider::Assignment a;
    a.M[{"chi11", 0}] = P({5});
    a.M[{"chi11", 1}] = P({4, 1, 1});
    a.M[{"chi14", 0}] = P({5});
    a.M[{"chi14", 1}] = P({4, 1, 1});
    a.S[{"psi11", 0}] = P({5});
    a.S[{"psi11", 1}] = P({4, 1, 1});
    cl.check("p=5 non-principal published assignment verifies",
             decider::verify_witness(inst, a));
  }

  std::cout << (cl.failures ? "FAILED" : "all checks passed") << "\n";
  return cl.failures ? kExitFail : kExitOk;
}

grouprep::UnitCandidate order_2t_pattern(const grouprep::CharacterTable& t,
                                         long long tt) {
  int g0 = -1;
  for (size_t i = 0; i < t.classes.size(); ++i)
    if (t.classes[i].element_order == 2 * tt) {
      g0 = (int)i;
      break;
    }
  if (g0 < 0) throw std::invalid_argument("no element of order 2t");
  grouprep::UnitCandidate u;
  u.order = 2 * tt;
  auto cls = [&](long long k) { return t.classes[t.power_class(g0, k)].id; };
  u.pa[1] = {{cls((tt - 1) / 2), 1}, {cls((tt + 1) / 2), 1}, {cls(tt - 1), -1}};
  u.pa[2] = {{cls(2), 1}};
  u.pa[tt] = {{cls(tt), 1}};
  return u;
}

int reproduce_psl2_2t(long long q, long long tt, const Options& o) {
  CheckList cl;
  grouprep::CharacterTable table = psl2::character_table(q);
  psl2::TreeBundle trees = psl2::brauer_trees(q, tt);
  brauer::BlockDescriptor block{&table, trees.principal, true};

  grouprep::UnitCandidate u = order_2t_pattern(table, tt);
  cl.check("augmentation pattern ingests", u.validate(table).ok());
  cl.check("pattern survives the integrality test",
           grouprep::help_feasible(table, u).feasible);
  try {
    decider::Instance inst = decider::build_instance(block, u);
    decider::Verdict v = decider::decide(inst, {o.pruning, o.threads});
    cl.check("principal block decides UNSAT", !v.sat,
             v.sat ? "found a module assignment" : "");
  } catch (const std::exception& e) {
    cl.check("principal block decides UNSAT", false, e.what());
  }

  // a genuine order-2t element is accepted
  int g0 = -1;
  for (size_t i = 0; i < table.classes.size(); ++i)
    if (table.classes[i].element_order == 2 * tt) g0 = (int)i;
  grouprep::UnitCandidate ind =
      grouprep::UnitCandidate::class_indicator(table, table.classes[g0].id);
  try {
    decider::Instance inst = decider::build_instance(block, ind);
    decider::Verdict v = decider::decide(inst, {o.pruning, o.threads});
    cl.check("class indicator decides SAT", v.sat);
  } catch (const std::exception& e) {
    cl.check("class indicator decides SAT", false, e.what());
  }
  std::cout << (cl.failures ? "FAILED" : "all checks passed") << "\n";
  return cl.failures ? kExitFail : kExitOk;
}

int reproduce_sylow_p(const std::string& group, long long p, const Options& o) {
  CheckList cl;
  if (group.rfind("psl2-", 0) != 0) {
    std::cerr << "unknown group " << group << "\n";
    return kExitParse;
  }
  long long q = std::stoll(group.substr(5));
  grouprep::CharacterTable table = psl2::character_table(q);
  psl2::TreeBundle trees = psl2::brauer_trees(q, p);
  brauer::BlockDescriptor block{&table, trees.principal, true};

  std::vector<std::string> pcls;
  for (const auto& c : table.classes)
    if (c.element_order == p) pcls.push_back(c.id);

  // every vector with entries in [-4,4] summing to one
  std::vector<std::map<std::string, long long>> vectors;
  std::function<void(size_t, long long, std::map<std::string, long long>&)> gen =
      [&](size_t i, long long sum, std::map<std::string, long long>& acc) {
        if (i + 1 == pcls.size()) {
          long long last = 1 - sum;
          if (last >= -4 && last <= 4) {
            acc[pcls[i]] = last;
            vectors.push_back(acc);
          }
          acc.erase(pcls[i]);
          return;
        }
        for (long long v = -4; v <= 4; ++v) {
          acc[pcls[i]] = v;
          gen(i + 1, sum + v, acc);
        }
        acc.erase(pcls[i]);
      };
  std::map<std::string, long long> acc;
  gen(0, 0, acc);

  int sat_trivial = 0, unsat_nontrivial = 0, infeasible = 0, wrong = 0;
  for (const auto& vec : vectors) {
    bool trivial = true;
    for (const auto& [cls, eps] : vec)
      if (eps < 0) trivial = false;
    grouprep::UnitCandidate u;
    u.order = p;
    u.pa[1] = vec;
    for (auto it = u.pa[1].begin(); it != u.pa[1].end();)
      it = it->second == 0 ? u.pa[1].erase(it) : std::next(it);
    if (!grouprep::help_feasible(table, u).feasible) {
      ++infeasible;
      continue;
    }
    decider::Instance inst =
        decider::build_sylow_p_instance(table, p, u.pa[1], block);
    decider::Verdict v = decider::decide(inst, {o.pruning, o.threads});
    if (trivial && v.sat) ++sat_trivial;
    else if (!trivial && !v.sat) ++unsat_nontrivial;
    else ++wrong;
  }
  std::cout << "vectors: " << vectors.size() << ", integrality-infeasible: "
            << infeasible << ", trivial SAT: " << sat_trivial
            << ", non-trivial UNSAT: " << unsat_nontrivial << "\n";
  cl.check("every indicator vector decides SAT",
           sat_trivial == (int)pcls.size() && wrong == 0);
  cl.check("every feasible non-trivial vector decides UNSAT", wrong == 0);
  std::cout << (cl.failures ? "FAILED" : "all checks passed") << "\n";
  return cl.failures ? kExitFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision engine for torsion units in blocks of cyclic defect"};
  app.require_subcommand(1);
  Options opt;
  app.set_config("--config", "", "options file (INI style; flags override)");
  app.add_option("--format", opt.format, "output format: text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--threads", opt.threads, "worker threads (timing only)");
  app.add_flag("!--no-pruning", opt.pruning, "disable the gamma-bound pruning");
  app.add_flag("!--no-witness", opt.witness, "suppress witness output");

  // lr
  std::string outer_s, inner_s, content_s;
  bool show_fillings = false;
  for (CLI::App* sub : std::vector<CLI::App*>{}) (void)sub;
  CLI::App* lr = app.add_subcommand("lr", "skew tableau existence");
  lr->fallthrough();
  lr->add_option("--outer", outer_s)->required();
  lr->add_option("--inner", inner_s);
  lr->add_option("--content", content_s)->required();
  lr->add_flag("--fillings", show_fillings, "list every filling");

  // filtration
  std::string total_s;
  std::vector<std::string> factor_s;
  CLI::App* filt = app.add_subcommand("filtration", "module filtration existence");
  filt->fallthrough();
  filt->add_option("--total", total_s)->required();
  filt->add_option("--factor", factor_s)->required();

  // mult
  std::string table_ref, unit_ref, chi_opt;
  CLI::App* mult = app.add_subcommand("mult", "eigenvalue multiplicity grids");
  mult->fallthrough();
  mult->add_option("--table", table_ref)->required();
  mult->add_option("--unit", unit_ref)->required();
  mult->add_option("--char", chi_opt, "restrict to one character");

  // help-check
  std::string hc_table, hc_unit;
  CLI::App* hc = app.add_subcommand("help-check", "integrality of all grids");
  hc->fallthrough();
  hc->add_option("--table", hc_table)->required();
  hc->add_option("--unit", hc_unit)->required();

  // decide
  std::string bundle_path;
  CLI::App* dec = app.add_subcommand("decide", "decide a block instance");
  dec->fallthrough();
  dec->add_option("--bundle", bundle_path)->required();

  // psl2
  CLI::App* psl = app.add_subcommand("psl2", "generic psl(2,q) data");
  psl->fallthrough();
  long long psl_q = 0, psl_t = 0;
  std::string psl_block = "principal", out_path;
  CLI::App* pslt = psl->add_subcommand("table", "emit the character table");
  pslt->add_option("--q", psl_q)->required();
  pslt->add_option("-o,--out", out_path);
  CLI::App* pslr = psl->add_subcommand("tree", "emit a defect-1 tree");
  pslr->add_option("--q", psl_q)->required();
  pslr->add_option("--t", psl_t)->required();
  pslr->add_option("--block", psl_block, "principal | nonprincipal:<index>");
  pslr->add_option("-o,--out", out_path);

  // reproduce
  CLI::App* rep = app.add_subcommand("reproduce", "run a reproduction suite");
  rep->fallthrough();
  std::string target, group = "psl2-11";
  long long rq = 19, rt = 5, rp = 5;
  rep->add_option("target", target, "psl2-16 | psl2-2t | sylow-p")->required();
  rep->add_option("--q", rq);
  rep->add_option("--t", rt);
  rep->add_option("--group", group);
  rep->add_option("--p", rp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (lr->parsed()) {
      Partition outer = io::parse_partition(outer_s);
      Partition inner = io::parse_partition(inner_s);
      Partition content = io::parse_partition(content_s);
      bool ok = tableaux::lr_exists(outer, inner, content);
      if (structured(opt)) {
        io::json j{{"exists", ok}};
        if (show_fillings) {
          io::json arr = io::json::array();
          for (const auto& t :
               tableaux::enumerate_fillings({outer, inner}, content))
            arr.push_back(t.entries);
          j["fillings"] = arr;
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "exists: " << (ok ? "true" : "false") << "\n";
        if (show_fillings)
          for (const auto& t :
               tableaux::enumerate_fillings({outer, inner}, content)) {
            for (int e : t.entries) std::cout << e << " ";
            std::cout << "\n";
          }
      }
      return kExitOk;
    }
    if (filt->parsed()) {
      Partition total = io::parse_partition(total_s);
      std::vector<Partition> factors;
      for (const std::string& f : factor_s)
        factors.push_back(io::parse_partition(f));
      bool ok = tableaux::filtration_exists(total, factors);
      if (structured(opt))
        std::cout << io::json{{"exists", ok}}.dump(2) << "\n";
      else
        std::cout << "exists: " << (ok ? "true" : "false") << "\n";
      return kExitOk;
    }
    if (mult->parsed()) {
      grouprep::CharacterTable table = load_table(table_ref);
      grouprep::UnitCandidate u = load_unit(unit_ref);
      auto urep = u.validate(table);
      if (!urep.ok()) {
        std::cerr << urep.summary();
        return kExitParse;
      }
      io::json out = io::json::object();
      for (const auto& ch : table.characters) {
        if (!chi_opt.empty() && ch.id != chi_opt) continue;
        grouprep::MultiplicityGrid g = grouprep::multiplicity_grid(table, ch.id, u);
        if (structured(opt)) {
          io::json row = io::json::array();
          for (const Rational& m : g.mu) row.push_back(m.get_str());
          out[ch.id] = row;
        } else {
          std::cout << ch.id << ":";
          for (const Rational& m : g.mu) std::cout << " " << m.get_str();
          std::cout << "\n";
        }
      }
      if (structured(opt)) std::cout << out.dump(2) << "\n";
      return kExitOk;
    }
    if (hc->parsed()) {
      grouprep::CharacterTable table = load_table(hc_table);
      grouprep::UnitCandidate u = load_unit(hc_unit);
      auto urep = u.validate(table);
      if (!urep.ok()) {
        std::cerr << "candidate rejected at ingestion:\n" << urep.summary();
        return kExitParse;
      }
      grouprep::HelpReport r = grouprep::help_feasible(table, u);
      if (structured(opt)) {
        io::json j{{"feasible", r.feasible}};
        if (r.first_violation)
          j["first_violation"] = {{"chi", r.first_violation->chi},
                                  {"power", r.first_violation->d},
                                  {"exponent", r.first_violation->k},
                                  {"value", r.first_violation->value.get_str()}};
        std::cout << j.dump(2) << "\n";
      } else if (r.feasible) {
        std::cout << "feasible: all multiplicities are nonnegative integers\n";
      } else {
        std::cout << "infeasible: first violation at (" << r.first_violation->chi
                  << ", power " << r.first_violation->d << ", exponent "
                  << r.first_violation->k << ") = "
                  << r.first_violation->value.get_str() << "\n";
      }
      return r.feasible ? kExitOk : kExitHelp;
    }
    if (dec->parsed()) {
      io::Bundle b = io::load_bundle(bundle_path);
      return run_decide_on_bundle(b, opt);
    }
    if (psl->parsed()) {
      if (pslt->parsed()) {
        io::json j = io::to_json(psl2::character_table(psl_q));
        if (out_path.empty()) std::cout << j.dump(2) << "\n";
        else io::save_json_file(out_path, j);
        return kExitOk;
      }
      if (pslr->parsed()) {
        psl2::TreeBundle trees = psl2::brauer_trees(psl_q, psl_t);
        brauer::BrauerTree tree = trees.principal;
        if (psl_block.rfind("nonprincipal", 0) == 0) {
          size_t ix = 0;
          if (auto c = psl_block.find(':'); c != std::string::npos)
            ix = std::stoul(psl_block.substr(c + 1));
          tree = trees.nonprincipal.at(ix);
        }
        io::json j = io::to_json(tree);
        if (out_path.empty()) std::cout << j.dump(2) << "\n";
        else io::save_json_file(out_path, j);
        return kExitOk;
      }
      std::cerr << "psl2 requires a subcommand\n";
      return kExitParse;
    }
    if (rep->parsed()) {
      if (target == "psl2-16") return reproduce_psl2_16(opt);
      if (target == "psl2-2t") return reproduce_psl2_2t(rq, rt, opt);
      if (target == "sylow-p") return reproduce_sylow_p(group, rp, opt);
      std::cerr << "unknown target " << target << "\n";
      return kExitParse;
    }
  } catch (const decider::HelpInfeasibleError& e) {
    std::cerr << "rejected, integrality fails: " << e.what() << "\n";
    return kExitHelp;
  } catch (const decider::IneligibleInstanceError& e) {
    std::cerr << "rejected, outside the engine's scope: " << e.what() << "\n";
    return kExitIneligible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
