#include "blockunits/io.hpp"

#include <fstream>
#include <sstream>

#include "blockunits/psl2.hpp"

namespace blockunits::io {

using cyclo::CycNumber;

json to_json(const CycNumber& x) {
  // abbreviate plain roots of unity
  for (long long k = 0; k < x.order(); ++k)
    if (x == CycNumber::root(x.order(), k)) {
      if (x.order() == 1 || k == 0) break;
      return json{{"zeta", {x.order(), k}}};
    }
  json coeffs = json::array();
  for (const Rational& c : x.coeffs()) coeffs.push_back(c.get_str());
  return json{{"order", x.order()}, {"coeffs", coeffs}};
}

CycNumber cyc_from_json(const json& j) {
  if (j.is_number_integer())
    return CycNumber::from_int(j.get<long long>());
  if (j.is_string()) return CycNumber::from_rational(parse_rational(j));
  if (j.contains("zeta")) {
    auto z = j.at("zeta");
    return CycNumber::root(z.at(0).get<long long>(), z.at(1).get<long long>());
  }
  long long order = j.at("order").get<long long>();
  CycNumber x;
  const json& coeffs = j.at("coeffs");
  for (size_t k = 0; k < coeffs.size(); ++k) {
    Rational c = coeffs[k].is_string() ? parse_rational(coeffs[k])
                                       : rat(coeffs[k].get<long long>());
    if (c != 0)
      x += c * CycNumber::root(order, (long long)k);
  }
  return x.lifted_to(lcm_ll(order, x.order()));
}

json to_json(const grouprep::CharacterTable& t) {
  json classes = json::array();
  for (const auto& c : t.classes) {
    json pm = json::object();
    for (const auto& [p, id] : c.power_map) pm[std::to_string(p)] = id;
    classes.push_back(
        {{"id", c.id}, {"order", c.element_order}, {"powermap", pm}});
  }
  json chars = json::array();
  for (const auto& ch : t.characters) {
    json vals = json::array();
    for (const auto& v : ch.values) vals.push_back(to_json(v));
    chars.push_back({{"id", ch.id}, {"values", vals}});
  }
  return json{{"group", t.group_name},
              {"order", t.order},
              {"exponent", t.exponent},
              {"classes", classes},
              {"characters", chars}};
}

grouprep::CharacterTable table_from_json(const json& j) {
  grouprep::CharacterTable t;
  t.group_name = j.at("group").get<std::string>();
  t.order = j.at("order").get<long long>();
  t.exponent = j.at("exponent").get<long long>();
  for (const json& c : j.at("classes")) {
    grouprep::ClassInfo ci;
    ci.id = c.at("id").get<std::string>();
    ci.element_order = c.at("order").get<long long>();
    if (c.contains("powermap"))
      for (auto it = c.at("powermap").begin(); it != c.at("powermap").end(); ++it)
        ci.power_map[std::stoll(it.key())] = it.value().get<std::string>();
    t.classes.push_back(std::move(ci));
  }
  for (const json& c : j.at("characters")) {
    grouprep::Character ch;
    ch.id = c.at("id").get<std::string>();
    for (const json& v : c.at("values")) ch.values.push_back(cyc_from_json(v));
    t.characters.push_back(std::move(ch));
  }
  t.build_index();
  return t;
}

json to_json(const grouprep::UnitCandidate& u) {
  json pa = json::object();
  for (const auto& [d, m] : u.pa) {
    json row = json::object();
    for (const auto& [cls, eps] : m) row[cls] = eps;
    pa[std::to_string(d)] = row;
  }
  return json{{"order", u.order}, {"pa", pa}};
}

grouprep::UnitCandidate unit_from_json(const json& j) {
  grouprep::UnitCandidate u;
  u.order = j.at("order").get<long long>();
  for (auto it = j.at("pa").begin(); it != j.at("pa").end(); ++it) {
    std::map<std::string, long long> row;
    for (auto c = it.value().begin(); c != it.value().end(); ++c)
      row[c.key()] = c.value().get<long long>();
    u.pa[std::stoll(it.key())] = std::move(row);
  }
  return u;
}

json to_json(const brauer::BrauerTree& t) {
  json vertices = json::array();
  for (const auto& v : t.vertices)
    vertices.push_back({{"id", v.id}, {"chars", v.chars}});
  json edges = json::array();
  for (const auto& e : t.edges)
    edges.push_back(
        {{"id", e.id}, {"brauer", e.brauer_id}, {"ends", {e.ends[0], e.ends[1]}}});
  json cyc = json::object();
  for (const auto& [v, es] : t.cyclic_order) cyc[v] = es;
  json out{{"p", t.p},
           {"vertices", vertices},
           {"edges", edges},
           {"cyclic_order", cyc},
           {"positive_vertex", t.positive_vertex}};
  if (t.exceptional)
    out["exceptional"] = {{"vertex", t.exceptional->first},
                          {"mult", t.exceptional->second}};
  return out;
}

brauer::BrauerTree tree_from_json(const json& j) {
  brauer::BrauerTree t;
  t.p = j.at("p").get<long long>();
  for (const json& v : j.at("vertices"))
    t.vertices.push_back({v.at("id").get<std::string>(),
                          v.at("chars").get<std::vector<std::string>>()});
  for (const json& e : j.at("edges"))
    t.edges.push_back({e.at("id").get<std::string>(),
                       e.at("brauer").get<std::string>(),
                       {e.at("ends").at(0).get<std::string>(),
                        e.at("ends").at(1).get<std::string>()}});
  if (j.contains("cyclic_order"))
    for (auto it = j.at("cyclic_order").begin(); it != j.at("cyclic_order").end();
         ++it)
      t.cyclic_order[it.key()] = it.value().get<std::vector<std::string>>();
  if (j.contains("exceptional"))
    t.exceptional = {j.at("exceptional").at("vertex").get<std::string>(),
                     j.at("exceptional").at("mult").get<int>()};
  t.positive_vertex = j.at("positive_vertex").get<std::string>();
  return t;
}

json to_json(const decider::Verdict& v) {
  json out;
  out["status"] = v.sat ? "SAT" : "UNSAT";
  out["nodes"] = v.nodes;
  if (v.sat) {
    json M = json::object(), S = json::object();
    for (const auto& [k, part] : v.witness.M) {
      json arr = json::array();
      for (int p : part.parts()) arr.push_back(p);
      M[k.first + "@" + std::to_string(k.second)] = arr;
    }
    for (const auto& [k, part] : v.witness.S) {
      json arr = json::array();
      for (int p : part.parts()) arr.push_back(p);
      S[k.first + "@" + std::to_string(k.second)] = arr;
    }
    out["witness"] = {{"M", M}, {"S", S}};
  } else {
    out["first_failure"] = v.first_failure;
  }
  return out;
}

Partition partition_from_json(const json& j) {
  std::vector<int> parts;
  for (const json& x : j) parts.push_back(x.get<int>());
  for (size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  return Partition(parts);
}

Partition parse_partition(const std::string& s) {
  std::vector<int> parts;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("bad partition: " + s);
      parts.push_back(v);
    }
  }
  for (size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1])
      throw std::invalid_argument("partition not weakly decreasing: " + s);
  return Partition(parts);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

namespace {

json resolve_ref(const json& ref, const std::filesystem::path& base) {
  if (ref.is_string())
    return load_json_file(base / ref.get<std::string>());
  return ref;
}

}  // namespace

Bundle load_bundle(const std::filesystem::path& path) {
  json j = load_json_file(path);
  std::filesystem::path base = path.parent_path();
  Bundle b;

  json tref = resolve_ref(j.at("table"), base);
  if (tref.contains("psl2"))
    b.table = psl2::character_table(tref.at("psl2").at("q").get<long long>());
  else
    b.table = table_from_json(tref);

  json rref = resolve_ref(j.at("tree"), base);
  if (rref.contains("psl2")) {
    long long q = rref.at("psl2").at("q").get<long long>();
    long long t = rref.at("psl2").at("t").get<long long>();
    std::string which = rref.at("psl2").value("block", "principal");
    psl2::TreeBundle trees = psl2::brauer_trees(q, t);
    if (which == "principal") {
      b.tree = trees.principal;
    } else if (which.rfind("nonprincipal", 0) == 0) {
      size_t ix = 0;
      if (auto c = which.find(':'); c != std::string::npos)
        ix = std::stoul(which.substr(c + 1));
      b.tree = trees.nonprincipal.at(ix);
    } else {
      throw std::invalid_argument("unknown tree block selector: " + which);
    }
  } else {
    b.tree = tree_from_json(rref);
  }

  b.unit = unit_from_json(resolve_ref(j.at("unit"), base));
  b.skewfield_free = j.value("skewfield_free", false);
  return b;
}

}  // namespace blockunits::io
