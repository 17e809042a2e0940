#include "blockunits/psl2.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace blockunits::psl2 {

using cyclo::CycNumber;
using grouprep::Character;
using grouprep::ClassInfo;

namespace {

enum class Kind { Id, Uni1, Uni2, Split, Non };

struct ClassKey {
  Kind kind;
  long long param = 0;  // torus exponent for Split/Non
  long long order = 1;
};

struct Layout {
  long long q, p, f;
  bool even;
  long long s;   // split torus order: q-1 (even q), (q-1)/2 (odd q)
  long long tn;  // nonsplit torus order: q+1 or (q+1)/2
  long long group_order;
  long long exponent;
  std::vector<ClassKey> keys;  // final class order
  std::vector<std::string> names;
};

long long fold(long long x, long long m) {
  x = mod_pos(x, m);
  return std::min(x, m - x);
}

bool square_in_fq(long long r, long long p, long long f) {
  if (f % 2 == 0) return true;
  return pow_mod(r, (p - 1) / 2, p) == 1;
}

// folded torus exponents of the split series characters, in table order
std::vector<long long> split_index_seq(const Layout& L) {
  std::vector<long long> seq;
  for (long long i = 1; 2 * i < L.s + (L.even ? 1 : 0); ++i)
    if (fold(2 * i, L.s) != 0 || L.even) seq.push_back(i);
  if (L.q == 16) seq = {5, 3, 6, 1, 4, 2, 7};  // library numbering
  return seq;
}

std::vector<long long> non_index_seq(const Layout& L) {
  std::vector<long long> seq;
  for (long long j = 1; 2 * j < L.tn + (L.even ? 1 : 0); ++j)
    if (fold(2 * j, L.tn) != 0 || L.even) seq.push_back(j);
  return seq;
}

// class enumeration order within each element order (custom for q = 16 so
// the conventional library names line up)
std::vector<long long> split_class_seq(const Layout& L) {
  std::vector<long long> seq;
  for (long long l = 1; 2 * l <= L.s; ++l) seq.push_back(l);
  if (L.q == 16) seq = {5, 6, 3, 1, 4, 7, 2};
  return seq;
}

Layout make_layout(long long q) {
  Layout L;
  L.q = q;
  std::vector<long long> ps = prime_factors(q);
  if (ps.size() != 1 || q < 4)
    throw std::invalid_argument("q must be a prime power >= 4");
  L.p = ps[0];
  L.f = 0;
  for (long long t = q; t > 1; t /= L.p) ++L.f;
  L.even = (L.p == 2);
  if (L.even) {
    L.s = q - 1;
    L.tn = q + 1;
    L.group_order = q * (q - 1) * (q + 1);
    L.exponent = lcm_ll(2, lcm_ll(L.s, L.tn));
  } else {
    L.s = (q - 1) / 2;
    L.tn = (q + 1) / 2;
    L.group_order = q * (q - 1) * (q + 1) / 2;
    L.exponent = L.p * lcm_ll(L.s, L.tn);
  }

  L.keys.push_back({Kind::Id, 0, 1});
  if (L.even) {
    L.keys.push_back({Kind::Uni1, 0, 2});
  } else {
    L.keys.push_back({Kind::Uni1, 0, L.p});
    L.keys.push_back({Kind::Uni2, 0, L.p});
  }
  for (long long l : split_class_seq(L))
    L.keys.push_back({Kind::Split, l, L.s / gcd_ll(L.s, l)});
  for (long long m = 1; 2 * m <= L.tn; ++m)
    L.keys.push_back({Kind::Non, m, L.tn / gcd_ll(L.tn, m)});

  std::stable_sort(
      L.keys.begin(), L.keys.end(),
      [](const ClassKey& a, const ClassKey& b) { return a.order < b.order; });
  std::map<long long, int> seen;
  for (const ClassKey& k : L.keys)
    L.names.push_back(std::to_string(k.order) +
                      std::string(1, (char)('a' + seen[k.order]++)));
  return L;
}

int find_class(const Layout& L, Kind kind, long long param) {
  for (size_t i = 0; i < L.keys.size(); ++i)
    if (L.keys[i].kind == kind && L.keys[i].param == param) return (int)i;
  throw std::logic_error("class lookup failed");
}

int split_class(const Layout& L, long long exponent) {
  long long x = fold(exponent, L.s);
  return x == 0 ? find_class(L, Kind::Id, 0) : find_class(L, Kind::Split, x);
}

int non_class(const Layout& L, long long exponent) {
  long long x = fold(exponent, L.tn);
  return x == 0 ? find_class(L, Kind::Id, 0) : find_class(L, Kind::Non, x);
}

// sqrt(p) for p = 1 mod 4, sqrt(-p) for p = 3 mod 4
CycNumber gauss_sum(long long p) {
  CycNumber g;
  for (long long x = 1; x < p; ++x) {
    long long leg = pow_mod(x, (p - 1) / 2, p) == 1 ? 1 : -1;
    g += rat(leg) * CycNumber::root(p, x);
  }
  return g;
}

CycNumber torus_sum(long long torus, long long i, long long l) {
  return CycNumber::root(torus, i * l) + CycNumber::root(torus, -i * l);
}

std::string steinberg_id(const CharacterTable& T, long long q) {
  for (size_t c = 0; c < T.characters.size(); ++c)
    if (T.degree((int)c) == rat(q)) return T.characters[c].id;
  throw std::logic_error("no Steinberg character");
}

}  // namespace

CharacterTable character_table(long long q) {
  Layout L = make_layout(q);
  CharacterTable T;
  T.group_name = "psl2_" + std::to_string(q);
  T.order = L.group_order;
  T.exponent = L.exponent;

  for (size_t i = 0; i < L.keys.size(); ++i) {
    ClassInfo ci;
    ci.id = L.names[i];
    ci.element_order = L.keys[i].order;
    const ClassKey& k = L.keys[i];
    for (long long r : prime_factors(L.exponent)) {
      int target = (int)i;
      switch (k.kind) {
        case Kind::Id:
          target = find_class(L, Kind::Id, 0);
          break;
        case Kind::Uni1:
        case Kind::Uni2:
          if (L.even)
            target = (r == 2) ? find_class(L, Kind::Id, 0) : (int)i;
          else if (r == L.p)
            target = find_class(L, Kind::Id, 0);
          else if (square_in_fq(r, L.p, L.f))
            target = (int)i;
          else
            target =
                find_class(L, k.kind == Kind::Uni1 ? Kind::Uni2 : Kind::Uni1, 0);
          break;
        case Kind::Split:
          target = split_class(L, k.param * r);
          break;
        case Kind::Non:
          target = non_class(L, k.param * r);
          break;
      }
      ci.power_map[r] = L.names[target];
    }
    T.classes.push_back(std::move(ci));
  }

  CycNumber root_disc;  // sqrt(q) or sqrt(-q), matching q mod 4
  if (!L.even) {
    if (L.f % 2 == 0) {
      long long r = 1;
      for (long long k = 0; k < L.f / 2; ++k) r *= L.p;
      root_disc = CycNumber::from_int(r);
    } else {
      root_disc = gauss_sum(L.p);
      for (long long k = 0; k < (L.f - 1) / 2; ++k)
        root_disc = rat(L.p) * root_disc;
    }
  }
  bool q1mod4 = (mod_pos(q, 4) == 1);

  auto value_of = [&](const std::string& series, long long idx,
                      const ClassKey& k) -> CycNumber {
    if (series == "triv") return CycNumber::from_int(1);
    if (series == "steinberg") {
      switch (k.kind) {
        case Kind::Id: return CycNumber::from_int(q);
        case Kind::Uni1:
        case Kind::Uni2: return CycNumber{};
        case Kind::Split: return CycNumber::from_int(1);
        case Kind::Non: return CycNumber::from_int(-1);
      }
    }
    if (series == "discrete") {
      switch (k.kind) {
        case Kind::Id: return CycNumber::from_int(q - 1);
        case Kind::Uni1:
        case Kind::Uni2: return CycNumber::from_int(-1);
        case Kind::Split: return CycNumber{};
        case Kind::Non: return -torus_sum(L.tn, idx, k.param);
      }
    }
    if (series == "principal") {
      switch (k.kind) {
        case Kind::Id: return CycNumber::from_int(q + 1);
        case Kind::Uni1:
        case Kind::Uni2: return CycNumber::from_int(1);
        case Kind::Split: return torus_sum(L.s, idx, k.param);
        case Kind::Non: return CycNumber{};
      }
    }
    if (series == "half1" || series == "half2") {
      bool first = (series == "half1");
      CycNumber base = CycNumber::from_rational(
          q1mod4 ? rat(1, 2) : rat(-1, 2));
      CycNumber dev = rat(1, 2) * root_disc;
      switch (k.kind) {
        case Kind::Id:
          return CycNumber::from_rational(q1mod4 ? rat(q + 1, 2)
                                                 : rat(q - 1, 2));
        case Kind::Uni1: return first ? base + dev : base - dev;
        case Kind::Uni2: return first ? base - dev : base + dev;
        case Kind::Split:
          if (!q1mod4) return CycNumber{};
          return CycNumber::from_int(k.param % 2 == 0 ? 1 : -1);
        case Kind::Non:
          if (q1mod4) return CycNumber{};
          return CycNumber::from_int(k.param % 2 == 0 ? -1 : 1);
      }
    }
    throw std::logic_error("unknown series");
  };

  struct Spec {
    std::string series;
    long long idx;
  };
  std::vector<Spec> specs;
  specs.push_back({"triv", 0});
  if (!L.even) {
    specs.push_back({"half1", 0});
    specs.push_back({"half2", 0});
  }
  for (long long j : non_index_seq(L)) specs.push_back({"discrete", j});
  specs.push_back({"steinberg", 0});
  for (long long i : split_index_seq(L)) specs.push_back({"principal", i});

  int chi_no = 0;
  for (const Spec& sp : specs) {
    Character ch;
    ch.id = "chi" + std::to_string(++chi_no);
    for (const ClassKey& k : L.keys)
      ch.values.push_back(value_of(sp.series, sp.idx, k));
    T.characters.push_back(std::move(ch));
  }
  T.build_index();
  return T;
}

namespace {

// series character ids keyed by torus exponent, mirroring character_table
std::map<long long, std::string> series_chars(const CharacterTable& T,
                                              const Layout& L, bool split) {
  std::vector<long long> seq = split ? split_index_seq(L) : non_index_seq(L);
  Rational deg = split ? rat(L.q + 1) : rat(L.q - 1);
  std::vector<std::string> ids;
  for (size_t c = 0; c < T.characters.size(); ++c)
    if (T.degree((int)c) == deg) ids.push_back(T.characters[c].id);
  if (ids.size() != seq.size()) throw std::logic_error("series size mismatch");
  std::map<long long, std::string> out;
  for (size_t i = 0; i < seq.size(); ++i) out[seq[i]] = ids[i];
  return out;
}

BrauerTree path_tree(long long p,
                     const std::vector<std::vector<std::string>>& vertex_chars,
                     const std::vector<std::string>& brauer_ids,
                     int exceptional_vertex, int mult) {
  BrauerTree t;
  t.p = p;
  for (size_t i = 0; i < vertex_chars.size(); ++i)
    t.vertices.push_back({"v" + std::to_string(i + 1), vertex_chars[i]});
  for (size_t i = 0; i < brauer_ids.size(); ++i)
    t.edges.push_back({"e" + std::to_string(i + 1), brauer_ids[i],
                       {t.vertices[i].id, t.vertices[i + 1].id}});
  for (size_t i = 0; i < t.vertices.size(); ++i) {
    std::vector<std::string> inc;
    if (i > 0) inc.push_back(t.edges[i - 1].id);
    if (i < t.edges.size()) inc.push_back(t.edges[i].id);
    t.cyclic_order[t.vertices[i].id] = inc;
  }
  if (mult > 1) t.exceptional = {t.vertices[exceptional_vertex].id, mult};
  t.positive_vertex = t.vertices[0].id;
  return t;
}

}  // namespace

TreeBundle brauer_trees(long long q, long long t) {
  Layout L = make_layout(q);
  CharacterTable T = character_table(q);
  if (!is_prime(t) || t == 2 || t == L.p)
    throw std::invalid_argument("t must be an odd prime different from p");
  bool split;
  if (L.s % t == 0) split = true;
  else if (L.tn % t == 0) split = false;
  else throw std::invalid_argument("t does not divide the group order");
  long long torus = split ? L.s : L.tn;
  if (torus % (t * t) == 0)
    throw std::invalid_argument("t^2 divides the group order (defect > 1)");

  std::map<long long, std::string> series = series_chars(T, L, split);
  std::string st = steinberg_id(T, q);
  std::string psi_st = "psi" + st.substr(3);
  long long step = torus / t;

  std::vector<std::string> family;
  for (long long w = 1; 2 * w < t; ++w)
    family.push_back(series.at(fold(step * w, torus)));
  std::sort(family.begin(), family.end());
  int mult = (int)family.size();

  TreeBundle bundle;
  if (split)
    bundle.principal =
        path_tree(t, {{"chi1"}, family, {st}}, {"psi1", psi_st}, 1, mult);
  else
    bundle.principal =
        path_tree(t, {{"chi1"}, {st}, family}, {"psi1", psi_st}, 2, mult);

  if (L.even && split) {
    // non-principal defect-1 blocks: split series grouped by the t'-part of
    // the index; the order-t' character is the lone non-exceptional vertex
    long long sprime = L.s / t;
    std::map<long long, std::vector<long long>> groups;
    for (const auto& [i, id] : series) {
      long long key = fold(i, sprime);
      if (key == 0) continue;  // these sit in the principal block
      groups[key].push_back(i);
    }
    for (auto& [key, members] : groups) {
      std::vector<std::string> exc, nonexc;
      for (long long i : members)
        (i % t == 0 ? nonexc : exc).push_back(series.at(i));
      if (nonexc.size() != 1 || exc.empty())
        throw std::logic_error("unexpected non-principal block shape");
      std::sort(exc.begin(), exc.end());
      bundle.nonprincipal.push_back(
          path_tree(t, {{nonexc[0]}, exc}, {"psi0"}, 1, (int)exc.size()));
    }
    std::sort(bundle.nonprincipal.begin(), bundle.nonprincipal.end(),
              [](const BrauerTree& a, const BrauerTree& b) {
                return a.vertices[0].chars[0] < b.vertices[0].chars[0];
              });
    for (size_t i = 0; i < bundle.nonprincipal.size(); ++i) {
      std::string psi =
          "psi" + std::to_string(std::stoll(st.substr(3)) + 1 + (long long)i);
      for (auto& e : bundle.nonprincipal[i].edges) e.brauer_id = psi;
    }
  }
  return bundle;
}

ExceptionalChoice burkhardt_exceptional(const CharacterTable& table,
                                        long long q, long long t) {
  Layout L = make_layout(q);
  long long twot = 2 * t;
  if (L.s % twot != 0 && L.tn % twot != 0)
    throw std::invalid_argument("no element of order 2t");
  int g0 = -1;
  for (size_t i = 0; i < table.classes.size(); ++i)
    if (table.classes[i].element_order == twot) {
      g0 = (int)i;
      break;
    }
  if (g0 < 0) throw std::invalid_argument("no class of order 2t");
  int sign = (mod_pos(q, 4) == 1) ? 1 : -1;

  const BrauerTree pt = brauer_trees(q, t).principal;
  std::string st = steinberg_id(table, q);
  std::vector<std::string> family;
  for (const auto& v : pt.vertices) {
    if (pt.exceptional && v.id == pt.exceptional->first) family = v.chars;
  }
  if (family.empty())
    for (const auto& v : pt.vertices)
      if (v.chars[0] != "chi1" && v.chars[0] != st) family = v.chars;

  for (const std::string& chi : family) {
    bool ok = true;
    for (long long i = 1; i < twot && ok; ++i) {
      int cls = table.power_class(g0, i);
      CycNumber want =
          rat(sign) * (CycNumber::root(t, i) + CycNumber::root(t, -i));
      if (table.value(table.char_index(chi), cls) != want) ok = false;
    }
    if (ok) {
      Rational deg = table.degree(table.char_index(chi));
      if (deg != rat(sign == 1 ? q + 1 : q - 1))
        throw std::logic_error("exceptional degree mismatch");
      return {chi, sign, table.classes[g0].id};
    }
  }
  throw std::invalid_argument("no exceptional character with the stated values");
}

}  // namespace blockunits::psl2
