#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cuntzkit/checkers.hpp"
#include "cuntzkit/duality.hpp"
#include "cuntzkit/verify.hpp"

namespace cuntzkit::io {

using Json = nlohmann::json;
using nlohmann::ordered_json;

// Decoding takes a JSON pointer-style path so errors name the offending node.

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "missing field");
  return *it;
}

inline const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

inline bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected a boolean");
  return j.get<bool>();
}

// ---------------------------------------------------------------------------
// Rationals, spaces, sets.

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const MalformedInput& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected a rational string \"p/q\"");
}

inline Json to_json(const Space& s) {
  Json comps = Json::array();
  for (const auto& c : s.components()) comps.push_back({{"kind", to_string(c.kind)}, {"length", to_json(c.length)}});
  return {{"components", comps}};
}

inline Space space_from_json(const Json& j, const std::string& path = "") {
  const Json& comps = array_at(field(j, "components", path), child(path, "components"));
  std::vector<Component> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string p = child(child(path, "components"), i);
    const Json& kj = field(comps[i], "kind", p);
    if (!kj.is_string()) throw ParseError(child(p, "kind"), "expected a string");
    const std::string kind = kj.get<std::string>();
    try {
      if (kind == "point") {
        if (comps[i].contains("length") && rational_from_json(comps[i]["length"], child(p, "length")) != 0)
          throw ParseError(child(p, "length"), "a point has length 0");
        out.push_back(Component::point());
      } else if (kind == "arc" || kind == "circle") {
        Rational len = rational_from_json(field(comps[i], "length", p), child(p, "length"));
        out.push_back(kind == "arc" ? Component::arc(len) : Component::circle(len));
      } else {
        throw ParseError(child(p, "kind"), "unknown component kind '" + kind + "'");
      }
    } catch (const MalformedInput& e) {
      throw ParseError(p, e.what());
    }
  }
  try {
    return Space(std::move(out));
  } catch (const MalformedInput& e) {
    throw ParseError(path, e.what());
  }
}

inline Json soup_to_json(const IntervalSoup& soup) {
  Json sets = Json::array();
  for (const auto& comp : soup.sets) {
    Json ivs = Json::array();
    for (const auto& iv : comp) ivs.push_back({to_json(iv.a), to_json(iv.b), iv.incl_left, iv.incl_right});
    sets.push_back(ivs);
  }
  Json flags = Json::array();
  for (bool f : soup.full_flags) flags.push_back(f);
  return {{"sets", sets}, {"full_flags", flags}};
}

inline IntervalSoup soup_from_json(const Json& j, const SpacePtr& sp, const std::string& path) {
  IntervalSoup soup;
  const Json& sets = array_at(field(j, "sets", path), child(path, "sets"));
  if (sets.size() != sp->size()) throw ParseError(child(path, "sets"), "expected one entry per component");
  for (std::size_t ci = 0; ci < sets.size(); ++ci) {
    const std::string pc = child(child(path, "sets"), ci);
    const Json& ivs = array_at(sets[ci], pc);
    std::vector<Interval> comp;
    for (std::size_t k = 0; k < ivs.size(); ++k) {
      const std::string pk = child(pc, k);
      const Json& iv = array_at(ivs[k], pk);
      if (iv.size() != 4) throw ParseError(pk, "expected [a, b, incl_left, incl_right]");
      comp.push_back({rational_from_json(iv[0], child(pk, 0)), rational_from_json(iv[1], child(pk, 1)), boolean(iv[2], child(pk, 2)),
                      boolean(iv[3], child(pk, 3))});
    }
    soup.sets.push_back(std::move(comp));
  }
  if (j.contains("full_flags")) {
    const Json& flags = array_at(j["full_flags"], child(path, "full_flags"));
    if (flags.size() != sp->size()) throw ParseError(child(path, "full_flags"), "expected one flag per component");
    for (std::size_t ci = 0; ci < flags.size(); ++ci) soup.full_flags.push_back(boolean(flags[ci], child(child(path, "full_flags"), ci)));
  } else {
    soup.full_flags.assign(sp->size(), false);
  }
  return soup;
}

inline Json to_json(const OpenSet& u) { return soup_to_json(u.to_soup()); }
inline Json to_json(const ClosedSet& c) { return soup_to_json(c.to_soup()); }

/// Errors inside the set constructors are reported at the set's path.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

inline OpenSet open_set_from_json(const Json& j, const SpacePtr& sp, const std::string& path = "") {
  auto soup = soup_from_json(j, sp, path);
  return at_path(path, [&] { return OpenSet::normalize(sp, soup); });
}

inline ClosedSet closed_set_from_json(const Json& j, const SpacePtr& sp, const std::string& path = "") {
  auto soup = soup_from_json(j, sp, path);
  return at_path(path, [&] { return ClosedSet::from_intervals(sp, soup); });
}

// ---------------------------------------------------------------------------
// Lsc elements and chain witnesses.

inline Json to_json(const LscElement& f) {
  Json levels = Json::array();
  for (const auto& l : f.levels()) levels.push_back(to_json(l));
  return {{"levels", levels}, {"infinity", to_json(f.infinity())}};
}

inline LscElement element_from_json(const Json& j, const SpacePtr& sp, const std::string& path = "") {
  const Json& lv = array_at(field(j, "levels", path), child(path, "levels"));
  std::vector<OpenSet> levels;
  for (std::size_t i = 0; i < lv.size(); ++i) levels.push_back(open_set_from_json(lv[i], sp, child(child(path, "levels"), i)));
  OpenSet inf = j.contains("infinity") ? open_set_from_json(j["infinity"], sp, child(path, "infinity")) : OpenSet::empty(sp);
  return at_path(path, [&] { return LscElement(sp, std::move(levels), std::move(inf)); });
}

inline Json to_json(const ChainWitness& w) {
  Json pieces = Json::array();
  for (const auto& p : w.pieces) pieces.push_back(to_json(p));
  return {{"kind", to_string(w.kind)}, {"pieces", pieces}, {"mesh", to_json(w.mesh)}, {"refines", w.refines}};
}

inline ChainWitness witness_from_json(const Json& j, const SpacePtr& sp, const std::string& path = "") {
  ChainWitness w;
  const Json& kind = field(j, "kind", path);
  if (kind == "chain") w.kind = ChainKind::chain;
  else if (kind == "almost_chain") w.kind = ChainKind::almost_chain;
  else throw ParseError(child(path, "kind"), "expected \"chain\" or \"almost_chain\"");
  const Json& pieces = array_at(field(j, "pieces", path), child(path, "pieces"));
  for (std::size_t i = 0; i < pieces.size(); ++i) w.pieces.push_back(open_set_from_json(pieces[i], sp, child(child(path, "pieces"), i)));
  w.mesh = rational_from_json(field(j, "mesh", path), child(path, "mesh"));
  const Json& refines = array_at(field(j, "refines", path), child(path, "refines"));
  for (std::size_t i = 0; i < refines.size(); ++i) {
    if (!refines[i].is_number_unsigned()) throw ParseError(child(child(path, "refines"), i), "expected a cover index");
    w.refines.push_back(refines[i].get<std::size_t>());
  }
  if (w.refines.size() != w.pieces.size()) throw ParseError(child(path, "refines"), "expected one index per piece");
  return w;
}

/// A cover: {"cover": [OpenSet, ...]} or a bare array.
inline Cover cover_from_json(const Json& j, const SpacePtr& sp, const std::string& path = "") {
  const bool wrapped = j.is_object();
  const Json& arr = array_at(wrapped ? field(j, "cover", path) : j, wrapped ? child(path, "cover") : path);
  const std::string base = wrapped ? child(path, "cover") : path;
  Cover out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(open_set_from_json(arr[i], sp, child(base, i)));
  return out;
}

// ---------------------------------------------------------------------------
// Abstract model elements.

inline Json to_json(const ExtNat& n) { return n.infinite ? Json("inf") : Json(n.value); }

inline Json element_to_json(const NBarModel&, const ExtNat& n) { return to_json(n); }
inline ExtNat element_from_json(const NBarModel&, const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtNat::inf();
  if (j.is_number_integer() && j.get<long long>() >= 0) return {j.get<long long>(), false};
  throw ParseError(path, "expected a natural number or \"inf\"");
}

inline Json element_to_json(const ZModel&, const ZElement& e) {
  switch (e.kind) {
    case ZElement::Kind::compact: return {{"compact", e.value.get_num().get_si()}};
    case ZElement::Kind::soft: return {{"soft", e.infinite ? std::string("inf") : to_string(e.value)}};
    case ZElement::Kind::one_pp: return {{"atom", "1''"}};
  }
  return nullptr;
}

/// Objects as emitted, or the shorthand strings "2" (compact), "1.1" or
/// "1'" (soft), "inf" and "1''".
inline ZElement z_element_from_json(const Json& j, const std::string& path, bool allow_atom) {
  auto atom = [&] {
    if (!allow_atom) throw ParseError(path, "1'' exists only in zprime");
    return ZElement::one_pp();
  };
  try {
    if (j.is_number_integer() && j.get<long>() >= 0) return ZElement::compact(j.get<long>());
    if (j.is_object()) {
      if (j.size() != 1) throw ParseError(path, "expected one of compact, soft, atom");
      if (j.contains("compact")) {
        const Json& c = j["compact"];
        if (!c.is_number_integer() || c.get<long>() < 0) throw ParseError(child(path, "compact"), "expected a natural number");
        return ZElement::compact(c.get<long>());
      }
      if (j.contains("soft")) {
        const Json& s = j["soft"];
        if (s == "inf") return ZElement::soft_inf();
        Rational t = rational_from_json(s, child(path, "soft"));
        if (t <= 0) throw ParseError(child(path, "soft"), "soft values are positive");
        return ZElement::soft(t);
      }
      if (j.contains("atom")) {
        if (j["atom"] != "1''") throw ParseError(child(path, "atom"), "the only atom is 1''");
        return atom();
      }
      throw ParseError(path, "expected one of compact, soft, atom");
    }
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (s == "inf") return ZElement::soft_inf();
      if (s == "1''") return atom();
      if (!s.empty() && s.back() == '\'') {
        Rational t = parse_rational(s.substr(0, s.size() - 1));
        if (t <= 0) throw ParseError(path, "soft values are positive");
        return ZElement::soft(t);
      }
      Rational t = parse_rational(s);
      if (t.get_den() == 1 && s.find('.') == std::string::npos) {
        if (t < 0) throw ParseError(path, "compact values are natural numbers");
        return ZElement::compact(t);
      }
      if (t <= 0) throw ParseError(path, "soft values are positive");
      return ZElement::soft(t);
    }
  } catch (const MalformedInput& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected a Z element");
}

inline ZElement element_from_json(const ZModel&, const Json& j, const std::string& path) { return z_element_from_json(j, path, false); }
inline ZElement element_from_json(const ZPrimeModel&, const Json& j, const std::string& path) { return z_element_from_json(j, path, true); }

inline Json element_to_json(const FiniteCuTable& t, std::size_t e) { return t.names.at(e); }
inline std::size_t element_from_json(const FiniteCuTable& t, const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected an element name");
  auto i = t.index_of(j.get<std::string>());
  if (!i) throw ParseError(path, "unknown element '" + j.get<std::string>() + "'");
  return *i;
}

inline Json element_to_json(const LscModel&, const LscElement& e) { return to_json(e); }
inline LscElement element_from_json(const LscModel& m, const Json& j, const std::string& path) { return element_from_json(j, m.space(), path); }

template <class M1, class M2>
Json element_to_json(const DirectSum<M1, M2>& m, const typename DirectSum<M1, M2>::Element& e) {
  return Json::array({element_to_json(m.first, e.first), element_to_json(m.second, e.second)});
}
template <class M1, class M2>
typename DirectSum<M1, M2>::Element element_from_json(const DirectSum<M1, M2>& m, const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a pair [first, second]");
  return {element_from_json(m.first, j[0], child(path, 0)), element_from_json(m.second, j[1], child(path, 1))};
}

template <class M>
std::vector<typename M::Element> elements_from_json(const M& m, const Json& j, const std::string& path) {
  const Json& arr = array_at(j, path);
  std::vector<typename M::Element> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(element_from_json(m, arr[i], child(path, i)));
  return out;
}

template <class M>
Json elements_to_json(const M& m, const std::vector<typename M::Element>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(element_to_json(m, x));
  return arr;
}

// ---------------------------------------------------------------------------
// Finite tables.

/// {"elements": [...], "zero": name, "order": 0/1 matrix or "leq": [[a, b], ...]
/// (reflexive-transitive closure taken), "add": matrix of names or null,
/// optional "join"/"meet" matrices, optional "way_below" matrix or
/// "noncompact": [...] (default: ≪ is ≤ except on non-compact elements),
/// optional "unit_downset": [...]}.
inline FiniteCuTable table_from_json(const Json& j, const std::string& path = "") {
  FiniteCuTable t;
  const Json& els = array_at(field(j, "elements", path), child(path, "elements"));
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (!els[i].is_string()) throw ParseError(child(child(path, "elements"), i), "expected a name");
    if (t.index_of(els[i].get<std::string>())) throw ParseError(child(child(path, "elements"), i), "duplicate name");
    t.names.push_back(els[i].get<std::string>());
  }
  const std::size_t n = t.size();
  auto name_at = [&](const Json& v, const std::string& p) { return element_from_json(t, v, p); };
  auto bool_matrix = [&](const Json& m, const std::string& p) {
    const Json& rows = array_at(m, p);
    if (rows.size() != n) throw ParseError(p, "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<char>> out(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      const Json& row = array_at(rows[a], child(p, a));
      if (row.size() != n) throw ParseError(child(p, a), "expected " + std::to_string(n) + " entries");
      for (std::size_t b = 0; b < n; ++b) {
        const Json& v = row[b];
        if (v.is_boolean()) out[a][b] = v.get<bool>();
        else if (v == 0 || v == 1) out[a][b] = v.get<int>();
        else throw ParseError(child(child(p, a), b), "expected 0/1");
      }
    }
    return out;
  };
  auto name_matrix = [&](const Json& m, const std::string& p) {
    const Json& rows = array_at(m, p);
    if (rows.size() != n) throw ParseError(p, "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<std::optional<std::size_t>>> out(n, std::vector<std::optional<std::size_t>>(n));
    for (std::size_t a = 0; a < n; ++a) {
      const Json& row = array_at(rows[a], child(p, a));
      if (row.size() != n) throw ParseError(child(p, a), "expected " + std::to_string(n) + " entries");
      for (std::size_t b = 0; b < n; ++b)
        if (!row[b].is_null()) out[a][b] = name_at(row[b], child(child(p, a), b));
    }
    return out;
  };
  t.zero_index = j.contains("zero") ? name_at(j["zero"], child(path, "zero")) : 0;
  if (j.contains("order")) {
    t.order = bool_matrix(j["order"], child(path, "order"));
  } else {
    const Json& pairs = array_at(field(j, "leq", path), child(path, "leq"));
    t.order.assign(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a) t.order[a][a] = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string p = child(child(path, "leq"), i);
      if (!pairs[i].is_array() || pairs[i].size() != 2) throw ParseError(p, "expected [a, b]");
      t.order[name_at(pairs[i][0], child(p, 0))][name_at(pairs[i][1], child(p, 1))] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (t.order[a][k] && t.order[k][b]) t.order[a][b] = 1;
  }
  t.sum = name_matrix(field(j, "add", path), child(path, "add"));
  if (j.contains("join")) t.join_table = name_matrix(j["join"], child(path, "join"));
  if (j.contains("meet")) t.meet_table = name_matrix(j["meet"], child(path, "meet"));
  if (j.contains("way_below")) {
    t.wb = bool_matrix(j["way_below"], child(path, "way_below"));
  } else {
    std::vector<char> compact(n, 1);
    if (j.contains("noncompact")) {
      const Json& nc = array_at(j["noncompact"], child(path, "noncompact"));
      for (std::size_t i = 0; i < nc.size(); ++i) compact[name_at(nc[i], child(child(path, "noncompact"), i))] = 0;
    }
    t.wb = t.order;
    for (std::size_t a = 0; a < n; ++a)
      if (!compact[a])
        for (std::size_t b = 0; b < n; ++b) t.wb[a][b] = 0;
  }
  if (j.contains("unit_downset")) {
    const Json& h = array_at(j["unit_downset"], child(path, "unit_downset"));
    for (std::size_t i = 0; i < h.size(); ++i) t.unit_downset.push_back(name_at(h[i], child(child(path, "unit_downset"), i)));
  }
  try {
    t.validate();
  } catch (const MalformedInput& e) {
    throw ParseError(path, e.what());
  }
  return t;
}

// ---------------------------------------------------------------------------
// Verdicts and reports.

template <class M>
Json verdict_to_json(const M& m, const RefinableSumsVerdict<typename M::Element>& v) {
  Json j{{"property", "refinable-sums"}, {"model", m.name()}, {"verdict", to_string(v.kind)}, {"log", v.log}};
  if (v.kind == VerdictKind::witness) {
    Json ys = Json::array();
    for (const auto& seq : v.y) ys.push_back(elements_to_json(m, seq));
    j["witness"] = {{"y", ys}};
  }
  return j;
}

template <class M>
Json verdict_to_json(const M& m, const AlmostOrderedVerdict<typename M::Element>& v) {
  Json j{{"property", "almost-ordered-sums"}, {"model", m.name()}, {"verdict", to_string(v.kind)}, {"log", v.log}};
  if (v.kind == VerdictKind::witness) j["witness"] = {{"y", elements_to_json(m, v.y)}};
  return j;
}

template <class M>
Json verdict_to_json(const M& m, const WeakChainVerdict<typename M::Element>& v) {
  Json j{{"property", "weak-chainability"}, {"model", m.name()}, {"verdict", to_string(v.kind)}, {"log", v.log}};
  if (v.kind == VerdictKind::witness) j["witness"] = {{"x_prime", element_to_json(m, *v.x_prime)}, {"z", elements_to_json(m, v.z)}};
  return j;
}

inline Json to_json(const std::vector<AxiomResult>& rs) {
  Json arr = Json::array();
  for (const auto& r : rs) {
    Json o{{"axiom", r.name}, {"status", r.status}, {"cases", r.cases}};
    if (!r.counterexample.empty()) o["counterexample"] = r.counterexample;
    arr.push_back(o);
  }
  return {{"axioms", arr}};
}

inline Json to_json(const BasicTopReport& r) {
  Json o = Json::object();
  for (std::size_t i = 0; i < r.holds.size(); ++i) o[BasicTopReport::names[i]] = r.holds[i];
  return o;
}

inline Json to_json(const verify::SuiteReport& r) {
  Json lemmas = Json::array();
  for (const auto& l : r.lemmas) {
    Json failed = Json::array();
    for (const auto& f : l.failed) failed.push_back({{"case", f.index}, {"detail", f.detail}});
    lemmas.push_back({{"id", l.id},
                      {"checks", l.checks},
                      {"cases", l.cases},
                      {"positive_cases", l.positive_cases},
                      {"failures", l.failures},
                      {"failed_cases", failed}});
  }
  return {{"seed", r.seed},
          {"cases", r.cases},
          {"mutation", verify::to_string(r.mutation)},
          {"lemmas", lemmas},
          {"failures", r.failures()},
          {"status", r.ok() ? "pass" : "fail"}};
}

// ---------------------------------------------------------------------------
// Files.

inline Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(file, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace cuntzkit::io
