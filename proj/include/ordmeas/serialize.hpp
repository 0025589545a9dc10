#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ordmeas/repr.hpp"

namespace ordmeas {

// Insertion-ordered JSON keeps every emitted document byte-stable.
using Json = nlohmann::ordered_json;

// ---- scalars and lattice values -------------------------------------------

/// Rationals serialize as integers when they fit, otherwise as "p/q" strings.
inline Json to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p())
    return Json(r.get_num().get_si());
  return Json(to_string(r));
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw error("expected a rational (integer or \"p/q\" string)");
}

inline Json to_json(const LatticeElement& x) {
  Json a = Json::array();
  for (size_t i = 0; i < x.dim(); ++i) a.push_back(to_json(x[i]));
  return a;
}

inline LatticeElement element_from_json(const Json& j, size_t dim) {
  if (!j.is_array() || j.size() != dim)
    throw error("expected a vector of " + std::to_string(dim) + " rationals");
  std::vector<Rational> coords;
  for (const auto& c : j) coords.push_back(rational_from_json(c));
  return LatticeElement(std::move(coords));
}

inline Json to_json(const ExtElement& x) {
  return x.is_infinite() ? Json("inf") : to_json(x.finite());
}

inline ExtElement ext_from_json(const Json& j, size_t dim) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtElement::infinity(dim);
  return ExtElement(element_from_json(j, dim));
}

// ---- spaces and sets -------------------------------------------------------

inline Json to_json(const Space& s) {
  if (s.is_finite()) return Json{{"kind", "finite"}, {"atoms", s.finite().atoms()}};
  return Json{{"kind", "nat"}};
}

inline Space space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw error("malformed space");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "nat") return Space::nat();
  if (kind != "finite") throw error("unknown space kind: " + kind);
  if (!j.contains("atoms") || !j.at("atoms").is_array())
    throw error("a finite space needs an atom list");
  std::vector<std::string> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back(a.get<std::string>());
  return Space(FiniteSpace(std::move(atoms)));
}

inline Json to_json(const NatSet& s) {
  Json a = Json::array();
  for (uint64_t n : s.support()) a.push_back(n);
  return Json{{s.is_cofinite() ? "cofin" : "fin", std::move(a)}};
}

inline NatSet natset_from_json(const Json& j) {
  const bool fin = j.is_object() && j.contains("fin");
  const bool cofin = j.is_object() && j.contains("cofin");
  if (fin == cofin) throw error("expected {\"fin\":[...]} or {\"cofin\":[...]}");
  std::set<uint64_t> s;
  for (const auto& n : j.at(fin ? "fin" : "cofin")) {
    if (!n.is_number_unsigned() && !n.is_number_integer())
      throw error("natural numbers expected in a set");
    const int64_t v = n.get<int64_t>();
    if (v < 0) throw error("natural numbers expected in a set");
    s.insert(static_cast<uint64_t>(v));
  }
  return fin ? NatSet::fin(std::move(s)) : NatSet::cofin(std::move(s));
}

// ---- measures, functions, operators ----------------------------------------

namespace detail {
template <typename V, typename FromJson>
std::map<uint64_t, V> exceptional_from_json(const Json& j, FromJson&& from) {
  if (!j.is_object()) throw error("\"exceptional\" must map indices to values");
  std::map<uint64_t, V> out;
  for (const auto& [key, value] : j.items()) {
    size_t pos = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(key, &pos);
    } catch (const std::exception&) {
      throw error("malformed natural number key: " + key);
    }
    if (pos != key.size()) throw error("malformed natural number key: " + key);
    out.insert({static_cast<uint64_t>(n), from(value)});
  }
  return out;
}

template <typename V>
Json exceptional_to_json(const std::map<uint64_t, V>& m) {
  Json out = Json::object();
  for (const auto& [n, v] : m) out[std::to_string(n)] = to_json(v);
  return out;
}
}  // namespace detail

inline Json to_json(const PosMeasure& m, bool include_space = true) {
  Json j;
  j["kind"] = "pos";
  if (include_space) j["space"] = to_json(m.space());
  if (m.space().is_finite()) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms()) atoms.push_back(to_json(a));
    j["atoms"] = std::move(atoms);
  } else {
    j["exceptional"] = detail::exceptional_to_json(m.exceptional());
    j["tail"] = to_json(m.tail());
  }
  return j;
}

inline Json to_json(const SignedMeasure& m, bool include_space = true) {
  Json j;
  j["kind"] = "signed";
  if (include_space) j["space"] = to_json(m.space());
  if (m.space().is_finite()) {
    Json atoms = Json::array();
    for (const auto& a : m.atoms()) atoms.push_back(to_json(a));
    j["atoms"] = std::move(atoms);
  } else {
    j["exceptional"] = detail::exceptional_to_json(m.support());
    j["tail"] = to_json(LatticeElement::zero(m.dim()));
  }
  return j;
}

namespace detail {
inline Space measure_space(const Json& j, const Space* context) {
  if (j.contains("space")) {
    Space s = space_from_json(j.at("space"));
    if (context && !(s == *context))
      throw error("object space disagrees with the instance space");
    return s;
  }
  if (!context) throw error("object needs a \"space\"");
  return *context;
}
}  // namespace detail

inline PosMeasure pos_measure_from_json(const Json& j, size_t dim,
                                        const Space* context = nullptr) {
  if (!j.is_object() || j.value("kind", "pos") != std::string("pos"))
    throw error("expected a positive measure");
  const Space space = detail::measure_space(j, context);
  if (space.is_finite()) {
    if (!j.contains("atoms") || !j.at("atoms").is_array())
      throw error("a finite-space measure needs \"atoms\"");
    std::vector<ExtElement> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back(ext_from_json(a, dim));
    return PosMeasure::on_finite(space.finite(), std::move(atoms));
  }
  if (!j.contains("exceptional") || !j.contains("tail"))
    throw error("a measure on N needs \"exceptional\" and \"tail\"");
  auto exc = detail::exceptional_from_json<LatticeElement>(
      j.at("exceptional"), [&](const Json& v) { return element_from_json(v, dim); });
  return PosMeasure::on_nat(dim, std::move(exc), element_from_json(j.at("tail"), dim));
}

inline SignedMeasure signed_measure_from_json(const Json& j, size_t dim,
                                              const Space* context = nullptr) {
  if (!j.is_object() || j.value("kind", "") != std::string("signed"))
    throw error("expected a signed measure");
  const Space space = detail::measure_space(j, context);
  if (space.is_finite()) {
    if (!j.contains("atoms") || !j.at("atoms").is_array())
      throw error("a finite-space measure needs \"atoms\"");
    std::vector<LatticeElement> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back(element_from_json(a, dim));
    return SignedMeasure::on_finite(space.finite(), std::move(atoms));
  }
  if (!j.contains("exceptional")) throw error("a measure on N needs \"exceptional\"");
  auto support = detail::exceptional_from_json<LatticeElement>(
      j.at("exceptional"), [&](const Json& v) { return element_from_json(v, dim); });
  if (j.contains("tail") && !is_zero(element_from_json(j.at("tail"), dim)))
    throw error("signed measures on N must have a zero tail");
  return SignedMeasure::on_nat(dim, std::move(support));
}

inline Json to_json(const SimpleFunction& f) {
  if (f.space().is_finite()) {
    Json a = Json::array();
    for (const auto& v : f.values()) a.push_back(to_json(v));
    return a;
  }
  return Json{{"exceptional", detail::exceptional_to_json(f.exceptional())},
              {"tail", to_json(f.tail())}};
}

inline SimpleFunction function_from_json(const Json& j, const Space& space) {
  if (space.is_finite()) {
    if (!j.is_array() || j.size() != space.finite().size())
      throw error("a function needs one rational per atom");
    std::vector<Rational> values;
    for (const auto& v : j) values.push_back(rational_from_json(v));
    return SimpleFunction::on_finite(space.finite(), std::move(values));
  }
  if (!j.is_object() || !j.contains("exceptional") || !j.contains("tail"))
    throw error("a function on N needs \"exceptional\" and \"tail\"");
  auto exc = detail::exceptional_from_json<Rational>(
      j.at("exceptional"), [](const Json& v) { return rational_from_json(v); });
  return SimpleFunction::on_nat(std::move(exc), rational_from_json(j.at("tail")));
}

inline Json to_json(const RegularOperator& t) {
  if (t.space().is_finite()) {
    Json cols = Json::array();
    for (const auto& c : t.columns()) cols.push_back(to_json(c));
    return Json{{"columns", std::move(cols)}};
  }
  return Json{{"exceptional", detail::exceptional_to_json(t.exceptional())},
              {"tail", to_json(t.tail_column())}};
}

inline RegularOperator operator_from_json(const Json& j, size_t dim, const Space& space) {
  if (space.is_finite()) {
    if (!j.is_object() || !j.contains("columns") || !j.at("columns").is_array() ||
        j.at("columns").size() != space.finite().size())
      throw error("an operator needs one column per atom");
    std::vector<LatticeElement> cols;
    for (const auto& c : j.at("columns")) cols.push_back(element_from_json(c, dim));
    return RegularOperator::on_finite(space.finite(), std::move(cols));
  }
  if (!j.is_object() || !j.contains("exceptional") || !j.contains("tail"))
    throw error("an operator on N needs \"exceptional\" and \"tail\"");
  auto exc = detail::exceptional_from_json<LatticeElement>(
      j.at("exceptional"), [&](const Json& v) { return element_from_json(v, dim); });
  return RegularOperator::on_nat(dim, std::move(exc), element_from_json(j.at("tail"), dim));
}

// ---- norms -----------------------------------------------------------------

inline Json to_json(const LatticeNorm& n) {
  const std::string kind = n.kind == LatticeNorm::Kind::Sup ? "sup" : "one";
  if (n.weights.empty()) return Json(kind);
  Json w = Json::array();
  for (const auto& x : n.weights) w.push_back(to_json(x));
  return Json{{"kind", kind}, {"weights", std::move(w)}};
}

inline LatticeNorm norm_from_json(const Json& j) {
  std::string kind;
  std::vector<Rational> weights;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object() && j.contains("kind")) {
    kind = j.at("kind").get<std::string>();
    if (j.contains("weights"))
      for (const auto& w : j.at("weights")) weights.push_back(rational_from_json(w));
  } else {
    throw error("malformed norm");
  }
  LatticeNorm::Kind k;
  if (kind == "sup")
    k = LatticeNorm::Kind::Sup;
  else if (kind == "one")
    k = LatticeNorm::Kind::One;
  else
    throw error("unknown norm kind: " + kind);
  return weights.empty() ? LatticeNorm{k, {}} : LatticeNorm::weighted(k, std::move(weights));
}

// ---- instance files --------------------------------------------------------

/// A named bundle of objects over one lattice and one space, as read from an
/// instance file. Parsing is total: anything inconsistent is rejected.
struct InstanceFile {
  size_t dim = 1;
  LatticeNorm norm;
  Space space;
  std::map<std::string, PosMeasure> pos_measures;
  std::map<std::string, SignedMeasure> signed_measures;
  std::map<std::string, RegularOperator> operators;
  std::map<std::string, SimpleFunction> functions;
};

inline Json to_json(const InstanceFile& f) {
  Json j;
  j["lattice"] = Json{{"dim", f.dim}, {"norm", to_json(f.norm)}};
  j["space"] = to_json(f.space);
  Json measures = Json::object();
  for (const auto& [name, m] : f.pos_measures) measures[name] = to_json(m, false);
  for (const auto& [name, m] : f.signed_measures) measures[name] = to_json(m, false);
  j["measures"] = std::move(measures);
  Json operators = Json::object();
  for (const auto& [name, t] : f.operators) operators[name] = to_json(t);
  j["operators"] = std::move(operators);
  Json functions = Json::object();
  for (const auto& [name, fn] : f.functions) functions[name] = to_json(fn);
  j["functions"] = std::move(functions);
  return j;
}

inline InstanceFile instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("lattice") || !j.contains("space"))
    throw error("an instance file needs \"lattice\" and \"space\"");
  InstanceFile f;
  const Json& lat = j.at("lattice");
  if (!lat.is_object() || !lat.contains("dim") || !lat.at("dim").is_number_unsigned())
    throw error("\"lattice\" needs a nonnegative \"dim\"");
  f.dim = lat.at("dim").get<size_t>();
  if (f.dim == 0 || f.dim > 64) throw error("lattice dimension must be in 1..64");
  f.norm = lat.contains("norm") ? norm_from_json(lat.at("norm")) : LatticeNorm::sup();
  if (!f.norm.weights.empty() && f.norm.weights.size() != f.dim)
    throw error("norm weight count does not match the lattice dimension");
  f.space = space_from_json(j.at("space"));

  std::set<std::string> names;
  auto claim = [&](const std::string& name) {
    if (!names.insert(name).second) throw error("duplicate object name: " + name);
  };

  if (j.contains("measures")) {
    for (const auto& [name, m] : j.at("measures").items()) {
      claim(name);
      if (!m.is_object() || !m.contains("kind"))
        throw error("measure \"" + name + "\" needs a \"kind\"");
      const std::string kind = m.at("kind").get<std::string>();
      if (kind == "pos")
        f.pos_measures.insert({name, pos_measure_from_json(m, f.dim, &f.space)});
      else if (kind == "signed")
        f.signed_measures.insert({name, signed_measure_from_json(m, f.dim, &f.space)});
      else
        throw error("unknown measure kind: " + kind);
    }
  }
  if (j.contains("operators"))
    for (const auto& [name, t] : j.at("operators").items()) {
      claim(name);
      f.operators.insert({name, operator_from_json(t, f.dim, f.space)});
    }
  if (j.contains("functions"))
    for (const auto& [name, fn] : j.at("functions").items()) {
      claim(name);
      f.functions.insert({name, function_from_json(fn, f.space)});
    }
  return f;
}

inline InstanceFile parse_instance(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw error("malformed JSON");
  return instance_from_json(j);
}

// ---- set expressions -------------------------------------------------------

namespace detail {
inline std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

inline std::set<uint64_t> parse_nat_list(const std::string& body, const std::string& where) {
  std::set<uint64_t> out;
  std::string token;
  auto flush = [&]() {
    const std::string t = strip(token);
    token.clear();
    if (t.empty()) return;
    size_t pos = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(t, &pos);
    } catch (const std::exception&) {
      throw error("malformed natural number in " + where + ": " + t);
    }
    if (pos != t.size()) throw error("malformed natural number in " + where + ": " + t);
    out.insert(n);
  };
  for (char c : body) {
    if (c == ',')
      flush();
    else
      token += c;
  }
  flush();
  return out;
}

inline MeasSet parse_set_term(const Space& space, const std::string& term) {
  const std::string t = strip(term);
  if (t.rfind("fin:[", 0) == 0 || t.rfind("cofin:[", 0) == 0) {
    if (space.is_finite()) throw error("fin:/cofin: sets need the space N");
    if (t.back() != ']') throw error("unterminated set literal: " + t);
    const bool fin = t[0] == 'f';
    const size_t open = t.find('[');
    const auto body = t.substr(open + 1, t.size() - open - 2);
    auto s = parse_nat_list(body, t);
    return fin ? NatSet::fin(std::move(s)) : NatSet::cofin(std::move(s));
  }
  if (!space.is_finite()) throw error("atom lists need a finite space");
  std::vector<std::string> labels;
  std::string token;
  auto flush = [&]() {
    const std::string lbl = strip(token);
    token.clear();
    if (!lbl.empty()) labels.push_back(lbl);
  };
  for (char c : t) {
    if (c == ',')
      flush();
    else
      token += c;
  }
  flush();
  return space.finite().set_of(labels);
}
}  // namespace detail

/// Grammar: terms joined by '+' (union) and '-' (difference), left to right.
/// A term is a comma-separated atom list on finite spaces, or "fin:[...]" /
/// "cofin:[...]" on N. The empty expression is the empty set.
inline MeasSet parse_set_expression(const Space& space, const std::string& expr) {
  MeasSet acc = space.is_finite() ? MeasSet(space.finite().empty_set())
                                  : MeasSet(NatSet::empty());
  std::string term;
  char pending = '+';
  auto apply_term = [&](const std::string& t, char op) {
    if (detail::strip(t).empty()) return;
    const MeasSet rhs = detail::parse_set_term(space, t);
    if (space.is_finite()) {
      const auto& a = std::get<FiniteSet>(acc);
      const auto& b = std::get<FiniteSet>(rhs);
      acc = op == '+' ? unite(a, b) : minus(a, b);
    } else {
      const auto& a = std::get<NatSet>(acc);
      const auto& b = std::get<NatSet>(rhs);
      acc = op == '+' ? unite(a, b) : minus(a, b);
    }
  };
  for (const char c : expr) {
    if (c == '+' || c == '-') {
      apply_term(term, pending);
      term.clear();
      pending = c;
    } else {
      term += c;
    }
  }
  apply_term(term, pending);
  return acc;
}

inline Json to_json(const CounterexampleReport& r) {
  Json j;
  j["infimum"] = Json{{"x", to_json(r.x)},
                      {"y", to_json(r.y)},
                      {"measure_inf_at_N", to_json(r.measure_inf.total())},
                      {"formula_at_N", to_json(r.formula_at_whole_space)},
                      {"pass", r.inf_pass}};
  j["hahn"] = Json{{"mu_at_p", to_json(r.hahn_mu.atom(0))},
                   {"mu_plus", to_json(r.hahn_plus)},
                   {"mu_minus", to_json(r.hahn_minus)},
                   {"hahn_partition_exists", r.hahn_partition_found},
                   {"pass", r.hahn_pass}};
  j["finite_twin"] = Json{{"meet_at_X", to_json(r.twin_meet_total)},
                          {"formula_at_X", to_json(r.twin_formula_total)},
                          {"pass", r.twin_pass}};
  return j;
}

}  // namespace ordmeas
