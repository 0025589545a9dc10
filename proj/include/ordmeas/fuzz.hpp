#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordmeas/laws.hpp"

namespace ordmeas {

struct FuzzOptions {
  uint64_t seed = 42;
  uint64_t cases = 100;
  size_t max_dim = 4;
  size_t max_atoms = 5;
  long bound = 100;
};

/// A law over the canonical fuzz bundle; returns a violation description or
/// nothing. `nat` selects which of the two per-case bundles the law reads.
struct InstanceLaw {
  std::string name;
  bool nat = false;
  std::function<std::optional<std::string>(const InstanceFile&)> check;
};

namespace detail {

inline std::optional<std::string> ok_or(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return what;
}

}  // namespace detail

inline const std::vector<InstanceLaw>& default_instance_laws() {
  static const std::vector<InstanceLaw> laws = [] {
    std::vector<InstanceLaw> out;
    auto pos2 = [](const InstanceFile& f) {
      return std::pair<const PosMeasure&, const PosMeasure&>(f.pos_measures.at("mu"),
                                                             f.pos_measures.at("nu"));
    };

    out.push_back({"measures/modular_identity", false, [pos2](const InstanceFile& f) {
      const auto& [mu, nu] = pos2(f);
      return detail::ok_or(add(join(mu, nu), meet(mu, nu)) == add(mu, nu),
                           "join + meet != mu + nu");
    }});
    out.push_back({"measures/partition_oracle", false, [pos2](const InstanceFile& f) {
      const auto& [mu, nu] = pos2(f);
      std::string w;
      return detail::ok_or(detail::partition_oracle_ok(mu, nu, true, w), w);
    }});
    out.push_back({"measures/al_additivity", false, [pos2](const InstanceFile& f) {
      const auto& [mu, nu] = pos2(f);
      const LatticeNorm n = LatticeNorm::one();
      return detail::ok_or(measure_norm(n, mu) + measure_norm(n, nu) ==
                               measure_norm(n, add(mu, nu)),
                           "one-norm is not additive on the positive cone");
    }});
    out.push_back({"measures/norm_chain", false, [](const InstanceFile& f) {
      const auto& m = f.signed_measures.at("sigma");
      const PosMeasure amu = abs_measure(m);
      for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
        const Rational total = measure_norm(n, m);
        const auto& space = f.space.finite();
        for (const auto& delta : subsets_of(space, space.full_set())) {
          const Rational at = norm(n, m.eval(delta));
          const Rational mid = norm(n, amu.eval(delta).finite());
          if (!(at <= mid && mid <= total))
            return std::optional<std::string>("norm chain fails at " +
                                              to_string(space, delta));
        }
      }
      return std::optional<std::string>();
    }});
    out.push_back({"integral/triangle", false, [](const InstanceFile& f) {
      const auto r = triangle_check(f.functions.at("f"), f.signed_measures.at("sigma"));
      return detail::ok_or(r.holds, to_string(r.lhs) + " > " + to_string(r.rhs));
    }});
    out.push_back({"integral/linearity", false, [](const InstanceFile& f) {
      const auto& fn = f.functions.at("f");
      const auto& g = f.functions.at("g");
      const auto& mu = f.pos_measures.at("mu");
      const Rational a = make_rational(2), b = make_rational(3);
      return detail::ok_or(integrate(a * fn + b * g, mu) ==
                               a * integrate(fn, mu) + b * integrate(g, mu),
                           "integral is not linear");
    }});
    out.push_back({"operators/modulus_oracle", false, [](const InstanceFile& f) {
      const auto& t = f.operators.at("T");
      const SimpleFunction x = abs(f.functions.at("f"));
      return detail::ok_or(apply(modulus(t), x) == modulus_oracle(t, x),
                           "columnwise modulus disagrees with the sign-vector oracle");
    }});
    out.push_back({"operators/unit_ball_bound", false, [](const InstanceFile& f) {
      const auto& t = f.operators.at("T");
      const auto& fn = f.functions.at("f");
      const auto rep = norm_report(t, LatticeNorm::sup());
      return detail::ok_or(
          leq(abs(apply(t, fn)), fn.sup_norm() * *rep.unit_ball_bound),
          "|T f| exceeds ||f|| * t");
    }});
    out.push_back({"repr/isomorphism", false, [](const InstanceFile& f) {
      for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
        const auto r = isomorphism_check(f.operators.at("T"), f.operators.at("S"), n);
        if (!r.all_ok()) return std::optional<std::string>(r.witness);
      }
      return std::optional<std::string>();
    }});
    out.push_back({"repr/recovery", false, [](const InstanceFile& f) {
      const RegularOperator pos = modulus(f.operators.at("T"));
      const auto& space = f.space.finite();
      for (const auto& v : subsets_of(space, space.full_set())) {
        if (!recover_on_open(pos, v).ok())
          return std::optional<std::string>("recovery fails at " + to_string(space, v));
      }
      return std::optional<std::string>();
    }});
    out.push_back({"repr/psi_band", false, [](const InstanceFile& f) {
      const auto& mu = f.pos_measures.at("mu");
      const auto& nu = f.pos_measures.at("nu");
      const LatticeElement e = f.signed_measures.at("sigma").total();
      const auto r = psi_embedding_check(f.space.finite(), 0, e, {mu, nu},
                                         LatticeNorm::sup());
      return detail::ok_or(r.ok(), "psi embedding checks fail");
    }});

    out.push_back({"nat/partition_oracle", true, [pos2](const InstanceFile& f) {
      const auto& [mu, nu] = pos2(f);
      std::string w;
      return detail::ok_or(
          detail::partition_oracle_ok(mu, nu, mu.is_finite() && nu.is_finite(), w), w);
    }});
    out.push_back({"nat/truncation_oracle", true, [pos2](const InstanceFile& f) {
      const auto& [mu, nu] = pos2(f);
      std::string w;
      return detail::ok_or(
          detail::nat_truncation_oracle_ok(mu, nu, NatSet::all(), 10, w), w);
    }});
    out.push_back({"nat/triangle", true, [](const InstanceFile& f) {
      const auto r = triangle_check(f.functions.at("f"), f.signed_measures.at("sigma"));
      return detail::ok_or(r.holds, to_string(r.lhs) + " > " + to_string(r.rhs));
    }});
    out.push_back({"nat/nob_dichotomy", true, [](const InstanceFile& f) {
      for (const auto& name : {"T", "P"}) {
        const auto r = nob_dichotomy_check(f.operators.at(name));
        if (!r.consistent)
          return std::optional<std::string>("finiteness and boundedness disagree");
      }
      return std::optional<std::string>();
    }});
    out.push_back({"nat/domain_restriction", true, [](const InstanceFile& f) {
      const auto& t = f.operators.at("T");
      const auto& f0 = f.functions.at("f0");
      const auto& fn = f.functions.at("f");
      apply(t, f0);  // always admissible
      if (!is_zero(t.tail_column()) && fn.tail() != 0) {
        try {
          apply(t, fn);
          return std::optional<std::string>("out-of-domain application was accepted");
        } catch (const error&) {
        }
      }
      return std::optional<std::string>();
    }});
    return out;
  }();
  return laws;
}

// ---- shrinking -------------------------------------------------------------

namespace detail {

inline LatticeElement drop_coord(const LatticeElement& x, size_t d) {
  std::vector<Rational> coords;
  for (size_t i = 0; i < x.dim(); ++i)
    if (i != d) coords.push_back(x[i]);
  return LatticeElement(std::move(coords));
}

inline InstanceFile drop_dim(const InstanceFile& f, size_t d) {
  InstanceFile out;
  out.dim = f.dim - 1;
  out.norm = f.norm;  // weights, if any, would be dim-bound; fuzz bundles use none
  out.space = f.space;
  for (const auto& [name, m] : f.pos_measures) {
    if (f.space.is_finite()) {
      std::vector<ExtElement> atoms;
      for (const auto& a : m.atoms())
        atoms.push_back(a.is_infinite() ? ExtElement::infinity(out.dim)
                                        : ExtElement(drop_coord(a.finite(), d)));
      out.pos_measures.insert({name, PosMeasure::on_finite(f.space.finite(), atoms)});
    } else {
      std::map<uint64_t, LatticeElement> exc;
      for (const auto& [n, v] : m.exceptional()) exc.insert({n, drop_coord(v, d)});
      out.pos_measures.insert(
          {name, PosMeasure::on_nat(out.dim, std::move(exc), drop_coord(m.tail(), d))});
    }
  }
  for (const auto& [name, m] : f.signed_measures) {
    if (f.space.is_finite()) {
      std::vector<LatticeElement> atoms;
      for (const auto& a : m.atoms()) atoms.push_back(drop_coord(a, d));
      out.signed_measures.insert({name, SignedMeasure::on_finite(f.space.finite(), atoms)});
    } else {
      std::map<uint64_t, LatticeElement> sup;
      for (const auto& [n, v] : m.support()) sup.insert({n, drop_coord(v, d)});
      out.signed_measures.insert({name, SignedMeasure::on_nat(out.dim, std::move(sup))});
    }
  }
  for (const auto& [name, t] : f.operators) {
    if (f.space.is_finite()) {
      std::vector<LatticeElement> cols;
      for (const auto& c : t.columns()) cols.push_back(drop_coord(c, d));
      out.operators.insert({name, RegularOperator::on_finite(f.space.finite(), cols)});
    } else {
      std::map<uint64_t, LatticeElement> exc;
      for (const auto& [n, c] : t.exceptional()) exc.insert({n, drop_coord(c, d)});
      out.operators.insert({name, RegularOperator::on_nat(out.dim, std::move(exc),
                                                          drop_coord(t.tail_column(), d))});
    }
  }
  out.functions = f.functions;
  return out;
}

inline InstanceFile drop_atom(const InstanceFile& f, size_t atom) {
  const auto& space = f.space.finite();
  std::vector<std::string> labels;
  for (size_t i = 0; i < space.size(); ++i)
    if (i != atom) labels.push_back(space.label(i));
  const FiniteSpace smaller(labels);
  InstanceFile out;
  out.dim = f.dim;
  out.norm = f.norm;
  out.space = Space(smaller);
  auto project = [&](const auto& values) {
    std::decay_t<decltype(values)> kept;
    for (size_t i = 0; i < values.size(); ++i)
      if (i != atom) kept.push_back(values[i]);
    return kept;
  };
  for (const auto& [name, m] : f.pos_measures)
    out.pos_measures.insert({name, PosMeasure::on_finite(smaller, project(m.atoms()))});
  for (const auto& [name, m] : f.signed_measures)
    out.signed_measures.insert(
        {name, SignedMeasure::on_finite(smaller, project(m.atoms()))});
  for (const auto& [name, t] : f.operators)
    out.operators.insert(
        {name, RegularOperator::on_finite(smaller, project(t.columns()))});
  for (const auto& [name, fn] : f.functions)
    out.functions.insert(
        {name, SimpleFunction::on_finite(smaller, project(fn.values()))});
  return out;
}

inline std::vector<uint64_t> nat_indices(const InstanceFile& f) {
  std::set<uint64_t> s;
  for (const auto& [name, m] : f.pos_measures)
    for (const auto& [n, v] : m.exceptional()) s.insert(n);
  for (const auto& [name, m] : f.signed_measures)
    for (const auto& [n, v] : m.support()) s.insert(n);
  for (const auto& [name, t] : f.operators)
    for (const auto& [n, v] : t.exceptional()) s.insert(n);
  for (const auto& [name, fn] : f.functions)
    for (const auto& [n, v] : fn.exceptional()) s.insert(n);
  return {s.begin(), s.end()};
}

inline InstanceFile drop_nat_index(const InstanceFile& f, uint64_t index) {
  InstanceFile out;
  out.dim = f.dim;
  out.norm = f.norm;
  out.space = f.space;
  for (const auto& [name, m] : f.pos_measures) {
    auto exc = m.exceptional();
    exc.erase(index);
    out.pos_measures.insert({name, PosMeasure::on_nat(f.dim, std::move(exc), m.tail())});
  }
  for (const auto& [name, m] : f.signed_measures) {
    auto sup = m.support();
    sup.erase(index);
    out.signed_measures.insert({name, SignedMeasure::on_nat(f.dim, std::move(sup))});
  }
  for (const auto& [name, t] : f.operators) {
    auto exc = t.exceptional();
    exc.erase(index);
    out.operators.insert(
        {name, RegularOperator::on_nat(f.dim, std::move(exc), t.tail_column())});
  }
  for (const auto& [name, fn] : f.functions) {
    auto exc = fn.exceptional();
    exc.erase(index);
    out.functions.insert({name, SimpleFunction::on_nat(std::move(exc), fn.tail())});
  }
  return out;
}

/// All rational slots of an instance in a fixed traversal order.
inline std::vector<Rational> flatten_rationals(const InstanceFile& f) {
  std::vector<Rational> out;
  auto take_elem = [&](const LatticeElement& x) {
    for (size_t i = 0; i < x.dim(); ++i) out.push_back(x[i]);
  };
  for (const auto& [name, m] : f.pos_measures) {
    if (f.space.is_finite()) {
      for (const auto& a : m.atoms())
        if (a.is_finite()) take_elem(a.finite());
    } else {
      for (const auto& [n, v] : m.exceptional()) take_elem(v);
      take_elem(m.tail());
    }
  }
  for (const auto& [name, m] : f.signed_measures) {
    if (f.space.is_finite())
      for (const auto& a : m.atoms()) take_elem(a);
    else
      for (const auto& [n, v] : m.support()) take_elem(v);
  }
  for (const auto& [name, t] : f.operators) {
    if (f.space.is_finite()) {
      for (const auto& c : t.columns()) take_elem(c);
    } else {
      for (const auto& [n, c] : t.exceptional()) take_elem(c);
      take_elem(t.tail_column());
    }
  }
  for (const auto& [name, fn] : f.functions) {
    if (f.space.is_finite()) {
      for (const auto& v : fn.values()) out.push_back(v);
    } else {
      for (const auto& [n, v] : fn.exceptional()) out.push_back(v);
      out.push_back(fn.tail());
    }
  }
  return out;
}

/// Rebuilds an instance with the same shape but new rational slot values.
/// Positive-measure slots are clamped at zero so candidates stay valid.
inline InstanceFile rebuild_with(const InstanceFile& f, const std::vector<Rational>& vals) {
  size_t k = 0;
  auto next_elem = [&](size_t dim, bool nonneg) {
    LatticeElement x(dim);
    for (size_t i = 0; i < dim; ++i) {
      Rational v = vals[k++];
      if (nonneg && v < 0) v = 0;
      x[i] = std::move(v);
    }
    return x;
  };
  InstanceFile out;
  out.dim = f.dim;
  out.norm = f.norm;
  out.space = f.space;
  for (const auto& [name, m] : f.pos_measures) {
    if (f.space.is_finite()) {
      std::vector<ExtElement> atoms;
      for (const auto& a : m.atoms())
        atoms.push_back(a.is_infinite() ? ExtElement::infinity(f.dim)
                                        : ExtElement(next_elem(f.dim, true)));
      out.pos_measures.insert({name, PosMeasure::on_finite(f.space.finite(), atoms)});
    } else {
      std::map<uint64_t, LatticeElement> exc;
      for (const auto& [n, v] : m.exceptional()) exc.insert({n, next_elem(f.dim, true)});
      out.pos_measures.insert(
          {name, PosMeasure::on_nat(f.dim, std::move(exc), next_elem(f.dim, true))});
    }
  }
  for (const auto& [name, m] : f.signed_measures) {
    if (f.space.is_finite()) {
      std::vector<LatticeElement> atoms;
      for (size_t i = 0; i < m.atoms().size(); ++i) atoms.push_back(next_elem(f.dim, false));
      out.signed_measures.insert(
          {name, SignedMeasure::on_finite(f.space.finite(), atoms)});
    } else {
      std::map<uint64_t, LatticeElement> sup;
      for (const auto& [n, v] : m.support()) sup.insert({n, next_elem(f.dim, false)});
      out.signed_measures.insert({name, SignedMeasure::on_nat(f.dim, std::move(sup))});
    }
  }
  for (const auto& [name, t] : f.operators) {
    if (f.space.is_finite()) {
      std::vector<LatticeElement> cols;
      for (size_t i = 0; i < t.columns().size(); ++i) cols.push_back(next_elem(f.dim, false));
      out.operators.insert({name, RegularOperator::on_finite(f.space.finite(), cols)});
    } else {
      const bool nonneg = t.is_positive();
      std::map<uint64_t, LatticeElement> exc;
      for (const auto& [n, c] : t.exceptional()) exc.insert({n, next_elem(f.dim, nonneg)});
      out.operators.insert({name, RegularOperator::on_nat(f.dim, std::move(exc),
                                                          next_elem(f.dim, nonneg))});
    }
  }
  for (const auto& [name, fn] : f.functions) {
    if (f.space.is_finite()) {
      std::vector<Rational> values;
      for (size_t i = 0; i < fn.values().size(); ++i) values.push_back(vals[k++]);
      out.functions.insert(
          {name, SimpleFunction::on_finite(f.space.finite(), std::move(values))});
    } else {
      const bool zero_tail = fn.tail() == 0;
      std::map<uint64_t, Rational> exc;
      for (const auto& [n, v] : fn.exceptional()) exc.insert({n, vals[k++]});
      Rational tail = vals[k++];
      if (zero_tail) tail = 0;  // keep eventually-zero functions in the class
      out.functions.insert({name, SimpleFunction::on_nat(std::move(exc), tail)});
    }
  }
  return out;
}

}  // namespace detail

/// Greedy deterministic minimization: drop atoms (or exceptional indices on
/// N) first, then coordinates, then simplify rational magnitudes, keeping
/// every step that still violates the law.
inline InstanceFile shrink_instance(InstanceFile inst, const InstanceLaw& law) {
  auto violates = [&](const InstanceFile& candidate) {
    try {
      return law.check(candidate).has_value();
    } catch (const error&) {
      return false;  // degenerate candidate; not the violation being chased
    }
  };
  bool progress = true;
  while (progress) {
    progress = false;
    if (inst.space.is_finite()) {
      for (size_t a = 0; a < inst.space.finite().size() && inst.space.finite().size() > 1;
           ++a) {
        InstanceFile candidate = detail::drop_atom(inst, a);
        if (violates(candidate)) {
          inst = std::move(candidate);
          progress = true;
          break;
        }
      }
    } else {
      for (uint64_t n : detail::nat_indices(inst)) {
        InstanceFile candidate = detail::drop_nat_index(inst, n);
        if (violates(candidate)) {
          inst = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
    if (progress) continue;
    for (size_t d = 0; d < inst.dim && inst.dim > 1; ++d) {
      InstanceFile candidate = detail::drop_dim(inst, d);
      if (violates(candidate)) {
        inst = std::move(candidate);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    const auto slots = detail::flatten_rationals(inst);
    for (size_t s = 0; s < slots.size() && !progress; ++s) {
      const Rational& current = slots[s];
      std::vector<Rational> tries;
      if (current != 0) tries.push_back(Rational(0));
      if (!is_integer(current)) {
        Rational truncated(current.get_num() / current.get_den());
        tries.push_back(std::move(truncated));
      }
      tries.push_back(Rational(current / 2));
      for (const Rational& next : tries) {
        if (next == current) continue;
        auto edited = slots;
        edited[s] = next;
        InstanceFile candidate = detail::rebuild_with(inst, edited);
        if (violates(candidate)) {
          inst = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
  }
  return inst;
}

struct FuzzViolation {
  std::string law;
  std::string detail;
  uint64_t case_index = 0;
  InstanceFile reproducer;
};

struct FuzzReport {
  FuzzOptions options;
  uint64_t checks = 0;
  std::vector<std::pair<std::string, uint64_t>> per_law;
  std::optional<FuzzViolation> violation;

  bool ok() const { return !violation.has_value(); }

  std::string to_text() const {
    std::string s = "fuzz: seed=" + std::to_string(options.seed) +
                    " cases=" + std::to_string(options.cases) +
                    " dim<=" + std::to_string(options.max_dim) +
                    " atoms<=" + std::to_string(options.max_atoms) + "\n";
    for (const auto& [law, count] : per_law)
      s += "  " + law + ": " + std::to_string(count) + " checks\n";
    if (!violation) {
      s += "result: ok (" + std::to_string(checks) + " checks, 0 violations)\n";
    } else {
      s += "result: VIOLATION of " + violation->law + " at case " +
           std::to_string(violation->case_index) + "\n";
      s += "detail: " + violation->detail + "\n";
      s += "minimized reproducer:\n" + to_json(violation->reproducer).dump(2) + "\n";
    }
    return s;
  }

  Json to_json_report() const {
    Json laws = Json::array();
    for (const auto& [law, count] : per_law)
      laws.push_back(Json{{"law", law}, {"checks", count}});
    Json j{{"seed", options.seed},
           {"cases", options.cases},
           {"checks", checks},
           {"ok", ok()},
           {"laws", std::move(laws)}};
    if (violation)
      j["violation"] = Json{{"law", violation->law},
                            {"detail", violation->detail},
                            {"case", violation->case_index},
                            {"reproducer", to_json(violation->reproducer)}};
    return j;
  }
};

/// Runs the instance laws on `cases` seeded random bundles (a finite-space
/// one and an N one per case). Deterministic given the seed; the first
/// violation is minimized and reported as an instance file.
inline FuzzReport run_fuzz(const FuzzOptions& opt,
                           const std::vector<InstanceLaw>* law_set = nullptr) {
  const auto& laws = law_set ? *law_set : default_instance_laws();
  FuzzReport report;
  report.options = opt;
  for (const auto& law : laws) report.per_law.emplace_back(law.name, 0);

  Rng root(opt.seed);
  for (uint64_t c = 0; c < opt.cases; ++c) {
    Rng rng = root.fork(c);
    const InstanceFile finite = random_instance(rng, opt.max_dim, opt.max_atoms, opt.bound);
    // Exceptional indices stay inside the truncation-oracle window.
    Rng nat_rng = rng.fork(1);
    InstanceFile nat = random_nat_instance(nat_rng, opt.max_dim, opt.bound);
    for (size_t i = 0; i < laws.size(); ++i) {
      const InstanceFile& inst = laws[i].nat ? nat : finite;
      const auto failure = laws[i].check(inst);
      ++report.checks;
      ++report.per_law[i].second;
      if (failure) {
        FuzzViolation v;
        v.law = laws[i].name;
        v.detail = *failure;
        v.case_index = c;
        v.reproducer = shrink_instance(inst, laws[i]);
        report.violation = std::move(v);
        return report;
      }
    }
  }
  return report;
}

}  // namespace ordmeas
