#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ordmeas/operator.hpp"

namespace ordmeas {

/// The measure represented by an operator: atom values are the columns, so
/// that eval(mu_T, Delta) = T(chi_Delta) for all representable Delta.
inline SignedMeasure operator_to_measure(const RegularOperator& t) {
  if (t.space().is_finite())
    return SignedMeasure::on_finite(t.space().finite(), t.columns());
  if (!is_zero(t.tail_column()))
    throw error("an operator with a nonzero tail column has no finite representing measure");
  std::map<uint64_t, LatticeElement> support(t.exceptional().begin(),
                                             t.exceptional().end());
  return SignedMeasure::on_nat(t.dim(), std::move(support));
}

/// Positive-cone version, admitting infinite representing measures on N via
/// the tail rule.
inline PosMeasure operator_to_pos_measure(const RegularOperator& t) {
  if (!t.is_positive()) throw error("expected a positive operator");
  if (t.space().is_finite()) {
    std::vector<ExtElement> atoms;
    for (const auto& c : t.columns()) atoms.push_back(ExtElement(c));
    return PosMeasure::on_finite(t.space().finite(), std::move(atoms));
  }
  std::map<uint64_t, LatticeElement> exc(t.exceptional().begin(), t.exceptional().end());
  return PosMeasure::on_nat(t.dim(), std::move(exc), t.tail_column());
}

/// The integration operator of a signed measure; apply(I_mu, f) equals the
/// order integral of f against mu for every simple f.
inline RegularOperator measure_to_operator(const SignedMeasure& mu) {
  if (mu.space().is_finite())
    return RegularOperator::on_finite(mu.space().finite(), mu.atoms());
  std::map<uint64_t, LatticeElement> exc(mu.support().begin(), mu.support().end());
  return RegularOperator::on_nat(mu.dim(), std::move(exc), LatticeElement::zero(mu.dim()));
}

/// Positive-cone version; a positive measure on N with nonzero tail yields
/// an operator on the eventually zero functions.
inline RegularOperator measure_to_operator(const PosMeasure& mu) {
  if (mu.space().is_finite()) {
    std::vector<LatticeElement> cols;
    for (const auto& a : mu.atoms()) cols.push_back(a.finite());
    return RegularOperator::on_finite(mu.space().finite(), std::move(cols));
  }
  std::map<uint64_t, LatticeElement> exc(mu.exceptional().begin(), mu.exceptional().end());
  return RegularOperator::on_nat(mu.dim(), std::move(exc), mu.tail());
}

struct ReprCheckReport {
  bool roundtrip_ok = false;
  bool bipositive_ok = false;
  bool isometry_ok = false;
  bool lattice_hom_ok = false;
  std::string witness;
  bool all_ok() const {
    return roundtrip_ok && bipositive_ok && isometry_ok && lattice_hom_ok;
  }
};

/// Executable content of the representation isomorphism on a finite space:
/// the operator<->measure roundtrips compose to the identity, positivity is
/// preserved both ways, the regular norm of the integration operator equals
/// the measure norm, and the columnwise operator join corresponds to the
/// measure join (with the Riesz-Kantorovich enumeration as the third route).
inline ReprCheckReport isomorphism_check(const RegularOperator& t,
                                         const RegularOperator& s,
                                         const LatticeNorm& n) {
  require_same_space(t, s);
  if (!t.space().is_finite()) throw error("isomorphism checks run on finite spaces");
  ReprCheckReport r;
  const SignedMeasure mu = operator_to_measure(t);
  const SignedMeasure nu = operator_to_measure(s);

  r.roundtrip_ok = measure_to_operator(mu) == t && measure_to_operator(nu) == s &&
                   operator_to_measure(measure_to_operator(mu)) == mu;

  // Bipositivity, with the operator side decided over the atom indicators.
  bool op_positive = true;
  const auto& space = t.space().finite();
  for (size_t i = 0; i < space.size(); ++i) {
    const auto chi = SimpleFunction::indicator(t.space(), MeasSet(space.singleton(i)));
    if (!is_nonneg(apply(t, chi))) op_positive = false;
  }
  r.bipositive_ok = op_positive == mu.is_positive();

  const auto report_t = norm_report(measure_to_operator(mu), n);
  const auto report_s = norm_report(measure_to_operator(nu), n);
  r.isometry_ok = report_t.regular_norm == measure_norm(n, mu) &&
                  report_s.regular_norm == measure_norm(n, nu);
  if (!r.isometry_ok)
    r.witness = "regular norm " + to_string(*report_t.regular_norm) +
                " vs measure norm " + to_string(measure_norm(n, mu));

  const SignedMeasure joined = operator_to_measure(join(t, s));
  r.lattice_hom_ok = joined == join(mu, nu);
  for (const auto& delta : subsets_of(space, space.full_set())) {
    if (!(riesz_kantorovich_sup(t, s, delta) == joined.eval(delta))) {
      r.lattice_hom_ok = false;
      r.witness = "riesz-kantorovich sup disagrees at " + to_string(space, delta);
      break;
    }
  }
  if (r.all_ok())
    r.witness = "regular norm = measure norm = " + to_string(*report_t.regular_norm);
  return r;
}

inline ReprCheckReport isomorphism_check(const SignedMeasure& mu,
                                         const SignedMeasure& nu,
                                         const LatticeNorm& n) {
  return isomorphism_check(measure_to_operator(mu), measure_to_operator(nu), n);
}

namespace detail {
inline size_t pow3(size_t k) {
  size_t out = 1;
  while (k--) out *= 3;
  return out;
}
}  // namespace detail

struct RecoveryReport {
  LatticeElement open_value;      // sup over the grid, support inside V
  LatticeElement compact_value;   // inf over the grid, identically 1 on V
  size_t grid_size_open = 0;
  size_t grid_size_compact = 0;
  bool open_attained_at_indicator = false;
  bool compact_attained_at_indicator = false;
  bool open_equals_measure = false;
  bool compact_equals_measure = false;
  // Whether some grid function using the interior value 1/2 also attains the
  // extremum; included to make the vertex-attainment claim evidential.
  bool open_interior_attains = false;
  bool compact_interior_attains = false;
  bool ok() const {
    return open_attained_at_indicator && compact_attained_at_indicator &&
           open_equals_measure && compact_equals_measure;
  }
};

/// The recovery formulas of the representation theorem on a discrete space,
/// where every set is both open and compact. The supremum of T(f) over the
/// grid functions 0 <= f <= 1 supported inside V is attained at the
/// indicator of V and equals mu_T(V); dually with the functions that are
/// identically 1 on the set.
inline RecoveryReport recover_on_open(const RegularOperator& t, const FiniteSet& v) {
  if (!t.space().is_finite()) throw error("recovery formulas run on finite spaces");
  if (!t.is_positive()) throw error("expected a positive operator");
  const auto& space = t.space().finite();
  if (v.universe_size() != space.size())
    throw error("set does not belong to the operator's space");
  if (v.size() > 10 || space.size() - v.size() > 10)
    throw error("grid enumeration is bounded at 10 atoms");

  const Rational half = make_rational(1, 2);
  const std::vector<Rational> grid = {Rational(0), half, Rational(1)};
  RecoveryReport r{LatticeElement::zero(t.dim()), LatticeElement::zero(t.dim())};

  // sup form: values on V range over the grid, zero elsewhere.
  const auto v_members = v.members();
  std::vector<std::pair<LatticeElement, bool>> open_values;  // value, uses 1/2
  for (size_t idx = 0; idx < detail::pow3(v_members.size()); ++idx) {
    std::vector<Rational> vals(space.size(), 0);
    size_t rest = idx;
    bool interior = false;
    for (size_t j = 0; j < v_members.size(); ++j) {
      vals[v_members[j]] = grid[rest % 3];
      if (rest % 3 == 1) interior = true;
      rest /= 3;
    }
    open_values.emplace_back(
        apply(t, SimpleFunction::on_finite(space, std::move(vals))), interior);
  }
  r.grid_size_open = open_values.size();
  r.open_value = open_values.front().first;
  for (const auto& [val, interior] : open_values) r.open_value = join(r.open_value, val);
  for (const auto& [val, interior] : open_values)
    if (val == r.open_value && interior) r.open_interior_attains = true;
  const auto chi_v = SimpleFunction::indicator(t.space(), MeasSet(v));
  r.open_attained_at_indicator = apply(t, chi_v) == r.open_value;
  r.open_equals_measure =
      operator_to_pos_measure(t).eval(v) == ExtElement(r.open_value);

  // inf form: identically 1 on V, grid values elsewhere.
  const auto outside = complement(v).members();
  std::vector<std::pair<LatticeElement, bool>> compact_values;
  for (size_t idx = 0; idx < detail::pow3(outside.size()); ++idx) {
    std::vector<Rational> vals(space.size(), 1);
    size_t rest = idx;
    bool interior = false;
    for (size_t j = 0; j < outside.size(); ++j) {
      vals[outside[j]] = grid[rest % 3];
      if (rest % 3 == 1) interior = true;
      rest /= 3;
    }
    compact_values.emplace_back(
        apply(t, SimpleFunction::on_finite(space, std::move(vals))), interior);
  }
  r.grid_size_compact = compact_values.size();
  r.compact_value = compact_values.front().first;
  for (const auto& [val, interior] : compact_values)
    r.compact_value = meet(r.compact_value, val);
  for (const auto& [val, interior] : compact_values)
    if (val == r.compact_value && interior) r.compact_interior_attains = true;
  r.compact_attained_at_indicator = apply(t, chi_v) == r.compact_value;
  r.compact_equals_measure =
      operator_to_pos_measure(t).eval(v) == ExtElement(r.compact_value);
  return r;
}

struct NobDichotomyReport {
  bool measure_finite_by_truncation = false;
  bool measure_finite_by_eval = false;
  bool norm_to_order_bounded = false;
  bool consistent = false;
};

/// The finite-measure dichotomy for positive operators on N: the representing
/// measure is finite exactly when the operator is norm to order bounded. The
/// two sides are computed independently: stabilization of the truncated
/// column partial sums up to index 64 versus the tail-column test.
inline NobDichotomyReport nob_dichotomy_check(const RegularOperator& t) {
  if (t.space().is_finite()) throw error("the dichotomy check runs on N");
  if (!t.is_positive()) throw error("expected a positive operator");
  if (!t.exceptional().empty() && t.exceptional().rbegin()->first > 60)
    throw error("exceptional indices beyond 60 are outside the truncation window");
  NobDichotomyReport r;
  LatticeElement prev = LatticeElement::zero(t.dim());
  LatticeElement curr = LatticeElement::zero(t.dim());
  for (uint64_t n = 0; n <= 64; ++n) {
    prev = curr;
    curr = curr + t.column_at(n);
  }
  r.measure_finite_by_truncation = curr == prev;
  r.measure_finite_by_eval = operator_to_pos_measure(t).total().is_finite();
  r.norm_to_order_bounded = norm_report(t, LatticeNorm::sup()).norm_to_order_bounded;
  r.consistent = r.measure_finite_by_truncation == r.norm_to_order_bounded &&
                 r.measure_finite_by_eval == r.norm_to_order_bounded;
  return r;
}

struct PsiEmbeddingReport {
  bool matches_definition = false;
  bool isometric = false;
  bool projections_match = false;
  std::string witness;
  bool ok() const { return matches_definition && isometric && projections_match; }
};

/// The embedding of E into the measures as the point mass at a fixed atom:
/// it is isometric, and the band projection of a positive probe measure onto
/// its image takes the value inf over the measurable sets containing the
/// atom, which on an atomic space is the measure of the atom itself.
inline PsiEmbeddingReport psi_embedding_check(const FiniteSpace& space, size_t atom,
                                              const LatticeElement& e,
                                              const std::vector<PosMeasure>& probes,
                                              const LatticeNorm& n) {
  if (atom >= space.size()) throw error("atom index out of range");
  std::vector<LatticeElement> atoms(space.size(), LatticeElement::zero(e.dim()));
  atoms[atom] = e;
  const SignedMeasure mu_e = SignedMeasure::on_finite(space, std::move(atoms));

  PsiEmbeddingReport r;
  r.matches_definition = true;
  for (const auto& delta : subsets_of(space, space.full_set())) {
    const LatticeElement expected =
        delta.contains(atom) ? e : LatticeElement::zero(e.dim());
    if (!(mu_e.eval(delta) == expected)) r.matches_definition = false;
  }
  r.isometric = measure_norm(n, mu_e) == norm(n, e);

  r.projections_match = true;
  for (const auto& probe : probes) {
    if (!probe.is_finite() || !(probe.space() == Space(space)))
      throw error("probes must be finite measures on the embedding space");
    std::vector<ExtElement> over_sets;
    for (const auto& gamma : subsets_of(space, space.full_set()))
      if (gamma.contains(atom)) over_sets.push_back(probe.eval(gamma));
    const ExtElement projected = ext_inf(over_sets);
    if (!(projected == probe.eval(space.singleton(atom))))
      r.projections_match = false;
    r.witness = to_string(projected);
  }
  return r;
}

/// An instance of the abstract regularity-transfer lemma: two maps on a
/// finite index family together with a distinguished point.
struct TransferInstance {
  std::vector<LatticeElement> mu_values;
  std::vector<LatticeElement> nu_values;
  LatticeElement mu_at_s = LatticeElement::zero(0);
  LatticeElement nu_at_s = LatticeElement::zero(0);
};

struct TransferReport {
  bool hypotheses_ok = false;  // false: instance rejected, not a failure
  bool conclusion_ok = false;
  std::string witness;
};

/// Sup mode: if nu(s') <= nu(s) and (mu-nu)(s') <= (mu-nu)(s) for all s',
/// and mu(s) is the supremum of the mu(s'), then nu(s) is the supremum of
/// the nu(s'). Inf mode is dual.
inline TransferReport regularity_transfer_check(const TransferInstance& inst,
                                                ExtremumMode mode) {
  if (inst.mu_values.empty() || inst.mu_values.size() != inst.nu_values.size())
    throw error("transfer instance needs matching non-empty families");
  TransferReport r;
  const size_t k = inst.mu_values.size();
  const LatticeElement slack_s = inst.mu_at_s - inst.nu_at_s;
  LatticeElement mu_extremum = inst.mu_values.front();
  LatticeElement nu_extremum = inst.nu_values.front();
  bool pointwise_ok = true;
  for (size_t i = 0; i < k; ++i) {
    const LatticeElement slack_i = inst.mu_values[i] - inst.nu_values[i];
    if (mode == ExtremumMode::Sup) {
      pointwise_ok = pointwise_ok && leq(inst.nu_values[i], inst.nu_at_s) &&
                     leq(slack_i, slack_s);
      mu_extremum = join(mu_extremum, inst.mu_values[i]);
      nu_extremum = join(nu_extremum, inst.nu_values[i]);
    } else {
      pointwise_ok = pointwise_ok && leq(inst.nu_at_s, inst.nu_values[i]) &&
                     leq(slack_s, slack_i);
      mu_extremum = meet(mu_extremum, inst.mu_values[i]);
      nu_extremum = meet(nu_extremum, inst.nu_values[i]);
    }
  }
  r.hypotheses_ok = pointwise_ok && mu_extremum == inst.mu_at_s;
  if (!r.hypotheses_ok) {
    r.witness = "hypotheses violated; instance rejected";
    return r;
  }
  r.conclusion_ok = nu_extremum == inst.nu_at_s;
  r.witness = "extremum " + to_string(nu_extremum);
  return r;
}

}  // namespace ordmeas
