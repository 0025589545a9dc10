#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ordmeas/serialize.hpp"

namespace ordmeas {

/// Deterministic, platform-independent generator (splitmix64). The standard
/// distributions are implementation-defined, so sampling is done by hand to
/// keep fuzz reports byte-identical everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n).
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

  /// Uniform in [lo, hi].
  int64_t int_in(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool coin() { return below(2) == 0; }

  /// A derived stream, decorrelated from this one.
  Rng fork(uint64_t stream) {
    return Rng(next() ^ (0xa0761d6478bd642full * (stream + 1)));
  }

  /// Numerator in [-max_num, max_num], denominator in [1, max_den].
  Rational rational(long max_num, long max_den) {
    return make_rational(int_in(-max_num, max_num), int_in(1, max_den));
  }

  Rational nonneg_rational(long max_num, long max_den) {
    return make_rational(int_in(0, max_num), int_in(1, max_den));
  }

 private:
  uint64_t state_;
};

inline LatticeElement random_element(Rng& rng, size_t dim, long bound = 100) {
  std::vector<Rational> coords;
  for (size_t i = 0; i < dim; ++i) coords.push_back(rng.rational(bound, bound));
  return LatticeElement(std::move(coords));
}

inline LatticeElement random_nonneg_element(Rng& rng, size_t dim, long bound = 100) {
  std::vector<Rational> coords;
  for (size_t i = 0; i < dim; ++i) coords.push_back(rng.nonneg_rational(bound, bound));
  return LatticeElement(std::move(coords));
}

inline FiniteSpace random_space(Rng& rng, size_t max_atoms) {
  const size_t n = 1 + rng.below(max_atoms);
  std::vector<std::string> atoms;
  for (size_t i = 0; i < n; ++i) atoms.push_back("a" + std::to_string(i + 1));
  return FiniteSpace(std::move(atoms));
}

inline PosMeasure random_pos_measure(Rng& rng, const FiniteSpace& space, size_t dim,
                                     long bound = 100) {
  std::vector<ExtElement> atoms;
  for (size_t i = 0; i < space.size(); ++i)
    atoms.push_back(ExtElement(random_nonneg_element(rng, dim, bound)));
  return PosMeasure::on_finite(space, std::move(atoms));
}

/// Positive measure that may carry infinite atoms (probability 1/denom each).
inline PosMeasure random_ext_pos_measure(Rng& rng, const FiniteSpace& space, size_t dim,
                                         long bound = 100, uint64_t inf_denom = 4) {
  std::vector<ExtElement> atoms;
  for (size_t i = 0; i < space.size(); ++i) {
    if (rng.below(inf_denom) == 0)
      atoms.push_back(ExtElement::infinity(dim));
    else
      atoms.push_back(ExtElement(random_nonneg_element(rng, dim, bound)));
  }
  return PosMeasure::on_finite(space, std::move(atoms));
}

inline SignedMeasure random_signed_measure(Rng& rng, const FiniteSpace& space, size_t dim,
                                           long bound = 100) {
  std::vector<LatticeElement> atoms;
  for (size_t i = 0; i < space.size(); ++i)
    atoms.push_back(random_element(rng, dim, bound));
  return SignedMeasure::on_finite(space, std::move(atoms));
}

inline SimpleFunction random_function(Rng& rng, const FiniteSpace& space, long bound = 100) {
  std::vector<Rational> values;
  for (size_t i = 0; i < space.size(); ++i) values.push_back(rng.rational(bound, bound));
  return SimpleFunction::on_finite(space, std::move(values));
}

inline SimpleFunction random_nonneg_function(Rng& rng, const FiniteSpace& space,
                                             long bound = 100) {
  std::vector<Rational> values;
  for (size_t i = 0; i < space.size(); ++i)
    values.push_back(rng.nonneg_rational(bound, bound));
  return SimpleFunction::on_finite(space, std::move(values));
}

inline RegularOperator random_operator(Rng& rng, const FiniteSpace& space, size_t dim,
                                       long bound = 100) {
  std::vector<LatticeElement> cols;
  for (size_t i = 0; i < space.size(); ++i) cols.push_back(random_element(rng, dim, bound));
  return RegularOperator::on_finite(space, std::move(cols));
}

inline RegularOperator random_positive_operator(Rng& rng, const FiniteSpace& space,
                                                size_t dim, long bound = 100) {
  std::vector<LatticeElement> cols;
  for (size_t i = 0; i < space.size(); ++i)
    cols.push_back(random_nonneg_element(rng, dim, bound));
  return RegularOperator::on_finite(space, std::move(cols));
}

inline std::map<uint64_t, LatticeElement> random_exceptional(Rng& rng, size_t dim,
                                                             size_t max_entries,
                                                             long bound,
                                                             bool nonneg,
                                                             uint64_t max_index = 32) {
  std::map<uint64_t, LatticeElement> out;
  const size_t k = rng.below(max_entries + 1);
  for (size_t i = 0; i < k; ++i)
    out.insert({rng.below(max_index), nonneg ? random_nonneg_element(rng, dim, bound)
                                             : random_element(rng, dim, bound)});
  return out;
}

inline PosMeasure random_nat_pos_measure(Rng& rng, size_t dim, long bound = 100,
                                         bool allow_infinite_tail = true,
                                         uint64_t max_index = 32) {
  LatticeElement tail = LatticeElement::zero(dim);
  if (allow_infinite_tail && rng.coin()) tail = random_nonneg_element(rng, dim, bound);
  return PosMeasure::on_nat(dim, random_exceptional(rng, dim, 4, bound, true, max_index),
                            std::move(tail));
}

inline SignedMeasure random_nat_signed_measure(Rng& rng, size_t dim, long bound = 100,
                                               uint64_t max_index = 32) {
  return SignedMeasure::on_nat(dim, random_exceptional(rng, dim, 4, bound, false, max_index));
}

inline SimpleFunction random_nat_function(Rng& rng, long bound = 100,
                                          bool eventually_zero = false,
                                          uint64_t max_index = 32) {
  std::map<uint64_t, Rational> exc;
  const size_t k = rng.below(5);
  for (size_t i = 0; i < k; ++i)
    exc.insert({rng.below(max_index), rng.rational(bound, bound)});
  const Rational tail = eventually_zero ? Rational(0) : rng.rational(bound, bound);
  return SimpleFunction::on_nat(std::move(exc), tail);
}

/// Positive operator on N with a randomly zero or nonzero tail column.
inline RegularOperator random_nat_positive_operator(Rng& rng, size_t dim, long bound = 100,
                                                    uint64_t max_index = 32) {
  LatticeElement tail = LatticeElement::zero(dim);
  if (rng.coin()) tail = random_nonneg_element(rng, dim, bound);
  return RegularOperator::on_nat(dim, random_exceptional(rng, dim, 4, bound, true, max_index),
                                 std::move(tail));
}

/// Builds an instance of the regularity-transfer lemma whose hypotheses hold
/// by construction: per coordinate, a random witness index is forced to
/// attain the extremum of both the base map and the slack.
inline TransferInstance random_transfer_instance(Rng& rng, size_t dim, size_t family,
                                                 ExtremumMode mode, long bound = 20) {
  TransferInstance inst{
      std::vector<LatticeElement>(family, LatticeElement::zero(dim)),
      std::vector<LatticeElement>(family, LatticeElement::zero(dim)),
      LatticeElement::zero(dim), LatticeElement::zero(dim)};
  std::vector<LatticeElement> slack(family, LatticeElement::zero(dim));
  for (size_t i = 0; i < family; ++i) {
    inst.nu_values[i] = random_element(rng, dim, bound);
    slack[i] = random_element(rng, dim, bound);
  }
  LatticeElement slack_s = LatticeElement::zero(dim);
  for (size_t c = 0; c < dim; ++c) {
    const size_t witness = rng.below(family);
    Rational nu_best = inst.nu_values[0][c];
    Rational slack_best = slack[0][c];
    for (size_t i = 1; i < family; ++i) {
      if (mode == ExtremumMode::Sup) {
        nu_best = std::max(nu_best, inst.nu_values[i][c]);
        slack_best = std::max(slack_best, slack[i][c]);
      } else {
        nu_best = std::min(nu_best, inst.nu_values[i][c]);
        slack_best = std::min(slack_best, slack[i][c]);
      }
    }
    inst.nu_values[witness][c] = nu_best;
    slack[witness][c] = slack_best;
    inst.nu_at_s[c] = nu_best;
    slack_s[c] = slack_best;
  }
  for (size_t i = 0; i < family; ++i)
    inst.mu_values[i] = inst.nu_values[i] + slack[i];
  inst.mu_at_s = inst.nu_at_s + slack_s;
  return inst;
}

/// The canonical fuzz bundle on a random finite space: positive measures
/// "mu", "nu", "rho", signed measures "sigma", "tau", functions "f", "g",
/// operators "T", "S".
inline InstanceFile random_instance(Rng& rng, size_t max_dim, size_t max_atoms,
                                    long bound = 100) {
  InstanceFile inst;
  inst.dim = 1 + rng.below(max_dim);
  inst.norm = rng.coin() ? LatticeNorm::sup() : LatticeNorm::one();
  FiniteSpace space = random_space(rng, max_atoms);
  inst.space = Space(space);
  inst.pos_measures.insert({"mu", random_pos_measure(rng, space, inst.dim, bound)});
  inst.pos_measures.insert({"nu", random_pos_measure(rng, space, inst.dim, bound)});
  inst.pos_measures.insert({"rho", random_pos_measure(rng, space, inst.dim, bound)});
  inst.signed_measures.insert({"sigma", random_signed_measure(rng, space, inst.dim, bound)});
  inst.signed_measures.insert({"tau", random_signed_measure(rng, space, inst.dim, bound)});
  inst.functions.insert({"f", random_function(rng, space, bound)});
  inst.functions.insert({"g", random_function(rng, space, bound)});
  inst.operators.insert({"T", random_operator(rng, space, inst.dim, bound)});
  inst.operators.insert({"S", random_operator(rng, space, inst.dim, bound)});
  return inst;
}

/// The canonical fuzz bundle on N: positive measures "mu", "nu" (tails may
/// be nonzero), signed measure "sigma", functions "f" (eventually constant)
/// and "f0" (eventually zero), operators "T" (any) and "P" (positive).
inline InstanceFile random_nat_instance(Rng& rng, size_t max_dim, long bound = 100,
                                        uint64_t max_index = 10) {
  InstanceFile inst;
  inst.dim = 1 + rng.below(max_dim);
  inst.norm = rng.coin() ? LatticeNorm::sup() : LatticeNorm::one();
  inst.space = Space::nat();
  inst.pos_measures.insert({"mu", random_nat_pos_measure(rng, inst.dim, bound, true, max_index)});
  inst.pos_measures.insert({"nu", random_nat_pos_measure(rng, inst.dim, bound, true, max_index)});
  inst.signed_measures.insert(
      {"sigma", random_nat_signed_measure(rng, inst.dim, bound, max_index)});
  inst.functions.insert({"f", random_nat_function(rng, bound, false, max_index)});
  inst.functions.insert({"f0", random_nat_function(rng, bound, true, max_index)});
  inst.operators.insert(
      {"T", random_nat_positive_operator(rng, inst.dim, bound, max_index)});
  inst.operators.insert(
      {"P", random_nat_positive_operator(rng, inst.dim, bound, max_index)});
  return inst;
}

}  // namespace ordmeas
