#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ordmeas/measure.hpp"

namespace ordmeas {

/// A simple measurable function: one rational per atom on a finite space, or
/// finitely many exceptional values plus a constant tail on N (the
/// eventually-constant fragment, whose level sets are finite or cofinite).
class SimpleFunction {
 public:
  static SimpleFunction on_finite(FiniteSpace space, std::vector<Rational> values) {
    if (values.size() != space.size()) throw error("one value per atom is required");
    SimpleFunction f(Space(std::move(space)));
    f.values_ = std::move(values);
    return f;
  }

  static SimpleFunction on_nat(std::map<uint64_t, Rational> exceptional, Rational tail) {
    SimpleFunction f(Space::nat());
    f.tail_ = std::move(tail);
    f.exceptional_ = std::move(exceptional);
    f.normalize();
    return f;
  }

  static SimpleFunction constant(const Space& space, const Rational& r) {
    if (space.is_finite())
      return on_finite(space.finite(),
                       std::vector<Rational>(space.finite().size(), r));
    return on_nat({}, r);
  }

  static SimpleFunction zero(const Space& space) { return constant(space, 0); }
  static SimpleFunction one(const Space& space) { return constant(space, 1); }

  static SimpleFunction indicator(const Space& space, const MeasSet& s) {
    if (space.is_finite()) {
      const auto& set = std::get<FiniteSet>(s);
      if (set.universe_size() != space.finite().size())
        throw error("set does not belong to the space");
      std::vector<Rational> values(space.finite().size(), 0);
      for (size_t i : set.members()) values[i] = 1;
      return on_finite(space.finite(), std::move(values));
    }
    const auto& set = std::get<NatSet>(s);
    std::map<uint64_t, Rational> exc;
    const Rational tail = set.is_cofinite() ? 1 : 0;
    for (uint64_t n : set.support()) exc.insert({n, set.is_cofinite() ? 0 : 1});
    return on_nat(std::move(exc), tail);
  }

  const Space& space() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at(size_t atom) const {
    if (!space_.is_finite()) throw error("at() is for finite spaces");
    return values_[atom];
  }
  const std::map<uint64_t, Rational>& exceptional() const { return exceptional_; }
  const Rational& tail() const { return tail_; }
  const Rational& at_nat(uint64_t n) const {
    auto it = exceptional_.find(n);
    return it == exceptional_.end() ? tail_ : it->second;
  }

  bool is_nonneg() const {
    if (space_.is_finite())
      return std::all_of(values_.begin(), values_.end(),
                         [](const Rational& r) { return r >= 0; });
    if (tail_ < 0) return false;
    return std::all_of(exceptional_.begin(), exceptional_.end(),
                       [](const auto& kv) { return kv.second >= 0; });
  }

  Rational sup_norm() const {
    Rational acc = space_.is_finite() ? Rational(0) : Rational(::abs(tail_));
    if (space_.is_finite()) {
      for (const auto& v : values_) acc = std::max(acc, Rational(::abs(v)));
    } else {
      for (const auto& [n, v] : exceptional_) acc = std::max(acc, Rational(::abs(v)));
    }
    return acc;
  }

  /// The distinct values taken, ascending.
  std::vector<Rational> values_taken() const {
    std::set<Rational> s;
    if (space_.is_finite()) {
      s.insert(values_.begin(), values_.end());
    } else {
      s.insert(tail_);
      for (const auto& [n, v] : exceptional_) s.insert(v);
    }
    return {s.begin(), s.end()};
  }

  /// The level set {f = r}; finite or cofinite by construction on N.
  MeasSet level_set(const Rational& r) const {
    if (space_.is_finite()) {
      uint32_t mask = 0;
      for (size_t i = 0; i < values_.size(); ++i)
        if (values_[i] == r) mask |= 1u << i;
      return FiniteSet(mask, values_.size());
    }
    std::set<uint64_t> s;
    if (r == tail_) {
      for (const auto& [n, v] : exceptional_) s.insert(n);
      return NatSet::cofin(std::move(s));
    }
    for (const auto& [n, v] : exceptional_)
      if (v == r) s.insert(n);
    return NatSet::fin(std::move(s));
  }

  bool operator==(const SimpleFunction& o) const = default;

 private:
  explicit SimpleFunction(Space space) : space_(std::move(space)) {}

  void normalize() {
    for (auto it = exceptional_.begin(); it != exceptional_.end();)
      it = it->second == tail_ ? exceptional_.erase(it) : std::next(it);
  }

  Space space_;
  std::vector<Rational> values_;
  std::map<uint64_t, Rational> exceptional_;
  Rational tail_ = 0;
};

inline void require_same_space(const SimpleFunction& a, const SimpleFunction& b) {
  if (!(a.space() == b.space())) throw error("functions live on different spaces");
}

namespace detail {
template <typename F>
SimpleFunction map_values(const SimpleFunction& f, F&& op) {
  if (f.space().is_finite()) {
    std::vector<Rational> values;
    for (const auto& v : f.values()) values.push_back(op(v));
    return SimpleFunction::on_finite(f.space().finite(), std::move(values));
  }
  std::map<uint64_t, Rational> exc;
  for (const auto& [n, v] : f.exceptional()) exc.insert({n, op(v)});
  return SimpleFunction::on_nat(std::move(exc), op(f.tail()));
}

template <typename F>
SimpleFunction zip_values(const SimpleFunction& a, const SimpleFunction& b, F&& op) {
  require_same_space(a, b);
  if (a.space().is_finite()) {
    std::vector<Rational> values;
    for (size_t i = 0; i < a.values().size(); ++i)
      values.push_back(op(a.at(i), b.at(i)));
    return SimpleFunction::on_finite(a.space().finite(), std::move(values));
  }
  std::map<uint64_t, Rational> exc;
  for (const auto& [n, v] : a.exceptional()) exc.insert({n, op(v, b.at_nat(n))});
  for (const auto& [n, v] : b.exceptional()) exc.insert({n, op(a.at_nat(n), v)});
  return SimpleFunction::on_nat(std::move(exc), op(a.tail(), b.tail()));
}
}  // namespace detail

inline SimpleFunction operator+(const SimpleFunction& a, const SimpleFunction& b) {
  return detail::zip_values(a, b, [](const auto& x, const auto& y) { return x + y; });
}
inline SimpleFunction operator-(const SimpleFunction& a, const SimpleFunction& b) {
  return detail::zip_values(a, b, [](const auto& x, const auto& y) { return x - y; });
}
inline SimpleFunction operator*(const Rational& r, const SimpleFunction& f) {
  return detail::map_values(f, [&](const auto& x) { return r * x; });
}
inline SimpleFunction pos_part(const SimpleFunction& f) {
  return detail::map_values(f, [](const Rational& x) { return x > 0 ? x : Rational(0); });
}
inline SimpleFunction neg_part(const SimpleFunction& f) {
  return detail::map_values(f, [](const Rational& x) { return x < 0 ? Rational(-x) : Rational(0); });
}
inline SimpleFunction abs(const SimpleFunction& f) {
  return detail::map_values(f, [](const Rational& x) { return Rational(::abs(x)); });
}
inline SimpleFunction join(const SimpleFunction& a, const SimpleFunction& b) {
  return detail::zip_values(a, b, [](const Rational& x, const Rational& y) { return std::max(x, y); });
}
inline SimpleFunction meet(const SimpleFunction& a, const SimpleFunction& b) {
  return detail::zip_values(a, b, [](const Rational& x, const Rational& y) { return std::min(x, y); });
}

inline bool pointwise_leq(const SimpleFunction& a, const SimpleFunction& b) {
  require_same_space(a, b);
  if (a.space().is_finite()) {
    for (size_t i = 0; i < a.values().size(); ++i)
      if (a.at(i) > b.at(i)) return false;
    return true;
  }
  if (a.tail() > b.tail()) return false;
  for (const auto& [n, v] : a.exceptional())
    if (v > b.at_nat(n)) return false;
  for (const auto& [n, v] : b.exceptional())
    if (a.at_nat(n) > v) return false;
  return true;
}

inline void require_same_space(const SimpleFunction& f, const Space& s) {
  if (f.space().is_finite() != s.is_finite() ||
      (s.is_finite() && !(f.space().finite() == s.finite())))
    throw error("function and measure live on different spaces");
}

/// The order integral of a nonnegative simple function against a positive
/// measure: the level-set sum with the convention 0 * infinity = 0. The
/// value does not depend on the chosen decomposition of the integrand.
inline ExtElement integrate_pos(const SimpleFunction& f, const PosMeasure& mu) {
  require_same_space(f, mu.space());
  if (!f.is_nonneg()) throw error("integrate_pos needs a nonnegative integrand");
  ExtElement acc{LatticeElement::zero(mu.dim())};
  for (const auto& r : f.values_taken()) {
    if (r == 0) continue;
    acc = ext_add(acc, ext_scale(r, mu.eval(f.level_set(r))));
  }
  return acc;
}

/// The signed order integral against a positive measure, defined when both
/// one-sided integrals are finite.
inline LatticeElement integrate(const SimpleFunction& f, const PosMeasure& mu) {
  const ExtElement plus = integrate_pos(pos_part(f), mu);
  const ExtElement minus_v = integrate_pos(neg_part(f), mu);
  if (plus.is_infinite() || minus_v.is_infinite())
    throw error("not order-integrable: a one-sided integral is infinite");
  return plus.finite() - minus_v.finite();
}

/// The order integral against a signed measure, through the decomposition
/// mu = mu_plus - mu_minus; independent of the decomposition used.
inline LatticeElement integrate(const SimpleFunction& f, const SignedMeasure& mu) {
  return integrate(f, pos_part(mu)) - integrate(f, neg_part(mu));
}

struct TriangleReport {
  LatticeElement lhs;  // |integral of f dmu|
  LatticeElement rhs;  // integral of |f| d|mu|
  bool holds = false;
};

/// Checks the triangle inequality |∮f dmu| <= ∮|f| d|mu| coordinatewise.
inline TriangleReport triangle_check(const SimpleFunction& f, const SignedMeasure& mu) {
  TriangleReport r{abs(integrate(f, mu)),
                   integrate_pos(abs(f), abs_measure(mu)).finite(), false};
  r.holds = leq(r.lhs, r.rhs);
  return r;
}

struct MonotoneConvergenceReport {
  std::vector<ExtElement> integrals;
  ExtElement attained_sup;
  ExtElement limit_integral;
  bool increasing = false;
  bool sup_equals_limit = false;
  bool ok() const { return increasing && sup_equals_limit; }
};

/// Monotone convergence on the eventually-constant fragment: for an
/// increasing sequence stabilizing at `stable_index`, the supremum of the
/// integrals is attained and equals the integral of the limit.
inline MonotoneConvergenceReport monotone_convergence_check(
    const std::vector<SimpleFunction>& seq, size_t stable_index, const PosMeasure& mu) {
  if (seq.empty()) throw error("empty sequence");
  if (stable_index >= seq.size()) throw error("stabilization index out of range");
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (!pointwise_leq(seq[i], seq[i + 1]))
      throw error("sequence is not pointwise increasing");
  for (size_t i = stable_index; i < seq.size(); ++i)
    if (!(seq[i] == seq[stable_index]))
      throw error("sequence is not constant after the declared index");
  MonotoneConvergenceReport r{{}, ExtElement(LatticeElement::zero(mu.dim())),
                              ExtElement(LatticeElement::zero(mu.dim())), false, false};
  for (const auto& f : seq) r.integrals.push_back(integrate_pos(f, mu));
  r.increasing = true;
  for (size_t i = 0; i + 1 < r.integrals.size(); ++i)
    if (!ext_leq(r.integrals[i], r.integrals[i + 1])) r.increasing = false;
  r.attained_sup = ext_sup(r.integrals);
  r.limit_integral = integrate_pos(seq.back(), mu);
  r.sup_equals_limit = r.attained_sup == r.limit_integral;
  return r;
}

}  // namespace ordmeas
