#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ordmeas/integral.hpp"

namespace ordmeas {

/// A regular operator from a function lattice over the space into E, stored
/// by its columns (the values on atom indicators). On N the columns are
/// "finitely many exceptional columns plus a constant tail column"; when the
/// tail column is nonzero the admissible domain shrinks to the eventually
/// zero functions, the stand-in for compactly supported functions.
class RegularOperator {
 public:
  static RegularOperator on_finite(FiniteSpace space, std::vector<LatticeElement> columns) {
    if (columns.size() != space.size()) throw error("one column per atom is required");
    const size_t dim = columns.front().dim();
    for (const auto& c : columns)
      if (c.dim() != dim) throw error("lattice dimension mismatch");
    RegularOperator t(Space(std::move(space)), dim);
    t.columns_ = std::move(columns);
    return t;
  }

  static RegularOperator on_nat(size_t dim, std::map<uint64_t, LatticeElement> exceptional,
                                LatticeElement tail_column) {
    if (tail_column.dim() != dim) throw error("lattice dimension mismatch");
    for (const auto& [n, c] : exceptional)
      if (c.dim() != dim) throw error("lattice dimension mismatch");
    RegularOperator t(Space::nat(), dim);
    t.tail_ = std::move(tail_column);
    t.exceptional_ = std::move(exceptional);
    t.normalize();
    return t;
  }

  static RegularOperator zero(const Space& space, size_t dim) {
    if (space.is_finite())
      return on_finite(space.finite(),
                       std::vector<LatticeElement>(space.finite().size(),
                                                   LatticeElement::zero(dim)));
    return on_nat(dim, {}, LatticeElement::zero(dim));
  }

  const Space& space() const { return space_; }
  size_t dim() const { return dim_; }

  const std::vector<LatticeElement>& columns() const { return columns_; }
  const LatticeElement& column(size_t i) const {
    if (!space_.is_finite()) throw error("column() is for finite spaces");
    return columns_[i];
  }
  const std::map<uint64_t, LatticeElement>& exceptional() const { return exceptional_; }
  const LatticeElement& tail_column() const { return tail_; }
  const LatticeElement& column_at(uint64_t n) const {
    auto it = exceptional_.find(n);
    return it == exceptional_.end() ? tail_ : it->second;
  }

  bool is_positive() const {
    if (space_.is_finite()) {
      for (const auto& c : columns_)
        if (!is_nonneg(c)) return false;
      return true;
    }
    if (!is_nonneg(tail_)) return false;
    for (const auto& [n, c] : exceptional_)
      if (!is_nonneg(c)) return false;
    return true;
  }

  bool operator==(const RegularOperator& o) const = default;

 private:
  RegularOperator(Space space, size_t dim)
      : space_(std::move(space)), dim_(dim), tail_(LatticeElement::zero(dim)) {}

  void normalize() {
    for (auto it = exceptional_.begin(); it != exceptional_.end();)
      it = it->second == tail_ ? exceptional_.erase(it) : std::next(it);
  }

  Space space_;
  size_t dim_;
  std::vector<LatticeElement> columns_;
  std::map<uint64_t, LatticeElement> exceptional_;
  LatticeElement tail_;
};

inline void require_same_space(const RegularOperator& a, const RegularOperator& b) {
  if (!(a.space() == b.space()) || a.dim() != b.dim())
    throw error("operators live on different spaces");
}

namespace detail {
template <typename F>
RegularOperator map_columns(const RegularOperator& t, F&& op) {
  if (t.space().is_finite()) {
    std::vector<LatticeElement> cols;
    for (const auto& c : t.columns()) cols.push_back(op(c));
    return RegularOperator::on_finite(t.space().finite(), std::move(cols));
  }
  std::map<uint64_t, LatticeElement> exc;
  for (const auto& [n, c] : t.exceptional()) exc.insert({n, op(c)});
  return RegularOperator::on_nat(t.dim(), std::move(exc), op(t.tail_column()));
}

template <typename F>
RegularOperator zip_columns(const RegularOperator& a, const RegularOperator& b, F&& op) {
  require_same_space(a, b);
  if (a.space().is_finite()) {
    std::vector<LatticeElement> cols;
    for (size_t i = 0; i < a.columns().size(); ++i)
      cols.push_back(op(a.column(i), b.column(i)));
    return RegularOperator::on_finite(a.space().finite(), std::move(cols));
  }
  std::map<uint64_t, LatticeElement> exc;
  for (const auto& [n, c] : a.exceptional()) exc.insert({n, op(c, b.column_at(n))});
  for (const auto& [n, c] : b.exceptional()) exc.insert({n, op(a.column_at(n), c)});
  return RegularOperator::on_nat(a.dim(), std::move(exc),
                                 op(a.tail_column(), b.tail_column()));
}
}  // namespace detail

inline RegularOperator add(const RegularOperator& a, const RegularOperator& b) {
  return detail::zip_columns(a, b, [](const auto& x, const auto& y) { return x + y; });
}
inline RegularOperator sub(const RegularOperator& a, const RegularOperator& b) {
  return detail::zip_columns(a, b, [](const auto& x, const auto& y) { return x - y; });
}
inline RegularOperator neg(const RegularOperator& a) {
  return detail::map_columns(a, [](const auto& x) { return -x; });
}
inline RegularOperator scale(const Rational& r, const RegularOperator& a) {
  return detail::map_columns(a, [&](const auto& x) { return r * x; });
}

/// Columnwise join: the lattice supremum of two regular operators.
inline RegularOperator join(const RegularOperator& a, const RegularOperator& b) {
  return detail::zip_columns(a, b, [](const auto& x, const auto& y) { return join(x, y); });
}

/// Columnwise order: |S| <= |T| columnwise makes S dominated by T.
inline bool columns_leq(const RegularOperator& a, const RegularOperator& b) {
  require_same_space(a, b);
  if (a.space().is_finite()) {
    for (size_t i = 0; i < a.columns().size(); ++i)
      if (!leq(a.column(i), b.column(i))) return false;
    return true;
  }
  if (!leq(a.tail_column(), b.tail_column())) return false;
  for (const auto& [n, c] : a.exceptional())
    if (!leq(c, b.column_at(n))) return false;
  for (const auto& [n, c] : b.exceptional())
    if (!leq(a.column_at(n), c)) return false;
  return true;
}

/// Applies the operator to a simple function. On N a nonzero tail column
/// restricts the domain to eventually zero functions.
inline LatticeElement apply(const RegularOperator& t, const SimpleFunction& f) {
  require_same_space(f, t.space());
  if (t.space().is_finite()) {
    LatticeElement acc = LatticeElement::zero(t.dim());
    for (size_t i = 0; i < t.columns().size(); ++i) acc = acc + f.at(i) * t.column(i);
    return acc;
  }
  if (!is_zero(t.tail_column()) && f.tail() != 0)
    throw error("not in domain: the operator admits only eventually zero functions");
  LatticeElement acc = LatticeElement::zero(t.dim());
  for (const auto& [n, c] : t.exceptional()) acc = acc + f.at_nat(n) * c;
  for (const auto& [n, v] : f.exceptional())
    if (!t.exceptional().count(n)) acc = acc + v * t.column_at(n);
  return acc;
}

/// The modulus |T|, computed columnwise; verified against the sign-vector
/// oracle below.
inline RegularOperator modulus(const RegularOperator& t) {
  return detail::map_columns(t, [](const auto& c) { return abs(c); });
}

/// Brute-force realization of |T| x as the supremum of |T y| over |y| <= x.
/// Under the coordinatewise order the interval [-x, x] is a box, so the
/// coordinatewise supremum of the linear image is attained at its vertices,
/// the sign vectors.
inline LatticeElement modulus_oracle(const RegularOperator& t, const SimpleFunction& x) {
  if (!t.space().is_finite()) throw error("the modulus oracle is for finite spaces");
  require_same_space(x, t.space());
  if (!x.is_nonneg()) throw error("the modulus oracle needs a nonnegative vector");
  const size_t n = t.space().finite().size();
  if (n > 16) throw error("sign-vector enumeration is bounded at 16 atoms");
  LatticeElement acc = LatticeElement::zero(t.dim());
  for (uint32_t signs = 0; signs < (1u << n); ++signs) {
    LatticeElement v = LatticeElement::zero(t.dim());
    for (size_t i = 0; i < n; ++i) {
      const Rational coeff = ((signs >> i) & 1u) ? -x.at(i) : x.at(i);
      v = v + coeff * t.column(i);
    }
    acc = signs == 0 ? abs(v) : join(acc, abs(v));
  }
  return acc;
}

struct OperatorNormReport {
  bool norm_to_order_bounded = false;
  // The least bound t with |T f| <= ||f|| * t, when one exists.
  std::optional<LatticeElement> unit_ball_bound;
  std::optional<Rational> regular_norm;
};

/// Norm-to-order-bounded structure of T: on finite spaces every regular
/// operator is bounded by |T| applied to the constant-one function; on N the
/// bound exists exactly when the tail column vanishes.
inline OperatorNormReport norm_report(const RegularOperator& t, const LatticeNorm& n) {
  OperatorNormReport r;
  if (t.space().is_finite()) {
    LatticeElement bound = LatticeElement::zero(t.dim());
    for (const auto& c : t.columns()) bound = bound + abs(c);
    r.norm_to_order_bounded = true;
    r.unit_ball_bound = bound;
    r.regular_norm = norm(n, bound);
    return r;
  }
  r.norm_to_order_bounded = is_zero(t.tail_column());
  if (r.norm_to_order_bounded) {
    LatticeElement bound = LatticeElement::zero(t.dim());
    for (const auto& [idx, c] : t.exceptional()) bound = bound + abs(c);
    r.unit_ball_bound = bound;
    r.regular_norm = norm(n, bound);
  }
  return r;
}

/// The Riesz-Kantorovich supremum over disjoint decompositions by indicator
/// functions: sup over measurable Gamma inside Delta of
/// T(chi_Gamma) + S(chi_{Delta \ Gamma}). Equals (T v S)(chi_Delta) for the
/// columnwise join.
inline LatticeElement riesz_kantorovich_sup(const RegularOperator& t,
                                            const RegularOperator& s,
                                            const FiniteSet& delta) {
  require_same_space(t, s);
  if (!t.space().is_finite()) throw error("the enumeration form is for finite spaces");
  if (delta.universe_size() != t.space().finite().size())
    throw error("set does not belong to the operator's space");
  if (delta.size() > 16) throw error("partition enumeration is bounded at 16 atoms");
  LatticeElement acc = LatticeElement::zero(t.dim());
  bool first = true;
  for (const auto& gamma : enumerate_subsets(delta)) {
    LatticeElement v = LatticeElement::zero(t.dim());
    for (size_t i : delta.members())
      v = v + (gamma.contains(i) ? t.column(i) : s.column(i));
    acc = first ? v : join(acc, v);
    first = false;
  }
  return acc;
}

}  // namespace ordmeas
