#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ordmeas/rational.hpp"

namespace ordmeas {

/// An element of the vector lattice E: a fixed-dimension vector of exact
/// rationals under the coordinatewise partial order. All operations are
/// coordinatewise and exact.
class LatticeElement {
 public:
  explicit LatticeElement(size_t dim) : coords_(dim) {}
  explicit LatticeElement(std::vector<Rational> coords)
      : coords_(std::move(coords)) {}

  static LatticeElement zero(size_t dim) { return LatticeElement(dim); }

  size_t dim() const { return coords_.size(); }
  const Rational& operator[](size_t i) const { return coords_[i]; }
  Rational& operator[](size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool operator==(const LatticeElement& o) const = default;

 private:
  std::vector<Rational> coords_;
};

inline void require_same_dim(const LatticeElement& a, const LatticeElement& b) {
  if (a.dim() != b.dim()) throw error("lattice dimension mismatch");
}

inline LatticeElement operator+(const LatticeElement& a,
                                const LatticeElement& b) {
  require_same_dim(a, b);
  LatticeElement r(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline LatticeElement operator-(const LatticeElement& a,
                                const LatticeElement& b) {
  require_same_dim(a, b);
  LatticeElement r(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline LatticeElement operator-(const LatticeElement& a) {
  LatticeElement r(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) r[i] = -a[i];
  return r;
}

inline LatticeElement operator*(const Rational& r, const LatticeElement& a) {
  LatticeElement out(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) out[i] = r * a[i];
  return out;
}

/// Coordinatewise partial order: a <= b iff every coordinate is <=.
inline bool leq(const LatticeElement& a, const LatticeElement& b) {
  require_same_dim(a, b);
  for (size_t i = 0; i < a.dim(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline LatticeElement join(const LatticeElement& a, const LatticeElement& b) {
  require_same_dim(a, b);
  LatticeElement r(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) r[i] = a[i] >= b[i] ? a[i] : b[i];
  return r;
}

inline LatticeElement meet(const LatticeElement& a, const LatticeElement& b) {
  require_same_dim(a, b);
  LatticeElement r(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) r[i] = a[i] <= b[i] ? a[i] : b[i];
  return r;
}

inline LatticeElement abs(const LatticeElement& a) {
  LatticeElement r(a.dim());
  for (size_t i = 0; i < a.dim(); ++i) r[i] = ::abs(a[i]);
  return r;
}

inline LatticeElement pos_part(const LatticeElement& a) {
  return join(a, LatticeElement::zero(a.dim()));
}

inline LatticeElement neg_part(const LatticeElement& a) {
  return join(-a, LatticeElement::zero(a.dim()));
}

inline bool is_zero(const LatticeElement& a) {
  for (size_t i = 0; i < a.dim(); ++i)
    if (a[i] != 0) return false;
  return true;
}

inline bool is_nonneg(const LatticeElement& a) {
  for (size_t i = 0; i < a.dim(); ++i)
    if (a[i] < 0) return false;
  return true;
}

inline std::string to_string(const LatticeElement& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.dim(); ++i) {
    if (i) s += ",";
    s += to_string(a[i]);
  }
  return s + ")";
}

/// An element of the extended space obtained by adjoining a single point at
/// infinity to E. Infinity dominates everything and absorbs addition; the
/// scalar action on the extended positive cone sets 0 * infinity = 0.
class ExtElement {
 public:
  /*implicit*/ ExtElement(LatticeElement v) : value_(std::move(v)) {}

  static ExtElement infinity(size_t dim) {
    ExtElement e{LatticeElement::zero(dim)};
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  size_t dim() const { return value_.dim(); }

  const LatticeElement& finite() const {
    if (infinite_) throw error("infinite value where a finite one is required");
    return value_;
  }

  bool operator==(const ExtElement& o) const {
    if (value_.dim() != o.value_.dim()) return false;
    if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
    return value_ == o.value_;
  }

 private:
  LatticeElement value_;
  bool infinite_ = false;
};

inline void require_same_dim(const ExtElement& a, const ExtElement& b) {
  if (a.dim() != b.dim()) throw error("lattice dimension mismatch");
}

inline ExtElement ext_add(const ExtElement& a, const ExtElement& b) {
  require_same_dim(a, b);
  if (a.is_infinite() || b.is_infinite()) return ExtElement::infinity(a.dim());
  return ExtElement(a.finite() + b.finite());
}

/// Scalar action on the extended positive cone; defined for r >= 0 only.
inline ExtElement ext_scale(const Rational& r, const ExtElement& a) {
  if (r < 0) throw error("negative scalar action on the extended cone");
  if (a.is_infinite())
    return r == 0 ? ExtElement(LatticeElement::zero(a.dim()))
                  : ExtElement::infinity(a.dim());
  return ExtElement(r * a.finite());
}

inline bool ext_leq(const ExtElement& a, const ExtElement& b) {
  require_same_dim(a, b);
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return leq(a.finite(), b.finite());
}

/// Supremum of a non-empty finite set: infinite if any member is, otherwise
/// the coordinatewise maximum.
inline ExtElement ext_sup(const std::vector<ExtElement>& s) {
  if (s.empty()) throw error("supremum of an empty set");
  LatticeElement acc = LatticeElement::zero(s.front().dim());
  bool first = true;
  for (const auto& e : s) {
    if (e.is_infinite()) return ExtElement::infinity(s.front().dim());
    acc = first ? e.finite() : join(acc, e.finite());
    first = false;
  }
  return ExtElement(acc);
}

/// Infimum of a non-empty finite set: infinite members are discarded unless
/// the whole set is {infinity}.
inline ExtElement ext_inf(const std::vector<ExtElement>& s) {
  if (s.empty()) throw error("infimum of an empty set");
  LatticeElement acc = LatticeElement::zero(s.front().dim());
  bool any_finite = false;
  for (const auto& e : s) {
    if (e.is_infinite()) continue;
    acc = any_finite ? meet(acc, e.finite()) : e.finite();
    any_finite = true;
  }
  if (!any_finite) return ExtElement::infinity(s.front().dim());
  return ExtElement(acc);
}

inline std::string to_string(const ExtElement& a) {
  return a.is_infinite() ? "inf" : to_string(a.finite());
}

/// A vector lattice norm on E: sup-norm or 1-norm, optionally with positive
/// per-coordinate weights. The 1-norm is additive on the positive cone.
struct LatticeNorm {
  enum class Kind { Sup, One };

  Kind kind = Kind::Sup;
  std::vector<Rational> weights;  // empty means all weights are 1

  static LatticeNorm sup() { return {Kind::Sup, {}}; }
  static LatticeNorm one() { return {Kind::One, {}}; }
  static LatticeNorm weighted(Kind kind, std::vector<Rational> w) {
    for (const auto& x : w)
      if (x <= 0) throw error("norm weights must be positive");
    return {kind, std::move(w)};
  }

  bool operator==(const LatticeNorm& o) const = default;
};

inline Rational norm(const LatticeNorm& n, const LatticeElement& x) {
  if (!n.weights.empty() && n.weights.size() != x.dim())
    throw error("norm weight count does not match the lattice dimension");
  Rational acc = 0;
  for (size_t i = 0; i < x.dim(); ++i) {
    Rational term = ::abs(x[i]);
    if (!n.weights.empty()) term *= n.weights[i];
    if (n.kind == LatticeNorm::Kind::One)
      acc += term;
    else if (term > acc)
      acc = term;
  }
  return acc;
}

}  // namespace ordmeas
