#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ordmeas/rational.hpp"

namespace ordmeas {

class FiniteSet;

/// A finite measurable space given by its atoms; the sigma-algebra is the
/// full power set of the atom list. At most 16 atoms, so that the subset
/// enumerations behind the brute-force oracles stay sub-second.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw error("a finite space needs at least one atom");
    if (atoms_.size() > 16) throw error("finite spaces are bounded at 16 atoms");
    std::set<std::string> seen(atoms_.begin(), atoms_.end());
    if (seen.size() != atoms_.size()) throw error("atom labels must be unique");
  }

  size_t size() const { return atoms_.size(); }
  const std::string& label(size_t i) const { return atoms_[i]; }
  const std::vector<std::string>& atoms() const { return atoms_; }

  bool has_label(const std::string& name) const {
    return std::find(atoms_.begin(), atoms_.end(), name) != atoms_.end();
  }

  size_t index_of(const std::string& name) const {
    auto it = std::find(atoms_.begin(), atoms_.end(), name);
    if (it == atoms_.end()) throw error("unknown atom: " + name);
    return static_cast<size_t>(it - atoms_.begin());
  }

  FiniteSet empty_set() const;
  FiniteSet full_set() const;
  FiniteSet singleton(size_t atom) const;
  FiniteSet set_of(const std::vector<std::string>& labels) const;

  bool operator==(const FiniteSpace& o) const = default;

 private:
  std::vector<std::string> atoms_;
};

/// A measurable subset of a FiniteSpace, stored as a bitmask over the atoms.
class FiniteSet {
 public:
  FiniteSet(uint32_t mask, size_t universe) : mask_(mask), universe_(universe) {
    if (universe_ > 16) throw error("finite sets are bounded at 16 atoms");
    if (mask_ >> universe_) throw error("set mask exceeds the atom count");
  }

  static FiniteSet empty(size_t universe) { return FiniteSet(0, universe); }
  static FiniteSet full(size_t universe) {
    return FiniteSet(static_cast<uint32_t>((1u << universe) - 1), universe);
  }

  uint32_t mask() const { return mask_; }
  size_t universe_size() const { return universe_; }
  size_t size() const { return static_cast<size_t>(__builtin_popcount(mask_)); }
  bool is_empty() const { return mask_ == 0; }
  bool contains(size_t atom) const { return (mask_ >> atom) & 1u; }

  std::vector<size_t> members() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < universe_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  bool operator==(const FiniteSet& o) const = default;

 private:
  uint32_t mask_;
  size_t universe_;
};

inline void require_same_universe(const FiniteSet& a, const FiniteSet& b) {
  if (a.universe_size() != b.universe_size())
    throw error("sets live on different spaces");
}

inline FiniteSet unite(const FiniteSet& a, const FiniteSet& b) {
  require_same_universe(a, b);
  return FiniteSet(a.mask() | b.mask(), a.universe_size());
}

inline FiniteSet intersect(const FiniteSet& a, const FiniteSet& b) {
  require_same_universe(a, b);
  return FiniteSet(a.mask() & b.mask(), a.universe_size());
}

inline FiniteSet minus(const FiniteSet& a, const FiniteSet& b) {
  require_same_universe(a, b);
  return FiniteSet(a.mask() & ~b.mask(), a.universe_size());
}

inline FiniteSet complement(const FiniteSet& a) {
  return minus(FiniteSet::full(a.universe_size()), a);
}

inline bool subset_of(const FiniteSet& a, const FiniteSet& b) {
  require_same_universe(a, b);
  return (a.mask() & ~b.mask()) == 0;
}

inline FiniteSet FiniteSpace::empty_set() const { return FiniteSet::empty(size()); }
inline FiniteSet FiniteSpace::full_set() const { return FiniteSet::full(size()); }
inline FiniteSet FiniteSpace::singleton(size_t atom) const {
  if (atom >= size()) throw error("atom index out of range");
  return FiniteSet(1u << atom, size());
}
inline FiniteSet FiniteSpace::set_of(const std::vector<std::string>& labels) const {
  uint32_t mask = 0;
  for (const auto& l : labels) mask |= 1u << index_of(l);
  return FiniteSet(mask, size());
}

/// All measurable subsets of delta, in ascending order of their bitmask.
inline std::vector<FiniteSet> enumerate_subsets(const FiniteSet& delta) {
  if (delta.size() > 16) throw error("subset enumeration is bounded at 16 atoms");
  const auto bits = delta.members();
  const size_t k = bits.size();
  std::vector<FiniteSet> out;
  out.reserve(size_t{1} << k);
  for (uint32_t i = 0; i < (1u << k); ++i) {
    uint32_t mask = 0;
    for (size_t j = 0; j < k; ++j)
      if ((i >> j) & 1u) mask |= 1u << bits[j];
    out.emplace_back(mask, delta.universe_size());
  }
  return out;
}

inline std::vector<FiniteSet> subsets_of(const FiniteSpace& space,
                                         const FiniteSet& delta) {
  if (delta.universe_size() != space.size())
    throw error("set does not belong to the space");
  return enumerate_subsets(delta);
}

/// A subset of N from the finite/cofinite family: either a finite set or the
/// complement of one. The family is closed under all Boolean operations.
class NatSet {
 public:
  static NatSet fin(std::set<uint64_t> s) { return NatSet(false, std::move(s)); }
  static NatSet cofin(std::set<uint64_t> s) { return NatSet(true, std::move(s)); }
  static NatSet empty() { return fin({}); }
  static NatSet all() { return cofin({}); }

  bool is_cofinite() const { return cofinite_; }
  bool is_finite_set() const { return !cofinite_; }

  /// The listed elements: members when finite, exclusions when cofinite.
  const std::set<uint64_t>& support() const { return support_; }

  bool contains(uint64_t n) const {
    return cofinite_ ? support_.count(n) == 0 : support_.count(n) != 0;
  }

  bool operator==(const NatSet& o) const = default;

 private:
  NatSet(bool cofinite, std::set<uint64_t> s)
      : cofinite_(cofinite), support_(std::move(s)) {}

  bool cofinite_;
  std::set<uint64_t> support_;
};

inline NatSet complement(const NatSet& a) {
  return a.is_cofinite() ? NatSet::fin(a.support()) : NatSet::cofin(a.support());
}

inline NatSet unite(const NatSet& a, const NatSet& b) {
  std::set<uint64_t> out;
  if (!a.is_cofinite() && !b.is_cofinite()) {
    out = a.support();
    out.insert(b.support().begin(), b.support().end());
    return NatSet::fin(std::move(out));
  }
  if (a.is_cofinite() && b.is_cofinite()) {
    for (uint64_t n : a.support())
      if (b.support().count(n)) out.insert(n);
    return NatSet::cofin(std::move(out));
  }
  const NatSet& co = a.is_cofinite() ? a : b;
  const NatSet& fi = a.is_cofinite() ? b : a;
  for (uint64_t n : co.support())
    if (!fi.support().count(n)) out.insert(n);
  return NatSet::cofin(std::move(out));
}

inline NatSet intersect(const NatSet& a, const NatSet& b) {
  return complement(unite(complement(a), complement(b)));
}

inline NatSet minus(const NatSet& a, const NatSet& b) {
  return intersect(a, complement(b));
}

inline bool subset_of(const NatSet& a, const NatSet& b) {
  return minus(a, b) == NatSet::empty();
}

enum class SetOp { Union, Intersection, Difference, Complement };

inline NatSet nat_ops(const NatSet& a, const NatSet& b, SetOp op) {
  switch (op) {
    case SetOp::Union: return unite(a, b);
    case SetOp::Intersection: return intersect(a, b);
    case SetOp::Difference: return minus(a, b);
    case SetOp::Complement: return complement(a);
  }
  throw error("unknown set operation");
}

/// Coarsens a space to the sigma-algebra generated by the given sets: the new
/// atoms are the nonempty cells of the common refinement, labeled by joining
/// the merged atom labels with '|'.
inline FiniteSpace generate_sigma_algebra(const FiniteSpace& space,
                                          const std::vector<FiniteSet>& generators) {
  for (const auto& g : generators)
    if (g.universe_size() != space.size())
      throw error("generator does not belong to the space");
  // Signature of an atom: its membership pattern across the generators.
  std::vector<uint32_t> signature(space.size(), 0);
  for (size_t i = 0; i < space.size(); ++i)
    for (size_t g = 0; g < generators.size(); ++g)
      if (generators[g].contains(i)) signature[i] |= 1u << g;
  std::vector<std::string> cells;
  std::vector<uint32_t> cell_signature;
  for (size_t i = 0; i < space.size(); ++i) {
    bool found = false;
    for (size_t c = 0; c < cells.size(); ++c) {
      if (cell_signature[c] == signature[i]) {
        cells[c] += "|" + space.label(i);
        found = true;
        break;
      }
    }
    if (!found) {
      cells.push_back(space.label(i));
      cell_signature.push_back(signature[i]);
    }
  }
  return FiniteSpace(std::move(cells));
}

/// The measurable spaces in scope: finite atomic spaces, or N with the
/// finite/cofinite set family.
class Space {
 public:
  Space() = default;  // N
  /*implicit*/ Space(FiniteSpace s) : finite_(std::move(s)) {}

  static Space nat() { return Space(); }

  bool is_finite() const { return finite_.has_value(); }
  const FiniteSpace& finite() const {
    if (!finite_) throw error("expected a finite space");
    return *finite_;
  }

  bool operator==(const Space& o) const = default;

 private:
  std::optional<FiniteSpace> finite_;
};

using MeasSet = std::variant<FiniteSet, NatSet>;

inline std::string to_string(const FiniteSpace& space, const FiniteSet& s) {
  std::string out = "{";
  bool first = true;
  for (size_t i : s.members()) {
    if (!first) out += ",";
    out += space.label(i);
    first = false;
  }
  return out + "}";
}

inline std::string to_string(const NatSet& s) {
  std::string out = s.is_cofinite() ? "cofin:[" : "fin:[";
  bool first = true;
  for (uint64_t n : s.support()) {
    if (!first) out += ",";
    out += std::to_string(n);
    first = false;
  }
  return out + "]";
}

}  // namespace ordmeas
