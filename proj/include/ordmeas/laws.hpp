#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ordmeas/random.hpp"

namespace ordmeas {

struct LawResult {
  explicit LawResult(std::string law_name = {}) : name(std::move(law_name)) {}

  std::string name;
  uint64_t cases = 0;
  uint64_t violations = 0;
  std::string witness;

  void tally(bool ok, const std::string& w) {
    ++cases;
    if (!ok) {
      if (violations == 0) witness = "violation: " + w;
      ++violations;
    } else if (violations == 0) {
      witness = w;
    }
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<LawResult> laws;

  bool ok() const {
    return std::all_of(laws.begin(), laws.end(),
                       [](const LawResult& r) { return r.violations == 0; });
  }
  uint64_t total_cases() const {
    uint64_t n = 0;
    for (const auto& r : laws) n += r.cases;
    return n;
  }
};

struct LawOptions {
  uint64_t seed = 42;
  const InstanceFile* file = nullptr;  // when set, laws run over the file's objects
  bool quick = false;                  // scaled-down counts for smoke testing
  size_t max_dim = 4;
  size_t max_atoms = 5;
  long bound = 100;
};

namespace detail {

inline uint64_t scaled(const LawOptions& o, uint64_t full) {
  return o.quick ? std::max<uint64_t>(full / 50, 4) : full;
}

inline std::vector<LatticeElement> file_elements(const InstanceFile& f) {
  std::vector<LatticeElement> out;
  auto take = [&](const LatticeElement& x) {
    if (out.size() < 24) out.push_back(x);
  };
  for (const auto& [name, m] : f.pos_measures) {
    if (f.space.is_finite()) {
      for (const auto& a : m.atoms())
        if (a.is_finite()) take(a.finite());
    } else {
      take(m.tail());
      for (const auto& [n, v] : m.exceptional()) take(v);
    }
  }
  for (const auto& [name, m] : f.signed_measures) {
    if (f.space.is_finite())
      for (const auto& a : m.atoms()) take(a);
    else
      for (const auto& [n, v] : m.support()) take(v);
  }
  for (const auto& [name, t] : f.operators) {
    if (f.space.is_finite())
      for (const auto& c : t.columns()) take(c);
    else
      take(t.tail_column());
  }
  return out;
}

inline std::vector<MeasSet> file_probe_sets(const InstanceFile& f) {
  if (f.space.is_finite()) {
    std::vector<MeasSet> out;
    for (const auto& s : subsets_of(f.space.finite(), f.space.finite().full_set()))
      out.emplace_back(s);
    return out;
  }
  std::vector<MeasSet> out{NatSet::empty(), NatSet::all()};
  std::set<uint64_t> support;
  for (const auto& [name, m] : f.pos_measures)
    for (const auto& [n, v] : m.exceptional()) support.insert(n);
  for (const auto& [name, m] : f.signed_measures)
    for (const auto& [n, v] : m.support()) support.insert(n);
  for (uint64_t n : support) {
    out.emplace_back(NatSet::fin({n}));
    out.emplace_back(NatSet::cofin({n}));
  }
  out.emplace_back(NatSet::fin(support));
  out.emplace_back(NatSet::cofin(support));
  return out;
}

}  // namespace detail

// ---- lattice suite ---------------------------------------------------------

inline SuiteReport lattice_suite(const LawOptions& opt) {
  SuiteReport report{"lattice", {}};
  LawResult modular{"modular_elements"};
  LawResult sums{"sup_of_pairwise_sums"};
  LawResult translation{"translation_invariance"};
  LawResult homogeneity{"positive_homogeneity"};
  LawResult monotone{"norm_monotonicity"};
  LawResult extended{"extended_arithmetic"};

  if (opt.file) {
    const auto elements = detail::file_elements(*opt.file);
    for (size_t i = 0; i < elements.size(); ++i)
      for (size_t j = i + 1; j < elements.size(); ++j) {
        const auto& x = elements[i];
        const auto& y = elements[j];
        const LatticeElement lhs = join(x, y) + meet(x, y);
        modular.tally(lhs == x + y, to_string(lhs));
        for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
          const bool implication = !leq(abs(x), abs(y)) || norm(n, x) <= norm(n, y);
          monotone.tally(implication, to_string(norm(n, y)));
        }
      }
    report.laws = {modular, monotone};
    return report;
  }

  Rng root(opt.seed);
  const uint64_t cases = detail::scaled(opt, 1000);

  auto random_ext_list = [&](Rng& rng, size_t dim) {
    std::vector<ExtElement> s;
    const size_t k = 1 + rng.below(4);
    for (size_t i = 0; i < k; ++i) {
      if (rng.below(8) == 0)
        s.push_back(ExtElement::infinity(dim));
      else
        s.push_back(ExtElement(random_element(rng, dim, 50)));
    }
    return s;
  };

  for (uint64_t c = 0; c < cases; ++c) {
    Rng rng = root.fork(c);
    const size_t dim = 1 + rng.below(opt.max_dim);

    const LatticeElement x = random_element(rng, dim, opt.bound);
    const LatticeElement y = random_element(rng, dim, opt.bound);
    const LatticeElement lhs = join(x, y) + meet(x, y);
    modular.tally(lhs == x + y, to_string(lhs));

    const auto a = random_ext_list(rng, dim);
    const auto b = random_ext_list(rng, dim);
    std::vector<ExtElement> pairwise;
    for (const auto& u : a)
      for (const auto& v : b) pairwise.push_back(ext_add(u, v));
    const bool sums_ok =
        ext_sup(pairwise) == ext_add(ext_sup(a), ext_sup(b)) &&
        ext_inf(pairwise) == ext_add(ext_inf(a), ext_inf(b));
    sums.tally(sums_ok, to_string(ext_sup(pairwise)));

    const ExtElement shift{random_element(rng, dim, 50)};
    std::vector<ExtElement> shifted;
    for (const auto& v : a) shifted.push_back(ext_add(shift, v));
    const bool translation_ok =
        ext_sup(shifted) == ext_add(shift, ext_sup(a)) &&
        ext_inf(shifted) == ext_add(shift, ext_inf(a));
    translation.tally(translation_ok, to_string(ext_sup(shifted)));

    const Rational r = rng.nonneg_rational(20, 10);
    std::vector<ExtElement> scaled_list;
    for (const auto& v : a) scaled_list.push_back(ext_scale(r, v));
    const bool homog_ok =
        ext_sup(scaled_list) == ext_scale(r, ext_sup(a)) &&
        ext_inf(scaled_list) == ext_scale(r, ext_inf(a));
    homogeneity.tally(homog_ok, to_string(r));

    // |x'| <= |y| by construction: shrink each coordinate by a factor in [-1,1].
    LatticeElement small(dim);
    for (size_t i = 0; i < dim; ++i) {
      const long den = rng.int_in(1, 10);
      small[i] = y[i] * make_rational(rng.int_in(-den, den), den);
    }
    bool mono_ok = true;
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()})
      mono_ok = mono_ok && leq(abs(small), abs(y)) && norm(n, small) <= norm(n, y);
    monotone.tally(mono_ok, to_string(norm(LatticeNorm::sup(), y)));

    const ExtElement fin{x};
    const ExtElement inf_v = ExtElement::infinity(dim);
    bool ext_ok = ext_add(fin, inf_v).is_infinite() &&
                  ext_add(inf_v, inf_v).is_infinite() &&
                  ext_scale(Rational(0), inf_v) ==
                      ExtElement(LatticeElement::zero(dim)) &&
                  ext_scale(make_rational(1, 2), inf_v).is_infinite() &&
                  ext_inf({inf_v}) == inf_v &&
                  ext_inf({fin, inf_v}) == fin && ext_sup({fin, inf_v}) == inf_v;
    extended.tally(ext_ok, "extended-cone identities");
  }
  report.laws = {modular, sums, translation, homogeneity, monotone, extended};
  return report;
}

// ---- measures suite --------------------------------------------------------

namespace detail {

inline bool partition_oracle_ok(const PosMeasure& mu, const PosMeasure& nu,
                                bool include_inf, std::string& witness) {
  const PosMeasure joined = join(mu, nu);
  const PosMeasure* met = nullptr;
  PosMeasure met_storage = joined;  // placeholder
  if (include_inf) {
    met_storage = meet(mu, nu);
    met = &met_storage;
  }
  if (mu.space().is_finite()) {
    const auto& space = mu.space().finite();
    for (const auto& delta : subsets_of(space, space.full_set())) {
      if (!(joined.eval(delta) == partition_formula(mu, nu, delta, ExtremumMode::Sup))) {
        witness = "sup formula disagrees at " + to_string(space, delta);
        return false;
      }
      if (met && !(met->eval(delta) ==
                   partition_formula(mu, nu, delta, ExtremumMode::Inf))) {
        witness = "inf formula disagrees at " + to_string(space, delta);
        return false;
      }
    }
    witness = to_string(joined.total());
    return true;
  }
  // N: compare on the probe family, and validate the restricted-candidate
  // enumeration against a full truncation oracle over {0..12}.
  std::set<uint64_t> support;
  for (const auto& [n, v] : mu.exceptional()) support.insert(n);
  for (const auto& [n, v] : nu.exceptional()) support.insert(n);
  std::vector<NatSet> probes{NatSet::empty(), NatSet::all(), NatSet::fin(support),
                             NatSet::cofin(support)};
  for (uint64_t n : support) {
    probes.push_back(NatSet::fin({n}));
    probes.push_back(NatSet::cofin({n}));
  }
  for (const auto& delta : probes) {
    if (!(joined.eval(delta) == partition_formula(mu, nu, delta, ExtremumMode::Sup))) {
      witness = "sup formula disagrees at " + to_string(delta);
      return false;
    }
    if (met && !(met->eval(delta) ==
                 partition_formula(mu, nu, delta, ExtremumMode::Inf))) {
      witness = "inf formula disagrees at " + to_string(delta);
      return false;
    }
  }
  witness = "nat probes agree";
  return true;
}

/// Truncation oracle for the restricted candidate family on N: enumerate all
/// Gamma built from subsets of {0..max_index} on both sides of the partition
/// and check the restricted enumeration reaches the same extremum. Subset
/// sums are built incrementally; the complement values come from
/// m(Delta \ S) = m(Delta) - m(S) when m(Delta) is finite.
inline bool nat_truncation_oracle_ok(const PosMeasure& mu, const PosMeasure& nu,
                                     const NatSet& delta, uint64_t max_index,
                                     std::string& witness) {
  std::vector<uint64_t> base;
  for (uint64_t n = 0; n <= max_index; ++n)
    if (delta.contains(n)) base.push_back(n);
  if (base.size() > 16) base.resize(16);
  const size_t k = base.size();
  const size_t dim = mu.dim();
  std::vector<LatticeElement> mu_sum(size_t{1} << k, LatticeElement::zero(dim));
  std::vector<LatticeElement> nu_sum(size_t{1} << k, LatticeElement::zero(dim));
  for (size_t i = 1; i < (size_t{1} << k); ++i) {
    const size_t low = static_cast<size_t>(__builtin_ctzll(i));
    mu_sum[i] = mu_sum[i & (i - 1)] + mu.atom_at(base[low]);
    nu_sum[i] = nu_sum[i & (i - 1)] + nu.atom_at(base[low]);
  }
  const ExtElement mu_delta = mu.eval(delta);
  const ExtElement nu_delta = nu.eval(delta);
  auto rest = [&](const ExtElement& total, const LatticeElement& part) {
    return total.is_infinite() ? total : ExtElement(total.finite() - part);
  };
  std::vector<ExtElement> candidates;
  candidates.reserve(size_t{2} << k);
  for (size_t i = 0; i < (size_t{1} << k); ++i) {
    // Gamma = Fin(S) and Gamma = Delta \ Fin(S).
    candidates.push_back(ext_add(ExtElement(mu_sum[i]), rest(nu_delta, nu_sum[i])));
    candidates.push_back(ext_add(rest(mu_delta, mu_sum[i]), ExtElement(nu_sum[i])));
  }
  const bool ok =
      ext_sup(candidates) == partition_formula(mu, nu, delta, ExtremumMode::Sup) &&
      ext_inf(candidates) == partition_formula(mu, nu, delta, ExtremumMode::Inf);
  if (!ok) witness = "truncation oracle disagrees at " + to_string(delta);
  return ok;
}

}  // namespace detail

inline SuiteReport measures_suite(const LawOptions& opt) {
  SuiteReport report{"measures", {}};
  LawResult modular{"modular_identity"};
  LawResult oracle{"partition_oracle"};
  LawResult oracle_inf{"partition_oracle_infinite_sup"};
  LawResult truncation{"nat_truncation_oracle"};
  LawResult lattice_laws{"lattice_laws"};
  LawResult norm_chain{"norm_chain"};
  LawResult domination{"domination_transfer"};
  LawResult additivity{"additivity"};
  LawResult al{"al_additivity"};
  LawResult sequences{"increasing_sequences"};

  auto check_modular = [&](const PosMeasure& mu, const PosMeasure& nu) {
    const PosMeasure lhs = add(join(mu, nu), meet(mu, nu));
    modular.tally(lhs == add(mu, nu), to_string(lhs.total()));
  };
  auto check_lattice_laws = [&](const PosMeasure& mu, const PosMeasure& nu,
                                const PosMeasure& rho) {
    bool ok = join(mu, nu) == join(nu, mu) && meet(mu, nu) == meet(nu, mu) &&
              join(join(mu, nu), rho) == join(mu, join(nu, rho)) &&
              meet(meet(mu, nu), rho) == meet(mu, meet(nu, rho)) &&
              join(mu, meet(mu, nu)) == mu && meet(mu, join(mu, nu)) == mu &&
              join(add(mu, rho), add(nu, rho)) == add(join(mu, nu), rho);
    lattice_laws.tally(ok, "join/meet laws");
  };
  auto check_norm_chain = [&](const SignedMeasure& m) {
    const PosMeasure amu = abs_measure(m);
    bool ok = true;
    std::string w;
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
      const Rational total = measure_norm(n, m);
      for (const auto& delta : detail::file_probe_sets(
               InstanceFile{m.dim(), n, m.space(), {}, {{"m", m}}, {}, {}})) {
        const Rational at = norm(n, m.eval(delta));
        const Rational mid = norm(n, amu.eval(delta).finite());
        if (!(at <= mid && mid <= total)) ok = false;
      }
      w = to_string(total);
    }
    norm_chain.tally(ok, w);
  };
  auto check_al = [&](const PosMeasure& mu, const PosMeasure& nu) {
    if (!mu.is_finite() || !nu.is_finite()) return;
    const LatticeNorm n = LatticeNorm::one();
    const bool ok =
        measure_norm(n, mu) + measure_norm(n, nu) == measure_norm(n, add(mu, nu));
    al.tally(ok, to_string(measure_norm(n, add(mu, nu))));
  };

  if (opt.file) {
    const auto& f = *opt.file;
    std::vector<std::pair<std::string, PosMeasure>> pos(f.pos_measures.begin(),
                                                        f.pos_measures.end());
    for (size_t i = 0; i < pos.size(); ++i)
      for (size_t j = i + 1; j < pos.size(); ++j) {
        const auto& mu = pos[i].second;
        const auto& nu = pos[j].second;
        const bool finite = mu.is_finite() && nu.is_finite();
        if (finite) check_modular(mu, nu);
        std::string w;
        oracle.tally(detail::partition_oracle_ok(mu, nu, finite, w), w);
        if (finite) {
          check_al(mu, nu);
          const auto& rho = pos[(j + 1) % pos.size()].second;
          if (rho.is_finite()) check_lattice_laws(mu, nu, rho);
          if (leq(nu, mu)) {
            const SignedMeasure diff = sub(mu, nu);
            domination.tally(diff.is_positive(), to_string(diff.total()));
          }
        }
        if (!f.space.is_finite()) {
          bool in_window = true;
          for (const auto& [n, v] : mu.exceptional()) in_window = in_window && n <= 12;
          for (const auto& [n, v] : nu.exceptional()) in_window = in_window && n <= 12;
          if (in_window) {
            std::string tw;
            truncation.tally(
                detail::nat_truncation_oracle_ok(mu, nu, NatSet::all(), 12, tw), tw);
          }
        }
      }
    for (const auto& [name, m] : f.signed_measures) check_norm_chain(m);
    report.laws = {modular, oracle, truncation, lattice_laws, norm_chain, domination, al};
    return report;
  }

  Rng root(opt.seed);
  const uint64_t cases = detail::scaled(opt, 1000);
  for (uint64_t c = 0; c < cases; ++c) {
    Rng rng = root.fork(c);
    const size_t dim = 1 + rng.below(opt.max_dim);
    const FiniteSpace space = random_space(rng, opt.max_atoms);
    const PosMeasure mu = random_pos_measure(rng, space, dim, opt.bound);
    const PosMeasure nu = random_pos_measure(rng, space, dim, opt.bound);

    check_modular(mu, nu);
    std::string w;
    oracle.tally(detail::partition_oracle_ok(mu, nu, true, w), w);

    if (c < detail::scaled(opt, 500)) {
      const PosMeasure rho = random_pos_measure(rng, space, dim, opt.bound);
      check_lattice_laws(mu, nu, rho);
      check_al(mu, nu);
      check_norm_chain(random_signed_measure(rng, space, dim, opt.bound));

      // nu' <= mu by construction; the difference must be a measure again.
      const PosMeasure dominated = meet(mu, random_pos_measure(rng, space, dim, opt.bound));
      const SignedMeasure diff = sub(mu, dominated);
      bool dom_ok = diff.is_positive();
      const PosMeasure recovered = as_positive(diff);
      const FiniteSet a(static_cast<uint32_t>(rng.below(1u << space.size())),
                        space.size());
      dom_ok = dom_ok && recovered.eval(space.full_set()) ==
                             ext_add(recovered.eval(a), recovered.eval(complement(a)));
      domination.tally(dom_ok, to_string(recovered.total()));
    }

    if (c < detail::scaled(opt, 200)) {
      const PosMeasure ext_mu = random_ext_pos_measure(rng, space, dim, opt.bound);
      const PosMeasure ext_nu = random_ext_pos_measure(rng, space, dim, opt.bound);
      std::string we;
      oracle_inf.tally(detail::partition_oracle_ok(ext_mu, ext_nu, false, we), we);
    }

    if (c < detail::scaled(opt, 500)) {
      // Additivity of eval over random partitions, finite and N.
      const FiniteSet a(static_cast<uint32_t>(rng.below(1u << space.size())),
                        space.size());
      bool ok = mu.eval(space.full_set()) ==
                ext_add(mu.eval(a), mu.eval(complement(a)));
      const PosMeasure nat_mu = random_nat_pos_measure(rng, dim, opt.bound);
      std::set<uint64_t> sa, sb;
      for (int i = 0; i < 4; ++i) sa.insert(rng.below(32));
      for (int i = 0; i < 4; ++i) sb.insert(rng.below(32));
      const NatSet fa = NatSet::fin(sa);
      const NatSet fb = minus(NatSet::fin(sb), fa);
      ok = ok && nat_mu.eval(unite(fa, fb)) == ext_add(nat_mu.eval(fa), nat_mu.eval(fb));
      const NatSet cof = NatSet::cofin(sa);
      ok = ok && nat_mu.eval(NatSet::all()) ==
                     ext_add(nat_mu.eval(cof), nat_mu.eval(complement(cof)));
      additivity.tally(ok, "partition additivity");

      if (c < detail::scaled(opt, 200)) {
        // The truncation oracle is meaningful only when the exceptional
        // supports fit inside the truncation window.
        const PosMeasure win_mu = random_nat_pos_measure(rng, dim, opt.bound, true, 10);
        const PosMeasure win_nu = random_nat_pos_measure(rng, dim, opt.bound, true, 10);
        std::string wt;
        bool trunc_ok =
            detail::nat_truncation_oracle_ok(win_mu, win_nu, NatSet::all(), 12, wt);
        std::set<uint64_t> small_delta;
        for (int i = 0; i < 3; ++i) small_delta.insert(rng.below(12));
        trunc_ok = trunc_ok &&
                   detail::nat_truncation_oracle_ok(win_mu, win_nu,
                                                    NatSet::fin(small_delta), 12, wt) &&
                   detail::nat_truncation_oracle_ok(win_mu, win_nu,
                                                    NatSet::cofin(small_delta), 12, wt);
        truncation.tally(trunc_ok, wt.empty() ? "truncation agrees" : wt);
      }
    }

    if (c < detail::scaled(opt, 200)) {
      // Eventually-constant increasing sequences: scaled copies stabilizing.
      std::vector<PosMeasure> seq;
      const size_t stable = 1 + rng.below(3);
      for (size_t k = 0; k <= stable + 1; ++k)
        seq.push_back(scale(Rational(static_cast<long>(std::min(k + 1, stable + 1))), mu));
      bool seq_ok = true;
      try {
        const PosMeasure sup = sup_increasing_sequence(seq, stable);
        seq_ok = sup == seq.back();
        const PosMeasure family = sup_family({mu, nu, join(mu, nu)});
        seq_ok = seq_ok && family == join(mu, nu);
      } catch (const error&) {
        seq_ok = false;
      }
      sequences.tally(seq_ok, "eventually constant");
    }
  }
  report.laws = {modular, oracle,     oracle_inf, truncation, lattice_laws,
                 norm_chain, domination, additivity, al,        sequences};
  return report;
}

// ---- integral suite --------------------------------------------------------

inline SuiteReport integral_suite(const LawOptions& opt) {
  SuiteReport report{"integral", {}};
  LawResult linearity{"linearity"};
  LawResult additivity{"measure_additivity"};
  LawResult homogeneity{"measure_homogeneity"};
  LawResult bound{"norm_order_bound"};
  LawResult monotonicity{"monotonicity"};
  LawResult triangle{"triangle_inequality"};
  LawResult decomposition{"decomposition_independence"};
  LawResult convergence{"monotone_convergence"};

  auto finest_refinement = [](const SimpleFunction& f, const PosMeasure& m) {
    // Second decomposition route: one indicator per atom.
    ExtElement acc{LatticeElement::zero(m.dim())};
    if (m.space().is_finite()) {
      const auto& space = m.space().finite();
      for (size_t i = 0; i < space.size(); ++i)
        acc = ext_add(acc, ext_scale(f.at(i), m.eval(space.singleton(i))));
      return acc;
    }
    std::set<uint64_t> support;
    for (const auto& [n, v] : f.exceptional()) support.insert(n);
    for (const auto& [n, v] : m.exceptional()) support.insert(n);
    for (uint64_t n : support)
      acc = ext_add(acc, ext_scale(f.at_nat(n), m.eval(NatSet::fin({n}))));
    return ext_add(acc, ext_scale(f.tail(), m.eval(NatSet::cofin(support))));
  };

  auto check_triangle = [&](const SimpleFunction& f, const SignedMeasure& m) {
    const TriangleReport r = triangle_check(f, m);
    triangle.tally(r.holds, to_string(r.lhs) + " <= " + to_string(r.rhs));
  };
  auto check_bound = [&](const SimpleFunction& f, const SignedMeasure& m) {
    const LatticeElement value = integrate(f, m);
    const bool ok = leq(abs(value), f.sup_norm() * abs_measure(m).total().finite());
    bound.tally(ok, to_string(value));
  };
  auto check_decomposition = [&](const SimpleFunction& f, const PosMeasure& pos,
                                 const PosMeasure& shift) {
    if (!f.is_nonneg()) return;
    bool ok = integrate_pos(f, pos) == finest_refinement(f, pos);
    if (pos.is_finite() && shift.is_finite()) {
      // mu = nu1 - nu2 with nu_i = parts + shift gives the same integral.
      const SignedMeasure m = sub(pos, shift);
      const LatticeElement route1 = integrate(f, m);
      const LatticeElement route2 =
          integrate(f, add(pos_part(m), shift)) - integrate(f, add(neg_part(m), shift));
      ok = ok && route1 == route2;
    }
    decomposition.tally(ok, "decompositions agree");
  };

  if (opt.file) {
    const auto& file = *opt.file;
    for (const auto& [fname, f] : file.functions) {
      for (const auto& [mname, m] : file.pos_measures) {
        if (f.is_nonneg()) {
          check_decomposition(f, m, PosMeasure::zero(m.space(), m.dim()));
          for (const auto& [gname, g] : file.functions) {
            if (!g.is_nonneg() || !m.is_finite()) continue;
            const LatticeElement lhs = integrate(f + g, m);
            linearity.tally(lhs == integrate(f, m) + integrate(g, m), to_string(lhs));
            monotonicity.tally(ext_leq(integrate_pos(f, m), integrate_pos(f + g, m)),
                               "monotone");
          }
        }
        if (m.is_finite()) {
          for (const auto& [nname, n] : file.pos_measures) {
            if (!n.is_finite()) continue;
            const SimpleFunction fa = abs(f);
            additivity.tally(integrate_pos(fa, add(m, n)) ==
                                 ext_add(integrate_pos(fa, m), integrate_pos(fa, n)),
                             "additive in the measure");
          }
        }
      }
      for (const auto& [mname, m] : file.signed_measures) {
        check_triangle(f, m);
        check_bound(f, m);
      }
    }
    report.laws = {linearity, additivity, bound, monotonicity, triangle, decomposition};
    return report;
  }

  Rng root(opt.seed);
  const uint64_t cases = detail::scaled(opt, 1000);
  for (uint64_t c = 0; c < cases; ++c) {
    Rng rng = root.fork(c);
    const size_t dim = 1 + rng.below(opt.max_dim);
    const bool on_nat = rng.below(4) == 0;
    const FiniteSpace space = random_space(rng, opt.max_atoms);

    if (on_nat) {
      const SimpleFunction f = random_nat_function(rng, opt.bound);
      const SignedMeasure m = random_nat_signed_measure(rng, dim, opt.bound);
      check_triangle(f, m);
      check_bound(f, m);
      const PosMeasure pos = random_nat_pos_measure(rng, dim, opt.bound);
      const SimpleFunction fabs = abs(f);
      check_decomposition(fabs, pos, abs_measure(m));
      const PosMeasure pos2 = random_nat_pos_measure(rng, dim, opt.bound);
      additivity.tally(integrate_pos(fabs, add(pos, pos2)) ==
                           ext_add(integrate_pos(fabs, pos), integrate_pos(fabs, pos2)),
                       "additive in the measure");
      continue;
    }

    const SimpleFunction f = random_function(rng, space, opt.bound);
    const SignedMeasure m = random_signed_measure(rng, space, dim, opt.bound);
    check_triangle(f, m);
    check_bound(f, m);

    if (c < detail::scaled(opt, 500)) {
      const SimpleFunction g = random_function(rng, space, opt.bound);
      const PosMeasure pos = random_pos_measure(rng, space, dim, opt.bound);
      const Rational a = rng.nonneg_rational(20, 10);
      const Rational b = rng.nonneg_rational(20, 10);
      const LatticeElement lhs = integrate(a * f + b * g, pos);
      linearity.tally(lhs == a * integrate(f, pos) + b * integrate(g, pos),
                      to_string(lhs));

      const PosMeasure ext_pos = random_ext_pos_measure(rng, space, dim, opt.bound);
      const SimpleFunction fa = abs(f);
      const SimpleFunction ga = fa + abs(g);
      additivity.tally(
          integrate_pos(fa, add(pos, ext_pos)) ==
              ext_add(integrate_pos(fa, pos), integrate_pos(fa, ext_pos)),
          "additive in the measure");
      homogeneity.tally(integrate_pos(fa, scale(a, ext_pos)) ==
                            ext_scale(a, integrate_pos(fa, ext_pos)),
                        "homogeneous in the measure");
      monotonicity.tally(ext_leq(integrate_pos(fa, ext_pos), integrate_pos(ga, ext_pos)),
                         "monotone");
      check_decomposition(fa, pos, random_pos_measure(rng, space, dim, opt.bound));

      // phi_k = min(k+1, m)/m * fa, stabilizing at index m-1.
      const size_t stable = 1 + rng.below(3);
      std::vector<SimpleFunction> seq;
      for (size_t k = 0; k <= stable + 1; ++k)
        seq.push_back(make_rational(static_cast<long>(std::min(k + 1, stable + 1)),
                                    static_cast<long>(stable + 1)) *
                      fa);
      const auto mc = monotone_convergence_check(seq, stable, ext_pos);
      convergence.tally(mc.ok(), to_string(mc.limit_integral));
    }
  }
  report.laws = {linearity, additivity, homogeneity, bound,
                 monotonicity, triangle, decomposition, convergence};
  return report;
}

// ---- operators suite -------------------------------------------------------

inline SuiteReport operators_suite(const LawOptions& opt) {
  SuiteReport report{"operators", {}};
  LawResult oracle{"modulus_oracle"};
  LawResult tbound{"unit_ball_bound"};
  LawResult ideal{"dominated_bound"};
  LawResult nob{"finite_dim_nob"};
  LawResult rk{"riesz_kantorovich"};

  auto check_oracle = [&](const RegularOperator& t, const SimpleFunction& x) {
    const LatticeElement fast = apply(modulus(t), x);
    oracle.tally(fast == modulus_oracle(t, x), to_string(fast));
  };
  auto check_tbound = [&](const RegularOperator& t, const SimpleFunction& f) {
    const auto rep = norm_report(t, LatticeNorm::sup());
    const bool ok = leq(abs(apply(t, f)), f.sup_norm() * *rep.unit_ball_bound);
    tbound.tally(ok, to_string(*rep.unit_ball_bound));
  };
  auto check_ideal = [&](const RegularOperator& t, const RegularOperator& s,
                         const SimpleFunction& f) {
    if (!columns_leq(modulus(s), modulus(t))) return;
    const auto rep = norm_report(t, LatticeNorm::sup());
    const bool ok = leq(abs(apply(s, f)),
                        make_rational(2) * f.sup_norm() * *rep.unit_ball_bound);
    ideal.tally(ok, "dominated bound");
  };
  auto check_nob = [&](const RegularOperator& t) {
    bool ok = true;
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
      const auto rep = norm_report(t, n);
      LatticeElement expected = LatticeElement::zero(t.dim());
      for (const auto& c : t.columns()) expected = expected + abs(c);
      ok = ok && rep.norm_to_order_bounded && *rep.unit_ball_bound == expected &&
           *rep.regular_norm == norm(n, expected);
    }
    nob.tally(ok, "norm to order bounded");
  };
  auto check_rk = [&](const RegularOperator& t, const RegularOperator& s) {
    const auto& space = t.space().finite();
    const RegularOperator joined = join(t, s);
    bool ok = true;
    std::string w;
    for (const auto& delta : subsets_of(space, space.full_set())) {
      const LatticeElement v = riesz_kantorovich_sup(t, s, delta);
      const auto chi = SimpleFunction::indicator(t.space(), MeasSet(delta));
      if (!(v == apply(joined, chi))) {
        ok = false;
        w = "join disagrees at " + to_string(space, delta);
        break;
      }
      w = to_string(v);
    }
    // Additivity over disjoint sets.
    const auto all = space.full_set();
    for (uint32_t m = 0; m < (1u << space.size()); ++m) {
      const FiniteSet a(m, space.size());
      const FiniteSet b = minus(all, a);
      if (!(riesz_kantorovich_sup(t, s, all) ==
            riesz_kantorovich_sup(t, s, a) + riesz_kantorovich_sup(t, s, b))) {
        ok = false;
        w = "not additive over a disjoint split";
        break;
      }
    }
    rk.tally(ok, w);
  };

  if (opt.file) {
    const auto& file = *opt.file;
    if (file.space.is_finite()) {
      for (const auto& [tname, t] : file.operators) {
        check_nob(t);
        for (const auto& [fname, f] : file.functions) {
          check_oracle(t, abs(f));
          check_tbound(t, f);
        }
        for (const auto& [sname, s] : file.operators) {
          if (tname == sname) continue;
          check_rk(t, s);
          for (const auto& [fname, f] : file.functions) check_ideal(t, s, f);
        }
      }
    }
    report.laws = {oracle, tbound, ideal, nob, rk};
    return report;
  }

  Rng root(opt.seed);
  const uint64_t cases = detail::scaled(opt, 500);
  for (uint64_t c = 0; c < cases; ++c) {
    Rng rng = root.fork(c);
    const size_t dim = 1 + rng.below(opt.max_dim);
    const FiniteSpace space = random_space(rng, opt.max_atoms);
    const RegularOperator t = random_operator(rng, space, dim, opt.bound);

    for (int k = 0; k < 5; ++k) {
      const SimpleFunction x = random_nonneg_function(rng, space, opt.bound);
      check_oracle(t, x);
      const SimpleFunction f = random_function(rng, space, opt.bound);
      check_tbound(t, f);
    }
    check_nob(t);

    // A dominated operator: every column shrunk inside the modulus box.
    std::vector<LatticeElement> cols;
    for (size_t i = 0; i < space.size(); ++i) {
      LatticeElement col(dim);
      for (size_t d = 0; d < dim; ++d) {
        const long den = rng.int_in(1, 10);
        col[d] = t.column(i)[d] * make_rational(rng.int_in(-den, den), den);
      }
      cols.push_back(std::move(col));
    }
    const RegularOperator s = RegularOperator::on_finite(space, std::move(cols));
    check_ideal(t, s, random_function(rng, space, opt.bound));

    if (c < detail::scaled(opt, 200))
      check_rk(t, random_operator(rng, space, dim, opt.bound));
  }
  report.laws = {oracle, tbound, ideal, nob, rk};
  return report;
}

// ---- repr suite ------------------------------------------------------------

inline SuiteReport repr_suite(const LawOptions& opt) {
  SuiteReport report{"repr", {}};
  LawResult iso{"isomorphism"};
  LawResult recovery{"recovery_formulas"};
  LawResult dichotomy{"nob_dichotomy"};
  LawResult psi{"psi_band_embedding"};
  LawResult transfer_sup{"regularity_transfer_sup"};
  LawResult transfer_inf{"regularity_transfer_inf"};

  auto check_iso = [&](const RegularOperator& t, const RegularOperator& s) {
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
      const ReprCheckReport r = isomorphism_check(t, s, n);
      iso.tally(r.all_ok(), r.witness);
    }
  };
  auto check_recovery = [&](const RegularOperator& t) {
    const auto& space = t.space().finite();
    bool ok = true;
    std::string w = "recovery attained";
    for (const auto& v : subsets_of(space, space.full_set())) {
      const RecoveryReport r = recover_on_open(t, v);
      if (!r.ok()) {
        ok = false;
        w = "recovery failed at " + to_string(space, v);
        break;
      }
    }
    recovery.tally(ok, w);
  };
  auto check_psi = [&](const FiniteSpace& space, size_t atom, const LatticeElement& e,
                       const std::vector<PosMeasure>& probes) {
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
      const PsiEmbeddingReport r = psi_embedding_check(space, atom, e, probes, n);
      psi.tally(r.ok(), r.witness);
    }
  };

  if (opt.file) {
    const auto& file = *opt.file;
    if (file.space.is_finite()) {
      for (const auto& [tname, t] : file.operators) {
        for (const auto& [sname, s] : file.operators)
          if (tname < sname) check_iso(t, s);
        if (t.is_positive() && file.space.finite().size() <= 8) check_recovery(t);
      }
      std::vector<PosMeasure> probes;
      for (const auto& [name, m] : file.pos_measures)
        if (m.is_finite()) probes.push_back(m);
      for (const auto& probe : probes)
        for (size_t atom = 0; atom < file.space.finite().size(); ++atom)
          check_psi(file.space.finite(), atom, probe.total().finite(), probes);
    } else {
      for (const auto& [tname, t] : file.operators)
        if (t.is_positive()) {
          const auto r = nob_dichotomy_check(t);
          dichotomy.tally(r.consistent,
                          r.norm_to_order_bounded ? "finite and norm to order bounded"
                                                  : "infinite and unbounded");
        }
    }
    report.laws = {iso, recovery, dichotomy, psi};
    return report;
  }

  Rng root(opt.seed);
  const uint64_t cases = detail::scaled(opt, 500);
  for (uint64_t c = 0; c < cases; ++c) {
    Rng rng = root.fork(c);
    const size_t dim = 1 + rng.below(opt.max_dim);
    const FiniteSpace space = random_space(rng, opt.max_atoms);
    check_iso(random_operator(rng, space, dim, opt.bound),
              random_operator(rng, space, dim, opt.bound));

    if (c < detail::scaled(opt, 200)) {
      const FiniteSpace small = random_space(rng, 3);
      check_recovery(random_positive_operator(rng, small, dim, opt.bound));

      const auto r = nob_dichotomy_check(random_nat_positive_operator(rng, dim, opt.bound));
      dichotomy.tally(r.consistent,
                      r.norm_to_order_bounded ? "finite and norm to order bounded"
                                              : "infinite and unbounded");
    }

    if (c < detail::scaled(opt, 250)) {
      std::vector<PosMeasure> probes{random_pos_measure(rng, space, dim, opt.bound),
                                     random_pos_measure(rng, space, dim, opt.bound)};
      check_psi(space, rng.below(space.size()), random_element(rng, dim, opt.bound),
                probes);
    }
  }

  const uint64_t transfer_cases = detail::scaled(opt, 1000);
  for (uint64_t c = 0; c < transfer_cases; ++c) {
    Rng rng = root.fork(1u << 20 | c);
    const size_t dim = 1 + rng.below(opt.max_dim);
    const size_t family = 1 + rng.below(6);
    const auto sup_inst = random_transfer_instance(rng, dim, family, ExtremumMode::Sup);
    const auto sup_rep = regularity_transfer_check(sup_inst, ExtremumMode::Sup);
    transfer_sup.tally(sup_rep.hypotheses_ok && sup_rep.conclusion_ok, sup_rep.witness);
    const auto inf_inst = random_transfer_instance(rng, dim, family, ExtremumMode::Inf);
    const auto inf_rep = regularity_transfer_check(inf_inst, ExtremumMode::Inf);
    transfer_inf.tally(inf_rep.hypotheses_ok && inf_rep.conclusion_ok, inf_rep.witness);
  }
  report.laws = {iso, recovery, dichotomy, psi, transfer_sup, transfer_inf};
  return report;
}

// ---- assembly --------------------------------------------------------------

inline std::vector<std::string> suite_names() {
  return {"lattice", "measures", "integral", "operators", "repr"};
}

inline std::vector<SuiteReport> run_suites(const std::string& name,
                                           const LawOptions& opt) {
  std::vector<SuiteReport> out;
  auto run_one = [&](const std::string& n) {
    if (n == "lattice") return lattice_suite(opt);
    if (n == "measures") return measures_suite(opt);
    if (n == "integral") return integral_suite(opt);
    if (n == "operators") return operators_suite(opt);
    if (n == "repr") return repr_suite(opt);
    throw error("unknown suite: " + n + " (expected lattice, measures, integral, "
                "operators, repr, or all)");
  };
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_one(n));
  } else {
    out.push_back(run_one(name));
  }
  return out;
}

inline bool all_ok(const std::vector<SuiteReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const SuiteReport& r) { return r.ok(); });
}

inline Json to_json(const std::vector<SuiteReport>& reports, uint64_t seed) {
  Json suites = Json::array();
  for (const auto& s : reports) {
    Json laws = Json::array();
    for (const auto& l : s.laws)
      laws.push_back(Json{{"name", l.name},
                          {"cases", l.cases},
                          {"violations", l.violations},
                          {"witness", l.witness}});
    suites.push_back(Json{{"suite", s.suite},
                          {"cases", s.total_cases()},
                          {"ok", s.ok()},
                          {"laws", std::move(laws)}});
  }
  return Json{{"seed", seed}, {"ok", all_ok(reports)}, {"suites", std::move(suites)}};
}

inline std::string report_text(const std::vector<SuiteReport>& reports) {
  std::string out;
  for (const auto& s : reports) {
    for (const auto& l : s.laws) {
      out += s.suite + "/" + l.name + ": " + std::to_string(l.cases) + " cases, " +
             std::to_string(l.violations) + " violations";
      if (!l.witness.empty()) out += "  [" + l.witness + "]";
      out += "\n";
    }
    out += s.suite + ": " + (s.ok() ? "ok" : "VIOLATIONS") + "\n";
  }
  return out;
}

/// The running example bundle: the measures, functions, and operators the
/// documentation and golden tests are written against.
inline InstanceFile builtin_instance() {
  auto el = [](long a, long b) {
    return LatticeElement({make_rational(a), make_rational(b)});
  };
  InstanceFile f;
  f.dim = 2;
  f.norm = LatticeNorm::sup();
  FiniteSpace space({"a1", "a2", "a3"});
  f.space = Space(space);
  f.pos_measures.insert(
      {"mu", PosMeasure::on_finite(
                 space, {ExtElement(el(1, 0)), ExtElement(el(0, 2)), ExtElement(el(1, 1))})});
  f.pos_measures.insert(
      {"nu", PosMeasure::on_finite(
                 space, {ExtElement(el(0, 1)), ExtElement(el(1, 1)), ExtElement(el(2, 0))})});
  f.signed_measures.insert(
      {"sigma", SignedMeasure::on_finite(space, {el(1, -1), el(-2, 3), el(0, 0)})});
  f.functions.insert({"f", SimpleFunction::on_finite(
                               space, {make_rational(2), make_rational(-1), make_rational(3)})});
  f.functions.insert({"g", SimpleFunction::on_finite(
                               space, {make_rational(2), make_rational(1), make_rational(3)})});
  f.operators.insert(
      {"T", RegularOperator::on_finite(space, {el(1, 3), el(-2, 0), el(0, -1)})});
  f.operators.insert(
      {"S", RegularOperator::on_finite(space, {el(1, 0), el(0, 1), el(2, 1)})});
  return f;
}

/// The N-side running example: the two tail measures of the infimum
/// counterexample plus a norm-to-order-unbounded positive operator.
inline InstanceFile builtin_nat_instance() {
  auto el = [](long a, long b) {
    return LatticeElement({make_rational(a), make_rational(b)});
  };
  InstanceFile f;
  f.dim = 2;
  f.norm = LatticeNorm::sup();
  f.space = Space::nat();
  f.pos_measures.insert({"mu_counter", PosMeasure::on_nat(2, {}, el(1, 0))});
  f.pos_measures.insert({"nu_counter", PosMeasure::on_nat(2, {}, el(0, 1))});
  f.pos_measures.insert(
      {"rho", PosMeasure::on_nat(2, {{3, el(2, 1)}, {5, el(0, 4)}}, el(0, 0))});
  f.signed_measures.insert(
      {"sigma", SignedMeasure::on_nat(2, {{1, el(1, -1)}, {4, el(-2, 3)}})});
  f.functions.insert({"one", SimpleFunction::on_nat({}, make_rational(1))});
  f.functions.insert(
      {"bump", SimpleFunction::on_nat({{5, make_rational(2)}}, make_rational(0))});
  f.operators.insert({"T", RegularOperator::on_nat(2, {{5, el(3, 0)}}, el(1, 0))});
  f.operators.insert({"P", RegularOperator::on_nat(2, {{2, el(1, 2)}}, el(0, 0))});
  return f;
}

}  // namespace ordmeas
