// Acceptance suite: runs every criterion with exact rational equality and
// prints one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ordmeas/fuzz.hpp"
#include "ordmeas/laws.hpp"

using namespace ordmeas;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  using namespace std::chrono;
  std::string detail;
  bool ok = false;
  const auto start = steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  const double elapsed =
      duration_cast<milliseconds>(steady_clock::now() - start).count() / 1000.0;
  if (budget_seconds > 0 && elapsed >= budget_seconds) {
    ok = false;
    detail = "over the " + std::to_string(budget_seconds) + "s budget";
  }
  if (!ok) ++failures;
  std::printf("criterion %2d: %s — %s (%.2fs)%s%s\n", number, ok ? "PASS" : "FAIL",
              what.c_str(), elapsed, detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
}

LatticeElement el(long a, long b) {
  return LatticeElement({make_rational(a), make_rational(b)});
}

constexpr uint64_t kSeed = 42;
constexpr long kBound = 100;  // numerators and denominators up to 100

struct Pair {
  PosMeasure mu, nu;
};

Pair instance_for(uint64_t index) {
  Rng rng = Rng(kSeed).fork(index);
  const size_t dim = 1 + rng.below(4);
  const FiniteSpace space = random_space(rng, 5);
  PosMeasure mu = random_pos_measure(rng, space, dim, kBound);
  PosMeasure nu = random_pos_measure(rng, space, dim, kBound);
  return {std::move(mu), std::move(nu)};
}

}  // namespace

int main() {
  criterion(1, "modular identity on 1000 random finite instances", 10, [](std::string& d) {
    for (uint64_t i = 0; i < 1000; ++i) {
      const Pair p = instance_for(i);
      if (!(add(join(p.mu, p.nu), meet(p.mu, p.nu)) == add(p.mu, p.nu))) {
        d = "instance " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  criterion(2, "join/meet equal the partition formula on every set", 30, [](std::string& d) {
    for (uint64_t i = 0; i < 1000; ++i) {
      const Pair p = instance_for(i);
      const PosMeasure joined = join(p.mu, p.nu);
      const PosMeasure met = meet(p.mu, p.nu);
      const auto& space = p.mu.space().finite();
      for (const auto& delta : subsets_of(space, space.full_set())) {
        if (!(joined.eval(delta) == partition_formula(p.mu, p.nu, delta, ExtremumMode::Sup)) ||
            !(met.eval(delta) == partition_formula(p.mu, p.nu, delta, ExtremumMode::Inf))) {
          d = "instance " + std::to_string(i) + " at " + to_string(space, delta);
          return false;
        }
      }
    }
    return true;
  });

  criterion(3, "counterexample reproduction is byte-stable", 1, [](std::string& d) {
    const std::string expected =
        "infimum counterexample on N (x = (1,0), y = (0,1))\n"
        "  mu(Delta) = |Delta|*x, nu(Delta) = |Delta|*y\n"
        "  measure infimum at N:    (0,0)  (the zero measure)\n"
        "  partition formula at N:  inf\n"
        "  PASS: the formula disagrees with the measure infimum, as expected\n"
        "hahn decomposition counterexample on a one-point space (mu({p}) = (1,-1))\n"
        "  mu_plus({p}):            (1,0)\n"
        "  mu_minus({p}):           (0,1)\n"
        "  hahn partition exists:   false\n"
        "  PASS: no measurable Hahn partition, as expected\n"
        "finite sanity twin on 2 atoms\n"
        "  measure meet at X:       (0,0)\n"
        "  partition formula at X:  (0,0)\n"
        "  PASS: formula and measure meet agree on the finite twin\n";
    const CounterexampleReport r = counterexample_report();
    if (!r.all_pass()) {
      d = "a reproduction failed";
      return false;
    }
    if (!(r.x == el(1, 0) && r.y == el(0, 1) && r.hahn_plus == el(1, 0) &&
          r.hahn_minus == el(0, 1))) {
      d = "values differ from the published ones";
      return false;
    }
    if (r.to_text() != expected || counterexample_report().to_text() != expected) {
      d = "report text is not byte-stable";
      return false;
    }
    return true;
  });

  criterion(4, "representation isomorphism on 500 instances, both norms", 20,
            [](std::string& d) {
    Rng root(kSeed + 4);
    for (uint64_t i = 0; i < 500; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const FiniteSpace space = random_space(rng, 5);
      const RegularOperator t = random_operator(rng, space, dim, kBound);
      const RegularOperator s = random_operator(rng, space, dim, kBound);
      for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
        const ReprCheckReport r = isomorphism_check(t, s, n);
        if (!r.all_ok()) {
          d = "instance " + std::to_string(i) + ": " + r.witness;
          return false;
        }
      }
    }
    return true;
  });

  criterion(5, "columnwise modulus equals the sign-vector oracle", 20, [](std::string& d) {
    Rng root(kSeed + 5);
    for (uint64_t i = 0; i < 500; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const FiniteSpace space = random_space(rng, 5);
      const RegularOperator t = random_operator(rng, space, dim, kBound);
      for (int k = 0; k < 5; ++k) {
        const SimpleFunction x = random_nonneg_function(rng, space, kBound);
        if (!(apply(modulus(t), x) == modulus_oracle(t, x))) {
          d = "instance " + std::to_string(i);
          return false;
        }
      }
    }
    return true;
  });

  criterion(6, "unit-ball bound and dominated-operator bound", 20, [](std::string& d) {
    Rng root(kSeed + 6);
    for (uint64_t i = 0; i < 500; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const FiniteSpace space = random_space(rng, 5);
      const RegularOperator t = random_operator(rng, space, dim, kBound);
      const auto rep = norm_report(t, LatticeNorm::sup());
      std::vector<LatticeElement> cols;
      for (size_t a = 0; a < space.size(); ++a) {
        LatticeElement col(dim);
        for (size_t c = 0; c < dim; ++c) {
          const long den = rng.int_in(1, 10);
          col[c] = t.column(a)[c] * make_rational(rng.int_in(-den, den), den);
        }
        cols.push_back(std::move(col));
      }
      const RegularOperator s = RegularOperator::on_finite(space, std::move(cols));
      for (int k = 0; k < 3; ++k) {
        const SimpleFunction f = random_function(rng, space, kBound);
        const bool ok =
            leq(abs(apply(t, f)), f.sup_norm() * *rep.unit_ball_bound) &&
            columns_leq(modulus(s), modulus(t)) &&
            leq(abs(apply(s, f)),
                make_rational(2) * f.sup_norm() * *rep.unit_ball_bound);
        if (!ok) {
          d = "instance " + std::to_string(i);
          return false;
        }
      }
    }
    return true;
  });

  criterion(7, "recovery formulas, exhaustive over subsets of <=3 atoms", 10,
            [](std::string& d) {
    Rng root(kSeed + 7);
    for (uint64_t i = 0; i < 200; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const FiniteSpace space = random_space(rng, 3);
      const RegularOperator t = random_positive_operator(rng, space, dim, kBound);
      for (const auto& v : subsets_of(space, space.full_set())) {
        const RecoveryReport r = recover_on_open(t, v);
        if (!r.ok()) {
          d = "instance " + std::to_string(i) + " at " + to_string(space, v);
          return false;
        }
      }
    }
    return true;
  });

  criterion(8, "finite-measure dichotomy for 200 positive operators on N", 10,
            [](std::string& d) {
    Rng root(kSeed + 8);
    for (uint64_t i = 0; i < 200; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const RegularOperator t = random_nat_positive_operator(rng, dim, kBound);
      if (!nob_dichotomy_check(t).consistent) {
        d = "instance " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  criterion(9, "regularity transfer on 1000 constructed instances per mode", 10,
            [](std::string& d) {
    Rng root(kSeed + 9);
    for (uint64_t i = 0; i < 1000; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const size_t family = 1 + rng.below(6);
      for (const auto mode : {ExtremumMode::Sup, ExtremumMode::Inf}) {
        const auto inst = random_transfer_instance(rng, dim, family, mode);
        const auto r = regularity_transfer_check(inst, mode);
        if (!(r.hypotheses_ok && r.conclusion_ok)) {
          d = "instance " + std::to_string(i);
          return false;
        }
      }
    }
    return true;
  });

  criterion(10, "AL additivity, psi isometry, band projection", 10, [](std::string& d) {
    Rng root(kSeed + 10);
    for (uint64_t i = 0; i < 500; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const FiniteSpace space = random_space(rng, 5);
      const PosMeasure mu = random_pos_measure(rng, space, dim, kBound);
      const PosMeasure nu = random_pos_measure(rng, space, dim, kBound);
      const LatticeNorm one = LatticeNorm::one();
      if (!(measure_norm(one, mu) + measure_norm(one, nu) ==
            measure_norm(one, add(mu, nu)))) {
        d = "AL additivity fails at instance " + std::to_string(i);
        return false;
      }
      const auto psi = psi_embedding_check(space, rng.below(space.size()),
                                           random_element(rng, dim, kBound), {mu, nu},
                                           rng.coin() ? LatticeNorm::sup() : one);
      if (!psi.ok()) {
        d = "psi embedding fails at instance " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  criterion(11, "triangle inequality for the order integral", 10, [](std::string& d) {
    Rng root(kSeed + 11);
    for (uint64_t i = 0; i < 1000; ++i) {
      Rng rng = root.fork(i);
      const size_t dim = 1 + rng.below(4);
      const FiniteSpace space = random_space(rng, 5);
      const SimpleFunction f = random_function(rng, space, kBound);
      const SignedMeasure m = random_signed_measure(rng, space, dim, kBound);
      if (!triangle_check(f, m).holds) {
        d = "instance " + std::to_string(i);
        return false;
      }
      const SimpleFunction nf = random_nat_function(rng, kBound);
      const SignedMeasure nm = random_nat_signed_measure(rng, dim, kBound);
      if (!triangle_check(nf, nm).holds) {
        d = "nat instance " + std::to_string(i);
        return false;
      }
    }
    return true;
  });

  criterion(12, "fuzz with seed 42 over 1000 cases is byte-identical", 0,
            [](std::string& d) {
    FuzzOptions opt;
    opt.seed = 42;
    opt.cases = 1000;
    const FuzzReport a = run_fuzz(opt);
    const FuzzReport b = run_fuzz(opt);
    if (!a.ok()) {
      d = "a law was violated: " + a.violation->law;
      return false;
    }
    if (a.to_text() != b.to_text() ||
        a.to_json_report().dump() != b.to_json_report().dump()) {
      d = "reports differ between runs";
      return false;
    }
    return true;
  });

  std::printf("%s (%d of 12 criteria failed)\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              failures);
  return failures == 0 ? 0 : 1;
}
