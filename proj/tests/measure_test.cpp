#include <catch2/catch_amalgamated.hpp>

#include "ordmeas/measure.hpp"
#include "ordmeas/random.hpp"

using namespace ordmeas;

namespace {

LatticeElement el(long a, long b) {
  return LatticeElement({make_rational(a), make_rational(b)});
}

// The running example measures on three atoms.
const FiniteSpace kSpace({"a1", "a2", "a3"});

PosMeasure running_mu() {
  return PosMeasure::on_finite(
      kSpace, {ExtElement(el(1, 0)), ExtElement(el(0, 2)), ExtElement(el(1, 1))});
}
PosMeasure running_nu() {
  return PosMeasure::on_finite(
      kSpace, {ExtElement(el(0, 1)), ExtElement(el(1, 1)), ExtElement(el(2, 0))});
}

// The counterexample pair mu(Delta) = |Delta| * (1,0), nu(Delta) = |Delta| * (0,1).
PosMeasure counter_mu() { return PosMeasure::on_nat(2, {}, el(1, 0)); }
PosMeasure counter_nu() { return PosMeasure::on_nat(2, {}, el(0, 1)); }

}  // namespace

TEST_CASE("evaluation on finite spaces") {
  const PosMeasure mu = running_mu();
  CHECK(mu.eval(kSpace.full_set()) == ExtElement(el(2, 3)));
  CHECK(mu.eval(kSpace.empty_set()) == ExtElement(el(0, 0)));
  CHECK(mu.eval(kSpace.set_of({"a1", "a3"})) == ExtElement(el(2, 1)));
  CHECK_THROWS_AS(mu.eval(FiniteSet::empty(2)), error);
}

TEST_CASE("evaluation on N with the tail rule") {
  const PosMeasure mu = counter_mu();
  CHECK(mu.eval(NatSet::fin({1, 2})) == ExtElement(el(2, 0)));
  CHECK(mu.eval(NatSet::all()).is_infinite());
  CHECK_FALSE(mu.is_finite());

  const PosMeasure finite = PosMeasure::on_nat(2, {{3, el(2, 1)}}, el(0, 0));
  CHECK(finite.eval(NatSet::cofin({})) == ExtElement(el(2, 1)));
  CHECK(finite.eval(NatSet::cofin({3})) == ExtElement(el(0, 0)));
  CHECK(finite.is_finite());
}

TEST_CASE("addition and scaling act atomwise") {
  const PosMeasure mu = running_mu(), nu = running_nu();
  CHECK(add(mu, nu).eval(kSpace.full_set()) == ExtElement(el(5, 5)));
  CHECK(scale(Rational(0), mu) == PosMeasure::zero(Space(kSpace), 2));
  CHECK_THROWS_AS(scale(Rational(-1), mu), error);

  const PosMeasure both = add(counter_mu(), counter_nu());
  CHECK(both.tail() == el(1, 1));
  CHECK(both.eval(NatSet::all()).is_infinite());
  // Scaling an infinite measure by zero gives the zero measure.
  CHECK(scale(Rational(0), both) == PosMeasure::zero(Space::nat(), 2));
}

TEST_CASE("join and meet of the running example") {
  const PosMeasure mu = running_mu(), nu = running_nu();
  const PosMeasure joined = join(mu, nu);
  CHECK(joined.atom(0) == ExtElement(el(1, 1)));
  CHECK(joined.atom(1) == ExtElement(el(1, 2)));
  CHECK(joined.atom(2) == ExtElement(el(2, 1)));
  CHECK(joined.eval(kSpace.full_set()) == ExtElement(el(4, 4)));

  const PosMeasure met = meet(mu, nu);
  CHECK(met.atom(0) == ExtElement(el(0, 0)));
  CHECK(met.atom(1) == ExtElement(el(0, 1)));
  CHECK(met.atom(2) == ExtElement(el(1, 0)));
  CHECK(met.eval(kSpace.full_set()) == ExtElement(el(1, 1)));

  CHECK(join(mu, mu) == mu);
  CHECK(meet(mu, PosMeasure::zero(Space(kSpace), 2)) ==
        PosMeasure::zero(Space(kSpace), 2));

  // Modular identity at the whole space: (4,4) + (1,1) = (5,5).
  CHECK(add(joined, met) == add(mu, nu));
}

TEST_CASE("meet rejects infinite measures") {
  const PosMeasure mu = counter_mu(), nu = counter_nu();
  CHECK(join(mu, nu).tail() == el(1, 1));
  CHECK(join(mu, nu).eval(NatSet::all()).is_infinite());
  CHECK_THROWS_AS(meet(mu, nu), error);
  CHECK_THROWS_AS(
      meet(PosMeasure::on_finite(kSpace, {ExtElement::infinity(2), ExtElement(el(0, 0)),
                                          ExtElement(el(0, 0))}),
           running_nu()),
      error);
}

TEST_CASE("partition formula on the running example") {
  const PosMeasure mu = running_mu(), nu = running_nu();
  // Explicit eight-subset enumeration; Gamma = {a1} contributes (1,0) + (3,1).
  CHECK(partition_formula(mu, nu, kSpace.full_set(), ExtremumMode::Sup) ==
        ExtElement(el(4, 4)));
  CHECK(partition_formula(mu, nu, kSpace.full_set(), ExtremumMode::Inf) ==
        ExtElement(el(1, 1)));

  // The formula agrees with the fast paths on every measurable set.
  const PosMeasure joined = join(mu, nu), met = meet(mu, nu);
  for (const auto& delta : subsets_of(kSpace, kSpace.full_set())) {
    CHECK(partition_formula(mu, nu, delta, ExtremumMode::Sup) == joined.eval(delta));
    CHECK(partition_formula(mu, nu, delta, ExtremumMode::Inf) == met.eval(delta));
  }
}

TEST_CASE("the infimum formula fails for the infinite pair") {
  CHECK(partition_formula(counter_mu(), counter_nu(), NatSet::all(), ExtremumMode::Inf)
            .is_infinite());
}

TEST_CASE("suprema of families and sequences") {
  const PosMeasure mu = running_mu(), nu = running_nu();
  CHECK(sup_family({mu}) == mu);
  CHECK(sup_family({mu, nu, join(mu, nu)}) == join(mu, nu));
  CHECK_THROWS_AS(sup_family({}), error);

  const PosMeasure d1 = PosMeasure::on_finite(
      kSpace, {ExtElement(el(1, 0)), ExtElement(el(0, 0)), ExtElement(el(0, 0))});
  const PosMeasure d2 = PosMeasure::on_finite(
      kSpace, {ExtElement(el(0, 0)), ExtElement(el(0, 1)), ExtElement(el(0, 0))});
  const PosMeasure both = sup_family({d1, d2});
  CHECK(both.atom(0) == ExtElement(el(1, 0)));
  CHECK(both.atom(1) == ExtElement(el(0, 1)));

  CHECK(sup_increasing_sequence({mu, mu, mu}, 0) == mu);
  const std::vector<PosMeasure> growing{scale(Rational(1), mu), scale(Rational(2), mu),
                                        scale(Rational(3), mu), scale(Rational(3), mu)};
  CHECK(sup_increasing_sequence(growing, 2) == scale(Rational(3), mu));
  CHECK_THROWS_AS(sup_increasing_sequence({nu, mu}, 0), error);
  CHECK_THROWS_AS(sup_increasing_sequence(growing, 1), error);
}

TEST_CASE("signed measures and their parts") {
  const FiniteSpace point({"p"});
  const SignedMeasure hahn = SignedMeasure::on_finite(point, {el(1, -1)});
  CHECK(pos_part(hahn).atom(0) == ExtElement(el(1, 0)));
  CHECK(neg_part(hahn).atom(0) == ExtElement(el(0, 1)));
  CHECK(sub(pos_part(hahn), neg_part(hahn)) == hahn);

  const SignedMeasure m =
      SignedMeasure::on_finite(FiniteSpace({"a1", "a2"}), {el(1, -1), el(-2, 3)});
  CHECK(abs_measure(m).total() == ExtElement(el(3, 4)));
  CHECK(measure_norm(LatticeNorm::sup(), m) == 4);
  CHECK(measure_norm(LatticeNorm::one(), m) == 7);
  CHECK(measure_norm(LatticeNorm::sup(), SignedMeasure::zero(Space(kSpace), 2)) == 0);

  const PosMeasure positive = running_mu();
  CHECK(neg_part(as_signed(positive)) == PosMeasure::zero(Space(kSpace), 2));
}

TEST_CASE("AL additivity of the one-norm") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const PosMeasure mu = random_pos_measure(rng, sp, dim);
    const PosMeasure nu = random_pos_measure(rng, sp, dim);
    const LatticeNorm n = LatticeNorm::one();
    CHECK(measure_norm(n, mu) + measure_norm(n, nu) == measure_norm(n, add(mu, nu)));
  }
}

TEST_CASE("norm chain over all sets") {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const SignedMeasure m = random_signed_measure(rng, sp, dim);
    const PosMeasure amu = abs_measure(m);
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
      const Rational total = measure_norm(n, m);
      for (const auto& delta : subsets_of(sp, sp.full_set())) {
        const Rational at = norm(n, m.eval(delta));
        const Rational mid = norm(n, amu.eval(delta).finite());
        CHECK(at <= mid);
        CHECK(mid <= total);
      }
    }
  }
}

TEST_CASE("domination transfer keeps sigma-additivity") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const PosMeasure mu = random_pos_measure(rng, sp, dim);
    const PosMeasure smaller = meet(mu, random_pos_measure(rng, sp, dim));
    const SignedMeasure diff = sub(mu, smaller);
    REQUIRE(diff.is_positive());
    const PosMeasure recovered = as_positive(diff);
    const FiniteSet a(static_cast<uint32_t>(rng.below(1u << sp.size())), sp.size());
    CHECK(recovered.eval(sp.full_set()) ==
          ext_add(recovered.eval(a), recovered.eval(complement(a))));
  }
}

TEST_CASE("space mismatches are rejected") {
  const PosMeasure mu = running_mu();
  const PosMeasure other =
      PosMeasure::on_finite(FiniteSpace({"b1"}), {ExtElement(el(1, 1))});
  CHECK_THROWS_AS(add(mu, other), error);
  CHECK_THROWS_AS(join(mu, counter_mu()), error);
  CHECK_THROWS_AS(PosMeasure::on_finite(kSpace, {ExtElement(el(-1, 0)),
                                                 ExtElement(el(0, 0)),
                                                 ExtElement(el(0, 0))}),
                  error);
}

TEST_CASE("counterexample report") {
  const CounterexampleReport r = counterexample_report();
  CHECK(r.x == el(1, 0));
  CHECK(r.y == el(0, 1));
  CHECK(r.measure_inf == PosMeasure::zero(Space::nat(), 2));
  CHECK(r.formula_at_whole_space.is_infinite());
  CHECK(r.hahn_plus == el(1, 0));
  CHECK(r.hahn_minus == el(0, 1));
  CHECK_FALSE(r.hahn_partition_found);
  CHECK(r.twin_formula_total == ExtElement(r.twin_meet_total));
  CHECK(r.all_pass());

  // A one-dimensional signed measure does admit a Hahn partition.
  const SignedMeasure real_case = SignedMeasure::on_finite(
      FiniteSpace({"a1", "a2"}),
      {LatticeElement({make_rational(2)}), LatticeElement({make_rational(-3)})});
  CHECK(hahn_partition_exists(real_case));
}
