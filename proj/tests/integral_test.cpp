#include <catch2/catch_amalgamated.hpp>

#include "ordmeas/integral.hpp"
#include "ordmeas/random.hpp"

using namespace ordmeas;

namespace {

LatticeElement el(long a, long b) {
  return LatticeElement({make_rational(a), make_rational(b)});
}

const FiniteSpace kSpace({"a1", "a2", "a3"});

PosMeasure running_mu() {
  return PosMeasure::on_finite(
      kSpace, {ExtElement(el(1, 0)), ExtElement(el(0, 2)), ExtElement(el(1, 1))});
}

SimpleFunction fn(long a, long b, long c) {
  return SimpleFunction::on_finite(kSpace,
                                   {make_rational(a), make_rational(b), make_rational(c)});
}

}  // namespace

TEST_CASE("positive integrals as level-set sums") {
  CHECK(integrate_pos(fn(2, 1, 3), running_mu()) == ExtElement(el(5, 5)));
  CHECK(integrate_pos(SimpleFunction::zero(Space(kSpace)), running_mu()) ==
        ExtElement(el(0, 0)));

  // Against the counterexample measure the constant-one function integrates
  // to infinity: its level set is cofinite with infinite measure.
  const PosMeasure counter = PosMeasure::on_nat(2, {}, el(1, 0));
  CHECK(integrate_pos(SimpleFunction::one(Space::nat()), counter).is_infinite());

  // Zero integrand against an infinite measure still gives zero.
  CHECK(integrate_pos(SimpleFunction::zero(Space::nat()), counter) ==
        ExtElement(el(0, 0)));

  CHECK_THROWS_AS(integrate_pos(fn(-1, 0, 0), running_mu()), error);
}

TEST_CASE("signed integrals") {
  CHECK(integrate(fn(2, -1, 3), running_mu()) == el(5, 1));
  CHECK(integrate(fn(2, -1, 3), SignedMeasure::zero(Space(kSpace), 2)) == el(0, 0));

  // chi_Delta integrates to mu(Delta).
  const SignedMeasure sigma =
      SignedMeasure::on_finite(kSpace, {el(1, -1), el(-2, 3), el(0, 0)});
  for (const auto& delta : subsets_of(kSpace, kSpace.full_set())) {
    const auto chi = SimpleFunction::indicator(Space(kSpace), MeasSet(delta));
    CHECK(integrate(chi, sigma) == sigma.eval(delta));
  }

  const PosMeasure counter = PosMeasure::on_nat(2, {}, el(1, 0));
  CHECK_THROWS_AS(integrate(SimpleFunction::one(Space::nat()), counter), error);
}

TEST_CASE("triangle inequality") {
  const SignedMeasure mu = as_signed(running_mu());
  const auto r = triangle_check(fn(2, -1, 3), mu);
  CHECK(r.lhs == el(5, 1));
  CHECK(r.rhs == el(5, 5));
  CHECK(r.holds);

  // No cancellation: equality for positive data.
  const auto req = triangle_check(fn(2, 1, 3), mu);
  CHECK(req.lhs == req.rhs);

  const FiniteSpace two({"a1", "a2"});
  const SignedMeasure m2 = SignedMeasure::on_finite(two, {el(1, 0), el(1, 0)});
  const SimpleFunction f2 =
      SimpleFunction::on_finite(two, {make_rational(1), make_rational(-1)});
  const auto r2 = triangle_check(f2, m2);
  CHECK(r2.lhs == el(0, 0));
  CHECK(r2.rhs == el(2, 0));
  CHECK(r2.holds);
}

TEST_CASE("monotone convergence on eventually constant sequences") {
  const PosMeasure mu = running_mu();
  const SimpleFunction f = fn(2, 1, 3);

  const auto constant = monotone_convergence_check({f, f, f}, 0, mu);
  CHECK(constant.ok());

  const SimpleFunction half = make_rational(1, 2) * f;
  const auto two_step = monotone_convergence_check({half, f, f}, 1, mu);
  CHECK(two_step.ok());
  CHECK(two_step.limit_integral == ExtElement(el(5, 5)));

  CHECK_THROWS_AS(monotone_convergence_check({f, half}, 1, mu), error);
  CHECK_THROWS_AS(monotone_convergence_check({half, f}, 0, mu), error);
}

TEST_CASE("decomposition independence") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const SimpleFunction f = random_nonneg_function(rng, sp);
    const PosMeasure mu = random_ext_pos_measure(rng, sp, dim);
    // Finest refinement: one indicator per atom.
    ExtElement refined{LatticeElement::zero(dim)};
    for (size_t a = 0; a < sp.size(); ++a)
      refined = ext_add(refined, ext_scale(f.at(a), mu.eval(sp.singleton(a))));
    CHECK(integrate_pos(f, mu) == refined);
  }
}

TEST_CASE("signed-measure decomposition independence") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const SimpleFunction f = random_function(rng, sp);
    const SignedMeasure m = random_signed_measure(rng, sp, dim);
    const PosMeasure shift = random_pos_measure(rng, sp, dim);
    const LatticeElement route1 = integrate(f, m);
    const LatticeElement route2 =
        integrate(f, add(pos_part(m), shift)) - integrate(f, add(neg_part(m), shift));
    CHECK(route1 == route2);
  }
}

TEST_CASE("integral laws on random data") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const SimpleFunction f = random_function(rng, sp);
    const SimpleFunction g = random_function(rng, sp);
    const PosMeasure mu = random_pos_measure(rng, sp, dim);
    const PosMeasure nu = random_pos_measure(rng, sp, dim);
    const Rational a = rng.nonneg_rational(10, 5);
    const Rational b = rng.nonneg_rational(10, 5);

    CHECK(integrate(a * f + b * g, mu) == a * integrate(f, mu) + b * integrate(g, mu));
    const SimpleFunction fa = abs(f);
    CHECK(integrate_pos(fa, add(mu, nu)) ==
          ext_add(integrate_pos(fa, mu), integrate_pos(fa, nu)));
    CHECK(integrate_pos(fa, scale(a, mu)) == ext_scale(a, integrate_pos(fa, mu)));
    CHECK(ext_leq(integrate_pos(fa, mu), integrate_pos(fa + abs(g), mu)));

    const SignedMeasure sm = random_signed_measure(rng, sp, dim);
    CHECK(leq(abs(integrate(f, sm)), f.sup_norm() * abs_measure(sm).total().finite()));
    CHECK(triangle_check(f, sm).holds);
  }
}
