#include <catch2/catch_amalgamated.hpp>

#include "ordmeas/operator.hpp"
#include "ordmeas/random.hpp"

using namespace ordmeas;

namespace {

LatticeElement el(long a, long b) {
  return LatticeElement({make_rational(a), make_rational(b)});
}

const FiniteSpace kSpace({"a1", "a2", "a3"});

// Columns (1,3), (-2,0), (0,-1): the matrix [[1,-2,0],[3,0,-1]].
RegularOperator running_t() {
  return RegularOperator::on_finite(kSpace, {el(1, 3), el(-2, 0), el(0, -1)});
}

}  // namespace

TEST_CASE("application is the column combination") {
  const RegularOperator t = running_t();
  const auto chi1 = SimpleFunction::indicator(Space(kSpace), MeasSet(kSpace.singleton(0)));
  CHECK(apply(t, chi1) == el(1, 3));
  CHECK(apply(t, SimpleFunction::one(Space(kSpace))) == el(-1, 2));
}

TEST_CASE("operators on N restrict their domain by the tail column") {
  const RegularOperator t = RegularOperator::on_nat(2, {{3, el(2, 2)}}, el(1, 0));
  const SimpleFunction chi5 =
      SimpleFunction::indicator(Space::nat(), MeasSet(NatSet::fin({5})));
  CHECK(apply(t, chi5) == el(1, 0));  // the tail column at index 5
  const SimpleFunction chi3 =
      SimpleFunction::indicator(Space::nat(), MeasSet(NatSet::fin({3})));
  CHECK(apply(t, chi3) == el(2, 2));
  CHECK_THROWS_AS(apply(t, SimpleFunction::one(Space::nat())), error);

  const RegularOperator bounded = RegularOperator::on_nat(2, {{3, el(2, 2)}}, el(0, 0));
  CHECK(apply(bounded, SimpleFunction::one(Space::nat())) == el(2, 2));
}

TEST_CASE("modulus against the sign-vector oracle") {
  const RegularOperator t = running_t();
  const SimpleFunction one = SimpleFunction::one(Space(kSpace));
  // Max over eight sign vectors: coordinate 1 from 1+2, coordinate 2 from 3+1.
  CHECK(modulus_oracle(t, one) == el(3, 4));
  CHECK(apply(modulus(t), one) == el(3, 4));
  CHECK(modulus_oracle(t, SimpleFunction::zero(Space(kSpace))) == el(0, 0));

  const RegularOperator pos = RegularOperator::on_finite(kSpace, {el(1, 0), el(0, 1), el(2, 1)});
  CHECK(modulus(pos) == pos);
  CHECK(modulus(neg(t)) == modulus(t));
  CHECK_THROWS_AS(modulus_oracle(t, SimpleFunction::on_finite(
                                        kSpace, {make_rational(-1), make_rational(0),
                                                 make_rational(0)})),
                  error);
}

TEST_CASE("norm report") {
  const auto rep = norm_report(running_t(), LatticeNorm::sup());
  REQUIRE(rep.norm_to_order_bounded);
  CHECK(*rep.unit_ball_bound == el(3, 4));
  CHECK(*rep.regular_norm == 4);

  const auto zero = norm_report(RegularOperator::zero(Space(kSpace), 2), LatticeNorm::sup());
  CHECK(*zero.unit_ball_bound == el(0, 0));
  CHECK(*zero.regular_norm == 0);

  // All columns (1,0): the tail column is nonzero, so no bound exists.
  const auto unbounded =
      norm_report(RegularOperator::on_nat(2, {}, el(1, 0)), LatticeNorm::sup());
  CHECK_FALSE(unbounded.norm_to_order_bounded);
  CHECK_FALSE(unbounded.unit_ball_bound.has_value());

  const auto nat_bounded = norm_report(
      RegularOperator::on_nat(2, {{0, el(1, 0)}, {7, el(0, 2)}}, el(0, 0)),
      LatticeNorm::sup());
  REQUIRE(nat_bounded.norm_to_order_bounded);
  CHECK(*nat_bounded.unit_ball_bound == el(1, 2));
}

TEST_CASE("riesz-kantorovich enumeration") {
  const FiniteSpace two({"a1", "a2"});
  const RegularOperator t = RegularOperator::on_finite(two, {el(1, 0), el(0, 2)});
  const RegularOperator s = RegularOperator::on_finite(two, {el(0, 1), el(1, 1)});
  // Per-atom maxima (1,1) and (1,2).
  CHECK(riesz_kantorovich_sup(t, s, two.full_set()) == el(2, 3));
  CHECK(riesz_kantorovich_sup(t, t, two.full_set()) ==
        apply(t, SimpleFunction::one(Space(two))));
  const RegularOperator zero = RegularOperator::zero(Space(two), 2);
  CHECK(riesz_kantorovich_sup(t, zero, two.full_set()) ==
        apply(t, SimpleFunction::one(Space(two))));
}

TEST_CASE("modulus oracle on random operators") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const RegularOperator t = random_operator(rng, sp, dim);
    for (int k = 0; k < 5; ++k) {
      const SimpleFunction x = random_nonneg_function(rng, sp);
      CHECK(apply(modulus(t), x) == modulus_oracle(t, x));
    }
  }
}

TEST_CASE("unit-ball bound and the dominated-operator bound") {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const RegularOperator t = random_operator(rng, sp, dim);
    const auto rep = norm_report(t, LatticeNorm::sup());
    REQUIRE(rep.norm_to_order_bounded);  // finite spaces trivialize
    const SimpleFunction f = random_function(rng, sp);
    CHECK(leq(abs(apply(t, f)), f.sup_norm() * *rep.unit_ball_bound));

    // |S| <= |T| columnwise.
    std::vector<LatticeElement> cols;
    for (size_t a = 0; a < sp.size(); ++a) {
      LatticeElement col(dim);
      for (size_t d = 0; d < dim; ++d) {
        const long den = rng.int_in(1, 8);
        col[d] = t.column(a)[d] * make_rational(rng.int_in(-den, den), den);
      }
      cols.push_back(std::move(col));
    }
    const RegularOperator s = RegularOperator::on_finite(sp, std::move(cols));
    REQUIRE(columns_leq(modulus(s), modulus(t)));
    CHECK(leq(abs(apply(s, f)),
              make_rational(2) * f.sup_norm() * *rep.unit_ball_bound));
  }
}

TEST_CASE("riesz-kantorovich additivity and join consistency") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const size_t dim = 1 + rng.below(4);
    const FiniteSpace sp = random_space(rng, 5);
    const RegularOperator t = random_operator(rng, sp, dim);
    const RegularOperator s = random_operator(rng, sp, dim);
    const RegularOperator joined = join(t, s);
    for (const auto& delta : subsets_of(sp, sp.full_set())) {
      const auto chi = SimpleFunction::indicator(Space(sp), MeasSet(delta));
      CHECK(riesz_kantorovich_sup(t, s, delta) == apply(joined, chi));
    }
    const FiniteSet a(static_cast<uint32_t>(rng.below(1u << sp.size())), sp.size());
    const FiniteSet b = minus(sp.full_set(), a);
    CHECK(riesz_kantorovich_sup(t, s, sp.full_set()) ==
          riesz_kantorovich_sup(t, s, a) + riesz_kantorovich_sup(t, s, b));
  }
}
