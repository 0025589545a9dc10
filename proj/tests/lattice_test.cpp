#include <catch2/catch_amalgamated.hpp>

#include "ordmeas/lattice.hpp"
#include "ordmeas/random.hpp"

using namespace ordmeas;

namespace {
LatticeElement el(long a, long b) {
  return LatticeElement({make_rational(a), make_rational(b)});
}
}  // namespace

TEST_CASE("extended addition absorbs infinity") {
  CHECK(ext_add(ExtElement(el(1, 2)), ExtElement(el(3, -1))) == ExtElement(el(4, 1)));
  CHECK(ext_add(ExtElement(el(1, 2)), ExtElement::infinity(2)).is_infinite());
  CHECK(ext_add(ExtElement::infinity(2), ExtElement::infinity(2)).is_infinite());
}

TEST_CASE("scalar action on the extended cone") {
  CHECK(ext_scale(Rational(0), ExtElement::infinity(2)) == ExtElement(el(0, 0)));
  CHECK(ext_scale(Rational(3), ExtElement(el(1, 0))) == ExtElement(el(3, 0)));
  CHECK(ext_scale(make_rational(1, 2), ExtElement::infinity(2)).is_infinite());
  CHECK_THROWS_AS(ext_scale(Rational(-1), ExtElement(el(1, 0))), error);
}

TEST_CASE("finite suprema and infima in the extended space") {
  CHECK(ext_sup({ExtElement(el(1, 0)), ExtElement(el(0, 2))}) == ExtElement(el(1, 2)));
  CHECK(ext_sup({ExtElement(el(1, 0)), ExtElement::infinity(2)}).is_infinite());
  CHECK(ext_sup({ExtElement(el(5, 5))}) == ExtElement(el(5, 5)));

  CHECK(ext_inf({ExtElement(el(1, 0)), ExtElement(el(0, 2))}) == ExtElement(el(0, 0)));
  CHECK(ext_inf({ExtElement::infinity(2)}).is_infinite());
  // Infinite members are discarded when a finite one is present.
  CHECK(ext_inf({ExtElement(el(3, 3)), ExtElement::infinity(2)}) == ExtElement(el(3, 3)));

  CHECK_THROWS_AS(ext_sup({}), error);
  CHECK_THROWS_AS(ext_inf({}), error);
}

TEST_CASE("norms") {
  CHECK(norm(LatticeNorm::sup(), el(3, -4)) == 4);
  CHECK(norm(LatticeNorm::one(), el(3, -4)) == 7);
  CHECK(norm(LatticeNorm::sup(), el(0, 0)) == 0);
  const auto weighted = LatticeNorm::weighted(LatticeNorm::Kind::One,
                                              {make_rational(2), make_rational(1, 2)});
  CHECK(norm(weighted, el(3, -4)) == 8);
  CHECK_THROWS_AS(LatticeNorm::weighted(LatticeNorm::Kind::Sup, {Rational(0)}), error);
}

TEST_CASE("positive and negative parts") {
  const LatticeElement x = el(1, -1);
  CHECK(pos_part(x) == el(1, 0));
  CHECK(neg_part(x) == el(0, 1));
  CHECK(pos_part(x) - neg_part(x) == x);
  CHECK(meet(pos_part(x), neg_part(x)) == el(0, 0));
  CHECK(abs(x) == pos_part(x) + neg_part(x));
}

TEST_CASE("element lattice identities on random pairs") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const size_t dim = 1 + rng.below(4);
    const LatticeElement x = random_element(rng, dim);
    const LatticeElement y = random_element(rng, dim);
    CHECK(join(x, y) + meet(x, y) == x + y);
    CHECK(pos_part(x) - neg_part(x) == x);
    CHECK(meet(pos_part(x), neg_part(x)) == LatticeElement::zero(dim));
    CHECK(abs(x) == pos_part(x) + neg_part(x));
    for (const auto& n : {LatticeNorm::sup(), LatticeNorm::one()}) {
      CHECK(norm(n, x) == norm(n, abs(x)));
      if (leq(abs(x), abs(y))) CHECK(norm(n, x) <= norm(n, y));
    }
  }
}

TEST_CASE("sup of pairwise sums and translation invariance") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const size_t dim = 1 + rng.below(3);
    std::vector<ExtElement> a, b;
    for (size_t k = 0; k <= rng.below(3); ++k) {
      a.push_back(rng.below(6) == 0 ? ExtElement::infinity(dim)
                                    : ExtElement(random_element(rng, dim, 30)));
      b.push_back(rng.below(6) == 0 ? ExtElement::infinity(dim)
                                    : ExtElement(random_element(rng, dim, 30)));
    }
    std::vector<ExtElement> sums;
    for (const auto& u : a)
      for (const auto& v : b) sums.push_back(ext_add(u, v));
    CHECK(ext_sup(sums) == ext_add(ext_sup(a), ext_sup(b)));
    CHECK(ext_inf(sums) == ext_add(ext_inf(a), ext_inf(b)));

    const ExtElement x{random_element(rng, dim, 30)};
    std::vector<ExtElement> shifted;
    for (const auto& v : a) shifted.push_back(ext_add(x, v));
    CHECK(ext_sup(shifted) == ext_add(x, ext_sup(a)));
    CHECK(ext_inf(shifted) == ext_add(x, ext_inf(a)));

    const Rational r = rng.nonneg_rational(10, 5);
    std::vector<ExtElement> scaled;
    for (const auto& v : a) scaled.push_back(ext_scale(r, v));
    CHECK(ext_sup(scaled) == ext_scale(r, ext_sup(a)));
    CHECK(ext_inf(scaled) == ext_scale(r, ext_inf(a)));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(el(1, 2) + LatticeElement({make_rational(1)}), error);
  CHECK_THROWS_AS(ext_add(ExtElement(el(1, 2)),
                          ExtElement(LatticeElement({make_rational(1)}))),
                  error);
}
