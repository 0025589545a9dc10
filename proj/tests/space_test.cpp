#include <catch2/catch_amalgamated.hpp>

#include "ordmeas/random.hpp"
#include "ordmeas/space.hpp"

using namespace ordmeas;

TEST_CASE("finite space construction rules") {
  CHECK_THROWS_AS(FiniteSpace({}), error);
  CHECK_THROWS_AS(FiniteSpace({"a", "a"}), error);
  CHECK_THROWS_AS(FiniteSpace(std::vector<std::string>(17, "x")), error);
  const FiniteSpace sp({"a1", "a2", "a3"});
  CHECK(sp.index_of("a2") == 1);
  CHECK_THROWS_AS(sp.index_of("zz"), error);
}

TEST_CASE("subset enumeration is complete and ordered") {
  const FiniteSpace sp({"a1", "a2", "a3"});
  const auto all = subsets_of(sp, sp.full_set());
  REQUIRE(all.size() == 8);
  for (size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i].mask() < all[i + 1].mask());
  for (const auto& s : all) CHECK(subset_of(s, sp.full_set()));

  CHECK(subsets_of(sp, sp.empty_set()).size() == 1);
  const auto single = subsets_of(sp, sp.singleton(1));
  REQUIRE(single.size() == 2);
  CHECK(single[0].is_empty());
  CHECK(single[1] == sp.singleton(1));
}

TEST_CASE("finite set boolean algebra") {
  const FiniteSpace sp({"a1", "a2", "a3", "a4"});
  const FiniteSet a = sp.set_of({"a1", "a3"});
  const FiniteSet b = sp.set_of({"a3", "a4"});
  CHECK(unite(a, b) == sp.set_of({"a1", "a3", "a4"}));
  CHECK(intersect(a, b) == sp.set_of({"a3"}));
  CHECK(minus(a, b) == sp.set_of({"a1"}));
  CHECK(complement(a) == sp.set_of({"a2", "a4"}));
  CHECK(complement(complement(a)) == a);
}

TEST_CASE("finite/cofinite sets over the naturals") {
  const NatSet a = NatSet::fin({1, 2});
  const NatSet b = NatSet::cofin({2, 3});

  CHECK(complement(a) == NatSet::cofin({1, 2}));
  CHECK(unite(a, b) == NatSet::cofin({3}));
  CHECK(minus(NatSet::cofin({}), NatSet::fin({5})) == NatSet::cofin({5}));

  // Membership probe behind the derived union value.
  const NatSet u = unite(a, b);
  CHECK(u.contains(1));
  CHECK(u.contains(2));
  CHECK_FALSE(u.contains(3));
  CHECK(u.contains(4));

  CHECK(nat_ops(a, b, SetOp::Union) == NatSet::cofin({3}));
  CHECK(nat_ops(a, b, SetOp::Intersection) == NatSet::fin({1}));
  CHECK(nat_ops(b, a, SetOp::Difference) == NatSet::cofin({1, 2, 3}));
  CHECK(nat_ops(a, b, SetOp::Complement) == NatSet::cofin({1, 2}));
}

TEST_CASE("nat set boolean laws on random supports") {
  Rng rng(7);
  auto random_set = [&]() {
    std::set<uint64_t> s;
    for (size_t i = 0; i <= rng.below(4); ++i) s.insert(rng.below(12));
    return rng.coin() ? NatSet::fin(std::move(s)) : NatSet::cofin(std::move(s));
  };
  for (int i = 0; i < 400; ++i) {
    const NatSet a = random_set();
    const NatSet b = random_set();
    CHECK(complement(complement(a)) == a);
    CHECK(complement(unite(a, b)) == intersect(complement(a), complement(b)));
    CHECK(complement(intersect(a, b)) == unite(complement(a), complement(b)));
    CHECK(minus(a, b) == intersect(a, complement(b)));
    CHECK(subset_of(intersect(a, b), a));
    CHECK(subset_of(a, unite(a, b)));
    // Pointwise agreement on a window.
    for (uint64_t n = 0; n < 14; ++n) {
      CHECK(unite(a, b).contains(n) == (a.contains(n) || b.contains(n)));
      CHECK(intersect(a, b).contains(n) == (a.contains(n) && b.contains(n)));
    }
  }
}

TEST_CASE("generated sigma-algebras") {
  const FiniteSpace sp({"a1", "a2", "a3"});
  const FiniteSpace coarse = generate_sigma_algebra(sp, {sp.set_of({"a1", "a2"})});
  CHECK(coarse.atoms() == std::vector<std::string>{"a1|a2", "a3"});

  const FiniteSpace trivial = generate_sigma_algebra(sp, {});
  CHECK(trivial.atoms() == std::vector<std::string>{"a1|a2|a3"});

  const FiniteSpace discrete = generate_sigma_algebra(
      sp, {sp.singleton(0), sp.singleton(1), sp.singleton(2)});
  CHECK(discrete == sp);
}
