#include <doctest.h>

#include <random>

#include "augcat/errors.hpp"
#include "augcat//constructions.hpp"
#include "augcat/homotopy.hpp"

using namespace augcat;

TEST_CASE("Kan: nerves of groupoids fill every horn, the capped monoid does not") {
  const auto D = build_simplex(3);
  CHECK(is_kan(nerve(cyclic_group(2), D), 3).ok());
  CHECK(is_kan(nerve(cyclic_group(3), D), 3).ok());
  CHECK(is_kan(nerve(pair_groupoid(2), D), 3).ok());
  CHECK(is_kan(terminal(D), 3).ok());
  const auto k = is_kan(nerve(saturating_monoid(2), D), 2);
  CHECK_FALSE(k.ok());
  CHECK(k.report.violation_count > 0);
}

TEST_CASE("Kan fails for the 1-simplex") {
  const auto D = build_simplex(2);
  CHECK_FALSE(is_kan(representable(D, 1), 2).ok());
}

TEST_CASE("pi_1 of the nerve of a cyclic group is the group") {
  const auto D = build_simplex(3);
  for (int n = 1; n <= 4; ++n) CHECK(pi_a(nerve(cyclic_group(n), D), 0, 1).class_count == n);
  CHECK_THROWS_AS(pi_a(representable(D, 1), 0, 1), ArgumentError);
}

TEST_CASE("cylinder of a point is the interval") {
  const auto D = build_simplex(3);
  const auto cyl = cylinder(terminal(D));
  const auto I = representable(D, 1);
  for (int n = 0; n <= 3; ++n) CHECK(cyl.presheaf->size(n) == I->size(n));
  CHECK_THROWS_AS(cylinder(terminal(build_cyclic(2))), ArgumentError);
}

TEST_CASE("the two loops of N(Z/2) are not homotopic rel boundary") {
  const auto D = build_simplex(2);
  const auto N = nerve(cyclic_group(2), D, true);
  const auto A = representable(D, 1);
  const auto f = yoneda_map(A, N, 1, 0), g = yoneda_map(A, N, 1, 1);
  const auto B = boundary(D, 1);
  CHECK(homotopic(f, f, &B).homotopic);
  CHECK_FALSE(homotopic(f, g, &B).homotopic);
}

TEST_CASE("hypergroupoids") {
  const auto D = build_simplex(3);
  CHECK(is_hypergroupoid(nerve(cyclic_group(2), D), 1, 3).ok());
  CHECK(is_hypergroupoid(nerve(pair_groupoid(2), D), 1, 3).ok());
  CHECK(is_hypergroupoid(terminal(D), 0, 3).ok());
  // Two points are a 0-hypergroupoid only after coskeletal completion; the
  // nerve of Z/2 is not a 0-hypergroupoid.
  CHECK_FALSE(is_hypergroupoid(nerve(cyclic_group(2), D), 0, 3).ok());
  const auto N = nerve(cyclic_group(3), D, true);
  CHECK(is_coskeletal(N, 2).holds());
}

TEST_CASE("trivial relative hypergroupoids and the coskeletal identity") {
  const auto D = build_simplex(3);
  const auto N = nerve(cyclic_group(2), D);
  CHECK_FALSE(is_trivial_relative_hypergroupoid(map_to_terminal(N, terminal(D)), 1, 3).ok());
  CHECK_THROWS_AS(check_cosk_identity(map_to_terminal(N, terminal(D)), 1), ArgumentError);
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 3; ++t) {
      const auto Y = random_presheaf(D, rng);
      const auto f = random_trivial_relative(Y, n, rng);
      CHECK(validate_map(f).ok());
      CHECK(is_trivial_relative_hypergroupoid(f, n, 3).ok());
      CHECK(check_cosk_identity(f, n).holds);
      // Lifting against boundary inclusions at degrees where the map is trivial.
      for (int d = 1; d <= 2; ++d) CHECK(has_rlp(f, subobject_inclusion(boundary(D, d))).holds);
    }
}
