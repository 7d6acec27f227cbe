#include <doctest.h>

#include <random>

#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"
#include "augcat//constructions.hpp"
#include "oracles.hpp"

using namespace augcat;

TEST_CASE("small categories validate") {
  CHECK(cyclic_group(3).validate().ok());
  CHECK(cyclic_group(3).is_groupoid());
  CHECK(pair_groupoid(3).validate().ok());
  CHECK(pair_groupoid(3).is_groupoid());
  CHECK(saturating_monoid(2).validate().ok());
  CHECK_FALSE(saturating_monoid(2).is_groupoid());
}

TEST_CASE("nerve level sizes") {
  const auto D = build_simplex(4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(nerve(cyclic_group(2), D)->size(n) == (1 << n));
    CHECK(nerve(cyclic_group(3), D, true)->size(n) == static_cast<int>(oracle::binomial(0, 0) * std::pow(3, n)));
    CHECK(nerve(pair_groupoid(2), D)->size(n) == (1 << (n + 1)));
  }
  const auto one = nerve(cyclic_group(1), D);
  for (int n = 0; n <= 4; ++n) CHECK(one->size(n) == 1);
}

TEST_CASE("lazy and explicit nerves of a groupoid agree") {
  const auto D = build_simplex(4);
  const auto a = nerve(pair_groupoid(2), D), b = nerve(pair_groupoid(2), D, true);
  for (std::size_t g = 0; g < D->cat->generators().size(); ++g) {
    // Same sizes and isomorphic actions: compare through the vertex data.
    const MorId u = D->cat->generators()[g];
    CHECK(a->size(D->cat->cod(u)) == b->size(D->cat->cod(u)));
  }
  for (int n = 0; n <= 4; ++n) CHECK(hom_count(*representable(D, n), *a) == static_cast<std::uint64_t>(b->size(n)));
}

TEST_CASE("cyclic nerve: tau follows the displayed rotation and has order n+1") {
  const auto DC = build_cyclic(3);
  const auto& C = *DC->cat;
  for (const auto& G : {cyclic_group(2), cyclic_group(3), pair_groupoid(2)}) {
    const auto X = cyclic_nerve(G, DC);
    CHECK(X->validate().ok());
    for (int n = 1; n <= 3; ++n) {
      const MorId tau = *C.find(n, n, cyclic::tau(n));
      for (int x = 0; x < X->size(n); ++x) {
        // Rebuild the chain from the label and apply the oracle.
        std::vector<int> arrows;
        std::string lab = X->label(n, x), cur;
        for (char ch : lab + ",") {
          if (ch == ',') {
            for (int f = 0; f < static_cast<int>(G.arrows.size()); ++f)
              if (G.arrows[f].name == cur) arrows.push_back(f);
            cur.clear();
          } else {
            cur += ch;
          }
        }
        const auto expect = oracle::tau_chain(G, arrows);
        std::string want;
        for (int f : expect) want += (want.empty() ? "" : ",") + G.arrows[f].name;
        CHECK(X->label(n, X->act(tau, x)) == want);
        int y = x;
        for (int k = 0; k <= n; ++k) y = X->act(tau, y);
        CHECK(y == x);
      }
    }
  }
  CHECK_THROWS_AS(cyclic_nerve(saturating_monoid(1), DC), ArgumentError);
}

TEST_CASE("restricting the cyclic nerve gives the nerve") {
  const auto DC = build_cyclic(3);
  const auto D = simplex_shape(DC);
  for (const auto& G : {cyclic_group(2), pair_groupoid(2)}) {
    const auto R = i_star(cyclic_nerve(G, DC));
    const auto N = nerve(G, D, true);
    for (std::size_t g = 0; g < D->cat->generators().size(); ++g) CHECK(R->action_table(g) == N->action_table(g));
  }
  const auto T = i_star(terminal(DC));
  for (int n = 0; n <= 3; ++n) CHECK(T->size(n) == 1);
}

TEST_CASE("free construction over the cyclic category") {
  const auto DC = build_cyclic(3);
  const auto D = simplex_shape(DC);
  const auto& C = *DC->cat;
  std::mt19937_64 rng(2);
  const auto pt = i_shriek_crossed(terminal(D), DC);
  for (int n = 0; n <= 3; ++n) CHECK(pt.presheaf->size(n) == n + 1);
  CHECK(i_shriek_crossed(empty_presheaf(D), DC).presheaf->total_size() == 0);
  for (int t = 0; t < 5; ++t) {
    const auto X = random_presheaf(D, rng);
    const auto E = i_shriek_crossed(X, DC);
    const auto coend = oracle::coend_sizes(*X, *DC, 3);
    const auto back = i_star(E.presheaf);
    for (int n = 0; n <= 3; ++n) {
      CHECK(E.presheaf->size(n) == coend[n]);
      CHECK(back->size(n) == (n + 1) * X->size(n));
      // The automorphism action is free.
      for (int x = 0; x < E.presheaf->size(n); ++x)
        for (MorId a : C.automorphisms(n))
          if (!C.is_identity(a)) CHECK(E.presheaf->act(a, x) != x);
    }
    CHECK(is_normal_mono(PresheafMap{empty_presheaf(DC), E.presheaf, std::vector<std::vector<int>>(C.object_count())}).holds);
  }
}

TEST_CASE("extension by zero into trees") {
  const auto T = build_trees(3);
  const auto D = simplex_shape(T);
  const auto& C = *T->cat;
  const auto X = truncate(representable(D, 1), 3);
  const auto E = i_shriek_dendroidal(X, T);
  CHECK(E.presheaf->validate().ok());
  CHECK(E.presheaf->size(C.object_by_id(PlanarTree::corolla(2).encode())) == 0);
  CHECK(E.presheaf->size(C.object_by_id(PlanarTree::linear(1).encode())) == X->size(1));
  const auto back = i_star(E.presheaf);
  for (int n = 0; n <= 3; ++n) CHECK(back->action_table(n) == X->action_table(n));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 3; ++t) {
    const auto Y = random_presheaf(D, rng);
    const auto coend = oracle::coend_sizes(*Y, *T, 3);
    const auto F = i_shriek_dendroidal(Y, T);
    for (ObjId a = 0; a < C.object_count(); ++a) CHECK(F.presheaf->size(a) == coend[a]);
  }
}

TEST_CASE("adjunction bijection, cyclic and dendroidal") {
  const auto DC = build_cyclic(2);
  const auto T = build_trees(2);
  const auto N = cyclic_nerve(cyclic_group(2), DC);
  const auto r = adjunction_check(terminal(simplex_shape(DC)), N);
  CHECK(r.bijection);
  CHECK(r.left == 1);
  const auto e = adjunction_check(empty_presheaf(simplex_shape(DC)), N);
  CHECK(e.bijection);
  CHECK(e.left == 1);
  CHECK(e.right == 1);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 4; ++t) {
    const auto X = random_presheaf(simplex_shape(DC), rng);
    const auto Y = random_presheaf(DC, rng);
    const auto a = adjunction_check(X, Y);
    CHECK(a.bijection);
    CHECK(a.left == oracle::brute_maps(*X, *i_star(Y), 2));
    const auto X2 = random_presheaf(simplex_shape(T), rng);
    const auto Y2 = random_presheaf(T, rng);
    CHECK(adjunction_check(X2, Y2).bijection);
  }
}

TEST_CASE("naturality of the extensions along maps") {
  const auto DC = build_cyclic(2);
  const auto D = simplex_shape(DC);
  std::mt19937_64 rng(9);
  const auto X = random_presheaf(D, rng);
  const auto q = quotient(X, {});
  const auto EX = i_shriek_crossed(q.source, DC), EY = i_shriek_crossed(q.target, DC);
  CHECK(validate_map(i_shriek_map(q, EX, EY)).ok());
  const auto Y = random_presheaf(DC, rng);
  CHECK(validate_map(i_star(map_to_terminal(Y, terminal(DC)))).ok());
}

TEST_CASE("the free construction does not preserve products") {
  const auto DC = build_cyclic(2);
  const auto D = simplex_shape(DC);
  const auto pt = terminal(D);
  // Already for two points: (n+1) elements against (n+1)^2.
  const auto r = shriek_product_check(pt, pt, DC);
  CHECK_FALSE(r.holds);
  CHECK(i_star(product(terminal(DC), terminal(DC)).presheaf)->size(2) == 1);
}
