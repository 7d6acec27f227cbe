#include <doctest.h>

#include "augcat/checks.hpp"
#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"
#include "augcat/shapes.hpp"
#include "oracles.hpp"

using namespace augcat;

namespace {

// Every morphism factors as an R- map then an R+ map; the factorization
// recomposes, and any two are related by an isomorphism of the middle.
void check_factorizations(const ShapeCategory& S) {
  const auto& C = *S.cat;
  const auto all = all_reedy_factorizations(C, S.reedy);
  int failures = 0;
  for (MorId f = 0; f < C.morphism_count(); ++f) {
    const auto fac = reedy_factorize(C, S.reedy, f);
    if (C.compose(fac.second, fac.first) != f || !S.reedy.minus[fac.first] || !S.reedy.plus[fac.second]) ++failures;
    for (const auto& other : all[f])
      if (!factorizations_isomorphic(C, fac, other)) ++failures;
  }
  CHECK_MESSAGE(failures == 0, to_string(S.kind));
}

}  // namespace

TEST_CASE("generalized Reedy structure holds on every shape") {
  for (const auto& S : {build_simplex(3), build_cyclic(3), build_planar_trees(3), build_trees(3)}) {
    const auto r = check_generalized_reedy(*S->cat, S->reedy);
    CHECK_MESSAGE(r.ok(), to_string(S->kind));
    check_factorizations(*S);
  }
}

TEST_CASE("EZ: simplex and tree shapes pass") {
  for (const auto& S : {build_simplex(3), build_planar_trees(3), build_trees(3)}) {
    const auto r = check_ez(*S->cat, S->reedy);
    CHECK_MESSAGE(r.ok(), to_string(S->kind));
  }
}

TEST_CASE("EZ fails for the cyclic category: two degeneracies [1] -> [0] have no commuting square") {
  const auto DC = build_cyclic(2);
  const auto r = check_ez(*DC->cat, DC->reedy);
  CHECK_FALSE(r.ok());
  const auto& C = *DC->cat;
  // sigma and sigma o tau are different split epis [1] -> [0].
  const MorId s = *C.find(1, 0, Code{0, 0});
  const MorId st = C.compose(s, *C.find(1, 1, cyclic::tau(1)));
  CHECK(s != st);
  // Any g, h out of [0] agree on objects ([0] only has the identity), so a
  // commuting square g s = h st would force s = st.
  for (ObjId r0 = 0; r0 < C.object_count(); ++r0)
    for (MorId g : C.hom(0, r0))
      for (MorId h : C.hom(0, r0)) CHECK(C.compose(g, s) != C.compose(h, st));
}

TEST_CASE("crossed group structure of the cyclic category and of symmetric trees") {
  for (const auto& S : {build_cyclic(3), build_trees(3)}) {
    REQUIRE(S->crossed);
    CHECK(check_crossed_group(*S->cat, *S->crossed).ok());
    const auto& C = *S->cat;
    for (MorId f = 0; f < C.morphism_count(); ++f) {
      const auto d = crossed_decompose(C, *S->crossed, f);
      CHECK(C.compose(d.second, d.first) == f);
      CHECK(all_crossed_decompositions(C, *S->crossed, f).size() == 1);
    }
  }
}

TEST_CASE("simplex embeddings: functorial, a sieve in trees, not a sieve in the cyclic category") {
  const auto T = build_trees(3);
  const auto DC = build_cyclic(3);
  CHECK(check_functor(T->delta).ok());
  CHECK(check_functor(DC->delta).ok());
  CHECK(check_sieve(T->delta).holds);
  const auto p = check_sieve(DC->delta);
  CHECK_FALSE(p.holds);
  REQUIRE(p.morphisms.size() == 1);
  const auto& C = *DC->cat;
  const MorId w = p.morphisms[0];
  CHECK(C.is_iso(w));
  CHECK_FALSE(C.is_identity(w));
  CHECK(C.dom(w) == 1);
  CHECK(C.cod(w) == 1);
}

TEST_CASE("3-for-2 fails for the simplex category inside the cyclic category") {
  const auto DC = build_cyclic(2);
  const auto r = check_3for2(DC->delta);
  CHECK_FALSE(r.holds);
  CHECK(r.morphisms.size() == 3);
}

TEST_CASE("linear trees span a copy of the simplex category") {
  const auto T = build_trees(4);
  const auto& C = *T->cat;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      const ObjId a = C.object_by_id(PlanarTree::linear(m).encode());
      const ObjId b = C.object_by_id(PlanarTree::linear(n).encode());
      CHECK(static_cast<std::uint64_t>(C.hom(a, b).size()) == oracle::binomial(m + n + 1, m + 1));
    }
}

TEST_CASE("amalgamation: the strict gate refuses, embedding gate builds a crossed category") {
  const auto DC = build_cyclic(2);
  const auto T = build_trees(2);
  CHECK_THROWS_AS(amalgamate(*DC, *T, AmalgamGate::strict), AmalgamationRefused);
  const auto A = amalgamate(*DC, *T, AmalgamGate::embedding);
  const auto& C = *A.shape->cat;
  CHECK(C.object_count() == T->cat->object_count());
  CHECK(check_category_axioms(C).ok());
  CHECK(check_crossed_group(C, *A.shape->crossed).ok());
  CHECK(check_functor(A.from_crossed).ok());
  CHECK(check_functor(A.from_aug).ok());
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      const ObjId a = A.from_crossed.on_objects[m], b = A.from_crossed.on_objects[n];
      CHECK(C.hom(a, b).size() == DC->cat->hom(m, n).size());
    }
}
