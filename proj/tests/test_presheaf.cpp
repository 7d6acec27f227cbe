#include <doctest.h>

#include <random>
#include <set>

#include "augcat/errors.hpp"
#include "augcat//constructions.hpp"
#include "augcat/presheaf.hpp"
#include "augcat/serialize.hpp"
#include "oracles.hpp"

using namespace augcat;

namespace {

std::vector<ShapePtr> small_shapes() {
  return {build_simplex(3), build_cyclic(3), build_planar_trees(3), build_trees(3)};
}

std::set<int> image_of(const Code& c) {
  auto v = c.to_vector();
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("representables: level b has |hom(b, a)| elements and validates") {
  for (const auto& S : small_shapes()) {
    const auto& C = *S->cat;
    for (ObjId a = 0; a < C.object_count(); a += 3) {
      const auto A = representable(S, a);
      CHECK(A->validate().ok());
      for (ObjId b = 0; b < C.object_count(); ++b) CHECK(A->size(b) == C.hom(b, a).size());
    }
  }
}

TEST_CASE("Yoneda: maps out of a representable are the elements") {
  std::mt19937_64 rng(7);
  for (const auto& S : small_shapes()) {
    const auto& C = *S->cat;
    for (int trial = 0; trial < 3; ++trial) {
      const auto X = random_presheaf(S, rng);
      for (ObjId a = 0; a < C.object_count(); a += 5) {
        const auto A = representable(S, a);
        CHECK(hom_count(*A, *X) == static_cast<std::uint64_t>(X->size(a)));
        for (int x = 0; x < X->size(a); ++x) {
          const auto m = yoneda_map(A, X, a, x);
          CHECK(validate_map(m).ok());
          CHECK(m(a, C.identity(a) - C.hom(a, a).first) == x);
        }
      }
    }
  }
}

TEST_CASE("hom search agrees with plain backtracking") {
  std::mt19937_64 rng(11);
  for (const auto& S : {build_simplex(2), build_cyclic(2), build_planar_trees(2)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto X = random_presheaf(S, rng), Y = random_presheaf(S, rng);
      CHECK(hom_count(*X, *Y) == oracle::brute_maps(*X, *Y, S->truncation));
    }
  }
  const auto D = build_simplex(3);
  CHECK(hom_count(*representable(D, 1), *representable(D, 2)) == 6);
}

TEST_CASE("boundary of a simplex: maps whose image misses a vertex") {
  const auto D = build_simplex(3);
  const auto& C = *D->cat;
  for (int n = 0; n <= 3; ++n) {
    const auto B = boundary(D, n);
    for (ObjId b = 0; b <= 3; ++b)
      for (int e = 0; e < C.hom(b, n).size(); ++e)
        CHECK(B.contains(b, e) == (static_cast<int>(image_of(C.morphism(C.hom(b, n)[e]).code).size()) < n + 1));
  }
}

TEST_CASE("horns of a simplex: image together with the omitted vertex misses a vertex") {
  const auto D = build_simplex(3);
  const auto& C = *D->cat;
  for (int n = 1; n <= 3; ++n)
    for (MorId face : elementary_faces(*D, n)) {
      const auto img = image_of(C.morphism(face).code);
      int omitted = -1;
      for (int i = 0; i <= n; ++i)
        if (!img.count(i)) omitted = i;
      const auto H = horn(D, n, face);
      for (ObjId b = 0; b <= 3; ++b)
        for (int e = 0; e < C.hom(b, n).size(); ++e) {
          auto s = image_of(C.morphism(C.hom(b, n)[e]).code);
          s.insert(omitted);
          CHECK(H.contains(b, e) == (static_cast<int>(s.size()) < n + 1));
        }
    }
}

TEST_CASE("horns need an elementary face") {
  const auto D = build_simplex(3);
  const auto& C = *D->cat;
  CHECK_THROWS_AS(horn(D, 2, C.identity(2)), ArgumentError);
}

TEST_CASE("boundary equals the skeleton one below the degree, on every shape") {
  for (const auto& S : small_shapes()) {
    const auto& C = *S->cat;
    for (ObjId a = 0; a < C.object_count(); ++a) {
      if (C.degree(a) == 0) continue;
      CHECK(boundary(S, a) == skeleton(representable(S, a), C.degree(a) - 1));
    }
  }
}

TEST_CASE("coskeleton levels equal the matching families") {
  std::mt19937_64 rng(5);
  for (const auto& S : {build_simplex(3), build_cyclic(3), build_planar_trees(3)}) {
    const auto& C = *S->cat;
    for (int trial = 0; trial < 3; ++trial) {
      const auto X = random_presheaf(S, rng);
      for (int n = 0; n <= 1; ++n) {
        const auto K = coskeleton(truncate(X, n), n);
        CHECK(K.presheaf->validate().ok());
        for (ObjId r = 0; r < C.object_count(); ++r) {
          if (C.degree(r) <= n) continue;
          const auto fam = oracle::matching_families(*X, r, n);
          std::set<std::vector<int>> got;
          for (int x = 0; x < K.presheaf->size(r); ++x) got.insert(K.data(r, x));
          CHECK(got == fam);
        }
      }
    }
  }
}

TEST_CASE("two points: 0-coskeleton has 2^(n+1) simplices") {
  const auto D = build_simplex(3);
  std::vector<int> sizes(4, 0);
  sizes[0] = 2;
  auto X = std::make_shared<Presheaf>(D, 0, sizes, std::vector<std::vector<int>>(D->cat->generators().size()));
  const auto K = coskeleton(X, 0);
  for (int n = 0; n <= 3; ++n) CHECK(K.presheaf->size(n) == (1 << (n + 1)));
}

TEST_CASE("coskeletal criterion: the three conditions agree") {
  const auto D = build_simplex(3);
  const auto A = representable(D, 2);
  CHECK(is_coskeletal(A, 2).holds());
  CHECK(is_coskeletal(A, 1).holds());
  const auto v = is_coskeletal(A, 0);
  CHECK_FALSE(v.holds());
  CHECK(v.consistent());
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto X = random_presheaf(D, rng);
    for (int n = 0; n <= 2; ++n) CHECK(is_coskeletal(X, n).consistent());
  }
}

TEST_CASE("products, pullbacks and pushouts satisfy their counting identities") {
  std::mt19937_64 rng(13);
  for (const auto& S : {build_simplex(3), build_cyclic(2)}) {
    const auto& C = *S->cat;
    const auto X = random_presheaf(S, rng), Y = random_presheaf(S, rng);
    const auto P = product(X, Y);
    CHECK(P.presheaf->validate().ok());
    CHECK(validate_map(P.p1).ok());
    for (ObjId a = 0; a < C.object_count(); ++a) {
      const auto A = representable(S, a);
      CHECK(hom_count(*A, *P.presheaf) == hom_count(*A, *X) * hom_count(*A, *Y));
    }
    // Pullback over the terminal object is the product.
    const auto T = terminal(S);
    const auto PB = pullback(map_to_terminal(X, T), map_to_terminal(Y, T));
    for (ObjId a = 0; a < C.object_count(); ++a) CHECK(PB.presheaf->size(a) == X->size(a) * Y->size(a));
    // Pushout of two monos from the empty presheaf is the coproduct.
    const auto E = coproduct(X, Y);
    for (ObjId a = 0; a < C.object_count(); ++a) CHECK(E.presheaf->size(a) == X->size(a) + Y->size(a));
    // Pushout along a boundary: gluing a 1-cell onto a point.
    const auto B = subobject_inclusion(boundary(S, 1));
    const auto Pt = terminal(S);
    const auto Q = pushout(B, map_to_terminal(B.source, Pt));
    CHECK(Q.presheaf->validate().ok());
    CHECK(validate_map(Q.i1).ok());
    CHECK(validate_map(Q.i2).ok());
  }
}

TEST_CASE("normal monomorphisms") {
  const auto DC = build_cyclic(3);
  const auto& C = *DC->cat;
  for (ObjId a = 1; a <= 3; ++a) CHECK(is_normal_mono(subobject_inclusion(boundary(DC, a))).holds);
  // Dividing the 1-cell by tau leaves a non-degenerate element fixed by a
  // non-trivial automorphism; the inclusion of the empty presheaf is then
  // not normal.
  const auto A = representable(DC, 1);
  const MorId tau = *C.find(1, 1, Code{1, 2});
  const int id = C.identity(1) - C.hom(1, 1).first, t = tau - C.hom(1, 1).first;
  const auto q = quotient(A, {{1, {id, t}}});
  CHECK(q.target->validate().ok());
  const auto empty = empty_presheaf(DC);
  const PresheafMap z{empty, q.target, std::vector<std::vector<int>>(C.object_count())};
  CHECK_FALSE(is_normal_mono(z).holds);
  const PresheafMap z2{empty, A, std::vector<std::vector<int>>(C.object_count())};
  CHECK(is_normal_mono(z2).holds);
}

TEST_CASE("boundary inclusions of simplices are linear") {
  const auto D = build_simplex(3);
  for (int n = 1; n <= 3; ++n) {
    const auto c = certify_linear(subobject_inclusion(boundary(D, n)));
    CHECK(c.verdict == Linearity::linear);
  }
}

TEST_CASE("presheaf JSON round-trips") {
  ShapeRegistry reg;
  std::mt19937_64 rng(17);
  for (const auto& [k, m] : std::vector<std::pair<ShapeKind, int>>{{ShapeKind::simplex, 3}, {ShapeKind::cyclic, 2}, {ShapeKind::tree, 2}}) {
    const auto S = reg.get(k, m);
    const auto X = random_presheaf(S, rng);
    const auto j = presheaf_to_json(*X);
    const auto Y = presheaf_from_json(j, reg);
    CHECK(Y->shape_ptr() == S);
    CHECK(presheaf_to_json(*Y) == j);
    const auto back = json::parse(j.dump());
    CHECK(back == j);
  }
  const auto N = nerve(cyclic_group(2), reg.get(ShapeKind::simplex, 4));
  const auto j = presheaf_to_json(*N);
  CHECK(j["coskeletal_above"] == 2);
  const auto M = presheaf_from_json(j, reg);
  CHECK(M->size(4) == 16);
}

TEST_CASE("category JSON round-trips") {
  for (const auto& S : {build_simplex(2), build_cyclic(2), build_planar_trees(2)}) {
    const auto j = category_to_json(*S->cat);
    CHECK(same_category(*category_from_json(j), *S->cat));
  }
}
