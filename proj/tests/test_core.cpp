#include <doctest.h>

#include <algorithm>
#include <set>

#include "augcat/checks.hpp"
#include "augcat/cyclic.hpp"
#include "augcat/shapes.hpp"
#include "oracles.hpp"

using namespace augcat;

namespace {

std::vector<int> values(const Code& c) { return c.to_vector(); }

}  // namespace

TEST_CASE("simplex hom-sets have binomial size") {
  const auto D = build_simplex(4);
  const auto& C = *D->cat;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      CHECK(static_cast<std::uint64_t>(C.hom(m, n).size()) == oracle::binomial(m + n + 1, m + 1));
}

TEST_CASE("cyclic hom-sets: brute-force periodic maps and the (m+1) factor") {
  const auto DC = build_cyclic(4);
  const auto& C = *DC->cat;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      const auto size = static_cast<std::uint64_t>(C.hom(m, n).size());
      CHECK(size == oracle::cyclic_hom_count(m, n));
      CHECK(size == (m + 1) * oracle::binomial(m + n + 1, m + 1));
    }
}

TEST_CASE("simplex composition is composition of monotone maps") {
  const auto D = build_simplex(3);
  const auto& C = *D->cat;
  for (MorId f = 0; f < C.morphism_count(); ++f)
    for (MorId g : C.generators_from(C.cod(f))) {
      const auto vf = values(C.morphism(f).code), vg = values(C.morphism(g).code);
      std::vector<int> expect;
      for (int x : vf) expect.push_back(vg[x]);
      CHECK(values(C.morphism(C.compose(g, f)).code) == expect);
    }
}

TEST_CASE("cyclic codes: tau has order n+1 and rotations split") {
  for (int n = 0; n <= 4; ++n) {
    Code t = cyclic::identity(n);
    for (int k = 0; k <= n; ++k) {
      if (k > 0) CHECK_FALSE(t == cyclic::identity(n));
      t = cyclic::compose(cyclic::tau(n), t, n, n);
    }
    CHECK(t == cyclic::identity(n));
  }
  const auto DC = build_cyclic(3);
  const auto& C = *DC->cat;
  for (MorId f = 0; f < C.morphism_count(); ++f) {
    const int m = C.dom(f), n = C.cod(f);
    const auto [k, phi] = cyclic::split_rotation(C.morphism(f).code, m, n);
    CHECK(k >= 0);
    CHECK(k <= m);
    const auto pv = phi.to_vector();
    CHECK(std::is_sorted(pv.begin(), pv.end()));
    CHECK(cyclic::join_rotation(k, phi, m, n) == C.morphism(f).code);
  }
}

TEST_CASE("category axioms and words") {
  for (const auto& S : {build_simplex(3), build_cyclic(3), build_planar_trees(3), build_trees(3)}) {
    const auto r = check_category_axioms(*S->cat);
    CHECK_MESSAGE(r.ok(), to_string(S->kind));
  }
}

TEST_CASE("automorphism groups: cyclic of order n+1, trivial in the simplex category") {
  const auto DC = build_cyclic(4);
  const auto D = build_simplex(4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(DC->cat->automorphisms(n).size() == static_cast<std::size_t>(n + 1));
    CHECK(D->cat->automorphisms(n).size() == 1);
  }
}

TEST_CASE("planar tree text form round-trips") {
  for (const char* t : {"|", "()", "(|)", "(||)", "((|)|)", "(()(||))"}) CHECK(PlanarTree::parse(t).encode() == t);
  CHECK(PlanarTree::linear(3).linear_length() == 3);
  CHECK(PlanarTree::corolla(2).linear_length() == -1);
  CHECK(PlanarTree::corolla(2).edge_count() == 3);
}

TEST_CASE("planar tree enumeration matches the recursive count") {
  // t[v] = planar trees with v vertices of arity <= 2 (edges included).
  const int V = 4;
  std::vector<std::uint64_t> t(V + 1, 0);
  t[0] = 1;
  for (int v = 1; v <= V; ++v) {
    std::uint64_t c = v == 1 ? 1 : 0;  // stump
    c += t[v - 1];         // unary vertex
    for (int a = 0; a <= v - 1; ++a) c += t[a] * t[v - 1 - a];
    t[v] = c;
  }
  std::uint64_t total = 0;
  for (int v = 0; v <= V; ++v) total += t[v];
  CHECK(enumerate_planar_trees(V, 2).size() == total);
}
