#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance driver.  They avoid the library's search and factorization code
// and work from the raw action tables only.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "augcat/constructions.hpp"
#include "augcat/presheaf.hpp"

namespace oracle {

using namespace augcat;

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Non-decreasing f : Z -> Z with f(i + m + 1) = f(i) + n + 1, f(0) in [0, n].
inline std::uint64_t cyclic_hom_count(int m, int n) {
  std::uint64_t count = 0;
  std::vector<int> f(m + 1);
  std::function<void(int)> go = [&](int i) {
    if (i > m) {
      if (f[m] <= f[0] + n + 1) ++count;
      return;
    }
    const int lo = i == 0 ? 0 : f[i - 1];
    const int hi = i == 0 ? n : f[0] + n + 1;
    for (int v = lo; v <= hi; ++v) {
      f[i] = v;
      go(i + 1);
    }
  };
  go(0);
  return count;
}

// Visits every natural transformation X -> Y on degrees <= cap by plain
// backtracking: elements are assigned in a fixed order and every generator
// square whose corners are all assigned is checked.
inline std::uint64_t brute_maps(const Presheaf& X, const Presheaf& Y, int cap,
                                const std::function<void(const std::vector<std::vector<int>>&)>& visit = {}) {
  const auto& C = X.cat();
  std::vector<std::pair<ObjId, int>> order;
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= cap)
      for (int x = 0; x < X.size(a); ++x) order.emplace_back(a, x);
  std::vector<std::vector<int>> val(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= cap) val[a].assign(X.size(a), -1);
  std::vector<MorId> gens;
  for (MorId u : C.generators())
    if (C.degree(C.dom(u)) <= cap && C.degree(C.cod(u)) <= cap) gens.push_back(u);
  std::uint64_t count = 0;
  auto consistent = [&]() {
    for (MorId u : gens) {
      const ObjId s = C.dom(u), b = C.cod(u);
      const int gi = C.generator_index(u);
      for (int x = 0; x < X.size(b); ++x) {
        const int fx = val[b][x];
        const int xu = X.act_gen(gi, x);
        const int fxu = val[s][xu];
        if (fx >= 0 && fxu >= 0 && Y.act_gen(gi, fx) != fxu) return false;
      }
    }
    return true;
  };
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == order.size()) {
      ++count;
      if (visit) visit(val);
      return;
    }
    const auto [a, x] = order[k];
    for (int y = 0; y < Y.size(a); ++y) {
      val[a][x] = y;
      if (consistent()) go(k + 1);
    }
    val[a][x] = -1;
  };
  go(0);
  return count;
}

// Matching families for the coskeleton at r: values on every morphism
// h : t -> r with d(t) <= n, compatible with all generators of degree <= n.
// Families are listed by their values in morphism id order.
inline std::set<std::vector<int>> matching_families(const Presheaf& X, ObjId r, int n) {
  const auto& C = X.cat();
  std::vector<MorId> low;
  for (ObjId t = 0; t < C.object_count(); ++t)
    if (C.degree(t) <= n)
      for (MorId h : C.hom(t, r)) low.push_back(h);
  std::sort(low.begin(), low.end());
  std::map<MorId, int> pos;
  for (std::size_t k = 0; k < low.size(); ++k) pos[low[k]] = static_cast<int>(k);
  // Constraints value[h o u] = value[h] . u for generators u into dom(h).
  std::vector<std::tuple<int, int, MorId>> rel;
  for (MorId h : low)
    for (MorId u : C.generators_into(C.dom(h)))
      if (C.degree(C.dom(u)) <= n) rel.emplace_back(pos[h], pos[C.compose(h, u)], u);
  std::set<std::vector<int>> out;
  std::vector<int> v(low.size(), -1);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    for (const auto& [i, j, u] : rel)
      if (v[i] >= 0 && v[j] >= 0 && X.act(u, v[i]) != v[j]) return;
    if (k == low.size()) {
      out.insert(v);
      return;
    }
    for (int y = 0; y < X.size(C.dom(low[k])); ++y) {
      v[k] = y;
      go(k + 1);
    }
    v[k] = -1;
  };
  go(0);
  return out;
}

// Left Kan extension along F as a coend: pairs (g : c -> F(k), x in X_k)
// modulo (g o F(u), x) ~ (g, x . u), counted by union-find.
inline std::vector<int> coend_sizes(const Presheaf& X, const ShapeCategory& target, int top) {
  const auto& C = *target.cat;
  const auto& D = X.cat();
  const auto& F = target.delta;
  std::vector<int> out(C.object_count(), 0);
  for (ObjId c = 0; c < C.object_count(); ++c) {
    if (C.degree(c) > top) continue;
    std::map<std::pair<MorId, int>, int> id;
    std::vector<std::pair<MorId, int>> elems;
    for (ObjId k = 0; k < D.object_count(); ++k) {
      if (D.degree(k) > top) continue;
      for (MorId g : C.hom(c, F.on_objects[k]))
        for (int x = 0; x < X.size(k); ++x) {
          id[{g, x}] = static_cast<int>(elems.size());
          elems.emplace_back(g, x);
        }
    }
    std::vector<int> parent(elems.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    for (MorId u = 0; u < D.morphism_count(); ++u) {
      const ObjId j = D.dom(u), k = D.cod(u);
      if (D.degree(j) > top || D.degree(k) > top) continue;
      for (MorId g : C.hom(c, F.on_objects[j]))
        for (int x = 0; x < X.size(k); ++x) {
          const int a = id[{C.compose(F.on_morphisms[u], g), x}];
          const int b = id[{g, X.act(u, x)}];
          parent[find(a)] = find(b);
        }
    }
    int classes = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) classes += find(static_cast<int>(i)) == static_cast<int>(i);
    out[c] = classes;
  }
  return out;
}

// The rotation tau on an n-chain of a groupoid, acting directly on the list
// of arrows (vertices are implied).
inline std::vector<int> tau_chain(const SmallCategory& G, const std::vector<int>& arrows) {
  const int n = static_cast<int>(arrows.size());
  if (n == 0) return arrows;
  int comp = arrows[0];
  for (int i = 1; i < n; ++i) comp = G.compose(arrows[i], comp);
  std::vector<int> out{*G.inverse(comp)};
  for (int i = 0; i + 1 < n; ++i) out.push_back(arrows[i]);
  return out;
}

}  // namespace oracle
