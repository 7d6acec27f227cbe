#include "augcat/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "augcat/checks.hpp"
#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"

namespace augcat {

std::optional<int> SmallCategory::inverse(int f) const {
  const int a = arrows[f].dom, b = arrows[f].cod;
  for (int g = 0; g < static_cast<int>(arrows.size()); ++g)
    if (arrows[g].dom == b && arrows[g].cod == a && table[g][f] == identities[a] && table[f][g] == identities[b])
      return g;
  return std::nullopt;
}

bool SmallCategory::is_groupoid() const {
  for (int f = 0; f < static_cast<int>(arrows.size()); ++f)
    if (!inverse(f)) return false;
  return true;
}

CheckReport SmallCategory::validate() const {
  CheckReport r;
  r.name = "small category";
  const int n = static_cast<int>(arrows.size());
  const int m = static_cast<int>(objects.size());
  if (static_cast<int>(identities.size()) != m || static_cast<int>(table.size()) != n) {
    r.add("shape", "identity or composition table has the wrong size");
    return r;
  }
  for (int f = 0; f < n; ++f) {
    if (arrows[f].dom < 0 || arrows[f].dom >= m || arrows[f].cod < 0 || arrows[f].cod >= m ||
        static_cast<int>(table[f].size()) != n) {
      r.add("shape", "arrow " + arrows[f].name + " is malformed");
      return r;
    }
  }
  for (int a = 0; a < m; ++a) {
    const int i = identities[a];
    if (i < 0 || i >= n || arrows[i].dom != a || arrows[i].cod != a) r.add("identity", "bad identity at " + objects[a]);
  }
  if (!r.ok()) return r;
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      const int h = table[g][f];
      if (arrows[f].cod != arrows[g].dom) {
        if (h != -1) r.add("composable", arrows[g].name + " o " + arrows[f].name + " should be undefined");
        continue;
      }
      if (h < 0 || h >= n || arrows[h].dom != arrows[f].dom || arrows[h].cod != arrows[g].cod)
        r.add("endpoints", arrows[g].name + " o " + arrows[f].name + " has wrong endpoints");
    }
  if (!r.ok()) return r;
  for (int f = 0; f < n; ++f) {
    if (table[identities[arrows[f].cod]][f] != f || table[f][identities[arrows[f].dom]] != f)
      r.add("unit", "identity law fails at " + arrows[f].name);
  }
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      if (table[h][g] < 0) continue;
      for (int f = 0; f < n; ++f)
        if (table[g][f] >= 0 && table[h][table[g][f]] != table[table[h][g]][f])
          r.add("assoc", "associativity fails at " + arrows[h].name + "," + arrows[g].name + "," + arrows[f].name);
    }
  return r;
}

namespace {

SmallCategory one_object(int n, const std::function<int(int, int)>& op) {
  SmallCategory C;
  C.objects = {"*"};
  C.identities = {0};
  for (int k = 0; k < n; ++k) C.arrows.push_back({std::to_string(k), 0, 0});
  C.table.assign(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) C.table[g][f] = op(g, f);
  return C;
}

bool gen_within(const FiniteCategory& C, MorId u, int cap) {
  return C.degree(C.dom(u)) <= cap && C.degree(C.cod(u)) <= cap;
}

// Chains of n composable arrows, numbered in lexicographic order of the arrow
// tuple; level 0 holds the objects.
struct Chains {
  const SmallCategory& C;
  std::vector<std::vector<std::vector<int>>> levels;
  std::vector<std::map<std::vector<int>, int>> index;

  Chains(const SmallCategory& cat, int top) : C(cat) {
    levels.resize(top + 1);
    index.resize(top + 1);
    for (int a = 0; a < static_cast<int>(C.objects.size()); ++a) add(0, {a});
    if (top >= 1)
      for (int f = 0; f < static_cast<int>(C.arrows.size()); ++f) add(1, {f});
    for (int n = 2; n <= top; ++n)
      for (const auto& c : levels[n - 1])
        for (int f = 0; f < static_cast<int>(C.arrows.size()); ++f)
          if (C.arrows[f].dom == C.arrows[c.back()].cod) {
            auto d = c;
            d.push_back(f);
            add(n, std::move(d));
          }
  }
  void add(int n, std::vector<int> c) {
    index[n].emplace(c, static_cast<int>(levels[n].size()));
    levels[n].push_back(std::move(c));
  }
  int vertex(int n, const std::vector<int>& c, int i) const {
    if (n == 0) return c[0];
    return i == 0 ? C.arrows[c[0]].dom : C.arrows[c[i - 1]].cod;
  }
  std::string label(int n, const std::vector<int>& c) const {
    if (n == 0) return C.objects[c[0]];
    std::string s;
    for (int f : c) s += (s.empty() ? "" : ",") + C.arrows[f].name;
    return s;
  }
  // The chain with the given vertices and arrows, as an element of level m.
  int find(const std::vector<int>& vertices, const std::vector<int>& arrows) const {
    const int m = static_cast<int>(arrows.size());
    const auto it = m == 0 ? index[0].find({vertices[0]}) : index[m].find(arrows);
    if (it == index[m].end()) throw StructuralError("nerve: chain outside the enumerated levels");
    return it->second;
  }
};

// Arrow x_i -> x_k of the chain for i <= k in the periodic (cyclic) or plain
// indexing; step(r) is the arrow leaving vertex r.
template <class Step>
int path(const SmallCategory& C, int start_object, int i, int k, const Step& step) {
  int acc = C.identities[start_object];
  for (int s = i; s < k; ++s) acc = C.compose(step(s), acc);
  return acc;
}

}  // namespace

SmallCategory cyclic_group(int n) {
  if (n < 1) throw ArgumentError("group order must be positive");
  return one_object(n, [n](int g, int f) { return (g + f) % n; });
}

SmallCategory saturating_monoid(int top) {
  if (top < 1) throw ArgumentError("monoid bound must be positive");
  return one_object(top + 1, [top](int g, int f) { return std::min(g + f, top); });
}

SmallCategory pair_groupoid(int k) {
  if (k < 1) throw ArgumentError("groupoid needs an object");
  SmallCategory C;
  for (int a = 0; a < k; ++a) C.objects.push_back("x" + std::to_string(a));
  auto id = [k](int a, int b) { return a * k + b; };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) C.arrows.push_back({C.objects[a] + ">" + C.objects[b], a, b});
  for (int a = 0; a < k; ++a) C.identities.push_back(id(a, a));
  const int n = k * k;
  C.table.assign(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (C.arrows[f].cod == C.arrows[g].dom) C.table[g][f] = id(C.arrows[f].dom, C.arrows[g].cod);
  return C;
}

PresheafPtr nerve(const SmallCategory& C, const ShapePtr& simplex, bool explicit_levels) {
  if (simplex->kind != ShapeKind::simplex) throw ArgumentError("nerve is taken over the simplex shape");
  const auto report = C.validate();
  if (!report.ok()) throw ArgumentError("not a category: " + report.violations.front().message);
  const auto& D = *simplex->cat;
  const bool lazy = !explicit_levels && C.is_groupoid() && simplex->truncation > 2;
  const int top = lazy ? 2 : simplex->truncation;
  const Chains chains(C, top);

  std::vector<int> sizes(D.object_count(), 0);
  std::vector<std::vector<std::string>> labels(D.object_count());
  for (int n = 0; n <= top; ++n) {
    sizes[n] = static_cast<int>(chains.levels[n].size());
    for (const auto& c : chains.levels[n]) labels[n].push_back(chains.label(n, c));
  }
  std::vector<std::vector<int>> actions(D.generators().size());
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const MorId u = D.generators()[gi];
    if (!gen_within(D, u, top)) continue;
    const int m = D.dom(u), n = D.cod(u);
    const Code& theta = D.morphism(u).code;
    for (const auto& c : chains.levels[n]) {
      auto step = [&](int s) { return c[s]; };
      std::vector<int> vs, as;
      for (int j = 0; j <= m; ++j) vs.push_back(chains.vertex(n, c, theta[j]));
      for (int j = 1; j <= m; ++j)
        as.push_back(path(C, vs[j - 1], theta[j - 1], theta[j], step));
      actions[gi].push_back(chains.find(vs, as));
    }
  }
  auto X = std::make_shared<Presheaf>(simplex, top, std::move(sizes), std::move(actions),
                                      lazy ? std::optional<int>(2) : std::nullopt);
  X->set_labels(std::move(labels));
  return X;
}

PresheafPtr cyclic_nerve(const SmallCategory& G, const ShapePtr& cyclic) {
  if (cyclic->kind != ShapeKind::cyclic) throw ArgumentError("cyclic nerve is taken over the cyclic shape");
  const auto report = G.validate();
  if (!report.ok()) throw ArgumentError("not a category: " + report.violations.front().message);
  if (!G.is_groupoid()) throw ArgumentError("cyclic nerve needs a groupoid");
  const auto& D = *cyclic->cat;
  const int top = cyclic->truncation;
  const Chains chains(G, top);
  // Objects of the cyclic shape are [0..top] in degree order.
  std::vector<int> sizes(D.object_count(), 0);
  std::vector<std::vector<std::string>> labels(D.object_count());
  for (int n = 0; n <= top; ++n) {
    sizes[n] = static_cast<int>(chains.levels[n].size());
    for (const auto& c : chains.levels[n]) labels[n].push_back(chains.label(n, c));
  }
  std::vector<std::vector<int>> actions(D.generators().size());
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const MorId u = D.generators()[gi];
    const int m = D.dom(u), n = D.cod(u);
    const Code& f = D.morphism(u).code;
    for (const auto& c : chains.levels[n]) {
      // Arrow leaving vertex r: a_{r+1} for r < n, and the inverse of the
      // full composite from x_n back to x_0.
      int wrap = G.identities[chains.vertex(n, c, 0)];
      for (int s = 0; s < n; ++s) wrap = G.compose(c[s], wrap);
      wrap = *G.inverse(wrap);
      auto step = [&](int s) {
        const int r = ((s % (n + 1)) + n + 1) % (n + 1);
        return r == n ? wrap : c[r];
      };
      auto at = [&](int i) { return chains.vertex(n, c, ((i % (n + 1)) + n + 1) % (n + 1)); };
      std::vector<int> vs, as;
      for (int j = 0; j <= m; ++j) vs.push_back(at(cyclic::extend(f, n, j)));
      for (int j = 1; j <= m; ++j)
        as.push_back(path(G, vs[j - 1], cyclic::extend(f, n, j - 1), cyclic::extend(f, n, j), step));
      actions[gi].push_back(chains.find(vs, as));
    }
  }
  auto X = std::make_shared<Presheaf>(cyclic, top, std::move(sizes), std::move(actions));
  X->set_labels(std::move(labels));
  const auto check = X->validate();
  if (!check.ok()) throw StructuralError("cyclic nerve violates a relation: " + check.violations.front().message);
  return X;
}

PresheafPtr i_star(const PresheafPtr& Y) {
  const auto& A = Y->shape_ptr();
  if (A->kind == ShapeKind::simplex) return Y;
  const auto S = simplex_shape(A);
  const auto& D = *S->cat;
  const auto& F = A->delta;
  const int top = std::min(Y->cap(), S->truncation);
  std::vector<int> sizes(D.object_count(), 0);
  std::vector<std::vector<std::string>> labels(D.object_count());
  for (ObjId n = 0; n < D.object_count(); ++n) {
    if (D.degree(n) > top) continue;
    sizes[n] = Y->size(F.on_objects[n]);
    if (Y->has_labels())
      for (int y = 0; y < sizes[n]; ++y) labels[n].push_back(Y->label(F.on_objects[n], y));
  }
  std::vector<std::vector<int>> actions(D.generators().size());
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const MorId u = D.generators()[gi];
    if (!gen_within(D, u, top)) continue;
    for (int y = 0; y < sizes[D.cod(u)]; ++y) actions[gi].push_back(Y->act(F.on_morphisms[u], y));
  }
  auto X = std::make_shared<Presheaf>(S, top, std::move(sizes), std::move(actions));
  if (Y->has_labels()) X->set_labels(std::move(labels));
  return X;
}

PresheafMap i_star(const PresheafMap& g) {
  const auto X = i_star(g.source), Y = i_star(g.target);
  const auto& F = g.source->shape().delta;
  if (g.source->shape().kind == ShapeKind::simplex) return g;
  const auto& D = X->cat();
  PresheafMap m{X, Y, std::vector<std::vector<int>>(D.object_count())};
  const int cap = m.cap();
  for (ObjId n = 0; n < D.object_count(); ++n)
    if (D.degree(n) <= cap)
      for (int x = 0; x < X->size(n); ++x) m.components[n].push_back(g(F.on_objects[n], x));
  return m;
}

int Extension::index(ObjId a, MorId t, int x) const {
  const auto& level = elements[a];
  const auto it = std::lower_bound(level.begin(), level.end(), std::make_pair(t, x));
  if (it == level.end() || *it != std::make_pair(t, x)) throw RangeError("no such element of the extension");
  return static_cast<int>(it - level.begin());
}

Extension i_shriek_crossed(const PresheafPtr& X, const ShapePtr& target) {
  if (!target->crossed || !target->has_delta()) throw ArgumentError("target has no crossed simplicial structure");
  if (X->shape_ptr() != simplex_shape(target)) throw ArgumentError("presheaf is not over the embedded simplex shape");
  const auto& C = *target->cat;
  const auto& F = target->delta;
  const auto& crossed = *target->crossed;
  if (static_cast<int>(F.on_objects.size()) != C.object_count())
    throw ArgumentError("free construction needs every object in the simplex image");
  const auto pre = F.preimage();
  std::vector<int> level_of(C.object_count(), -1);
  for (std::size_t n = 0; n < F.on_objects.size(); ++n) level_of[F.on_objects[n]] = static_cast<int>(n);
  const int top = std::min(X->cap(), target->truncation);

  Extension E;
  E.elements.resize(C.object_count());
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<std::string>> labels(C.object_count());
  std::vector<std::vector<MorId>> specials(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > top) continue;
    for (MorId t : C.automorphisms(a))
      if (crossed.special[t]) specials[a].push_back(t);
    std::sort(specials[a].begin(), specials[a].end());
    for (MorId t : specials[a])
      for (int x = 0; x < X->size(level_of[a]); ++x) {
        E.elements[a].emplace_back(t, x);
        labels[a].push_back("(" + C.morphism(t).id + "," + X->label(level_of[a], x) + ")");
      }
    sizes[a] = static_cast<int>(E.elements[a].size());
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const MorId u = C.generators()[gi];
    if (!gen_within(C, u, top)) continue;
    const ObjId s = C.dom(u), b = C.cod(u);
    for (const auto& [t, x] : E.elements[b]) {
      const auto fac = crossed_decompose(C, crossed, C.compose(t, u));
      const MorId phi = pre[fac.second];
      if (phi < 0) throw StructuralError("crossed factor outside the simplex image");
      actions[gi].push_back(E.index(s, fac.first, X->act(phi, x)));
    }
  }
  auto P = std::make_shared<Presheaf>(target, top, std::move(sizes), std::move(actions));
  P->set_labels(std::move(labels));
  const auto check = P->validate();
  if (!check.ok()) throw StructuralError("free construction violates a relation: " + check.violations.front().message);
  E.presheaf = P;
  return E;
}

Extension i_shriek_dendroidal(const PresheafPtr& X, const ShapePtr& target) {
  if (target->kind != ShapeKind::tree && target->kind != ShapeKind::planar_tree)
    throw ArgumentError("extension by zero targets a tree shape");
  if (X->shape_ptr() != simplex_shape(target)) throw ArgumentError("presheaf is not over the embedded simplex shape");
  const auto& C = *target->cat;
  const auto& F = target->delta;
  const auto pre = F.preimage();
  std::vector<int> level_of(C.object_count(), -1);
  for (std::size_t n = 0; n < F.on_objects.size(); ++n) level_of[F.on_objects[n]] = static_cast<int>(n);
  const int top = std::min(X->cap(), target->truncation);

  Extension E;
  E.elements.resize(C.object_count());
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<std::string>> labels(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > top || level_of[a] < 0) continue;
    for (int x = 0; x < X->size(level_of[a]); ++x) {
      E.elements[a].emplace_back(C.identity(a), x);
      labels[a].push_back(X->label(level_of[a], x));
    }
    sizes[a] = static_cast<int>(E.elements[a].size());
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const MorId u = C.generators()[gi];
    if (!gen_within(C, u, top) || sizes[C.cod(u)] == 0) continue;
    if (pre[u] < 0) throw StructuralError("simplex image is not a sieve at " + C.morphism(u).id);
    for (int x = 0; x < sizes[C.cod(u)]; ++x) actions[gi].push_back(X->act(pre[u], x));
  }
  auto P = std::make_shared<Presheaf>(target, top, std::move(sizes), std::move(actions));
  P->set_labels(std::move(labels));
  E.presheaf = P;
  return E;
}

Extension i_shriek(const PresheafPtr& X, const ShapePtr& target) {
  if (target->kind == ShapeKind::tree || target->kind == ShapeKind::planar_tree)
    return i_shriek_dendroidal(X, target);
  return i_shriek_crossed(X, target);
}

PresheafMap i_shriek_map(const PresheafMap& f, const Extension& source, const Extension& target) {
  const auto& C = source.presheaf->cat();
  PresheafMap m{source.presheaf, target.presheaf, std::vector<std::vector<int>>(C.object_count())};
  const auto& F = source.presheaf->shape().delta;
  std::vector<int> level_of(C.object_count(), -1);
  for (std::size_t n = 0; n < F.on_objects.size(); ++n) level_of[F.on_objects[n]] = static_cast<int>(n);
  const int cap = m.cap();
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    for (const auto& [t, x] : source.elements[a]) m.components[a].push_back(target.index(a, t, f(level_of[a], x)));
  }
  return m;
}

namespace {

std::vector<int> flatten(const Components& c) {
  std::vector<int> out;
  for (const auto& level : c) {
    out.push_back(static_cast<int>(level.size()));
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace

AdjunctionReport adjunction_check(const PresheafPtr& X, const PresheafPtr& Y, const HomSearchOptions& opts) {
  const auto& A = Y->shape_ptr();
  const int top = std::min(X->cap(), Y->cap());
  const auto Xt = truncate(X, std::min(top, X->cap()));
  const auto Yt = truncate(Y, std::min(top, Y->cap()));
  const auto E = i_shriek(Xt, A);
  const auto Ys = i_star(Yt);
  const auto& C = *A->cat;
  const auto& D = Xt->cat();
  const auto& F = A->delta;

  AdjunctionReport rep;
  std::vector<Components> lefts, rights;
  rep.left = hom_search(*E.presheaf, *Yt, opts, [&](const Components& c) {
    lefts.push_back(c);
    return true;
  });
  rep.right = hom_search(*Xt, *Ys, opts, [&](const Components& c) {
    rights.push_back(c);
    return true;
  });

  // Psi(phi) = phi o unit;  Phi(psi)(t, x) = psi(x) . t.
  auto Psi = [&](const Components& phi) {
    Components psi(D.object_count());
    for (ObjId n = 0; n < D.object_count(); ++n) {
      if (D.degree(n) > top) continue;
      const ObjId a = F.on_objects[n];
      for (int x = 0; x < Xt->size(n); ++x) psi[n].push_back(phi[a][E.index(a, C.identity(a), x)]);
    }
    return psi;
  };
  std::vector<int> level_of(C.object_count(), -1);
  for (std::size_t n = 0; n < F.on_objects.size(); ++n) level_of[F.on_objects[n]] = static_cast<int>(n);
  auto Phi = [&](const Components& psi) {
    Components phi(C.object_count());
    for (ObjId a = 0; a < C.object_count(); ++a) {
      if (C.degree(a) > top) continue;
      for (const auto& [t, x] : E.elements[a]) phi[a].push_back(Yt->act(t, psi[level_of[a]][x]));
    }
    return phi;
  };

  std::set<std::vector<int>> left_set, right_set;
  for (const auto& c : lefts) left_set.insert(flatten(c));
  for (const auto& c : rights) right_set.insert(flatten(c));
  rep.bijection = rep.left == rep.right;
  if (!rep.bijection) rep.witness = "hom-set sizes differ";
  for (std::size_t k = 0; k < lefts.size() && rep.bijection; ++k) {
    const auto psi = Psi(lefts[k]);
    if (!right_set.count(flatten(psi))) {
      rep.bijection = false;
      rep.witness = "Psi of left map " + std::to_string(k) + " is not a map X -> i^*Y";
    } else if (flatten(Phi(psi)) != flatten(lefts[k])) {
      rep.bijection = false;
      rep.witness = "Phi(Psi(phi)) != phi for left map " + std::to_string(k);
    }
  }
  for (std::size_t k = 0; k < rights.size() && rep.bijection; ++k) {
    const auto phi = Phi(rights[k]);
    if (!left_set.count(flatten(phi))) {
      rep.bijection = false;
      rep.witness = "Phi of right map " + std::to_string(k) + " is not a map i_!X -> Y";
    } else if (flatten(Psi(phi)) != flatten(rights[k])) {
      rep.bijection = false;
      rep.witness = "Psi(Phi(psi)) != psi for right map " + std::to_string(k);
    }
  }
  return rep;
}

PredicateResult shriek_product_check(const PresheafPtr& X, const PresheafPtr& Y, const ShapePtr& target) {
  const auto XY = product(X, Y);
  const auto EX = i_shriek(X, target), EY = i_shriek(Y, target);
  const auto EXY = i_shriek(XY.presheaf, target);
  const auto P = product(EX.presheaf, EY.presheaf);
  const auto& C = *target->cat;
  const auto& F = target->delta;
  std::vector<int> level_of(C.object_count(), -1);
  for (std::size_t n = 0; n < F.on_objects.size(); ++n) level_of[F.on_objects[n]] = static_cast<int>(n);
  PresheafMap m{EXY.presheaf, P.presheaf, std::vector<std::vector<int>>(C.object_count())};
  const int cap = m.cap();
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    for (const auto& [t, z] : EXY.elements[a]) {
      const int n = level_of[a];
      m.components[a].push_back(
          P.pair(a, EX.index(a, t, XY.p1(n, z)), EY.index(a, t, XY.p2(n, z))));
    }
  }
  PredicateResult r;
  for (ObjId a = 0; a < C.object_count() && r.holds; ++a)
    if (C.degree(a) <= cap && EXY.presheaf->size(a) != P.presheaf->size(a)) {
      r.holds = false;
      r.witness = "level " + C.object(a).id + ": " + std::to_string(EXY.presheaf->size(a)) + " elements against " +
                  std::to_string(P.presheaf->size(a));
    }
  if (r.holds && !validate_map(m).ok()) {
    r.holds = false;
    r.witness = "comparison map is not natural";
  }
  if (r.holds && !is_iso(m)) {
    r.holds = false;
    r.witness = "comparison map is not bijective";
  }
  return r;
}

}  // namespace augcat
