#include "augcat/homotopy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "augcat/errors.hpp"

namespace augcat {

namespace {

using Key = std::vector<int>;

// Values of x in X_a on the elements of a subobject of A[a], listed by the
// inclusion's components.
Key restrict_element(const Presheaf& X, ObjId a, int x, const PresheafMap& inc, int cap) {
  const auto& C = X.cat();
  Key key;
  for (ObjId t = 0; t < C.object_count(); ++t) {
    if (C.degree(t) > cap) continue;
    const MorId base = C.hom(t, a).first;
    for (int e : inc.components[t]) key.push_back(X.act(base + e, x));
  }
  return key;
}

Key flatten(const Components& c, const FiniteCategory& C, int cap) {
  Key key;
  for (ObjId t = 0; t < C.object_count(); ++t)
    if (C.degree(t) <= cap) key.insert(key.end(), c[t].begin(), c[t].end());
  return key;
}

std::string describe(const Presheaf& X, const Components& c, const FiniteCategory& C, int cap) {
  std::string s;
  int shown = 0;
  for (ObjId t = 0; t < C.object_count() && shown < 12; ++t) {
    if (C.degree(t) > cap) continue;
    for (std::size_t e = 0; e < c[t].size() && shown < 12; ++e, ++shown)
      s += (s.empty() ? "" : " ") + C.object(t).id + ":" + X.label(t, c[t][e]);
  }
  return s;
}

struct HornScan {
  std::uint64_t maps = 0;
  std::vector<std::uint64_t> fibres;
  std::string first_unfilled;
};

HornScan scan_horn(const PresheafPtr& X, ObjId a, MorId f, int cap, const HomSearchOptions& opts) {
  const auto& C = X->cat();
  const auto inc = subobject_inclusion(horn(X->shape_ptr(), a, f));
  std::map<Key, std::uint64_t> fillers;
  for (int x = 0; x < X->size(a); ++x) ++fillers[restrict_element(*X, a, x, inc, cap)];
  HornScan scan;
  HomSearchOptions o = opts;
  o.cap = cap;
  scan.maps = hom_search(*inc.source, *X, o, [&](const Components& c) {
    const auto it = fillers.find(flatten(c, C, cap));
    const std::uint64_t n = it == fillers.end() ? 0 : it->second;
    scan.fibres.push_back(n);
    if (n == 0 && scan.first_unfilled.empty()) scan.first_unfilled = describe(*X, c, C, cap);
    return true;
  });
  return scan;
}

}  // namespace

KanReport is_kan(const PresheafPtr& X, int deg_cap, const HomSearchOptions& opts) {
  KanReport out;
  out.report.name = "kan";
  const auto& C = X->cat();
  const int cap = X->cap();
  const int top = std::min(deg_cap, cap);
  out.report.truncation = top;
  for (ObjId a : C.objects_by_degree()) {
    if (C.degree(a) > top) continue;
    for (MorId f : elementary_faces(X->shape(), a)) {
      const auto scan = scan_horn(X, a, f, cap, opts);
      HornCount hc{a, f, scan.maps, 0, 0};
      for (auto n : scan.fibres) {
        if (n == 0) ++hc.unfilled;
        hc.max_fillers = std::max(hc.max_fillers, n);
      }
      if (hc.unfilled)
        out.report.add("horn", "horn of " + C.object(a).id + " missing " + C.morphism(f).id + ": map {" +
                                   scan.first_unfilled + "} has no filler",
                       {f});
      out.horns.push_back(hc);
    }
  }
  return out;
}

PredicateResult has_rlp(const PresheafMap& p, const PresheafMap& i, const HomSearchOptions& opts) {
  PredicateResult r;
  const auto& E = p.source;
  const auto& B = p.target;
  const auto& K = i.source;
  const auto& L = i.target;
  const auto& C = E->cat();
  const int cap = std::min(p.cap(), i.cap());
  HomSearchOptions ov = opts;
  ov.cap = cap;
  hom_search(*L, *B, ov, [&](const Components& v) {
    HomSearchOptions ou = opts;
    ou.cap = cap;
    ou.allow = [&](ObjId t, int k, int e) { return p(t, e) == v[t][i(t, k)]; };
    hom_search(*K, *E, ou, [&](const Components& u) {
      Components fixed(C.object_count());
      for (ObjId t = 0; t < C.object_count(); ++t) {
        if (C.degree(t) > cap) continue;
        fixed[t].assign(L->size(t), -1);
        for (std::size_t k = 0; k < u[t].size(); ++k) fixed[t][i(t, static_cast<int>(k))] = u[t][k];
      }
      HomSearchOptions ow = opts;
      ow.cap = cap;
      ow.limit = 1;
      ow.fixed = &fixed;
      ow.allow = [&](ObjId t, int l, int e) { return p(t, e) == v[t][l]; };
      if (hom_search(*L, *E, ow, [](const Components&) { return false; }) == 0) {
        r.holds = false;
        r.witness = "square with bottom {" + describe(*B, v, C, cap) + "} has no diagonal";
      }
      return r.holds;
    });
    return r.holds;
  });
  return r;
}

Cylinder cylinder(const PresheafPtr& X) {
  const auto& shape = X->shape();
  const auto& C = X->cat();
  if (!shape.has_delta() || shape.delta.on_objects.size() < 2)
    throw ArgumentError("cylinder needs the simplicial interval inside the shape");
  const ObjId p0 = shape.delta.on_objects[0], p1 = shape.delta.on_objects[1];
  for (ObjId b = 0; b < C.object_count(); ++b)
    if (C.degree(b) <= X->cap() && C.hom(b, p0).size() != 1)
      throw ArgumentError("cylinder needs the image of the point to be terminal; " + C.object(b).id + " has " +
                          std::to_string(C.hom(b, p0).size()) + " maps to it");
  const auto& S = *shape.delta.source;
  MorId vertex[2];
  for (int e = 0; e < 2; ++e) vertex[e] = shape.delta.on_morphisms[*S.find(0, 1, Code{e})];
  const auto I = representable(X->shape_ptr(), p1);
  Cylinder cyl;
  cyl.product = product(X, I);
  cyl.presheaf = cyl.product.presheaf;
  const int n = C.object_count();
  cyl.i0 = {X, cyl.presheaf, Components(n)};
  cyl.i1 = {X, cyl.presheaf, Components(n)};
  for (ObjId b = 0; b < n; ++b) {
    if (C.degree(b) > cyl.presheaf->cap()) continue;
    const MorId to_point = C.hom(b, p0).first;
    const MorId base = C.hom(b, p1).first;
    const int e0 = C.compose(vertex[0], to_point) - base;
    const int e1 = C.compose(vertex[1], to_point) - base;
    for (int x = 0; x < X->size(b); ++x) {
      cyl.i0.components[b].push_back(cyl.product.pair(b, x, e0));
      cyl.i1.components[b].push_back(cyl.product.pair(b, x, e1));
    }
  }
  cyl.collapse = cyl.product.p1;
  return cyl;
}

HomotopyResult homotopic(const PresheafMap& f, const PresheafMap& g, const Subobject* rel,
                         const HomSearchOptions& opts) {
  HomotopyResult out;
  const auto cyl = cylinder(f.source);
  const auto& C = f.source->cat();
  const auto& P = *cyl.presheaf;
  const int cap = std::min(P.cap(), f.target->cap());
  Components fixed(C.object_count());
  for (ObjId b = 0; b < C.object_count(); ++b) {
    if (C.degree(b) > cap) continue;
    fixed[b].assign(P.size(b), -1);
    const int ni = cyl.product.sizes2[b];
    for (int x = 0; x < f.source->size(b); ++x) {
      fixed[b][cyl.i0(b, x)] = f(b, x);
      fixed[b][cyl.i1(b, x)] = g(b, x);
      if (rel && rel->contains(b, x)) {
        if (f(b, x) != g(b, x)) return out;
        for (int t = 0; t < ni; ++t) fixed[b][cyl.product.pair(b, x, t)] = f(b, x);
      }
    }
  }
  HomSearchOptions o = opts;
  o.cap = cap;
  o.fixed = &fixed;
  if (auto H = find_map(cyl.presheaf, f.target, o)) {
    out.homotopic = true;
    out.witness = std::move(H);
  }
  return out;
}

HomotopyClassSet pi_a(const PresheafPtr& X, int basepoint, ObjId a, const HomSearchOptions& opts) {
  const auto& shape = X->shape();
  const auto& C = X->cat();
  if (!shape.has_delta()) throw ArgumentError("pi_a needs a simplex embedding");
  const ObjId p0 = shape.delta.on_objects[0];
  if (basepoint < 0 || basepoint >= X->size(p0)) throw RangeError("basepoint outside the point level");
  const int d = C.degree(a);
  const auto kan = is_kan(X, std::min(d + 1, X->cap()), opts);
  if (!kan.ok()) throw ArgumentError("pi_a needs a Kan complex: " + kan.report.violations.front().message);

  HomotopyClassSet out;
  out.object = a;
  out.basepoint = basepoint;
  const auto pt = generated_subobject(X, {{p0, basepoint}});
  const auto B = boundary(X->shape_ptr(), a);
  const auto& A = B.parent;
  for (int x = 0; x < X->size(a); ++x) {
    bool ok = true;
    for (ObjId t = 0; t < C.object_count() && ok; ++t) {
      if (C.degree(t) > X->cap()) continue;
      const auto homs = C.hom(t, a);
      for (int e = 0; e < homs.size() && ok; ++e)
        if (B.selected[t][e]) ok = pt.selected[t][X->act(homs[e], x)] != 0;
    }
    if (ok) out.representatives.push_back(x);
  }
  const int m = static_cast<int>(out.representatives.size());
  std::vector<PresheafMap> maps;
  for (int x : out.representatives) maps.push_back(yoneda_map(A, X, a, x));
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const bool rel = homotopic(maps[i], maps[j], &B, opts).homotopic || homotopic(maps[j], maps[i], &B, opts).homotopic;
      if (!rel) continue;
      ++out.raw_pairs;
      parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
    }
  out.class_of.assign(m, -1);
  std::vector<int> id(m, -1);
  std::vector<std::uint64_t> sizes;
  for (int i = 0; i < m; ++i) {
    const int r = find(i);
    if (id[r] < 0) {
      id[r] = out.class_count++;
      sizes.push_back(0);
    }
    out.class_of[i] = id[r];
    ++sizes[id[r]];
  }
  std::uint64_t closed = 0;
  for (auto s : sizes) closed += s * (s - 1) / 2;
  out.closure_added = closed - out.raw_pairs;
  return out;
}

bool set_surjective(std::uint64_t, const std::vector<std::uint64_t>& fibres) {
  return std::all_of(fibres.begin(), fibres.end(), [](std::uint64_t n) { return n > 0; });
}

KanReport is_hypergroupoid(const PresheafPtr& X, int n, int deg_cap, const SurjectivityPredicate& covering,
                           const HomSearchOptions& opts) {
  KanReport out;
  out.report.name = "hypergroupoid";
  const auto& C = X->cat();
  const int cap = X->cap();
  const int top = std::min(deg_cap, cap);
  out.report.truncation = top;
  for (ObjId a : C.objects_by_degree()) {
    const int d = C.degree(a);
    if (d > top) continue;
    for (MorId f : elementary_faces(X->shape(), a)) {
      const auto scan = scan_horn(X, a, f, cap, opts);
      HornCount hc{a, f, scan.maps, 0, 0};
      for (auto k : scan.fibres) {
        if (k == 0) ++hc.unfilled;
        hc.max_fillers = std::max(hc.max_fillers, k);
      }
      if (!covering(static_cast<std::uint64_t>(X->size(a)), scan.fibres))
        out.report.add("covering", "horn map at " + C.object(a).id + " missing " + C.morphism(f).id +
                                       " is not covering" +
                                       (scan.first_unfilled.empty() ? "" : ": {" + scan.first_unfilled + "}"),
                       {f});
      if (d > n && hc.max_fillers > 1)
        out.report.add("bijective", "horn map at " + C.object(a).id + " missing " + C.morphism(f).id + " has " +
                                        std::to_string(hc.max_fillers) + " fillers for one horn",
                       {f});
      out.horns.push_back(hc);
    }
  }
  return out;
}

CheckReport is_trivial_relative_hypergroupoid(const PresheafMap& f, int n, int deg_cap, const HomSearchOptions& opts) {
  CheckReport rep;
  rep.name = "trivial relative hypergroupoid";
  const auto& X = *f.source;
  const auto& Y = *f.target;
  const auto& C = X.cat();
  const int cap = f.cap();
  const int top = std::min(deg_cap, cap);
  rep.truncation = top;
  for (ObjId a : C.objects_by_degree()) {
    const int d = C.degree(a);
    if (d > top) continue;
    const auto inc = subobject_inclusion(boundary(X.shape_ptr(), a));
    std::vector<std::map<Key, std::uint64_t>> fibres(Y.size(a));
    for (int x = 0; x < X.size(a); ++x) ++fibres[f(a, x)][restrict_element(X, a, x, inc, cap)];
    bool reported = false;
    for (int y = 0; y < Y.size(a) && !reported; ++y) {
      HomSearchOptions o = opts;
      o.cap = cap;
      o.allow = [&](ObjId t, int e, int v) {
        return f(t, v) == Y.act(C.hom(t, a).first + inc.components[t][e], y);
      };
      hom_search(*inc.source, X, o, [&](const Components& c) {
        const auto it = fibres[y].find(flatten(c, C, cap));
        const std::uint64_t k = it == fibres[y].end() ? 0 : it->second;
        if (k == 0) {
          rep.add("surjective", "at " + C.object(a).id + ": boundary datum over " + Y.label(a, y) +
                                    " has no preimage: {" + describe(X, c, C, cap) + "}");
          reported = true;
        } else if (k > 1 && d >= n) {
          rep.add("bijective", "at " + C.object(a).id + ": boundary datum over " + Y.label(a, y) + " has " +
                                   std::to_string(k) + " preimages");
          reported = true;
        }
        return !reported;
      });
    }
  }
  return rep;
}

PredicateResult check_cosk_identity(const PresheafMap& f, int n) {
  if (n < 1) throw ArgumentError("the coskeletal identity needs n >= 1");
  const auto pre = is_trivial_relative_hypergroupoid(f, n, f.cap());
  if (!pre.ok()) throw ArgumentError("not a trivial relative hypergroupoid: " + pre.violations.front().message);
  const auto& X = f.source;
  const auto& Y = f.target;
  const auto& C = X->cat();
  const auto CX = coskeleton(truncate(X, n - 1), n - 1);
  const auto CY = coskeleton(truncate(Y, n - 1), n - 1);
  const auto uX = cosk_unit(X, CX);
  const auto uY = cosk_unit(Y, CY);
  const auto cf = cosk_map(f, CX, CY);
  const auto PB = pullback(uY, cf);
  PredicateResult r;
  const int cap = std::min(f.cap(), PB.presheaf->cap());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    std::map<std::pair<int, int>, int> index;
    for (int e = 0; e < PB.presheaf->size(a); ++e) index[{PB.p1(a, e), PB.p2(a, e)}] = e;
    std::vector<char> hit(PB.presheaf->size(a), 0);
    for (int x = 0; x < X->size(a); ++x) {
      const auto it = index.find({f(a, x), uX(a, x)});
      if (it == index.end() || hit[it->second]) {
        r.holds = false;
        r.witness = "comparison not injective at " + C.object(a).id;
        return r;
      }
      hit[it->second] = 1;
    }
    if (X->size(a) != PB.presheaf->size(a)) {
      r.holds = false;
      r.witness = "comparison not surjective at " + C.object(a).id + ": " + std::to_string(X->size(a)) + " vs " +
                  std::to_string(PB.presheaf->size(a));
      return r;
    }
  }
  return r;
}

namespace {

struct Sum {
  PresheafPtr presheaf;
  std::vector<PresheafMap> inc;
};

Sum sum_of(const ShapePtr& shape, int cap, const std::vector<PresheafPtr>& parts) {
  Sum s{empty_presheaf(shape, cap), {}};
  for (const auto& p : parts) {
    const auto cp = coproduct(s.presheaf, p);
    for (auto& m : s.inc) m = compose(cp.i1, m);
    s.inc.push_back(cp.i2);
    s.presheaf = cp.presheaf;
  }
  return s;
}

// The map out of a sum given one map per summand.
Components copair(const Sum& s, const std::vector<Components>& maps) {
  const auto& C = s.presheaf->cat();
  Components out(C.object_count());
  for (ObjId t = 0; t < C.object_count(); ++t)
    if (s.presheaf->defined(t)) out[t].assign(s.presheaf->size(t), -1);
  for (std::size_t i = 0; i < s.inc.size(); ++i)
    for (ObjId t = 0; t < C.object_count(); ++t)
      for (std::size_t e = 0; e < s.inc[i].components[t].size(); ++e)
        out[t][s.inc[i].components[t][e]] = maps[i][t][e];
  return out;
}

}  // namespace

PresheafMap random_trivial_relative(const PresheafPtr& Y, int n, std::mt19937_64& rng) {
  if (n < 1) throw ArgumentError("need n >= 1");
  const auto& shape = Y->shape_ptr();
  const auto& C = Y->cat();
  const int cap = Y->cap();
  const auto idY = identity_map(Y);

  std::vector<PresheafPtr> parts{Y};
  std::vector<Components> to_Y{idY.components};
  if (rng() % 2) {
    parts.push_back(Y);
    to_Y.push_back(idY.components);
  }
  RandomPresheafOptions ro;
  ro.pieces = 1 + static_cast<int>(rng() % 2);
  ro.max_piece_degree = std::min(1, shape->truncation);
  ro.identifications = static_cast<int>(rng() % 3);
  auto R = truncate(random_presheaf(shape, rng, ro), cap);
  std::vector<PresheafMap> maps;
  HomSearchOptions lim;
  lim.limit = 64;
  maps = hom_enumerate(R, Y, lim);
  if (!maps.empty()) {
    parts.push_back(R);
    to_Y.push_back(maps[rng() % maps.size()].components);
  }
  auto s = sum_of(shape, cap, parts);
  PresheafMap f{s.presheaf, Y, copair(s, to_Y)};

  for (int d = 0; d < n && d <= cap; ++d) {
    std::vector<PresheafPtr> bparts, aparts;
    std::vector<Components> phis, incs, ys;
    for (ObjId a = 0; a < C.object_count(); ++a) {
      if (C.degree(a) != d) continue;
      const auto inc = subobject_inclusion(boundary(shape, a));
      const auto A = truncate(representable(shape, a), cap);
      std::vector<std::set<Key>> have(Y->size(a));
      for (int x = 0; x < f.source->size(a); ++x) have[f(a, x)].insert(restrict_element(*f.source, a, x, inc, cap));
      for (int y = 0; y < Y->size(a); ++y) {
        HomSearchOptions o;
        o.cap = cap;
        o.allow = [&](ObjId t, int e, int v) {
          return f(t, v) == Y->act(C.hom(t, a).first + inc.components[t][e], y);
        };
        hom_search(*inc.source, *f.source, o, [&](const Components& c) {
          if (have[y].count(flatten(c, C, cap))) return true;
          bparts.push_back(truncate(inc.source, cap));
          aparts.push_back(A);
          phis.push_back(c);
          incs.push_back(inc.components);
          ys.push_back(yoneda_map(A, Y, a, y).components);
          return true;
        });
      }
    }
    if (bparts.empty()) continue;
    const auto Bs = sum_of(shape, cap, bparts);
    const auto As = sum_of(shape, cap, aparts);
    std::vector<Components> j;
    for (std::size_t i = 0; i < incs.size(); ++i) {
      Components m(C.object_count());
      for (ObjId t = 0; t < C.object_count(); ++t)
        for (int e : incs[i][t]) m[t].push_back(As.inc[i].components[t][e]);
      j.push_back(std::move(m));
    }
    const PresheafMap phi{Bs.presheaf, f.source, copair(Bs, phis)};
    const PresheafMap jm{Bs.presheaf, As.presheaf, copair(Bs, j)};
    const PresheafMap yA{As.presheaf, Y, copair(As, ys)};
    const auto P = pushout(phi, jm);
    PresheafMap g{P.presheaf, Y, Components(C.object_count())};
    for (ObjId t = 0; t < C.object_count(); ++t) {
      if (C.degree(t) > cap) continue;
      g.components[t].assign(P.presheaf->size(t), -1);
      for (int x = 0; x < f.source->size(t); ++x) g.components[t][P.i1(t, x)] = f(t, x);
      for (int x = 0; x < As.presheaf->size(t); ++x) g.components[t][P.i2(t, x)] = yA(t, x);
    }
    f = std::move(g);
  }

  const auto CX = coskeleton(truncate(f.source, n - 1), n - 1);
  const auto CY = coskeleton(truncate(Y, n - 1), n - 1);
  const auto PB = pullback(cosk_unit(Y, CY), cosk_map(f, CX, CY));
  auto X = truncate(PB.presheaf, cap);
  PresheafMap out{X, Y, PB.p1.components};
  return out;
}

}  // namespace augcat
