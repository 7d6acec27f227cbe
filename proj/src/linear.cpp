#include "augcat/errors.hpp"
#include "augcat/presheaf.hpp"

namespace augcat {

LinearityCertificate certify_linear(const PresheafMap& f, int max_cells) {
  LinearityCertificate cert;
  const auto& shape = f.target->shape_ptr();
  const auto& C = *shape->cat;
  const auto& Y = *f.target;
  if (!is_mono(f)) {
    cert.steps.push_back("not a monomorphism");
    return cert;
  }
  if (!shape->has_delta()) {
    cert.steps.push_back("shape has no simplex embedding");
    return cert;
  }
  const int cap = f.cap();
  Subobject S = image(f);
  const auto nd = nondegenerate(Y);
  std::vector<ObjId> cells;
  for (ObjId a : shape->delta.on_objects)
    if (C.degree(a) <= cap) cells.push_back(a);
  std::vector<std::optional<Subobject>> bd(C.object_count());

  for (int step = 0; step <= max_cells; ++step) {
    bool complete = true;
    for (ObjId a = 0; a < C.object_count() && complete; ++a)
      if (C.degree(a) <= cap)
        for (char c : S.selected[a])
          if (!c) {
            complete = false;
            break;
          }
    if (complete) {
      cert.verdict = Linearity::linear;
      return cert;
    }
    if (step == max_cells) break;
    bool attached = false;
    for (ObjId a : cells) {
      if (!bd[a]) bd[a] = boundary(shape, a);
      const auto& B = *bd[a];
      for (int y = 0; y < Y.size(a) && !attached; ++y) {
        if (S.selected[a][y] || !nd[a][y]) continue;
        bool ok = true;
        std::vector<std::vector<char>> hit(C.object_count());
        for (ObjId t = 0; t < C.object_count() && ok; ++t) {
          if (C.degree(t) > cap) continue;
          hit[t].assign(Y.size(t), 0);
          const auto homs = C.hom(t, a);
          for (int e = 0; e < homs.size() && ok; ++e) {
            const int v = Y.act(homs[e], y);
            if (B.selected[t][e]) {
              ok = S.selected[t][v] != 0;
            } else {
              ok = !S.selected[t][v] && !hit[t][v];
              hit[t][v] = 1;
            }
          }
        }
        if (!ok) continue;
        const auto cell = generated_subobject(f.target, {{a, y}});
        for (ObjId t = 0; t < C.object_count(); ++t)
          for (std::size_t v = 0; v < S.selected[t].size(); ++v)
            if (cell.selected[t][v]) S.selected[t][v] = 1;
        cert.steps.push_back("attach " + C.object(a).id + " at " + Y.label(a, y));
        attached = true;
      }
      if (attached) break;
    }
    if (!attached) {
      cert.steps.push_back("no attachable cell");
      return cert;
    }
  }
  cert.steps.push_back("cell limit reached");
  return cert;
}

PushoutProductResult pushout_product_check(const PresheafMap& f, const PresheafMap& g) {
  if (!is_mono(f) || !is_mono(g)) throw ArgumentError("pushout-product inputs must be monomorphisms");
  const auto& C = f.source->cat();
  const auto& X = f.source;
  const auto& Y = f.target;
  const auto& Xp = g.source;
  const auto& K = g.target;
  const auto XK = product(X, K);
  const auto XX = product(X, Xp);
  const auto YX = product(Y, Xp);
  const auto YK = product(Y, K);
  const int cap = XX.presheaf->cap();
  const int n = C.object_count();

  PresheafMap a{XX.presheaf, XK.presheaf, std::vector<std::vector<int>>(n)};
  PresheafMap b{XX.presheaf, YX.presheaf, std::vector<std::vector<int>>(n)};
  for (ObjId t = 0; t < n; ++t) {
    if (C.degree(t) > cap) continue;
    for (int e = 0; e < XX.presheaf->size(t); ++e) {
      const int x = XX.p1(t, e), xp = XX.p2(t, e);
      a.components[t].push_back(XK.pair(t, x, g(t, xp)));
      b.components[t].push_back(YX.pair(t, f(t, x), xp));
    }
  }
  const auto P = pushout(a, b);
  PresheafMap m{P.presheaf, YK.presheaf, std::vector<std::vector<int>>(n)};
  for (ObjId t = 0; t < n; ++t) {
    if (C.degree(t) > cap) continue;
    m.components[t].assign(P.presheaf->size(t), -1);
    for (int e = 0; e < XK.presheaf->size(t); ++e)
      m.components[t][P.i1(t, e)] = YK.pair(t, f(t, XK.p1(t, e)), XK.p2(t, e));
    for (int e = 0; e < YX.presheaf->size(t); ++e)
      m.components[t][P.i2(t, e)] = YK.pair(t, YX.p1(t, e), g(t, YX.p2(t, e)));
  }
  PushoutProductResult r;
  const auto verdict = is_normal_mono(m);
  r.normal_mono = verdict.holds;
  r.witness = verdict.witness;
  r.f_linear = certify_linear(f).verdict;
  r.g_linear = certify_linear(g).verdict;
  r.map = std::move(m);
  return r;
}

}  // namespace augcat
