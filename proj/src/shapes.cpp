#include "augcat/shapes.hpp"

#include <functional>

#include "augcat/checks.hpp"
#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"

namespace augcat {

const char* to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::simplex: return "simplex";
    case ShapeKind::cyclic: return "cyclic";
    case ShapeKind::planar_tree: return "planar-tree";
    case ShapeKind::tree: return "tree";
    case ShapeKind::amalgam: return "amalgam";
    case ShapeKind::custom: return "custom";
  }
  return "?";
}

ShapeKind shape_kind_from_string(std::string_view s) {
  if (s == "simplex") return ShapeKind::simplex;
  if (s == "cyclic") return ShapeKind::cyclic;
  if (s == "planar-tree") return ShapeKind::planar_tree;
  if (s == "tree") return ShapeKind::tree;
  if (s == "amalgam") return ShapeKind::amalgam;
  if (s == "custom") return ShapeKind::custom;
  throw ArgumentError("unknown shape kind '" + std::string(s) + "'");
}

std::vector<MorphismClass> classify(const FiniteCategory& cat, const ReedyStructure& reedy) {
  std::vector<MorphismClass> out(cat.morphism_count(), MorphismClass::mixed);
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    if (cat.is_identity(f))
      out[f] = MorphismClass::identity;
    else if (cat.is_iso(f))
      out[f] = MorphismClass::automorphism;
    else if (reedy.plus[f])
      out[f] = MorphismClass::face;
    else if (reedy.minus[f])
      out[f] = MorphismClass::degeneracy;
  }
  return out;
}

namespace {

void monotone_maps(int m, int n, const std::function<void(const Code&)>& visit) {
  Code c;
  c.resize(m + 1);
  std::function<void(int, int)> rec = [&](int i, int lo) {
    if (i > m) {
      visit(c);
      return;
    }
    for (int x = lo; x <= n; ++x) {
      c.set(i, x);
      rec(i + 1, x);
    }
  };
  rec(0, 0);
}

bool injective_code(const Code& c, int card) {
  std::vector<char> seen(card, 0);
  for (int i = 0; i < c.size(); ++i) {
    if (seen[c[i]]) return false;
    seen[c[i]] = 1;
  }
  return true;
}

bool surjective_code(const Code& c, int card) {
  std::vector<char> seen(card, 0);
  for (int i = 0; i < c.size(); ++i) seen[c[i]] = 1;
  for (char s : seen)
    if (!s) return false;
  return true;
}

// Members of `candidates` that are not composites of two members.
std::vector<MorId> irreducible(const FiniteCategory& cat, const std::vector<char>& candidates) {
  std::vector<std::vector<MorId>> into(cat.object_count()), from(cat.object_count());
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    if (candidates[f]) {
      into[cat.cod(f)].push_back(f);
      from[cat.dom(f)].push_back(f);
    }
  std::vector<char> composite(cat.morphism_count(), 0);
  for (ObjId c = 0; c < cat.object_count(); ++c)
    for (MorId f : into[c])
      for (MorId g : from[c]) composite[cat.compose(g, f)] = 1;
  std::vector<MorId> out;
  for (MorId f = 0; f < cat.morphism_count(); ++f)
    if (candidates[f] && !composite[f]) out.push_back(f);
  return out;
}

FunctorData delta_embedding(const std::shared_ptr<const FiniteCategory>& delta,
                            const std::shared_ptr<const FiniteCategory>& target,
                            const std::vector<ObjId>& objects,
                            const std::function<Code(const Code&, int, int)>& translate) {
  FunctorData F;
  F.source = delta;
  F.target = target;
  F.on_objects = objects;
  for (MorId f = 0; f < delta->morphism_count(); ++f) {
    const auto& m = delta->morphism(f);
    const ObjId a = objects[m.dom], b = objects[m.cod];
    auto g = target->find(a, b, translate(m.code, m.dom, m.cod));
    if (!g) throw StructuralError("simplex morphism " + m.id + " has no image");
    F.on_morphisms.push_back(*g);
  }
  return F;
}

std::shared_ptr<FiniteCategory> build_simplex_category(int max_degree) {
  CategoryBuilder B(LawKind::function);
  for (int n = 0; n <= max_degree; ++n) B.add_object({"[" + std::to_string(n) + "]", n, n + 1, n});
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; n <= max_degree; ++n) monotone_maps(m, n, [&](const Code& c) { B.add_morphism(m, n, c); });
  return B.build();
}

}  // namespace

ShapePtr build_simplex(int max_degree) {
  if (max_degree < 0) throw ArgumentError("negative truncation");
  auto cat = build_simplex_category(max_degree);
  auto shape = std::make_shared<ShapeCategory>();
  shape->kind = ShapeKind::simplex;
  shape->truncation = max_degree;
  const int n = cat->morphism_count();
  shape->reedy.plus.assign(n, 0);
  shape->reedy.minus.assign(n, 0);
  std::vector<MorId> faces, degens;
  for (MorId f = 0; f < n; ++f) {
    const auto& m = cat->morphism(f);
    const int card = cat->object(m.cod).card;
    shape->reedy.plus[f] = injective_code(m.code, card);
    shape->reedy.minus[f] = surjective_code(m.code, card);
    const int d = cat->degree(m.cod) - cat->degree(m.dom);
    if (shape->reedy.plus[f] && d == 1) faces.push_back(f);
    if (shape->reedy.minus[f] && d == -1) degens.push_back(f);
  }
  cat->assign_words({degens, faces});
  cat->set_classes(classify(*cat, shape->reedy));
  shape->cat = cat;
  shape->delta = identity_functor(cat);
  return shape;
}

ShapePtr build_cyclic(int max_degree) {
  if (max_degree < 0) throw ArgumentError("negative truncation");
  CategoryBuilder B(LawKind::cyclic);
  for (int n = 0; n <= max_degree; ++n) B.add_object({"[" + std::to_string(n) + "]", n, n + 1, n});
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; n <= max_degree; ++n) {
      Code c;
      c.resize(m + 1);
      std::function<void(int)> rec = [&](int i) {
        if (i > m) {
          B.add_morphism(m, n, c);
          return;
        }
        const int lo = i == 0 ? 0 : c[i - 1];
        const int hi = i == 0 ? n : c[0] + n + 1;
        for (int x = lo; x <= hi; ++x) {
          c.set(i, x);
          rec(i + 1);
        }
      };
      rec(0);
    }
  auto cat = B.build();
  auto shape = std::make_shared<ShapeCategory>();
  shape->kind = ShapeKind::cyclic;
  shape->truncation = max_degree;
  const int count = cat->morphism_count();
  shape->reedy.plus.assign(count, 0);
  shape->reedy.minus.assign(count, 0);
  CrossedGroupData crossed;
  crossed.base.assign(count, 0);
  crossed.special.assign(count, 0);
  std::vector<MorId> taus, faces, degens;
  for (MorId f = 0; f < count; ++f) {
    const auto& m = cat->morphism(f);
    const int n = cat->object(m.cod).card - 1;
    shape->reedy.plus[f] = cyclic::injective(m.code, n);
    shape->reedy.minus[f] = cyclic::surjective(m.code, n);
    const bool in_delta = m.code[m.code.size() - 1] <= n;
    crossed.base[f] = in_delta;
    crossed.special[f] = cat->is_iso(f) && m.dom == m.cod;
    const int d = cat->degree(m.cod) - cat->degree(m.dom);
    if (in_delta && shape->reedy.plus[f] && d == 1) faces.push_back(f);
    if (in_delta && shape->reedy.minus[f] && d == -1) degens.push_back(f);
    if (m.dom == m.cod && n > 0 && m.code == cyclic::tau(n)) taus.push_back(f);
  }
  cat->assign_words({taus, degens, faces});
  cat->set_classes(classify(*cat, shape->reedy));
  shape->cat = cat;
  shape->crossed = std::move(crossed);
  shape->simplex = build_simplex(max_degree);
  std::vector<ObjId> objs;
  for (int n = 0; n <= max_degree; ++n) objs.push_back(n);
  const auto& delta = shape->simplex->cat;
  shape->delta = delta_embedding(delta, cat, objs, [](const Code& c, int, int) { return c; });
  return shape;
}

namespace {

ShapePtr build_tree_shape(int max_vertices, int max_arity, bool planar) {
  if (max_vertices < 0 || max_arity < 0) throw ArgumentError("negative tree bound");
  const auto trees = enumerate_planar_trees(max_vertices, max_arity);
  CategoryBuilder B(LawKind::function);
  for (const auto& t : trees) B.add_object({t.encode(), t.vertex_count(), t.edge_count(), t.linear_length()});
  for (std::size_t s = 0; s < trees.size(); ++s)
    for (std::size_t t = 0; t < trees.size(); ++t)
      enumerate_tree_maps(trees[s], trees[t], planar, [&](const std::vector<int>& map) {
        B.add_morphism(static_cast<ObjId>(s), static_cast<ObjId>(t), Code(map));
      });
  auto cat = B.build();
  auto shape = std::make_shared<ShapeCategory>();
  shape->kind = planar ? ShapeKind::planar_tree : ShapeKind::tree;
  shape->truncation = max_vertices;
  shape->max_arity = max_arity;
  const int n = cat->morphism_count();
  shape->reedy.plus.assign(n, 0);
  shape->reedy.minus.assign(n, 0);
  std::vector<char> planar_map(n, 1), face(n, 0), degen(n, 0);
  std::vector<MorId> isos;
  for (MorId f = 0; f < n; ++f) {
    const auto& m = cat->morphism(f);
    const int card = cat->object(m.cod).card;
    shape->reedy.plus[f] = injective_code(m.code, card);
    // A bijection on edges onto a tree with extra stumps is a face, not a degeneracy.
    shape->reedy.minus[f] = surjective_code(m.code, card) &&
                            cat->object(m.dom).card - card == cat->degree(m.dom) - cat->degree(m.cod);
    if (!planar) planar_map[f] = is_tree_map(trees[m.dom], trees[m.cod], m.code.to_vector(), true);
    const bool iso = cat->is_iso(f);
    face[f] = planar_map[f] && shape->reedy.plus[f] && !iso;
    degen[f] = planar_map[f] && shape->reedy.minus[f] && !iso;
    if (iso && !cat->is_identity(f)) isos.push_back(f);
  }
  cat->assign_words({isos, irreducible(*cat, degen), irreducible(*cat, face)});
  cat->set_classes(classify(*cat, shape->reedy));
  shape->cat = cat;
  if (!planar) {
    CrossedGroupData crossed;
    crossed.base = planar_map;
    crossed.special.assign(n, 0);
    for (MorId f = 0; f < n; ++f) crossed.special[f] = cat->is_iso(f);
    shape->crossed = std::move(crossed);
  }
  shape->simplex = build_simplex(max_vertices);
  const auto& delta = shape->simplex->cat;
  std::vector<ObjId> objs;
  for (int k = 0; k <= max_vertices; ++k) objs.push_back(cat->object_by_id(PlanarTree::linear(k).encode()));
  shape->delta = delta_embedding(delta, cat, objs, [](const Code& c, int, int) { return c; });
  return shape;
}

}  // namespace

ShapePtr build_planar_trees(int max_vertices, int max_arity) { return build_tree_shape(max_vertices, max_arity, true); }

ShapePtr build_trees(int max_vertices, int max_arity) { return build_tree_shape(max_vertices, max_arity, false); }

ShapePtr build_shape(ShapeKind kind, int max, int max_arity) {
  switch (kind) {
    case ShapeKind::simplex: return build_simplex(max);
    case ShapeKind::cyclic: return build_cyclic(max);
    case ShapeKind::planar_tree: return build_planar_trees(max, max_arity);
    case ShapeKind::tree: return build_trees(max, max_arity);
    case ShapeKind::amalgam: return amalgamate(*build_cyclic(max), *build_trees(max, max_arity), AmalgamGate::embedding).shape;
    case ShapeKind::custom: break;
  }
  throw ArgumentError("cannot build a custom shape from parameters");
}

ShapePtr simplex_shape(const ShapePtr& shape) {
  if (shape->kind == ShapeKind::simplex) return shape;
  if (!shape->simplex) throw ArgumentError("shape has no simplex embedding");
  return shape->simplex;
}

PlanarTree object_tree(const ShapeCategory& shape, ObjId a) {
  if (shape.kind != ShapeKind::tree && shape.kind != ShapeKind::planar_tree && shape.kind != ShapeKind::amalgam)
    throw ArgumentError("shape objects are not trees");
  return PlanarTree::parse(shape.cat->object(a).id);
}

Amalgam amalgamate(const ShapeCategory& crossed, const ShapeCategory& aug, AmalgamGate gate) {
  if (crossed.kind != ShapeKind::cyclic && crossed.kind != ShapeKind::simplex)
    throw ArgumentError("crossed input must be the cyclic or the simplex category");
  if (aug.kind != ShapeKind::tree && aug.kind != ShapeKind::planar_tree)
    throw ArgumentError("augmented input must be a tree category");
  if (!aug.has_delta() || !crossed.has_delta()) throw ArgumentError("inputs lack a simplex embedding");
  if (aug.delta.source->max_degree() != crossed.truncation)
    throw ArgumentError("truncations differ: crossed " + std::to_string(crossed.truncation) + ", simplex part of aug " +
                        std::to_string(aug.delta.source->max_degree()));

  const auto sieve = check_sieve(aug.delta);
  if (!sieve.holds) throw AmalgamationRefused("sieve", sieve.witness);
  if (gate == AmalgamGate::strict) {
    const auto tf = check_3for2(crossed.delta);
    if (!tf.holds) throw AmalgamationRefused("3-for-2", tf.witness);
  }

  const FiniteCategory& A = *aug.cat;
  const bool cyc = crossed.kind == ShapeKind::cyclic;
  CategoryBuilder B(LawKind::amalgam);
  B.set_amalgam_cyclic(cyc);
  for (const auto& o : A.objects()) B.add_object(o);
  for (MorId r = 0; r < A.morphism_count(); ++r) {
    const auto& m = A.morphism(r);
    const int lin = A.object(m.dom).linear;
    const int rotations = (cyc && lin >= 0) ? lin + 1 : 1;
    for (int k = 0; k < rotations; ++k) {
      Code c{k};
      for (int i = 0; i < m.code.size(); ++i) c.push_back(m.code[i]);
      B.add_morphism(m.dom, m.cod, c);
    }
  }
  auto cat = B.build();
  const int n = cat->morphism_count();

  auto edge_part = [&](MorId f) {
    const auto& code = cat->morphism(f).code;
    Code r;
    for (int i = 1; i < code.size(); ++i) r.push_back(code[i]);
    return r;
  };
  std::vector<MorId> base_of(n);
  auto shape = std::make_shared<ShapeCategory>();
  shape->kind = ShapeKind::amalgam;
  shape->truncation = aug.truncation;
  shape->max_arity = aug.max_arity;
  shape->reedy.plus.assign(n, 0);
  shape->reedy.minus.assign(n, 0);
  CrossedGroupData cg;
  cg.base.assign(n, 0);
  cg.special.assign(n, 0);
  for (MorId f = 0; f < n; ++f) {
    const auto& m = cat->morphism(f);
    base_of[f] = *A.find(m.dom, m.cod, edge_part(f));
    shape->reedy.plus[f] = aug.reedy.plus[base_of[f]];
    shape->reedy.minus[f] = aug.reedy.minus[base_of[f]];
    cg.base[f] = m.code[0] == 0;
    cg.special[f] = A.is_identity(base_of[f]);
  }

  Amalgam out;
  out.from_aug.source = aug.cat;
  out.from_aug.target = cat;
  for (ObjId a = 0; a < A.object_count(); ++a) out.from_aug.on_objects.push_back(a);
  for (MorId r = 0; r < A.morphism_count(); ++r) {
    const auto& m = A.morphism(r);
    Code c{0};
    for (int i = 0; i < m.code.size(); ++i) c.push_back(m.code[i]);
    out.from_aug.on_morphisms.push_back(*cat->find(m.dom, m.cod, c));
  }
  const FiniteCategory& C = *crossed.cat;
  out.from_crossed.source = crossed.cat;
  out.from_crossed.target = cat;
  for (ObjId a = 0; a < C.object_count(); ++a) out.from_crossed.on_objects.push_back(aug.delta.on_objects[a]);
  for (MorId f = 0; f < C.morphism_count(); ++f) {
    const auto& m = C.morphism(f);
    const int mm = C.object(m.dom).linear, nn = C.object(m.cod).linear;
    auto [k, phi] = cyc ? cyclic::split_rotation(m.code, mm, nn) : std::pair<int, Code>{0, m.code};
    Code c{k};
    for (int i = 0; i < phi.size(); ++i) c.push_back(phi[i]);
    auto g = cat->find(out.from_crossed.on_objects[m.dom], out.from_crossed.on_objects[m.cod], c);
    if (!g) throw StructuralError("crossed morphism " + m.id + " has no image in the amalgam");
    out.from_crossed.on_morphisms.push_back(*g);
  }

  std::vector<MorId> stage_iso, stage_deg, stage_face;
  for (MorId g : A.generators()) {
    const MorId img = out.from_aug.on_morphisms[g];
    switch (A.morphism(g).cls) {
      case MorphismClass::automorphism: stage_iso.push_back(img); break;
      case MorphismClass::degeneracy: stage_deg.push_back(img); break;
      case MorphismClass::face: stage_face.push_back(img); break;
      default: throw StructuralError("unexpected generator class in " + A.morphism(g).id);
    }
  }
  if (cyc)
    for (ObjId a = 0; a < cat->object_count(); ++a) {
      const int lin = cat->object(a).linear;
      if (lin < 1) continue;
      Code c{1};
      for (int i = 0; i <= lin; ++i) c.push_back(i);
      stage_iso.push_back(*cat->find(a, a, c));
    }
  cat->assign_words({stage_iso, stage_deg, stage_face});
  cat->set_classes(classify(*cat, shape->reedy));
  shape->cat = cat;
  shape->crossed = std::move(cg);

  shape->simplex = aug.simplex;
  shape->delta.source = aug.delta.source;
  shape->delta.target = cat;
  shape->delta.on_objects = aug.delta.on_objects;
  for (MorId f : aug.delta.on_morphisms) shape->delta.on_morphisms.push_back(out.from_aug.on_morphisms[f]);

  if (gate == AmalgamGate::embedding) {
    for (const FunctorData* leg : {&out.from_crossed, &out.from_aug}) {
      const auto rep = check_functor(*leg);
      if (!rep.ok()) throw AmalgamationRefused("embedding", rep.violations.front().message);
      leg->preimage();
      std::vector<char> hit(cat->object_count(), 0);
      for (ObjId o : leg->on_objects) {
        if (hit[o]) throw AmalgamationRefused("embedding", "leg is not injective on objects");
        hit[o] = 1;
      }
    }
  }
  out.shape = shape;
  return out;
}

}  // namespace augcat
