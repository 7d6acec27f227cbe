#include "augcat/serialize.hpp"

#include <set>
#include <sstream>
#include <unordered_map>

#include "augcat/errors.hpp"

namespace augcat {

namespace {

std::string element_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ArgumentError("element names must be strings or integers, got " + v.dump());
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Labels of each level, falling back to indices where labels repeat.
std::vector<std::vector<std::string>> unique_labels(const Presheaf& X) {
  const auto& C = X.cat();
  std::vector<std::vector<std::string>> out(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > X.truncation()) continue;
    std::set<std::string> seen;
    bool clash = false;
    for (int x = 0; x < X.size(a); ++x) {
      out[a].push_back(X.label(a, x));
      clash |= !seen.insert(out[a].back()).second;
    }
    if (clash)
      for (int x = 0; x < X.size(a); ++x) out[a][x] = std::to_string(x);
  }
  return out;
}

}  // namespace

json category_to_json(const FiniteCategory& cat) {
  json j;
  j["law"] = to_string(cat.law());
  if (cat.law() == LawKind::amalgam) j["amalgam_cyclic"] = cat.amalgam_cyclic();
  j["objects"] = json::array();
  for (const auto& o : cat.objects())
    j["objects"].push_back({{"id", o.id}, {"degree", o.degree}, {"card", o.card}, {"linear", o.linear}});
  j["morphisms"] = json::array();
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const auto& m = cat.morphism(f);
    json w = json::array();
    for (MorId g : m.word) w.push_back(cat.morphism(g).id);
    json entry = {{"id", m.id},
                  {"dom", cat.object(m.dom).id},
                  {"cod", cat.object(m.cod).id},
                  {"code", m.code.to_vector()},
                  {"word", w},
                  {"class", to_string(m.cls)}};
    j["morphisms"].push_back(std::move(entry));
  }
  if (cat.law() == LawKind::table) {
    json comp = json::array();
    for (MorId g = 0; g < cat.morphism_count(); ++g)
      for (MorId f = 0; f < cat.morphism_count(); ++f)
        if (auto h = cat.try_compose(g, f))
          comp.push_back({cat.morphism(g).id, cat.morphism(f).id, cat.morphism(*h).id});
    j["composition"] = std::move(comp);
  }
  return j;
}

std::shared_ptr<FiniteCategory> category_from_json(const json& j) {
  const LawKind law = law_from_string(j.value("law", std::string("function")));
  CategoryBuilder B(law);
  if (law == LawKind::amalgam) B.set_amalgam_cyclic(j.value("amalgam_cyclic", true));
  std::unordered_map<std::string, ObjId> objs;
  for (const auto& o : require(j, "objects")) {
    Object obj;
    obj.id = element_text(require(o, "id"));
    obj.degree = require(o, "degree").get<int>();
    obj.card = o.value("card", obj.degree + 1);
    obj.linear = o.value("linear", -1);
    objs[obj.id] = B.add_object(obj);
  }
  auto object = [&](const json& v) {
    const auto it = objs.find(element_text(v));
    if (it == objs.end()) throw ArgumentError("unknown object " + v.dump());
    return it->second;
  };
  std::unordered_map<std::string, int> mors;
  std::vector<const json*> entries;
  for (const auto& m : require(j, "morphisms")) {
    Code code;
    if (m.contains("code")) code = Code(m.at("code").get<std::vector<int>>());
    const std::string id = element_text(require(m, "id"));
    const auto cls = class_from_string(m.value("class", std::string("mixed")));
    const int p = B.add_morphism(object(require(m, "dom")), object(require(m, "cod")), code, id, cls);
    if (!mors.emplace(id, p).second) throw ArgumentError("duplicate morphism id '" + id + "'");
    entries.push_back(&m);
  }
  auto morphism = [&](const json& v) {
    const auto it = mors.find(element_text(v));
    if (it == mors.end()) throw ArgumentError("unknown morphism " + v.dump());
    return it->second;
  };
  for (std::size_t p = 0; p < entries.size(); ++p) {
    if (!entries[p]->contains("word")) continue;
    std::vector<int> w;
    for (const auto& g : entries[p]->at("word")) w.push_back(morphism(g));
    B.set_word(static_cast<int>(p), std::move(w));
  }
  if (law == LawKind::table) {
    for (const auto& t : require(j, "composition")) B.add_composite(morphism(t.at(0)), morphism(t.at(1)), morphism(t.at(2)));
    // The identity of a is the endomorphism acting trivially on both sides.
    std::vector<int> ident(objs.size(), -1);
    std::map<std::pair<int, int>, int> comp;
    for (const auto& t : j.at("composition")) comp[{morphism(t.at(0)), morphism(t.at(1))}] = morphism(t.at(2));
    for (std::size_t p = 0; p < entries.size(); ++p) {
      const ObjId a = object(entries[p]->at("dom"));
      if (a != object(entries[p]->at("cod")) || ident[a] >= 0) continue;
      bool unit = true;
      for (std::size_t q = 0; q < entries.size() && unit; ++q) {
        const int pi = static_cast<int>(p), qi = static_cast<int>(q);
        if (object(entries[q]->at("cod")) == a) unit = comp.count({pi, qi}) && comp[{pi, qi}] == qi;
        if (unit && object(entries[q]->at("dom")) == a) unit = comp.count({qi, pi}) && comp[{qi, pi}] == qi;
      }
      if (unit) ident[a] = static_cast<int>(p);
    }
    for (std::size_t a = 0; a < ident.size(); ++a) B.set_identity(static_cast<ObjId>(a), ident[a]);
  }
  return B.build();
}

bool same_category(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.law() != b.law() || a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count())
    return false;
  for (ObjId x = 0; x < a.object_count(); ++x) {
    const auto &o = a.object(x), &p = b.object(x);
    if (o.id != p.id || o.degree != p.degree || o.card != p.card || o.linear != p.linear) return false;
  }
  for (MorId f = 0; f < a.morphism_count(); ++f) {
    const auto &m = a.morphism(f), &n = b.morphism(f);
    if (m.id != n.id || m.dom != n.dom || m.cod != n.cod || !(m.code == n.code) || m.word != n.word || m.cls != n.cls)
      return false;
  }
  return true;
}

json shape_ref(const ShapeCategory& shape) {
  json j = {{"kind", to_string(shape.kind)}, {"max", shape.truncation}};
  if (shape.kind == ShapeKind::tree || shape.kind == ShapeKind::planar_tree || shape.kind == ShapeKind::amalgam)
    j["max_arity"] = shape.max_arity;
  return j;
}

json shape_to_json(const ShapeCategory& shape) {
  json j = shape_ref(shape);
  j["category"] = category_to_json(*shape.cat);
  return j;
}

ShapePtr ShapeRegistry::get(ShapeKind kind, int max, int max_arity) {
  const bool trees = kind == ShapeKind::tree || kind == ShapeKind::planar_tree || kind == ShapeKind::amalgam;
  const auto key = std::make_tuple(static_cast<int>(kind), max, trees ? max_arity : 0);
  if (auto it = shapes_.find(key); it != shapes_.end()) return it->second;
  if (kind == ShapeKind::simplex)
    for (const auto& [k, host] : shapes_)
      if (host->simplex && host->simplex->truncation == max) return host->simplex;
  auto shape = build_shape(kind, max, max_arity);
  shapes_.emplace(key, shape);
  return shape;
}

ShapePtr ShapeRegistry::resolve(const json& j) {
  const auto kind = shape_kind_from_string(require(j, "kind").get<std::string>());
  if (kind == ShapeKind::custom) {
    auto shape = std::make_shared<ShapeCategory>();
    shape->kind = ShapeKind::custom;
    shape->cat = category_from_json(require(j, "category"));
    shape->truncation = shape->cat->max_degree();
    shape->reedy.plus.assign(shape->cat->morphism_count(), 0);
    shape->reedy.minus.assign(shape->cat->morphism_count(), 0);
    if (j.contains("reedy")) {
      for (const auto& f : j.at("reedy").value("plus", json::array()))
        shape->reedy.plus[shape->cat->morphism_by_id(element_text(f))] = 1;
      for (const auto& f : j.at("reedy").value("minus", json::array()))
        shape->reedy.minus[shape->cat->morphism_by_id(element_text(f))] = 1;
    }
    return shape;
  }
  auto shape = get(kind, require(j, "max").get<int>(), j.value("max_arity", 2));
  if (j.contains("category") && !same_category(*shape->cat, *category_from_json(j.at("category"))))
    throw ArgumentError("shape document does not match the " + std::string(to_string(kind)) + " shape it names");
  return shape;
}

json presheaf_to_json(const Presheaf& X) {
  const auto& C = X.cat();
  const auto labels = unique_labels(X);
  json j;
  j["shape"] = shape_ref(X.shape());
  j["truncation"] = X.truncation();
  j["coskeletal_above"] = X.coskeletal_above() ? json(*X.coskeletal_above()) : json(nullptr);
  json levels = json::object();
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= X.truncation()) levels[C.object(a).id] = labels[a];
  j["levels"] = std::move(levels);
  json action = json::object();
  for (std::size_t gi = 0; gi < C.generators().size(); ++gi) {
    const MorId u = C.generators()[gi];
    const ObjId s = C.dom(u), b = C.cod(u);
    if (C.degree(s) > X.truncation() || C.degree(b) > X.truncation()) continue;
    json table = json::object();
    for (int x = 0; x < X.size(b); ++x) table[labels[b][x]] = labels[s][X.act_gen(static_cast<int>(gi), x)];
    action[C.morphism(u).id] = std::move(table);
  }
  j["action"] = std::move(action);
  return j;
}

PresheafPtr presheaf_from_json(const json& j, ShapeRegistry& shapes) {
  const auto shape = shapes.resolve(require(j, "shape"));
  const auto& C = *shape->cat;
  const int trunc = j.value("truncation", shape->truncation);
  if (trunc < 0 || trunc > shape->truncation)
    throw TruncationError("presheaf truncation " + std::to_string(trunc) + " exceeds the shape's " +
                          std::to_string(shape->truncation));
  std::optional<int> cosk;
  if (j.contains("coskeletal_above") && !j.at("coskeletal_above").is_null()) {
    cosk = j.at("coskeletal_above").get<int>();
    if (*cosk < 0 || *cosk > trunc) throw TruncationError("coskeletal_above must not exceed the stored truncation");
  }
  const auto& levels = require(j, "levels");
  for (const auto& [key, value] : levels.items()) {
    const ObjId a = C.object_by_id(key);
    if (C.degree(a) > trunc) throw TruncationError("level " + key + " lies above the truncation");
  }
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<std::string>> labels(C.object_count());
  std::vector<std::unordered_map<std::string, int>> index(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > trunc || !levels.contains(C.object(a).id)) continue;
    for (const auto& e : levels.at(C.object(a).id)) {
      const auto name = element_text(e);
      if (!index[a].emplace(name, static_cast<int>(labels[a].size())).second)
        throw ArgumentError("element " + name + " repeats in level " + C.object(a).id);
      labels[a].push_back(name);
    }
    sizes[a] = static_cast<int>(labels[a].size());
  }
  const json empty = json::object();
  const auto& action = j.contains("action") ? j.at("action") : empty;
  auto lookup = [&](ObjId a, const json& v) {
    const auto it = index[a].find(element_text(v));
    if (it == index[a].end()) throw ArgumentError("unknown element " + v.dump() + " of level " + C.object(a).id);
    return it->second;
  };
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t gi = 0; gi < actions.size(); ++gi) {
    const MorId u = C.generators()[gi];
    const ObjId s = C.dom(u), b = C.cod(u);
    if (C.degree(s) > trunc || C.degree(b) > trunc || sizes[b] == 0) continue;
    const auto& id = C.morphism(u).id;
    if (!action.contains(id)) throw ArgumentError("no action given for generator " + id);
    actions[gi].assign(sizes[b], -1);
    for (int x = 0; x < sizes[b]; ++x) {
      const auto& t = action.at(id);
      if (!t.contains(labels[b][x])) throw ArgumentError("action of " + id + " misses element " + labels[b][x]);
      actions[gi][x] = lookup(s, t.at(labels[b][x]));
    }
  }
  auto X = std::make_shared<Presheaf>(shape, trunc, std::move(sizes), std::move(actions), cosk);
  X->set_labels(labels);
  const auto report = X->validate();
  if (!report.ok()) throw StructuralError("presheaf relations fail: " + report.violations.front().message);
  // Actions given for composite morphisms must agree with the generated ones.
  for (const auto& [id, table] : action.items()) {
    const MorId f = C.morphism_by_id(id);
    if (C.generator_index(f) >= 0) continue;
    const ObjId s = C.dom(f), b = C.cod(f);
    if (C.degree(s) > trunc || C.degree(b) > trunc) continue;
    for (const auto& [x, y] : table.items()) {
      const auto it = index[b].find(x);
      if (it == index[b].end()) throw ArgumentError("unknown element " + x + " of level " + C.object(b).id);
      if (X->act(f, it->second) != lookup(s, y))
        throw StructuralError("given action of " + id + " on " + x + " contradicts the generators");
    }
  }
  return X;
}

json map_to_json(const PresheafMap& f) {
  const auto& C = f.source->cat();
  const auto labels = unique_labels(*f.target);
  json j;
  j["source"] = presheaf_to_json(*f.source);
  j["target"] = presheaf_to_json(*f.target);
  json comps = json::object();
  const int cap = std::min(f.cap(), std::min(f.source->truncation(), f.target->truncation()));
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    json level = json::array();
    for (int x = 0; x < f.source->size(a); ++x) level.push_back(labels[a][f(a, x)]);
    comps[C.object(a).id] = std::move(level);
  }
  j["components"] = std::move(comps);
  return j;
}

PresheafMap map_from_json(const json& j, ShapeRegistry& shapes) {
  auto X = presheaf_from_json(require(j, "source"), shapes);
  auto Y = presheaf_from_json(require(j, "target"), shapes);
  if (X->shape_ptr() != Y->shape_ptr()) throw ArgumentError("source and target live over different shapes");
  if (X->truncation() != Y->truncation())
    throw TruncationError("source and target truncations differ (" + std::to_string(X->truncation()) + " and " +
                          std::to_string(Y->truncation()) + ")");
  const auto& C = X->cat();
  PresheafMap f{X, Y, std::vector<std::vector<int>>(C.object_count())};
  const auto& comps = require(j, "components");
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > X->truncation()) continue;
    std::unordered_map<std::string, int> index;
    for (int y = 0; y < Y->size(a); ++y) index[Y->label(a, y)] = y;
    const auto& id = C.object(a).id;
    if (X->size(a) == 0) continue;
    if (!comps.contains(id)) throw ArgumentError("no component at level " + id);
    const auto& level = comps.at(id);
    if (static_cast<int>(level.size()) != X->size(a)) throw ArgumentError("component at " + id + " has the wrong length");
    for (const auto& v : level) {
      const auto it = index.find(element_text(v));
      if (it == index.end()) throw ArgumentError("unknown target element " + v.dump() + " at " + id);
      f.components[a].push_back(it->second);
    }
  }
  if (X->coskeletal_above() || Y->coskeletal_above()) {
    // Components above the stored levels follow from the coskeleton.
    if (X->coskeletal_above() != Y->coskeletal_above())
      throw TruncationError("source and target must both be coskeletal above the same degree");
    const int n = *X->coskeletal_above();
    const auto CX = coskeleton(truncate(X, n), n), CY = coskeleton(truncate(Y, n), n);
    PresheafMap low{truncate(X, n), truncate(Y, n), f.components};
    f = cosk_map(low, CX, CY);
    f.source = X;
    f.target = Y;
  }
  const auto report = validate_map(f);
  if (!report.ok()) throw StructuralError("map is not natural: " + report.violations.front().message);
  return f;
}

SmallCategory small_category_from_json(const json& j) {
  SmallCategory C;
  auto entry = [](const json& v, const std::unordered_map<std::string, int>& names) {
    if (v.is_null()) return -1;
    if (v.is_number_integer()) return v.get<int>();
    const auto it = names.find(v.get<std::string>());
    if (it == names.end()) throw ArgumentError("unknown name " + v.dump());
    return it->second;
  };
  if (j.contains("elements")) {
    C.objects = {"*"};
    std::unordered_map<std::string, int> names;
    for (const auto& e : j.at("elements")) {
      names[element_text(e)] = static_cast<int>(C.arrows.size());
      C.arrows.push_back({element_text(e), 0, 0});
    }
    for (const auto& row : require(j, "table")) {
      C.table.emplace_back();
      for (const auto& v : row) C.table.back().push_back(entry(v, names));
    }
    const int n = static_cast<int>(C.arrows.size());
    if (static_cast<int>(C.table.size()) != n) throw ArgumentError("table must be square over the elements");
    for (int e = 0; e < n && C.identities.empty(); ++e) {
      bool unit = true;
      for (int x = 0; x < n && unit; ++x) unit = C.table[e].size() == static_cast<std::size_t>(n) && C.table[e][x] == x && C.table[x][e] == x;
      if (unit) C.identities.push_back(e);
    }
    if (C.identities.empty()) throw ArgumentError("table has no identity element");
  } else {
    std::unordered_map<std::string, int> objs, arrows;
    for (const auto& o : require(j, "objects")) {
      objs[element_text(o)] = static_cast<int>(C.objects.size());
      C.objects.push_back(element_text(o));
    }
    for (const auto& a : require(j, "arrows")) {
      const auto name = element_text(require(a, "name"));
      arrows[name] = static_cast<int>(C.arrows.size());
      C.arrows.push_back({name, entry(require(a, "dom"), objs), entry(require(a, "cod"), objs)});
    }
    for (const auto& i : require(j, "identities")) C.identities.push_back(entry(i, arrows));
    for (const auto& row : require(j, "table")) {
      C.table.emplace_back();
      for (const auto& v : row) C.table.back().push_back(entry(v, arrows));
    }
  }
  const auto report = C.validate();
  if (!report.ok()) throw ArgumentError("not a category: " + report.violations.front().message);
  return C;
}

json small_category_to_json(const SmallCategory& C) {
  json j;
  j["objects"] = C.objects;
  j["arrows"] = json::array();
  for (const auto& a : C.arrows) j["arrows"].push_back({{"name", a.name}, {"dom", C.objects[a.dom]}, {"cod", C.objects[a.cod]}});
  j["identities"] = json::array();
  for (int i : C.identities) j["identities"].push_back(C.arrows[i].name);
  j["table"] = json::array();
  for (const auto& row : C.table) {
    json r = json::array();
    for (int h : row) r.push_back(h < 0 ? json(nullptr) : json(C.arrows[h].name));
    j["table"].push_back(std::move(r));
  }
  return j;
}

std::string export_dot(const FiniteCategory& cat, bool generators_only) {
  std::ostringstream out;
  out << "digraph category {\n";
  for (const auto& o : cat.objects()) out << "  " << quote(o.id) << ";\n";
  auto edge = [&](MorId f) {
    out << "  " << quote(cat.object(cat.dom(f)).id) << " -> " << quote(cat.object(cat.cod(f)).id)
        << " [label=" << quote(cat.morphism(f).id) << "];\n";
  };
  if (generators_only)
    for (MorId f : cat.generators()) edge(f);
  else
    for (MorId f = 0; f < cat.morphism_count(); ++f)
      if (!cat.is_identity(f)) edge(f);
  out << "}\n";
  return out.str();
}

std::string export_dot(const Presheaf& X) {
  const auto& C = X.cat();
  const auto labels = unique_labels(X);
  std::ostringstream out;
  out << "digraph presheaf {\n";
  auto node = [&](ObjId a, int x) { return quote(C.object(a).id + ":" + labels[a][x]); };
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= X.truncation())
      for (int x = 0; x < X.size(a); ++x) out << "  " << node(a, x) << ";\n";
  for (std::size_t gi = 0; gi < C.generators().size(); ++gi) {
    const MorId u = C.generators()[gi];
    const ObjId s = C.dom(u), b = C.cod(u);
    if (C.degree(s) > X.truncation() || C.degree(b) > X.truncation()) continue;
    for (int x = 0; x < X.size(b); ++x)
      out << "  " << node(b, x) << " -> " << node(s, X.act_gen(static_cast<int>(gi), x))
          << " [label=" << quote(C.morphism(u).id) << "];\n";
  }
  out << "}\n";
  return out.str();
}

// Vertices and leaves become nodes; each tree edge becomes one DOT edge
// pointing towards the root.
std::string export_dot(const PlanarTree& tree) {
  std::ostringstream out;
  out << "digraph tree {\n";
  out << "  root [shape=point];\n";
  auto top = [&](int e) { return tree.has_vertex(e) ? "v" + std::to_string(e) : "leaf" + std::to_string(e); };
  for (int e = 0; e < tree.edge_count(); ++e)
    out << "  " << top(e) << (tree.has_vertex(e) ? " [shape=circle];\n" : " [shape=point];\n");
  for (int e = 0; e < tree.edge_count(); ++e) {
    const std::string below = e == 0 ? "root" : "v" + std::to_string(tree.parent(e));
    out << "  " << top(e) << " -> " << below << " [label=\"" << e << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace augcat
