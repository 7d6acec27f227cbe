#include "augcat/category.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"

namespace augcat {

const char* to_string(LawKind law) {
  switch (law) {
    case LawKind::function: return "function";
    case LawKind::cyclic: return "cyclic";
    case LawKind::amalgam: return "amalgam";
    case LawKind::table: return "table";
  }
  return "?";
}

const char* to_string(MorphismClass cls) {
  switch (cls) {
    case MorphismClass::identity: return "identity";
    case MorphismClass::automorphism: return "auto";
    case MorphismClass::face: return "face";
    case MorphismClass::degeneracy: return "degeneracy";
    case MorphismClass::mixed: return "mixed";
  }
  return "?";
}

LawKind law_from_string(std::string_view s) {
  if (s == "function") return LawKind::function;
  if (s == "cyclic") return LawKind::cyclic;
  if (s == "amalgam") return LawKind::amalgam;
  if (s == "table") return LawKind::table;
  throw ArgumentError("unknown composition law '" + std::string(s) + "'");
}

MorphismClass class_from_string(std::string_view s) {
  if (s == "identity") return MorphismClass::identity;
  if (s == "auto") return MorphismClass::automorphism;
  if (s == "face") return MorphismClass::face;
  if (s == "degeneracy") return MorphismClass::degeneracy;
  if (s == "mixed") return MorphismClass::mixed;
  throw ArgumentError("unknown morphism class '" + std::string(s) + "'");
}

std::string default_morphism_id(const FiniteCategory& cat, ObjId a, ObjId b, const Code& code) {
  return cat.object(a).id + "->" + cat.object(b).id + ":" + code.to_string();
}

std::optional<ObjId> FiniteCategory::find_object(std::string_view id) const {
  auto it = object_ids_.find(std::string(id));
  if (it == object_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FiniteCategory::find_morphism(std::string_view id) const {
  auto it = morphism_ids_.find(std::string(id));
  if (it == morphism_ids_.end()) return std::nullopt;
  return it->second;
}

ObjId FiniteCategory::object_by_id(std::string_view id) const {
  auto a = find_object(id);
  if (!a) throw RangeError("unknown object '" + std::string(id) + "'");
  return *a;
}

MorId FiniteCategory::morphism_by_id(std::string_view id) const {
  auto f = find_morphism(id);
  if (!f) throw RangeError("unknown morphism '" + std::string(id) + "'");
  return *f;
}

std::optional<MorId> FiniteCategory::find(ObjId a, ObjId b, const Code& code) const {
  auto it = index_.find(Key{a, b, code});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Code FiniteCategory::compose_code(MorId g, MorId f) const {
  const Morphism& mf = morphisms_[f];
  const Morphism& mg = morphisms_[g];
  Code out;
  switch (law_) {
    case LawKind::function: {
      out.resize(mf.code.size());
      for (int i = 0; i < mf.code.size(); ++i) out.set(i, mg.code[mf.code[i]]);
      return out;
    }
    case LawKind::cyclic:
      return cyclic::compose(mg.code, mf.code, objects_[mf.cod].card - 1, objects_[mg.cod].card - 1);
    case LawKind::amalgam: {
      const Object& mid = objects_[mf.cod];
      const int len = mf.code.size() - 1;
      out.resize(len + 1);
      if (mid.linear < 0 || !amalgam_cyclic_) {
        out.set(0, mf.code[0]);
        for (int i = 0; i < len; ++i) out.set(i + 1, mg.code[1 + mf.code[1 + i]]);
        return out;
      }
      const int m = objects_[mf.dom].linear;
      const int n = mid.linear;
      if (m < 0) throw StructuralError("morphism into a linear object from a non-linear one");
      Code r1;
      for (int i = 0; i < len; ++i) r1.push_back(mf.code[1 + i]);
      const Code z1 = cyclic::join_rotation(mf.code[0], r1, m, n);
      const Code t2 = cyclic::join_rotation(mg.code[0], cyclic::identity(n), n, n);
      const auto [k, phi] = cyclic::split_rotation(cyclic::compose(t2, z1, n, n), m, n);
      out.set(0, k);
      for (int i = 0; i < len; ++i) out.set(i + 1, mg.code[1 + phi[i]]);
      return out;
    }
    case LawKind::table:
      break;
  }
  throw StructuralError("table-law categories have no composition codes");
}

std::optional<MorId> FiniteCategory::try_compose(MorId g, MorId f) const {
  const Morphism& mf = morphisms_[f];
  const Morphism& mg = morphisms_[g];
  if (mf.cod != mg.dom)
    throw StructuralError("cannot compose " + mg.id + " after " + mf.id + ": codomain/domain mismatch");
  if (law_ == LawKind::table) {
    auto it = table_.find((static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint32_t>(f));
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  return find(mf.dom, mg.cod, compose_code(g, f));
}

MorId FiniteCategory::compose(MorId g, MorId f) const {
  if (is_identity(g) && morphisms_[f].cod == morphisms_[g].dom) return f;
  if (is_identity(f) && morphisms_[f].cod == morphisms_[g].dom) return g;
  auto h = try_compose(g, f);
  if (!h)
    throw StructuralError("composite of " + morphisms_[g].id + " after " + morphisms_[f].id +
                          " is not a morphism of the category");
  return *h;
}

void FiniteCategory::compute_isos() {
  const int n = morphism_count();
  inverse_.assign(n, -1);
  automorphisms_.assign(objects_.size(), {});
  isos_from_.assign(objects_.size(), {});
  for (MorId f = 0; f < n; ++f) {
    const ObjId a = morphisms_[f].dom;
    const ObjId b = morphisms_[f].cod;
    for (MorId g : hom(b, a)) {
      auto gf = try_compose(g, f);
      if (!gf || *gf != identity_[a]) continue;
      auto fg = try_compose(f, g);
      if (!fg || *fg != identity_[b]) continue;
      inverse_[f] = g;
      break;
    }
    if (inverse_[f] >= 0) {
      isos_from_[a].push_back(f);
      if (a == b) automorphisms_[a].push_back(f);
    }
  }
}

void FiniteCategory::rebuild_generators() {
  generators_.clear();
  generator_index_.assign(morphisms_.size(), -1);
  generators_into_.assign(objects_.size(), {});
  generators_from_.assign(objects_.size(), {});
  for (MorId f = 0; f < morphism_count(); ++f) {
    const auto& w = morphisms_[f].word;
    if (w.size() == 1 && w[0] == f) {
      generator_index_[f] = static_cast<int>(generators_.size());
      generators_.push_back(f);
      generators_into_[morphisms_[f].cod].push_back(f);
      generators_from_[morphisms_[f].dom].push_back(f);
    }
  }
}

void FiniteCategory::set_words(std::vector<std::vector<MorId>> words) {
  if (words.size() != morphisms_.size()) throw ArgumentError("word list size mismatch");
  for (std::size_t f = 0; f < words.size(); ++f) morphisms_[f].word = std::move(words[f]);
  rebuild_generators();
}

void FiniteCategory::set_classes(std::vector<MorphismClass> classes) {
  if (classes.size() != morphisms_.size()) throw ArgumentError("class list size mismatch");
  for (std::size_t f = 0; f < classes.size(); ++f) morphisms_[f].cls = classes[f];
}

void FiniteCategory::assign_words(const std::vector<std::vector<MorId>>& stages) {
  const int n = morphism_count();
  std::vector<std::vector<MorId>> words(n);
  std::vector<char> known(n, 0);
  std::vector<MorId> reached;
  for (ObjId a = 0; a < object_count(); ++a) {
    known[identity_[a]] = 1;
    reached.push_back(identity_[a]);
  }
  for (const auto& stage : stages) {
    std::vector<std::vector<MorId>> from(objects_.size());
    for (MorId g : stage) from[morphisms_[g].dom].push_back(g);
    std::deque<MorId> queue(reached.begin(), reached.end());
    while (!queue.empty()) {
      const MorId f = queue.front();
      queue.pop_front();
      for (MorId g : from[morphisms_[f].cod]) {
        const MorId h = compose(g, f);
        if (known[h]) continue;
        known[h] = 1;
        words[h] = words[f];
        words[h].push_back(g);
        reached.push_back(h);
        queue.push_back(h);
      }
    }
  }
  for (MorId f = 0; f < n; ++f)
    if (!known[f]) throw StructuralError("generators do not reach morphism " + morphisms_[f].id);
  set_words(std::move(words));
}

ObjId CategoryBuilder::add_object(Object obj) {
  objects_.push_back(std::move(obj));
  identities_.push_back(-1);
  return static_cast<ObjId>(objects_.size() - 1);
}

int CategoryBuilder::add_morphism(ObjId dom, ObjId cod, Code code, std::string id, MorphismClass cls) {
  if (dom < 0 || cod < 0 || dom >= static_cast<int>(objects_.size()) ||
      cod >= static_cast<int>(objects_.size()))
    throw RangeError("morphism endpoint out of range");
  Morphism m;
  m.id = std::move(id);
  m.dom = dom;
  m.cod = cod;
  m.code = code;
  m.cls = cls;
  morphisms_.push_back(std::move(m));
  words_.emplace_back();
  has_word_.push_back(false);
  return static_cast<int>(morphisms_.size() - 1);
}

void CategoryBuilder::set_word(int m, std::vector<int> word) {
  words_.at(m) = std::move(word);
  has_word_.at(m) = true;
}

void CategoryBuilder::add_composite(int g, int f, int composite) { composites_.emplace_back(g, f, composite); }

void CategoryBuilder::set_identity(ObjId a, int m) { identities_.at(a) = m; }

std::shared_ptr<FiniteCategory> CategoryBuilder::build(std::vector<MorId>* final_ids) {
  auto cat = std::shared_ptr<FiniteCategory>(new FiniteCategory());
  cat->law_ = law_;
  cat->amalgam_cyclic_ = amalgam_cyclic_;
  cat->objects_ = objects_;
  const int nobj = static_cast<int>(objects_.size());
  for (ObjId a = 0; a < nobj; ++a) {
    if (!cat->object_ids_.emplace(objects_[a].id, a).second)
      throw StructuralError("duplicate object id '" + objects_[a].id + "'");
    cat->max_degree_ = std::max(cat->max_degree_, objects_[a].degree);
  }
  if (law_ == LawKind::table)
    for (std::size_t i = 0; i < morphisms_.size(); ++i) morphisms_[i].code = Code{static_cast<int>(i)};

  std::vector<int> order(morphisms_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    const auto& a = morphisms_[x];
    const auto& b = morphisms_[y];
    if (a.dom != b.dom) return a.dom < b.dom;
    if (a.cod != b.cod) return a.cod < b.cod;
    return a.code < b.code;
  });
  std::vector<MorId> fin(morphisms_.size());
  for (std::size_t i = 0; i < order.size(); ++i) fin[order[i]] = static_cast<MorId>(i);
  cat->morphisms_.reserve(morphisms_.size());
  for (int p : order) cat->morphisms_.push_back(morphisms_[p]);

  cat->hom_start_.assign(static_cast<std::size_t>(nobj) * nobj + 1, 0);
  {
    std::size_t k = 0;
    MorId f = 0;
    const MorId total = static_cast<MorId>(cat->morphisms_.size());
    for (ObjId a = 0; a < nobj; ++a)
      for (ObjId b = 0; b < nobj; ++b, ++k) {
        cat->hom_start_[k] = f;
        while (f < total && cat->morphisms_[f].dom == a && cat->morphisms_[f].cod == b) ++f;
      }
    cat->hom_start_[k] = f;
  }

  cat->index_.reserve(cat->morphisms_.size());
  for (MorId f = 0; f < static_cast<MorId>(cat->morphisms_.size()); ++f) {
    auto& m = cat->morphisms_[f];
    if (m.id.empty()) m.id = default_morphism_id(*cat, m.dom, m.cod, m.code);
    if (!cat->index_.emplace(FiniteCategory::Key{m.dom, m.cod, m.code}, f).second)
      throw StructuralError("duplicate morphism " + m.id);
    if (!cat->morphism_ids_.emplace(m.id, f).second)
      throw StructuralError("duplicate morphism id '" + m.id + "'");
  }

  cat->identity_.assign(nobj, -1);
  for (ObjId a = 0; a < nobj; ++a) {
    if (law_ == LawKind::table) {
      if (identities_[a] < 0) throw StructuralError("object '" + objects_[a].id + "' has no identity");
      cat->identity_[a] = fin[identities_[a]];
      continue;
    }
    Code id;
    if (law_ == LawKind::amalgam) id.push_back(0);
    for (int i = 0; i < objects_[a].card; ++i) id.push_back(i);
    auto f = cat->find(a, a, id);
    if (!f) throw StructuralError("object '" + objects_[a].id + "' has no identity");
    cat->identity_[a] = *f;
  }

  for (auto [g, f, h] : composites_)
    cat->table_[(static_cast<std::uint64_t>(fin[g]) << 32) | static_cast<std::uint32_t>(fin[f])] = fin[h];

  cat->compute_isos();

  for (std::size_t p = 0; p < morphisms_.size(); ++p) {
    auto& w = cat->morphisms_[fin[p]].word;
    w.clear();
    if (has_word_[p])
      for (int x : words_[p]) w.push_back(fin.at(x));
  }
  cat->rebuild_generators();

  cat->by_degree_.resize(nobj);
  std::iota(cat->by_degree_.begin(), cat->by_degree_.end(), 0);
  std::stable_sort(cat->by_degree_.begin(), cat->by_degree_.end(),
                   [&](ObjId x, ObjId y) { return objects_[x].degree < objects_[y].degree; });

  if (final_ids) *final_ids = std::move(fin);
  return cat;
}

}  // namespace augcat
