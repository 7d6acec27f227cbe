#include "augcat/presheaf.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "augcat/errors.hpp"

namespace augcat {

struct Presheaf::Lazy {
  std::once_flag once;
  PresheafPtr full;
};

Presheaf::Presheaf(ShapePtr shape, int truncation, std::vector<int> sizes, std::vector<std::vector<int>> actions,
                   std::optional<int> coskeletal_above)
    : shape_(std::move(shape)),
      truncation_(truncation),
      sizes_(std::move(sizes)),
      actions_(std::move(actions)),
      cosk_above_(coskeletal_above),
      lazy_(std::make_unique<Lazy>()) {
  const auto& C = cat();
  if (truncation_ < 0 || truncation_ > shape_->truncation)
    throw TruncationError("presheaf truncation " + std::to_string(truncation_) + " outside the shape's range");
  if (cosk_above_ && *cosk_above_ > truncation_)
    throw ArgumentError("coskeletal_above exceeds the stored truncation");
  if (static_cast<int>(sizes_.size()) != C.object_count()) throw StructuralError("one size per object expected");
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > truncation_) sizes_[a] = 0;
    if (sizes_[a] < 0) throw StructuralError("negative level size");
  }
  const auto& gens = C.generators();
  if (actions_.size() != gens.size()) throw StructuralError("one action table per generator expected");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const MorId g = gens[i];
    const ObjId a = C.dom(g), b = C.cod(g);
    if (C.degree(a) > truncation_ || C.degree(b) > truncation_) {
      actions_[i].clear();
      continue;
    }
    if (static_cast<int>(actions_[i].size()) != sizes_[b])
      throw StructuralError("action table of " + C.morphism(g).id + " has the wrong length");
    for (int v : actions_[i])
      if (v < 0 || v >= sizes_[a])
        throw StructuralError("action of " + C.morphism(g).id + " leaves the level of " + C.object(a).id);
  }
}

Presheaf::Presheaf(Presheaf&&) noexcept = default;
Presheaf& Presheaf::operator=(Presheaf&&) noexcept = default;
Presheaf::~Presheaf() = default;

const Presheaf& Presheaf::full() const {
  if (!cosk_above_) throw TruncationError("level above truncation " + std::to_string(truncation_));
  std::call_once(lazy_->once, [&] {
    auto base = std::make_shared<Presheaf>(shape_, truncation_, sizes_, actions_);
    lazy_->full = coskeleton(base, truncation_).presheaf;
  });
  return *lazy_->full;
}

int Presheaf::size(ObjId a) const {
  if (cat().degree(a) <= truncation_) return sizes_[a];
  return full().size(a);
}

const std::vector<int>& Presheaf::action_table(int gi) const {
  const MorId g = cat().generators()[gi];
  if (cat().degree(cat().dom(g)) <= truncation_ && cat().degree(cat().cod(g)) <= truncation_) return actions_[gi];
  return full().action_table(gi);
}

int Presheaf::act_gen(int gi, int x) const { return action_table(gi)[x]; }

int Presheaf::act(MorId f, int x) const {
  const auto& C = cat();
  const auto& w = C.morphism(f).word;
  for (auto it = w.rbegin(); it != w.rend(); ++it) x = act_gen(C.generator_index(*it), x);
  return x;
}

std::uint64_t Presheaf::total_size() const {
  std::uint64_t n = 0;
  for (ObjId a = 0; a < cat().object_count(); ++a)
    if (defined(a)) n += size(a);
  return n;
}

std::string Presheaf::label(ObjId a, int x) const {
  if (a < static_cast<int>(labels_.size()) && x < static_cast<int>(labels_[a].size())) return labels_[a][x];
  return std::to_string(x);
}

CheckReport Presheaf::validate() const {
  CheckReport rep;
  rep.name = "presheaf";
  rep.truncation = cap();
  const auto& C = cat();
  for (MorId f = 0; f < C.morphism_count(); ++f) {
    if (!defined(C.dom(f)) || !defined(C.cod(f))) continue;
    for (MorId g : C.generators_from(C.cod(f))) {
      if (!defined(C.cod(g))) continue;
      const MorId gf = C.compose(g, f);
      const int gi = C.generator_index(g);
      for (int x = 0; x < size(C.cod(g)); ++x)
        if (act(f, act_gen(gi, x)) != act(gf, x)) {
          rep.add("functoriality",
                  "element " + label(C.cod(g), x) + " of " + C.object(C.cod(g)).id + " acted on by " +
                      C.morphism(g).id + " then " + C.morphism(f).id + " differs from the composite",
                  {g, f});
          break;
        }
    }
  }
  return rep;
}

int PresheafMap::cap() const { return std::min(source->cap(), target->cap()); }

int Subobject::count(ObjId a) const {
  return static_cast<int>(std::count(selected[a].begin(), selected[a].end(), 1));
}

std::uint64_t Subobject::total() const {
  std::uint64_t n = 0;
  for (std::size_t a = 0; a < selected.size(); ++a) n += count(static_cast<ObjId>(a));
  return n;
}

bool Subobject::subset_of(const Subobject& o) const {
  for (std::size_t a = 0; a < selected.size(); ++a)
    for (std::size_t x = 0; x < selected[a].size(); ++x)
      if (selected[a][x] && !o.selected[a][x]) return false;
  return true;
}

namespace {

std::vector<int> sizes_of(const Presheaf& X, int cap) {
  std::vector<int> s(X.cat().object_count(), 0);
  for (ObjId a = 0; a < X.cat().object_count(); ++a)
    if (X.cat().degree(a) <= cap) s[a] = X.size(a);
  return s;
}

bool gen_within(const FiniteCategory& C, int gi, int cap) {
  const MorId g = C.generators()[gi];
  return C.degree(C.dom(g)) <= cap && C.degree(C.cod(g)) <= cap;
}

int resolve_cap(const ShapeCategory& shape, int truncation) {
  return truncation < 0 ? shape.truncation : truncation;
}

}  // namespace

PresheafPtr representable(const ShapePtr& shape, ObjId a) {
  const auto& C = *shape->cat;
  std::vector<int> sizes(C.object_count());
  std::vector<std::vector<std::string>> labels(C.object_count());
  for (ObjId b = 0; b < C.object_count(); ++b) {
    sizes[b] = C.hom(b, a).size();
    for (MorId f : C.hom(b, a)) labels[b].push_back(C.morphism(f).id);
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < C.generators().size(); ++i) {
    const MorId u = C.generators()[i];
    const auto into = C.hom(C.cod(u), a);
    const MorId base = C.hom(C.dom(u), a).first;
    for (MorId f : into) actions[i].push_back(C.compose(f, u) - base);
  }
  auto X = std::make_shared<Presheaf>(shape, shape->truncation, std::move(sizes), std::move(actions));
  X->set_labels(std::move(labels));
  return X;
}

PresheafPtr terminal(const ShapePtr& shape, int truncation) {
  const auto& C = *shape->cat;
  const int t = resolve_cap(*shape, truncation);
  std::vector<int> sizes(C.object_count(), 1);
  std::vector<std::vector<int>> actions(C.generators().size(), std::vector<int>(1, 0));
  return std::make_shared<Presheaf>(shape, t, std::move(sizes), std::move(actions));
}

PresheafPtr empty_presheaf(const ShapePtr& shape, int truncation) {
  const auto& C = *shape->cat;
  const int t = resolve_cap(*shape, truncation);
  return std::make_shared<Presheaf>(shape, t, std::vector<int>(C.object_count(), 0),
                                    std::vector<std::vector<int>>(C.generators().size()));
}

PresheafPtr truncate(const PresheafPtr& X, int n) {
  if (n > X->cap()) throw TruncationError("cannot truncate above the available degree");
  if (n == X->truncation() && !X->coskeletal_above()) return X;
  const auto& C = X->cat();
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < actions.size(); ++i)
    if (gen_within(C, static_cast<int>(i), n)) actions[i] = X->action_table(static_cast<int>(i));
  auto Y = std::make_shared<Presheaf>(X->shape_ptr(), n, sizes_of(*X, n), std::move(actions));
  if (X->has_labels()) {
    std::vector<std::vector<std::string>> labels(C.object_count());
    for (ObjId a = 0; a < C.object_count(); ++a)
      if (C.degree(a) <= n)
        for (int x = 0; x < X->size(a); ++x) labels[a].push_back(X->label(a, x));
    Y->set_labels(std::move(labels));
  }
  return Y;
}

PresheafMap identity_map(const PresheafPtr& X) {
  PresheafMap f{X, X, {}};
  f.components.resize(X->cat().object_count());
  for (ObjId a = 0; a < X->cat().object_count(); ++a)
    if (X->defined(a)) {
      f.components[a].resize(X->size(a));
      std::iota(f.components[a].begin(), f.components[a].end(), 0);
    }
  return f;
}

PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
  PresheafMap h{f.source, g.target, {}};
  const int cap = std::min(f.cap(), g.cap());
  h.components.resize(f.source->cat().object_count());
  for (ObjId a = 0; a < f.source->cat().object_count(); ++a)
    if (f.source->cat().degree(a) <= cap)
      for (int v : f.components[a]) h.components[a].push_back(g.components[a][v]);
  return h;
}

PresheafMap map_to_terminal(const PresheafPtr& X, const PresheafPtr& T) {
  PresheafMap f{X, T, {}};
  f.components.resize(X->cat().object_count());
  const int cap = std::min(X->cap(), T->cap());
  for (ObjId a = 0; a < X->cat().object_count(); ++a)
    if (X->cat().degree(a) <= cap) f.components[a].assign(X->size(a), 0);
  return f;
}

CheckReport validate_map(const PresheafMap& f) {
  CheckReport rep;
  rep.name = "presheaf map";
  const auto& C = f.source->cat();
  const int cap = f.cap();
  rep.truncation = cap;
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    if (static_cast<int>(f.components[a].size()) != f.source->size(a)) {
      rep.add("shape", "component at " + C.object(a).id + " has the wrong length");
      return rep;
    }
    for (int v : f.components[a])
      if (v < 0 || v >= f.target->size(a)) {
        rep.add("shape", "component at " + C.object(a).id + " leaves the target");
        return rep;
      }
  }
  for (std::size_t i = 0; i < C.generators().size(); ++i) {
    const int gi = static_cast<int>(i);
    if (!gen_within(C, gi, cap)) continue;
    const MorId u = C.generators()[i];
    const ObjId s = C.dom(u), b = C.cod(u);
    for (int x = 0; x < f.source->size(b); ++x)
      if (f.components[s][f.source->act_gen(gi, x)] != f.target->act_gen(gi, f.components[b][x])) {
        rep.add("naturality", "square for " + C.morphism(u).id + " fails at " + f.source->label(b, x), {u});
        break;
      }
  }
  return rep;
}

bool is_mono(const PresheafMap& f) {
  const auto& C = f.source->cat();
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > f.cap()) continue;
    std::vector<char> hit(f.target->size(a), 0);
    for (int v : f.components[a]) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
  }
  return true;
}

bool is_iso(const PresheafMap& f) {
  const auto& C = f.source->cat();
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= f.cap() && f.source->size(a) != f.target->size(a)) return false;
  return is_mono(f);
}

PresheafMap yoneda_map(const PresheafPtr& A, const PresheafPtr& X, ObjId a, int x) {
  const auto& C = X->cat();
  PresheafMap f{A, X, {}};
  f.components.resize(C.object_count());
  const int cap = std::min(A->cap(), X->cap());
  for (ObjId b = 0; b < C.object_count(); ++b)
    if (C.degree(b) <= cap)
      for (MorId h : C.hom(b, a)) f.components[b].push_back(X->act(h, x));
  return f;
}

Subobject generated_subobject(const PresheafPtr& X, const std::vector<std::pair<ObjId, int>>& elements) {
  const auto& C = X->cat();
  const int cap = X->cap();
  Subobject s{X, {}};
  s.selected.resize(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= cap) s.selected[a].assign(X->size(a), 0);
  std::vector<std::pair<ObjId, int>> stack;
  for (auto [a, x] : elements)
    if (C.degree(a) <= cap && !s.selected[a][x]) {
      s.selected[a][x] = 1;
      stack.push_back({a, x});
    }
  while (!stack.empty()) {
    auto [a, x] = stack.back();
    stack.pop_back();
    for (MorId u : C.generators_into(a)) {
      const ObjId d = C.dom(u);
      if (C.degree(d) > cap) continue;
      const int y = X->act_gen(C.generator_index(u), x);
      if (!s.selected[d][y]) {
        s.selected[d][y] = 1;
        stack.push_back({d, y});
      }
    }
  }
  return s;
}

Subobject full_subobject(const PresheafPtr& X) {
  Subobject s{X, {}};
  s.selected.resize(X->cat().object_count());
  for (ObjId a = 0; a < X->cat().object_count(); ++a)
    if (X->defined(a)) s.selected[a].assign(X->size(a), 1);
  return s;
}

PresheafMap subobject_inclusion(const Subobject& s) {
  const auto& X = *s.parent;
  const auto& C = X.cat();
  const int cap = X.cap();
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<int>> renumber(C.object_count());
  PresheafMap inc{nullptr, s.parent, {}};
  inc.components.resize(C.object_count());
  std::vector<std::vector<std::string>> labels(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    renumber[a].assign(X.size(a), -1);
    for (int x = 0; x < X.size(a); ++x)
      if (s.selected[a][x]) {
        renumber[a][x] = sizes[a]++;
        inc.components[a].push_back(x);
        if (X.has_labels()) labels[a].push_back(X.label(a, x));
      }
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int gi = static_cast<int>(i);
    if (!gen_within(C, gi, cap)) continue;
    const MorId u = C.generators()[i];
    for (int x : inc.components[C.cod(u)]) actions[i].push_back(renumber[C.dom(u)][X.act_gen(gi, x)]);
  }
  auto S = std::make_shared<Presheaf>(X.shape_ptr(), cap, std::move(sizes), std::move(actions));
  if (X.has_labels()) S->set_labels(std::move(labels));
  inc.source = S;
  return inc;
}

Subobject image(const PresheafMap& f) {
  Subobject s{f.target, {}};
  const auto& C = f.target->cat();
  s.selected.resize(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (!f.target->defined(a)) continue;
    s.selected[a].assign(f.target->size(a), 0);
    if (C.degree(a) <= f.cap())
      for (int v : f.components[a]) s.selected[a][v] = 1;
  }
  return s;
}

namespace {

bool proper_face(const ShapeCategory& shape, MorId g) { return shape.reedy.plus[g] && !shape.cat->is_iso(g); }

std::pair<ObjId, int> as_element(const FiniteCategory& C, MorId g) {
  return {C.dom(g), g - C.hom(C.dom(g), C.cod(g)).first};
}

}  // namespace

Subobject boundary(const ShapePtr& shape, ObjId a) {
  const auto& C = *shape->cat;
  std::vector<std::pair<ObjId, int>> gens;
  for (ObjId s = 0; s < C.object_count(); ++s)
    for (MorId g : C.hom(s, a))
      if (proper_face(*shape, g)) gens.push_back(as_element(C, g));
  return generated_subobject(representable(shape, a), gens);
}

std::vector<MorId> elementary_faces(const ShapeCategory& shape, ObjId a) {
  const auto& C = *shape.cat;
  std::vector<char> composite(C.morphism_count(), 0);
  std::vector<MorId> faces;
  for (ObjId s = 0; s < C.object_count(); ++s)
    for (MorId h : C.hom(s, a))
      if (proper_face(shape, h)) faces.push_back(h);
  for (MorId h : faces)
    for (ObjId t = 0; t < C.object_count(); ++t)
      for (MorId k : C.hom(t, C.dom(h)))
        if (proper_face(shape, k)) composite[C.compose(h, k)] = 1;
  std::vector<MorId> out;
  std::vector<char> taken(C.morphism_count(), 0);
  for (MorId h : faces) {
    if (composite[h] || taken[h]) continue;
    out.push_back(h);
    for (MorId al : C.automorphisms(C.dom(h))) taken[C.compose(h, al)] = 1;
  }
  return out;
}

Subobject horn(const ShapePtr& shape, ObjId a, MorId f) {
  const auto& C = *shape->cat;
  if (f < 0 || f >= C.morphism_count() || C.cod(f) != a || !proper_face(*shape, f))
    throw ArgumentError("horn needs a non-invertible face into " + C.object(a).id);
  const auto faces = elementary_faces(*shape, a);
  std::vector<char> excluded(C.morphism_count(), 0);
  for (MorId al : C.automorphisms(C.dom(f))) excluded[C.compose(f, al)] = 1;
  bool elementary = false;
  std::vector<std::pair<ObjId, int>> gens;
  for (MorId g : faces) {
    if (excluded[g]) {
      elementary = true;
      continue;
    }
    gens.push_back(as_element(C, g));
  }
  if (!elementary) throw ArgumentError("face " + C.morphism(f).id + " is not elementary");
  return generated_subobject(representable(shape, a), gens);
}

Subobject skeleton(const PresheafPtr& X, int n) {
  const auto& C = X->cat();
  std::vector<std::pair<ObjId, int>> gens;
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= std::min(n, X->cap()))
      for (int x = 0; x < X->size(a); ++x) gens.push_back({a, x});
  return generated_subobject(X, gens);
}

std::vector<std::vector<char>> nondegenerate(const Presheaf& X) {
  const auto& C = X.cat();
  const auto& shape = X.shape();
  const int cap = X.cap();
  std::vector<std::vector<char>> degenerate(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= cap) degenerate[a].assign(X.size(a), 0);
  for (std::size_t i = 0; i < C.generators().size(); ++i) {
    const MorId u = C.generators()[i];
    if (!shape.reedy.minus[u] || C.is_iso(u) || !gen_within(C, static_cast<int>(i), cap)) continue;
    for (int x = 0; x < X.size(C.cod(u)); ++x) degenerate[C.dom(u)][X.act_gen(static_cast<int>(i), x)] = 1;
  }
  auto closed = degenerate;
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    for (MorId al : C.isos_from(a))
      for (int x = 0; x < X.size(C.cod(al)); ++x)
        if (degenerate[C.cod(al)][x]) closed[a][X.act(al, x)] = 1;
  }
  for (auto& level : closed)
    for (auto& v : level) v = !v;
  return closed;
}

PredicateResult is_normal_mono(const PresheafMap& f) {
  PredicateResult r;
  if (!is_mono(f)) {
    r.holds = false;
    r.witness = "not a monomorphism";
    return r;
  }
  const auto& Y = *f.target;
  const auto& C = Y.cat();
  const auto im = image(f);
  const auto nd = nondegenerate(Y);
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > f.cap()) continue;
    for (int y = 0; y < Y.size(a); ++y) {
      if (im.selected[a][y] || !nd[a][y]) continue;
      for (MorId al : C.automorphisms(a)) {
        if (C.is_identity(al)) continue;
        if (Y.act(al, y) == y) {
          r.holds = false;
          r.witness = "nondegenerate element " + Y.label(a, y) + " of " + C.object(a).id +
                      " outside the image is fixed by " + C.morphism(al).id;
          r.morphisms = {al};
          return r;
        }
      }
    }
  }
  return r;
}

// ---- limits and colimits ----

Product product(const PresheafPtr& X, const PresheafPtr& Y) {
  const auto& C = X->cat();
  const int cap = std::min(X->cap(), Y->cap());
  Product P;
  P.sizes2.assign(C.object_count(), 0);
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<std::string>> labels(C.object_count());
  const bool named = X->has_labels() || Y->has_labels();
  P.p1 = {nullptr, X, std::vector<std::vector<int>>(C.object_count())};
  P.p2 = {nullptr, Y, std::vector<std::vector<int>>(C.object_count())};
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    const int nx = X->size(a), ny = Y->size(a);
    P.sizes2[a] = ny;
    sizes[a] = nx * ny;
    for (int x = 0; x < nx; ++x)
      for (int y = 0; y < ny; ++y) {
        P.p1.components[a].push_back(x);
        P.p2.components[a].push_back(y);
        if (named) labels[a].push_back("(" + X->label(a, x) + "," + Y->label(a, y) + ")");
      }
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int gi = static_cast<int>(i);
    if (!gen_within(C, gi, cap)) continue;
    const MorId u = C.generators()[i];
    const ObjId s = C.dom(u), b = C.cod(u);
    for (int x = 0; x < X->size(b); ++x)
      for (int y = 0; y < Y->size(b); ++y)
        actions[i].push_back(X->act_gen(gi, x) * P.sizes2[s] + Y->act_gen(gi, y));
  }
  auto Z = std::make_shared<Presheaf>(X->shape_ptr(), cap, std::move(sizes), std::move(actions));
  if (named) Z->set_labels(std::move(labels));
  P.presheaf = Z;
  P.p1.source = Z;
  P.p2.source = Z;
  return P;
}

Pullback pullback(const PresheafMap& f, const PresheafMap& g) {
  const auto& C = f.source->cat();
  const int cap = std::min(f.cap(), g.cap());
  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<std::pair<int, int>>> elems(C.object_count());
  std::vector<std::unordered_map<std::int64_t, int>> index(C.object_count());
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    std::vector<std::vector<int>> over(f.target->size(a));
    for (int y = 0; y < g.source->size(a); ++y) over[g.components[a][y]].push_back(y);
    for (int x = 0; x < f.source->size(a); ++x)
      for (int y : over[f.components[a][x]]) {
        index[a][static_cast<std::int64_t>(x) * g.source->size(a) + y] = static_cast<int>(elems[a].size());
        elems[a].push_back({x, y});
      }
    sizes[a] = static_cast<int>(elems[a].size());
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int gi = static_cast<int>(i);
    if (!gen_within(C, gi, cap)) continue;
    const MorId u = C.generators()[i];
    const ObjId s = C.dom(u), b = C.cod(u);
    for (auto [x, y] : elems[b]) {
      const int x2 = f.source->act_gen(gi, x), y2 = g.source->act_gen(gi, y);
      actions[i].push_back(index[s].at(static_cast<std::int64_t>(x2) * g.source->size(s) + y2));
    }
  }
  Pullback P;
  P.presheaf = std::make_shared<Presheaf>(f.source->shape_ptr(), cap, sizes, std::move(actions));
  P.p1 = {P.presheaf, f.source, std::vector<std::vector<int>>(C.object_count())};
  P.p2 = {P.presheaf, g.source, std::vector<std::vector<int>>(C.object_count())};
  for (ObjId a = 0; a < C.object_count(); ++a)
    for (auto [x, y] : elems[a]) {
      P.p1.components[a].push_back(x);
      P.p2.components[a].push_back(y);
    }
  return P;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent[a] = b;
    return true;
  }
};

}  // namespace

Pushout pushout(const PresheafMap& f, const PresheafMap& g) {
  const auto& C = f.source->cat();
  const auto& X = *f.target;
  const auto& Y = *g.target;
  const int cap = std::min(f.cap(), g.cap());
  std::vector<int> sizes(C.object_count(), 0);
  Pushout P;
  P.i1 = {nullptr, f.target, std::vector<std::vector<int>>(C.object_count())};
  P.i2 = {nullptr, g.target, std::vector<std::vector<int>>(C.object_count())};
  std::vector<std::vector<int>> cls(C.object_count());
  std::vector<std::vector<std::string>> labels(C.object_count());
  const bool named = X.has_labels() || Y.has_labels();
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    const int nx = X.size(a), ny = Y.size(a);
    Dsu d(nx + ny);
    for (int z = 0; z < f.source->size(a); ++z) d.unite(f.components[a][z], nx + g.components[a][z]);
    std::vector<int> id(nx + ny, -1);
    cls[a].resize(nx + ny);
    for (int e = 0; e < nx + ny; ++e) {
      const int r = d.find(e);
      if (id[r] < 0) {
        id[r] = sizes[a]++;
        if (named) labels[a].push_back(e < nx ? X.label(a, e) : Y.label(a, e - nx));
      }
      cls[a][e] = id[r];
    }
    for (int x = 0; x < nx; ++x) P.i1.components[a].push_back(cls[a][x]);
    for (int y = 0; y < ny; ++y) P.i2.components[a].push_back(cls[a][nx + y]);
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int gi = static_cast<int>(i);
    if (!gen_within(C, gi, cap)) continue;
    const MorId u = C.generators()[i];
    const ObjId s = C.dom(u), b = C.cod(u);
    std::vector<int> table(sizes[b], -1);
    const int nx = X.size(b);
    for (int e = 0; e < nx + Y.size(b); ++e) {
      const int v = e < nx ? cls[s][X.act_gen(gi, e)] : cls[s][X.size(s) + Y.act_gen(gi, e - nx)];
      int& slot = table[cls[b][e]];
      if (slot >= 0 && slot != v) throw StructuralError("pushout legs are not natural");
      slot = v;
    }
    actions[i] = std::move(table);
  }
  auto Z = std::make_shared<Presheaf>(f.source->shape_ptr(), cap, std::move(sizes), std::move(actions));
  if (named) Z->set_labels(std::move(labels));
  P.presheaf = Z;
  P.i1.source = f.target;
  P.i1.target = Z;
  P.i2.source = g.target;
  P.i2.target = Z;
  return P;
}

Pushout coproduct(const PresheafPtr& X, const PresheafPtr& Y) {
  const int cap = std::min(X->cap(), Y->cap());
  auto E = empty_presheaf(X->shape_ptr(), cap);
  PresheafMap f{E, X, std::vector<std::vector<int>>(X->cat().object_count())};
  PresheafMap g{E, Y, std::vector<std::vector<int>>(X->cat().object_count())};
  return pushout(f, g);
}

PresheafMap quotient(const PresheafPtr& X, const std::vector<std::pair<ObjId, std::pair<int, int>>>& identify) {
  const auto& C = X->cat();
  const int cap = X->cap();
  std::vector<Dsu> d;
  for (ObjId a = 0; a < C.object_count(); ++a) d.emplace_back(C.degree(a) <= cap ? X->size(a) : 0);
  for (auto [a, p] : identify) d[a].unite(p.first, p.second);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < C.generators().size(); ++i) {
      const int gi = static_cast<int>(i);
      if (!gen_within(C, gi, cap)) continue;
      const MorId u = C.generators()[i];
      const ObjId s = C.dom(u), b = C.cod(u);
      std::vector<int> img(X->size(b), -1);
      for (int x = 0; x < X->size(b); ++x) {
        const int r = d[b].find(x);
        const int v = X->act_gen(gi, x);
        if (img[r] < 0)
          img[r] = v;
        else if (d[s].unite(img[r], v))
          changed = true;
      }
    }
  }
  std::vector<int> sizes(C.object_count(), 0);
  PresheafMap q{X, nullptr, std::vector<std::vector<int>>(C.object_count())};
  for (ObjId a = 0; a < C.object_count(); ++a) {
    if (C.degree(a) > cap) continue;
    std::vector<int> id(X->size(a), -1);
    for (int x = 0; x < X->size(a); ++x) {
      const int r = d[a].find(x);
      if (id[r] < 0) id[r] = sizes[a]++;
      q.components[a].push_back(id[r]);
    }
  }
  std::vector<std::vector<int>> actions(C.generators().size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const int gi = static_cast<int>(i);
    if (!gen_within(C, gi, cap)) continue;
    const MorId u = C.generators()[i];
    const ObjId s = C.dom(u), b = C.cod(u);
    actions[i].assign(sizes[b], 0);
    for (int x = 0; x < X->size(b); ++x) actions[i][q.components[b][x]] = q.components[s][X->act_gen(gi, x)];
  }
  q.target = std::make_shared<Presheaf>(X->shape_ptr(), cap, std::move(sizes), std::move(actions));
  return q;
}

PresheafPtr random_presheaf(const ShapePtr& shape, std::mt19937_64& rng, const RandomPresheafOptions& opts) {
  const auto& C = *shape->cat;
  std::vector<ObjId> small;
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= opts.max_piece_degree) small.push_back(a);
  if (small.empty()) throw ArgumentError("no objects of small degree");
  PresheafPtr X = empty_presheaf(shape);
  for (int i = 0; i < opts.pieces; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    X = coproduct(X, representable(shape, small[pick(rng)])).presheaf;
  }
  std::vector<std::pair<ObjId, std::pair<int, int>>> identify;
  std::vector<ObjId> levels;
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (X->size(a) >= 2 && C.degree(a) <= opts.max_piece_degree) levels.push_back(a);
  for (int i = 0; i < opts.identifications && !levels.empty(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
    const ObjId a = levels[pick(rng)];
    std::uniform_int_distribution<int> el(0, X->size(a) - 1);
    identify.push_back({a, {el(rng), el(rng)}});
  }
  return quotient(X, identify).target;
}

}  // namespace augcat
