#include "augcat/structure.hpp"

#include "augcat/errors.hpp"

namespace augcat {

std::vector<MorId> FunctorData::preimage() const {
  std::vector<MorId> pre(target->morphism_count(), -1);
  for (MorId f = 0; f < static_cast<MorId>(on_morphisms.size()); ++f) {
    const MorId g = on_morphisms[f];
    if (pre[g] >= 0) throw StructuralError("functor is not faithful: " + target->morphism(g).id + " hit twice");
    pre[g] = f;
  }
  return pre;
}

FunctorData identity_functor(std::shared_ptr<const FiniteCategory> cat) {
  FunctorData f;
  f.source = cat;
  f.target = cat;
  for (ObjId a = 0; a < cat->object_count(); ++a) f.on_objects.push_back(a);
  for (MorId m = 0; m < cat->morphism_count(); ++m) f.on_morphisms.push_back(m);
  return f;
}

void CheckReport::add(std::string rule, std::string message, std::vector<MorId> morphisms) {
  ++violation_count;
  if (violations.size() < kMaxStored)
    violations.push_back({std::move(rule), std::move(message), std::move(morphisms)});
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& v : other.violations)
    if (violations.size() < kMaxStored) violations.push_back(v);
  violation_count += other.violation_count;
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

CheckReport check_functor(const FunctorData& F) {
  CheckReport rep;
  rep.name = "functor";
  const auto& S = *F.source;
  const auto& T = *F.target;
  if (static_cast<int>(F.on_objects.size()) != S.object_count() ||
      static_cast<int>(F.on_morphisms.size()) != S.morphism_count()) {
    rep.add("shape", "object or morphism map has the wrong length");
    return rep;
  }
  for (ObjId a = 0; a < S.object_count(); ++a)
    if (F.on_morphisms[S.identity(a)] != T.identity(F.on_objects[a]))
      rep.add("identity", "identity of " + S.object(a).id + " not preserved");
  for (MorId f = 0; f < S.morphism_count(); ++f) {
    const MorId g = F.on_morphisms[f];
    if (T.dom(g) != F.on_objects[S.dom(f)] || T.cod(g) != F.on_objects[S.cod(f)])
      rep.add("endpoints", "endpoints of " + S.morphism(f).id + " not preserved", {f});
  }
  if (!rep.ok()) return rep;
  // Post-composition with generators suffices: induct along the word of g.
  for (MorId f = 0; f < S.morphism_count(); ++f)
    for (MorId g : S.generators_from(S.cod(f))) {
      const MorId gf = S.compose(g, f);
      if (T.compose(F.on_morphisms[g], F.on_morphisms[f]) != F.on_morphisms[gf])
        rep.add("composition", "composite " + S.morphism(g).id + " o " + S.morphism(f).id + " not preserved", {g, f});
    }
  return rep;
}

}  // namespace augcat
