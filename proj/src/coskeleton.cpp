#include <algorithm>

#include "augcat/errors.hpp"
#include "augcat/presheaf.hpp"

namespace augcat {

std::size_t Coskeleton::VecHash::operator()(const std::vector<int>& v) const {
  std::size_t h = 1469598103934665603ull;
  for (int x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9E3779B97F4A7C15ull;
    h *= 1099511628211ull;
  }
  return h;
}

std::optional<int> Coskeleton::lookup(ObjId r, const std::vector<int>& data) const {
  const auto it = index_[r].find(data);
  if (it == index_[r].end()) return std::nullopt;
  return it->second;
}

// Levels are built by increasing degree d > n.  An element at r is a map
// A[r]|<d -> C|<d into the part built so far; it is keyed by its values on
// morphisms from objects of degree <= n, which determine it.
Coskeleton coskeleton(const PresheafPtr& X, int n) {
  const auto& shape = X->shape();
  const auto& C = X->cat();
  const auto& gens = C.generators();
  const int top = shape.truncation;
  if (n < 0 || n > X->cap()) throw TruncationError("coskeleton degree outside the available levels");

  Coskeleton out;
  out.n = n;
  out.data_.resize(C.object_count());
  out.low_.resize(C.object_count());
  out.index_.resize(C.object_count());

  std::vector<int> sizes(C.object_count(), 0);
  std::vector<std::vector<int>> tables(gens.size());
  for (ObjId a = 0; a < C.object_count(); ++a)
    if (C.degree(a) <= n) sizes[a] = X->size(a);
  auto within = [&](int gi, int d) {
    return C.degree(C.dom(gens[gi])) <= d && C.degree(C.cod(gens[gi])) <= d;
  };
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (within(static_cast<int>(i), n)) tables[i] = X->action_table(static_cast<int>(i));
  auto act_built = [&](MorId f, int x) {
    const auto& w = C.morphism(f).word;
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = tables[C.generator_index(*it)][x];
    return x;
  };

  for (int d = n + 1; d <= top; ++d) {
    std::vector<ObjId> level;
    for (ObjId r = 0; r < C.object_count(); ++r)
      if (C.degree(r) == d) level.push_back(r);
    if (level.empty()) continue;
    auto built = std::make_shared<Presheaf>(X->shape_ptr(), d - 1, sizes, tables);
    // Full boundary data of each new element, indexed like hom(t, r) for d(t) < d.
    std::vector<std::vector<std::vector<int>>> full(C.object_count());
    for (ObjId r : level) {
      for (ObjId t = 0; t < C.object_count(); ++t)
        if (C.degree(t) <= n)
          for (MorId h : C.hom(t, r)) out.low_[r].push_back(h);
      std::sort(out.low_[r].begin(), out.low_[r].end());
      auto A = truncate(representable(X->shape_ptr(), r), d - 1);
      hom_search(*A, *built, {}, [&](const Components& c) {
        std::vector<int> key;
        key.reserve(out.low_[r].size());
        for (MorId h : out.low_[r]) key.push_back(c[C.dom(h)][h - C.hom(C.dom(h), r).first]);
        std::vector<int> flat;
        for (ObjId t = 0; t < C.object_count(); ++t)
          if (C.degree(t) < d) flat.insert(flat.end(), c[t].begin(), c[t].end());
        const int id = static_cast<int>(out.data_[r].size());
        if (!out.index_[r].emplace(key, id).second)
          throw StructuralError("coskeleton: two boundary maps share their low-degree data");
        out.data_[r].push_back(std::move(key));
        full[r].push_back(std::move(flat));
        return true;
      });
      sizes[r] = static_cast<int>(out.data_[r].size());
    }
    // Offset of hom(t, r) inside the flattened boundary data.
    std::vector<std::vector<int>> offsets(C.object_count());
    for (ObjId r : level) {
      offsets[r].assign(C.object_count(), 0);
      int off = 0;
      for (ObjId t = 0; t < C.object_count(); ++t) {
        offsets[r][t] = off;
        if (C.degree(t) < d) off += C.hom(t, r).size();
      }
    }
    auto value_at = [&](ObjId r, int phi, MorId h) {
      const ObjId t = C.dom(h);
      return full[r][phi][offsets[r][t] + (h - C.hom(t, r).first)];
    };
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const MorId g = gens[i];
      const ObjId s = C.dom(g), b = C.cod(g);
      const int ds = C.degree(s), db = C.degree(b);
      if (std::max(ds, db) != d) continue;
      std::vector<int>& table = tables[i];
      table.assign(sizes[b], -1);
      if (db == d && ds < d) {
        for (int phi = 0; phi < sizes[b]; ++phi) table[phi] = value_at(b, phi, g);
        continue;
      }
      for (int phi = 0; phi < sizes[b]; ++phi) {
        std::vector<int> key;
        key.reserve(out.low_[s].size());
        for (MorId h : out.low_[s]) {
          const MorId gh = C.compose(g, h);
          key.push_back(db == d ? value_at(b, phi, gh) : act_built(gh, phi));
        }
        const auto hit = out.lookup(s, key);
        if (!hit) throw StructuralError("coskeleton: action of " + C.morphism(g).id + " has no target element");
        table[phi] = *hit;
      }
    }
  }

  auto P = std::make_shared<Presheaf>(X->shape_ptr(), top, sizes, std::move(tables), std::min(n, top));
  if (X->has_labels()) {
    std::vector<std::vector<std::string>> labels(C.object_count());
    for (ObjId a = 0; a < C.object_count(); ++a)
      if (C.degree(a) <= n)
        for (int x = 0; x < X->size(a); ++x) labels[a].push_back(X->label(a, x));
    P->set_labels(std::move(labels));
  }
  out.presheaf = P;
  return out;
}

PresheafMap cosk_unit(const PresheafPtr& X, const Coskeleton& Cs) {
  const auto& C = X->cat();
  PresheafMap u{X, Cs.presheaf, std::vector<std::vector<int>>(C.object_count())};
  const int cap = u.cap();
  for (ObjId r = 0; r < C.object_count(); ++r) {
    if (C.degree(r) > cap) continue;
    for (int x = 0; x < X->size(r); ++x) {
      if (C.degree(r) <= Cs.n) {
        u.components[r].push_back(x);
        continue;
      }
      std::vector<int> key;
      for (MorId h : Cs.low_morphisms(r)) key.push_back(X->act(h, x));
      const auto hit = Cs.lookup(r, key);
      if (!hit) throw StructuralError("unit: element has no image in the coskeleton");
      u.components[r].push_back(*hit);
    }
  }
  return u;
}

PresheafMap cosk_map(const PresheafMap& f, const Coskeleton& CX, const Coskeleton& CY) {
  if (CX.n != CY.n) throw ArgumentError("coskeleta of different degrees");
  const auto& C = f.source->cat();
  PresheafMap m{CX.presheaf, CY.presheaf, std::vector<std::vector<int>>(C.object_count())};
  for (ObjId r = 0; r < C.object_count(); ++r) {
    if (C.degree(r) <= CX.n) {
      m.components[r] = f.components[r];
      continue;
    }
    if (!CX.presheaf->defined(r)) continue;
    for (int phi = 0; phi < CX.presheaf->size(r); ++phi) {
      const auto& low = CX.low_morphisms(r);
      const auto& data = CX.data(r, phi);
      std::vector<int> key(data.size());
      for (std::size_t k = 0; k < data.size(); ++k) key[k] = f.components[C.dom(low[k])][data[k]];
      const auto hit = CY.lookup(r, key);
      if (!hit) throw StructuralError("cosk_map: image data is not an element");
      m.components[r].push_back(*hit);
    }
  }
  return m;
}

CoskeletalVerdict is_coskeletal(const PresheafPtr& X, int n) {
  CoskeletalVerdict v;
  const auto& C = X->cat();
  const auto& shape = X->shape_ptr();
  const int cap = X->cap();
  if (n >= cap) return v;

  const auto Cs = coskeleton(truncate(X, n), n);
  const auto unit = cosk_unit(X, Cs);
  for (ObjId r = 0; r < C.object_count(); ++r)
    if (C.degree(r) <= cap && X->size(r) != Cs.presheaf->size(r)) {
      v.unit_iso = false;
      v.witness = "unit not bijective at " + C.object(r).id;
      break;
    }
  if (v.unit_iso && !is_mono(unit)) {
    v.unit_iso = false;
    v.witness = "unit not injective";
  }

  const auto Xn = truncate(X, n);
  for (ObjId r = 0; r < C.object_count(); ++r) {
    const int d = C.degree(r);
    if (d <= n || d > cap) continue;
    const auto A = representable(shape, r);
    if (v.restriction_bijective) {
      const auto count = hom_count(*truncate(A, n), *Xn);
      std::vector<std::vector<int>> seen;
      for (int x = 0; x < X->size(r); ++x) {
        std::vector<int> key;
        for (ObjId t = 0; t < C.object_count(); ++t)
          if (C.degree(t) <= n)
            for (MorId h : C.hom(t, r)) key.push_back(X->act(h, x));
        seen.push_back(std::move(key));
      }
      std::sort(seen.begin(), seen.end());
      const bool injective = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
      if (!injective || count != static_cast<std::uint64_t>(X->size(r))) {
        v.restriction_bijective = false;
        if (v.witness.empty())
          v.witness = "restriction at " + C.object(r).id + ": " + std::to_string(X->size(r)) + " elements, " +
                      std::to_string(count) + " truncated maps";
      }
    }
    if (v.unique_fillers) {
      const auto B = subobject_inclusion(boundary(shape, r));
      HomSearchOptions opts;
      opts.cap = cap;
      const auto count = hom_count(*B.source, *X, opts);
      std::vector<std::vector<int>> seen;
      for (int x = 0; x < X->size(r); ++x) {
        std::vector<int> key;
        for (ObjId t = 0; t < C.object_count(); ++t)
          if (C.degree(t) <= cap)
            for (int e : B.components[t]) key.push_back(X->act(C.hom(t, r)[e], x));
        seen.push_back(std::move(key));
      }
      std::sort(seen.begin(), seen.end());
      const bool injective = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
      if (!injective || count != static_cast<std::uint64_t>(X->size(r))) {
        v.unique_fillers = false;
        if (v.witness.empty())
          v.witness = "boundary of " + C.object(r).id + ": " + std::to_string(count) + " maps, " +
                      std::to_string(X->size(r)) + " elements";
      }
    }
  }
  return v;
}

}  // namespace augcat
