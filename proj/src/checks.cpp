#include "augcat/checks.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"

namespace augcat {
namespace {

struct Dsu {
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
  std::vector<int> parent;
};

// Morphisms into / out of each object, as flat lists.
struct Incidence {
  std::vector<std::vector<MorId>> into;
  std::vector<std::vector<MorId>> from;
};

Incidence incidence(const FiniteCategory& cat, const std::vector<char>* filter = nullptr) {
  Incidence inc;
  inc.into.resize(cat.object_count());
  inc.from.resize(cat.object_count());
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    if (filter && !(*filter)[f]) continue;
    inc.into[cat.cod(f)].push_back(f);
    inc.from[cat.dom(f)].push_back(f);
  }
  return inc;
}

std::string mid(const FiniteCategory& cat, MorId f) { return cat.morphism(f).id; }

}  // namespace

CheckReport check_category_axioms(const FiniteCategory& cat, const AxiomBudget& budget) {
  CheckReport rep;
  rep.name = "category_axioms";
  rep.truncation = cat.max_degree();
  const int n = cat.morphism_count();

  for (MorId f = 0; f < n; ++f) {
    const ObjId a = cat.dom(f), b = cat.cod(f);
    auto l = cat.try_compose(cat.identity(b), f);
    auto r = cat.try_compose(f, cat.identity(a));
    if (!l || *l != f || !r || *r != f) rep.add("identity", "identity law fails for " + mid(cat, f), {f});
  }

  for (MorId f = 0; f < n; ++f) {
    const auto& w = cat.morphism(f).word;
    if (cat.is_identity(f)) {
      if (!w.empty()) rep.add("word", "identity " + mid(cat, f) + " has a non-empty word", {f});
      continue;
    }
    if (w.empty()) {
      rep.add("word", "morphism " + mid(cat, f) + " has no word", {f});
      continue;
    }
    bool good = true;
    for (MorId g : w)
      if (g < 0 || g >= n || cat.generator_index(g) < 0) good = false;
    std::optional<MorId> cur = good ? std::optional<MorId>(w[0]) : std::nullopt;
    for (std::size_t i = 1; cur && i < w.size(); ++i) {
      if (cat.cod(*cur) != cat.dom(w[i])) {
        cur.reset();
        break;
      }
      cur = cat.try_compose(w[i], *cur);
    }
    if (!cur || *cur != f) rep.add("word", "word of " + mid(cat, f) + " does not compose to it", {f});
  }

  const Incidence inc = incidence(cat);
  std::uint64_t pairs = 0, triples = 0;
  for (ObjId b = 0; b < cat.object_count(); ++b) pairs += inc.into[b].size() * inc.from[b].size();
  for (MorId g = 0; g < n; ++g) triples += inc.into[cat.dom(g)].size() * inc.from[cat.cod(g)].size();

  std::mt19937_64 rng(budget.seed);
  auto pick = [&](const std::vector<MorId>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };

  if (pairs <= budget.max_pairs) {
    for (ObjId b = 0; b < cat.object_count(); ++b)
      for (MorId f : inc.into[b])
        for (MorId g : inc.from[b])
          if (!cat.try_compose(g, f))
            rep.add("closure", "composite " + mid(cat, g) + " o " + mid(cat, f) + " is missing", {g, f});
    rep.notes.push_back("closure checked exhaustively on " + std::to_string(pairs) + " composable pairs");
  } else {
    const std::uint64_t samples = std::min<std::uint64_t>(budget.max_pairs, 1'000'000);
    for (std::uint64_t s = 0; s < samples; ++s) {
      const MorId f = std::uniform_int_distribution<MorId>(0, n - 1)(rng);
      if (inc.from[cat.cod(f)].empty()) continue;
      const MorId g = pick(inc.from[cat.cod(f)]);
      if (!cat.try_compose(g, f))
        rep.add("closure", "composite " + mid(cat, g) + " o " + mid(cat, f) + " is missing", {g, f});
    }
    rep.notes.push_back("closure sampled on " + std::to_string(samples) + " of " + std::to_string(pairs) +
                        " composable pairs (seed " + std::to_string(budget.seed) + ")");
  }

  auto assoc = [&](MorId f, MorId g, MorId h) {
    auto gf = cat.try_compose(g, f);
    auto hg = cat.try_compose(h, g);
    if (!gf || !hg) return;
    auto l = cat.try_compose(h, *gf);
    auto r = cat.try_compose(*hg, f);
    if (!l || !r || *l != *r)
      rep.add("associativity", "(" + mid(cat, h) + " o " + mid(cat, g) + ") o " + mid(cat, f) + " differs", {h, g, f});
  };
  if (triples <= budget.max_triples) {
    for (MorId g = 0; g < n; ++g)
      for (MorId f : inc.into[cat.dom(g)])
        for (MorId h : inc.from[cat.cod(g)]) assoc(f, g, h);
    rep.notes.push_back("associativity checked exhaustively on " + std::to_string(triples) + " triples");
  } else {
    for (std::uint64_t s = 0; s < budget.max_triples; ++s) {
      const MorId g = std::uniform_int_distribution<MorId>(0, n - 1)(rng);
      if (inc.into[cat.dom(g)].empty() || inc.from[cat.cod(g)].empty()) continue;
      assoc(pick(inc.into[cat.dom(g)]), g, pick(inc.from[cat.cod(g)]));
    }
    rep.notes.push_back("associativity sampled on " + std::to_string(budget.max_triples) + " of " +
                        std::to_string(triples) + " triples (seed " + std::to_string(budget.seed) + ")");
  }
  return rep;
}

std::vector<std::vector<Factorization>> all_reedy_factorizations(const FiniteCategory& cat,
                                                                 const ReedyStructure& reedy) {
  std::vector<std::vector<Factorization>> out(cat.morphism_count());
  const Incidence minus = incidence(cat, &reedy.minus);
  const Incidence plus = incidence(cat, &reedy.plus);
  for (ObjId c = 0; c < cat.object_count(); ++c)
    for (MorId h : minus.into[c])
      for (MorId g : plus.from[c]) {
        auto f = cat.try_compose(g, h);
        if (f) out[*f].push_back({h, g});
      }
  return out;
}

bool factorizations_isomorphic(const FiniteCategory& cat, const Factorization& x, const Factorization& y) {
  const ObjId c = cat.cod(x.first), c2 = cat.cod(y.first);
  for (MorId t : cat.isos_from(c)) {
    if (cat.cod(t) != c2) continue;
    if (cat.compose(t, x.first) == y.first && cat.compose(y.second, t) == x.second) return true;
  }
  return false;
}

Factorization reedy_factorize(const FiniteCategory& cat, const ReedyStructure& reedy, MorId f) {
  const ObjId a = cat.dom(f), b = cat.cod(f);
  for (ObjId c : cat.objects_by_degree())
    for (MorId h : cat.hom(a, c)) {
      if (!reedy.minus[h]) continue;
      for (MorId g : cat.hom(c, b))
        if (reedy.plus[g] && cat.try_compose(g, h) == f) return {h, g};
    }
  throw StructuralError("no Reedy factorization of " + cat.morphism(f).id);
}

CheckReport check_generalized_reedy(const FiniteCategory& cat, const ReedyStructure& reedy, bool dualisable) {
  CheckReport rep;
  rep.name = "generalized_reedy";
  rep.truncation = cat.max_degree();
  const int n = cat.morphism_count();
  if (static_cast<int>(reedy.plus.size()) != n || static_cast<int>(reedy.minus.size()) != n)
    throw ArgumentError("Reedy structure does not match the category");

  for (MorId f = 0; f < n; ++f) {
    const int d = cat.degree(cat.cod(f)) - cat.degree(cat.dom(f));
    const bool iso = cat.is_iso(f);
    if (iso && d != 0) rep.add("i", "isomorphism " + mid(cat, f) + " changes the degree", {f});
    if (reedy.plus[f] && !iso && d <= 0)
      rep.add("i", "non-invertible R+ morphism " + mid(cat, f) + " does not raise the degree", {f});
    if (reedy.minus[f] && !iso && d >= 0)
      rep.add("i", "non-invertible R- morphism " + mid(cat, f) + " does not lower the degree", {f});
    if ((reedy.plus[f] && reedy.minus[f]) != iso)
      rep.add("ii", mid(cat, f) + (iso ? " is invertible but not in both R+ and R-" : " lies in R+ and R- but is not invertible"),
              {f});
  }

  for (ObjId a = 0; a < cat.object_count(); ++a) {
    const MorId id = cat.identity(a);
    if (!reedy.plus[id] || !reedy.minus[id]) rep.add("subcategory", "identity of " + cat.object(a).id + " missing", {id});
  }
  for (int side = 0; side < 2; ++side) {
    const auto& flag = side == 0 ? reedy.plus : reedy.minus;
    const Incidence inc = incidence(cat, &flag);
    for (ObjId c = 0; c < cat.object_count(); ++c)
      for (MorId f : inc.into[c])
        for (MorId g : inc.from[c]) {
          auto h = cat.try_compose(g, f);
          if (h && !flag[*h])
            rep.add("subcategory", std::string(side == 0 ? "R+" : "R-") + " not closed: " + mid(cat, g) + " o " + mid(cat, f),
                    {g, f});
        }
  }

  const auto facts = all_reedy_factorizations(cat, reedy);
  for (MorId f = 0; f < n; ++f) {
    if (facts[f].empty()) {
      rep.add("iii", mid(cat, f) + " has no R-/R+ factorization", {f});
      continue;
    }
    for (std::size_t j = 1; j < facts[f].size(); ++j)
      if (!factorizations_isomorphic(cat, facts[f][0], facts[f][j])) {
        rep.add("iii", mid(cat, f) + " has non-isomorphic factorizations", {f, facts[f][0].first, facts[f][j].first});
        break;
      }
  }

  for (MorId f = 0; f < n; ++f) {
    if (reedy.minus[f])
      for (MorId t : cat.automorphisms(cat.cod(f)))
        if (!cat.is_identity(t) && cat.try_compose(t, f) == f)
          rep.add("iv", "non-identity automorphism " + mid(cat, t) + " fixes R- morphism " + mid(cat, f), {t, f});
    if (dualisable && reedy.plus[f])
      for (MorId t : cat.automorphisms(cat.dom(f)))
        if (!cat.is_identity(t) && cat.try_compose(f, t) == f)
          rep.add("iv'", "non-identity automorphism " + mid(cat, t) + " fixes R+ morphism " + mid(cat, f), {t, f});
  }
  return rep;
}

std::vector<char> monomorphisms(const FiniteCategory& cat) {
  const int n = cat.morphism_count();
  std::vector<char> mono(n, 0);
  for (MorId f = 0; f < n; ++f) {
    const Morphism& m = cat.morphism(f);
    if (cat.law() == LawKind::function) {
      std::vector<char> seen(cat.object(m.cod).card, 0);
      bool inj = true;
      for (int i = 0; i < m.code.size() && inj; ++i) {
        if (seen[m.code[i]]) inj = false;
        seen[m.code[i]] = 1;
      }
      if (inj) {
        mono[f] = 1;
        continue;
      }
    } else if (cat.law() == LawKind::cyclic && cyclic::injective(m.code, cat.object(m.cod).card - 1)) {
      mono[f] = 1;
      continue;
    }
    bool ok = true;
    for (ObjId x : cat.objects_by_degree()) {
      const IdRange src = cat.hom(x, m.dom), dst = cat.hom(x, m.cod);
      if (src.size() > dst.size()) {
        ok = false;
        break;
      }
      std::vector<char> seen(dst.size(), 0);
      for (MorId g : src) {
        auto h = cat.try_compose(f, g);
        if (!h) continue;
        char& s = seen[*h - dst.first];
        if (s) {
          ok = false;
          break;
        }
        s = 1;
      }
      if (!ok) break;
    }
    mono[f] = ok;
  }
  return mono;
}

std::vector<char> split_epimorphisms(const FiniteCategory& cat) {
  std::vector<char> split(cat.morphism_count(), 0);
  for (MorId f = 0; f < cat.morphism_count(); ++f) {
    const ObjId a = cat.dom(f), b = cat.cod(f);
    for (MorId s : cat.hom(b, a))
      if (cat.try_compose(f, s) == cat.identity(b)) {
        split[f] = 1;
        break;
      }
  }
  return split;
}

namespace {

// Hom(r, -) sends the square to a pushout of sets.
bool yoneda_pushout(const FiniteCategory& cat, MorId p, MorId q, MorId p2, MorId q2, ObjId r) {
  const IdRange ra = cat.hom(r, cat.dom(p)), rb = cat.hom(r, cat.cod(p)), rc = cat.hom(r, cat.cod(q)),
                rd = cat.hom(r, cat.cod(p2));
  const int nb = rb.size(), nc = rc.size();
  Dsu dsu(nb + nc);
  for (MorId x : ra) dsu.unite(cat.compose(p, x) - rb.first, nb + cat.compose(q, x) - rc.first);
  std::vector<MorId> image(nb + nc, -1);
  for (int i = 0; i < nb + nc; ++i) {
    const MorId t = i < nb ? cat.compose(p2, rb[i]) : cat.compose(q2, rc[i - nb]);
    const int cls = dsu.find(i);
    if (image[cls] < 0)
      image[cls] = t;
    else if (image[cls] != t)
      return false;
  }
  std::vector<char> hit(rd.size(), 0);
  int classes = 0;
  for (int i = 0; i < nb + nc; ++i) {
    if (dsu.find(i) != i) continue;
    ++classes;
    char& h = hit[image[i] - rd.first];
    if (h) return false;
    h = 1;
  }
  return classes == rd.size();
}

// Hom(-, r) sends the square to a pullback of sets.
bool universal_pushout(const FiniteCategory& cat, MorId p, MorId q, MorId p2, MorId q2, ObjId r) {
  const ObjId a = cat.dom(p), b = cat.cod(p), c = cat.cod(q), d = cat.cod(p2);
  const IdRange ar = cat.hom(a, r), br = cat.hom(b, r), cr = cat.hom(c, r), dr = cat.hom(d, r);
  std::vector<int> count(ar.size(), 0);
  for (MorId u : br) ++count[cat.compose(u, p) - ar.first];
  std::uint64_t pairs = 0;
  for (MorId v : cr) pairs += count[cat.compose(v, q) - ar.first];
  if (pairs != static_cast<std::uint64_t>(dr.size())) return false;
  std::vector<char> seen(static_cast<std::size_t>(br.size()) * std::max(1, cr.size()), 0);
  for (MorId w : dr) {
    const std::size_t key = static_cast<std::size_t>(cat.compose(w, p2) - br.first) * cr.size() +
                            (cat.compose(w, q2) - cr.first);
    if (seen[key]) return false;
    seen[key] = 1;
  }
  return true;
}

}  // namespace

CheckReport check_ez(const FiniteCategory& cat, const ReedyStructure& reedy) {
  CheckReport rep;
  rep.name = "ez";
  rep.truncation = cat.max_degree();
  const int n = cat.morphism_count();
  const auto mono = monomorphisms(cat);
  const auto split = split_epimorphisms(cat);

  for (MorId f = 0; f < n; ++f) {
    if (static_cast<bool>(reedy.plus[f]) != static_cast<bool>(mono[f]))
      rep.add("structure", mid(cat, f) + (mono[f] ? " is a monomorphism outside R+" : " is in R+ but not a monomorphism"), {f});
    if (static_cast<bool>(reedy.minus[f]) != static_cast<bool>(split[f]))
      rep.add("structure",
              mid(cat, f) + (split[f] ? " is a split epimorphism outside R-" : " is in R- but not a split epimorphism"), {f});
  }

  for (MorId f = 0; f < n; ++f) {
    if (!mono[f]) continue;
    const int d = cat.degree(cat.cod(f)) - cat.degree(cat.dom(f));
    if (cat.is_iso(f) && d != 0) rep.add("1", "invertible monomorphism " + mid(cat, f) + " changes the degree", {f});
    if (!cat.is_iso(f) && d <= 0)
      rep.add("1", "non-invertible monomorphism " + mid(cat, f) + " does not raise the degree", {f});
  }

  {
    std::vector<char> factored(n, 0);
    const Incidence sp = incidence(cat, &split);
    const Incidence mo = incidence(cat, &mono);
    for (ObjId c = 0; c < cat.object_count(); ++c)
      for (MorId e : sp.into[c])
        for (MorId m : mo.from[c]) {
          auto f = cat.try_compose(m, e);
          if (f) factored[*f] = 1;
        }
    for (MorId f = 0; f < n; ++f)
      if (!factored[f]) rep.add("2", mid(cat, f) + " is not a split epimorphism followed by a monomorphism", {f});
  }

  {
    const Incidence sp = incidence(cat, &split);
    std::size_t tested = 0;
    for (ObjId a = 0; a < cat.object_count(); ++a) {
      const auto& out = sp.from[a];
      for (std::size_t i = 0; i < out.size(); ++i) {
        const MorId p = out[i];
        if (cat.is_iso(p)) continue;
        for (std::size_t j = i; j < out.size(); ++j) {
          const MorId q = out[j];
          if (cat.is_iso(q)) continue;
          ++tested;
          bool found = false;
          for (MorId p2 : sp.from[cat.cod(p)]) {
            const MorId pp = cat.compose(p2, p);
            for (MorId q2 : cat.hom(cat.cod(q), cat.cod(p2))) {
              if (!split[q2] || cat.compose(q2, q) != pp) continue;
              bool good = true;
              for (ObjId r = 0; r < cat.object_count() && good; ++r)
                good = yoneda_pushout(cat, p, q, p2, q2, r) && universal_pushout(cat, p, q, p2, q2, r);
              if (good) {
                found = true;
                break;
              }
            }
            if (found) break;
          }
          if (!found)
            rep.add("3", "split epimorphisms " + mid(cat, p) + " and " + mid(cat, q) + " have no absolute pushout", {p, q});
        }
      }
    }
    rep.notes.push_back("absolute pushouts tested on " + std::to_string(tested) +
                        " pairs of non-invertible split epimorphisms against representables up to degree " +
                        std::to_string(cat.max_degree()));
  }
  return rep;
}

std::vector<Factorization> all_crossed_decompositions(const FiniteCategory& cat, const CrossedGroupData& crossed,
                                                      MorId f) {
  std::vector<Factorization> out;
  for (MorId t : cat.isos_from(cat.dom(f))) {
    if (!crossed.special[t]) continue;
    auto r = cat.try_compose(f, cat.inverse(t));
    if (r && crossed.base[*r]) out.push_back({t, *r});
  }
  return out;
}

Factorization crossed_decompose(const FiniteCategory& cat, const CrossedGroupData& crossed, MorId f) {
  auto all = all_crossed_decompositions(cat, crossed, f);
  if (all.size() != 1)
    throw StructuralError(cat.morphism(f).id + " has " + std::to_string(all.size()) + " crossed decompositions");
  return all[0];
}

CheckReport check_crossed_group(const FiniteCategory& cat, const CrossedGroupData& crossed, std::uint64_t max_pairs) {
  CheckReport rep;
  rep.name = "crossed_group";
  rep.truncation = cat.max_degree();
  const int n = cat.morphism_count();
  for (ObjId a = 0; a < cat.object_count(); ++a) {
    const MorId id = cat.identity(a);
    if (!crossed.base[id] || !crossed.special[id])
      rep.add("identity", "identity of " + cat.object(a).id + " missing from base or special maps", {id});
  }
  for (MorId f = 0; f < n; ++f)
    if (crossed.special[f] && !cat.is_iso(f)) rep.add("special", mid(cat, f) + " is special but not invertible", {f});
  for (MorId f = 0; f < n; ++f) {
    const auto d = all_crossed_decompositions(cat, crossed, f);
    if (d.size() != 1)
      rep.add("decomposition", mid(cat, f) + " has " + std::to_string(d.size()) + " decompositions", {f});
  }
  for (int side = 0; side < 2; ++side) {
    const auto& flag = side == 0 ? crossed.base : crossed.special;
    const Incidence inc = incidence(cat, &flag);
    std::uint64_t pairs = 0;
    for (ObjId c = 0; c < cat.object_count(); ++c) pairs += inc.into[c].size() * inc.from[c].size();
    if (pairs > max_pairs) {
      rep.notes.push_back(std::string(side == 0 ? "base" : "special") + " closure skipped: " + std::to_string(pairs) +
                          " pairs over budget");
      continue;
    }
    for (ObjId c = 0; c < cat.object_count(); ++c)
      for (MorId f : inc.into[c])
        for (MorId g : inc.from[c]) {
          auto h = cat.try_compose(g, f);
          if (!h || !flag[*h])
            rep.add("closure", std::string(side == 0 ? "base" : "special maps") + " not closed: " + mid(cat, g) + " o " +
                                   mid(cat, f),
                    {g, f});
        }
  }
  return rep;
}

PredicateResult check_sieve(const FunctorData& sub) {
  const auto& S = *sub.source;
  const auto& C = *sub.target;
  const auto pre = sub.preimage();
  std::vector<char> in_image(C.object_count(), 0);
  for (ObjId a = 0; a < S.object_count(); ++a) {
    if (in_image[sub.on_objects[a]]) throw StructuralError("embedding is not injective on objects");
    in_image[sub.on_objects[a]] = 1;
  }
  for (int pass = 0; pass < 2; ++pass)
    for (ObjId b : C.objects_by_degree()) {
      if (!in_image[b]) continue;
      for (ObjId a = 0; a < C.object_count(); ++a)
        for (MorId u : C.hom(a, b)) {
          if (pass == 0 && !C.is_iso(u)) continue;
          if (!in_image[a])
            return {false, "morphism " + C.morphism(u).id + " lands in the image but its source does not", {u}};
          if (pre[u] < 0) return {false, "morphism " + C.morphism(u).id + " lands in the image but is not in it", {u}};
        }
    }
  return {true, "", {}};
}

PredicateResult check_3for2(const FunctorData& sub) {
  const auto& C = *sub.target;
  std::vector<char> in(C.morphism_count(), 0);
  for (MorId g : sub.on_morphisms) in[g] = 1;
  auto name = [&](MorId x) { return C.morphism(x).id; };
  auto report = [&](MorId f, MorId g, MorId h, const char* missing) {
    return PredicateResult{false,
                           "f=" + name(f) + ", g=" + name(g) + ", g o f=" + name(h) + ": " + missing +
                               " is not in the image",
                           {f, g, h}};
  };
  for (MorId f = 0; f < C.morphism_count(); ++f) {
    if (!in[f]) continue;
    const ObjId b = C.cod(f);
    for (ObjId c = 0; c < C.object_count(); ++c)
      for (MorId g : C.hom(b, c)) {
        const MorId h = C.compose(g, f);
        if (in[g] && !in[h]) return report(f, g, h, "g o f");
        if (!in[g] && in[h]) return report(f, g, h, "g");
      }
    const ObjId a = C.dom(f);
    for (ObjId x = 0; x < C.object_count(); ++x)
      for (MorId e : C.hom(x, a)) {
        const MorId h = C.compose(f, e);
        if (!in[e] && in[h]) return report(e, f, h, "f");
      }
  }
  return {true, "", {}};
}

}  // namespace augcat
