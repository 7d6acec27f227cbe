// Acceptance driver: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "augcat/checks.hpp"
#include "augcat/constructions.hpp"
#include "augcat/cyclic.hpp"
#include "augcat/errors.hpp"
#include "augcat/homotopy.hpp"
#include "augcat/shapes.hpp"
#include "oracles.hpp"

using namespace augcat;

namespace {

constexpr int kTop = 4;                  // axiom suites: degrees / tree vertices
constexpr double kAxiomSeconds = 60.0;   // per axiom suite
constexpr double kKanSeconds = 120.0;    // per Kan / homotopy check
constexpr int kYonedaPresheaves = 50;
constexpr int kCoskPerShape = 20;
constexpr int kTrivialPerN = 10;
constexpr int kAdjunctionPairs = 10;
constexpr int kProductPairs = 10;
constexpr int kFreeInputs = 10;
constexpr int kPushoutTruncation = 3;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::printf("criterion %2d %s  %-34s %7.2fs  %s\n", id, o.pass ? "PASS" : "FAIL", title, since(t0),
              o.detail.str().c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

void note(const std::string& s) {
  std::printf("             note: %s\n", s.c_str());
  std::fflush(stdout);
}

std::vector<std::pair<std::string, ShapePtr>> axiom_shapes() {
  return {{"simplex", build_simplex(kTop)},
          {"cyclic", build_cyclic(kTop)},
          {"planar trees", build_planar_trees(kTop)},
          {"trees", build_trees(kTop)}};
}

}  // namespace

int main() {
  const auto shapes = axiom_shapes();

  criterion(1, "generalized Reedy and EZ axioms", [&](Outcome& o) {
    for (const auto& [name, S] : shapes) {
      const auto t0 = Clock::now();
      const auto r = check_generalized_reedy(*S->cat, S->reedy);
      const auto e = check_ez(*S->cat, S->reedy);
      const double dt = since(t0);
      note(name + ": reedy violations " + std::to_string(r.violation_count) + ", EZ violations " +
           std::to_string(e.violation_count) + ", " + std::to_string(dt) + "s");
      if (!r.ok()) o.fail(name + " reedy: " + r.violations[0].message + "; ");
      if (!e.ok()) o.fail(name + " EZ: " + e.violations[0].message + "; ");
      if (dt >= kAxiomSeconds) o.fail(name + " exceeded the time budget; ");
    }
  });

  criterion(2, "factorization oracle", [&](Outcome& o) {
    std::uint64_t checked = 0;
    for (const auto& [name, S] : shapes) {
      const auto& C = *S->cat;
      const auto all = all_reedy_factorizations(C, S->reedy);
      for (MorId f = 0; f < C.morphism_count(); ++f) {
        const auto fac = reedy_factorize(C, S->reedy, f);
        if (C.compose(fac.second, fac.first) != f || !S->reedy.minus[fac.first] || !S->reedy.plus[fac.second])
          o.fail(name + ": reedy factorization does not recompose at " + C.morphism(f).id + "; ");
        for (const auto& other : all[f])
          if (!factorizations_isomorphic(C, fac, other)) o.fail(name + ": non-isomorphic factorizations; ");
        if (S->crossed) {
          const auto d = crossed_decompose(C, *S->crossed, f);
          if (C.compose(d.second, d.first) != f) o.fail(name + ": crossed decomposition does not recompose; ");
          if (all_crossed_decompositions(C, *S->crossed, f).size() != 1)
            o.fail(name + ": crossed decomposition not unique at " + C.morphism(f).id + "; ");
        }
        ++checked;
      }
    }
    o.detail << checked << " morphisms";
  });

  criterion(3, "cardinality identities and Yoneda", [&](Outcome& o) {
    const auto& D = *shapes[0].second->cat;
    const auto& DC = *shapes[1].second->cat;
    for (int m = 0; m <= kTop; ++m)
      for (int n = 0; n <= kTop; ++n) {
        const auto c = static_cast<std::uint64_t>(DC.hom(m, n).size());
        if (c != static_cast<std::uint64_t>(m + 1) * D.hom(m, n).size() || c != oracle::cyclic_hom_count(m, n))
          o.fail("cyclic hom count mismatch at " + std::to_string(m) + "," + std::to_string(n) + "; ");
        if (static_cast<std::uint64_t>(D.hom(m, n).size()) != oracle::binomial(m + n + 1, m + 1))
          o.fail("simplex hom count mismatch; ");
      }
    const auto S2 = build_simplex(2);
    const auto maps = hom_count(*representable(S2, 1), *representable(S2, 2));
    if (maps != 6) o.fail("|Hom(D[1], D[2])| = " + std::to_string(maps) + "; ");
    std::mt19937_64 rng(0);
    int mismatches = 0, pairs = 0;
    const std::vector<ShapePtr> small{build_simplex(3), build_cyclic(3), build_planar_trees(3), build_trees(3)};
    for (int t = 0; t < kYonedaPresheaves; ++t) {
      const auto& S = small[t % small.size()];
      const auto& C = *S->cat;
      const auto X = random_presheaf(S, rng);
      for (ObjId a = 0; a < C.object_count(); ++a) {
        const auto A = representable(S, a);
        const int id = C.identity(a) - C.hom(a, a).first;
        std::set<int> hit;
        for (const auto& m : hom_enumerate(A, X)) hit.insert(m(a, id));
        const bool ok = static_cast<int>(hit.size()) == X->size(a) &&
                        hom_count(*A, *X) == static_cast<std::uint64_t>(X->size(a));
        mismatches += !ok;
        ++pairs;
      }
    }
    if (mismatches) o.fail(std::to_string(mismatches) + " Yoneda mismatches; ");
    o.detail << kYonedaPresheaves << " presheaves, " << pairs << " representables";
  });

  criterion(4, "boundary/skeleton and coskeleton", [&](Outcome& o) {
    int objects = 0;
    for (const auto& [name, S] : shapes) {
      const auto& C = *S->cat;
      for (ObjId a = 0; a < C.object_count(); ++a) {
        if (C.degree(a) == 0) continue;
        ++objects;
        if (!(boundary(S, a) == skeleton(representable(S, a), C.degree(a) - 1)))
          o.fail(name + ": boundary differs from skeleton at " + C.object(a).id + "; ");
      }
    }
    std::mt19937_64 rng(0);
    int families = 0;
    for (const auto& S : {build_simplex(3), build_cyclic(3), build_planar_trees(3), build_trees(3)}) {
      const auto& C = *S->cat;
      for (int t = 0; t < kCoskPerShape; ++t) {
        const auto X = random_presheaf(S, rng);
        const int n = t % 2;
        const auto K = coskeleton(truncate(X, n), n);
        for (ObjId r = 0; r < C.object_count(); ++r) {
          if (C.degree(r) <= n) continue;
          const auto fam = oracle::matching_families(*X, r, n);
          std::set<std::vector<int>> got;
          for (int x = 0; x < K.presheaf->size(r); ++x) got.insert(K.data(r, x));
          if (got != fam || static_cast<int>(fam.size()) != K.presheaf->size(r))
            o.fail(std::string(to_string(S->kind)) + ": coskeleton differs from matching families; ");
          families += static_cast<int>(fam.size());
        }
      }
    }
    o.detail << objects << " boundaries, " << kCoskPerShape << " coskeleta per shape, " << families
             << " families";
  });

  criterion(5, "Kan complexes and homotopy groups", [&](Outcome& o) {
    const auto D = build_simplex(3);
    auto timed = [&](const std::string& what, const std::function<bool()>& f) {
      const auto t0 = Clock::now();
      const bool ok = f();
      if (!ok) o.fail(what + "; ");
      if (since(t0) >= kKanSeconds) o.fail(what + " exceeded the time budget; ");
    };
    timed("N(Z/2) not Kan", [&] { return is_kan(nerve(cyclic_group(2), D), 3).ok(); });
    timed("pair groupoid nerve not Kan", [&] { return is_kan(nerve(pair_groupoid(2), D), 3).ok(); });
    timed("monoid nerve has no horn witness", [&] {
      const auto k = is_kan(nerve(saturating_monoid(2), D), 3);
      if (k.ok() || k.report.violations.empty()) return false;
      note("monoid horn witness: " + k.report.violations[0].message);
      return true;
    });
    timed("|pi_1 N(Z/2)| != 2", [&] { return pi_a(nerve(cyclic_group(2), D), 0, 1).class_count == 2; });
    timed("|pi_1 N(Z/3)| != 3", [&] { return pi_a(nerve(cyclic_group(3), D), 0, 1).class_count == 3; });
  });

  criterion(6, "hypergroupoids", [&](Outcome& o) {
    const auto D = build_simplex(3);
    for (const auto& G : {cyclic_group(2), cyclic_group(3), pair_groupoid(2), pair_groupoid(3)})
      if (!is_hypergroupoid(nerve(G, D), 1, 3).ok()) o.fail("a groupoid nerve is not a 1-hypergroupoid; ");
    std::mt19937_64 rng(0);
    int built = 0;
    for (int n = 1; n <= 2; ++n)
      for (int t = 0; t < kTrivialPerN; ++t) {
        const auto Y = random_presheaf(D, rng);
        const auto f = random_trivial_relative(Y, n, rng);
        ++built;
        if (!validate_map(f).ok()) o.fail("constructed map is not natural; ");
        const auto c = check_cosk_identity(f, n);
        if (!c.holds) o.fail("coskeletal identity fails: " + c.witness + "; ");
        if (!is_trivial_relative_hypergroupoid(f, n, 3).ok()) o.fail("constructed map is not trivial relative; ");
      }
    o.detail << built << " random trivial relative maps";
  });

  criterion(7, "adjunctions and products", [&](Outcome& o) {
    std::mt19937_64 rng(0);
    for (const auto& T : {build_cyclic(3), build_trees(3)}) {
      const auto S = simplex_shape(T);
      for (int t = 0; t < kAdjunctionPairs; ++t) {
        const auto X = random_presheaf(S, rng);
        const auto Y = random_presheaf(T, rng);
        const auto r = adjunction_check(X, Y);
        if (!r.bijection) o.fail(std::string(to_string(T->kind)) + " adjunction: " + r.witness + "; ");
      }
    }
    const auto DC = build_cyclic(3);
    const auto S = simplex_shape(DC);
    int preserved = 0;
    std::string witness;
    for (int t = 0; t < kProductPairs; ++t) {
      const auto r = shriek_product_check(random_presheaf(S, rng), random_presheaf(S, rng), DC);
      preserved += r.holds;
      if (!r.holds && witness.empty()) witness = r.witness;
    }
    if (preserved != kProductPairs)
      o.fail("free construction preserved products on " + std::to_string(preserved) + "/" +
             std::to_string(kProductPairs) + " pairs (" + witness + ")");
  });

  criterion(8, "cyclic structure", [&](Outcome& o) {
    const auto DC = build_cyclic(3);
    const auto& C = *DC->cat;
    const auto X = cyclic_nerve(cyclic_group(2), DC);
    for (int n = 0; n <= 3; ++n) {
      const MorId tau = *C.find(n, n, cyclic::tau(n));
      for (int x = 0; x < X->size(n); ++x) {
        int y = x;
        for (int k = 0; k <= n; ++k) y = X->act(tau, y);
        if (y != x) o.fail("tau^(n+1) != id; ");
      }
    }
    const auto D = simplex_shape(DC);
    const auto R = i_star(X);
    const auto N = nerve(cyclic_group(2), D, true);
    for (std::size_t g = 0; g < D->cat->generators().size(); ++g)
      if (R->action_table(g) != N->action_table(g)) o.fail("restricted cyclic nerve differs from the nerve; ");
    std::mt19937_64 rng(0);
    for (int t = 0; t < kFreeInputs; ++t) {
      const auto E = i_shriek_crossed(random_presheaf(D, rng), DC);
      for (ObjId a = 0; a < C.object_count(); ++a)
        for (int x = 0; x < E.presheaf->size(a); ++x)
          for (MorId g : C.automorphisms(a))
            if (!C.is_identity(g) && E.presheaf->act(g, x) == x) o.fail("automorphism with a fixed point; ");
    }
  });

  criterion(9, "sieves and amalgamation", [&](Outcome& o) {
    const auto DC = build_cyclic(kTop);
    const auto T = build_trees(kTop);
    if (!check_sieve(T->delta).holds) o.fail("simplex category is not a sieve in trees; ");
    const auto p = check_sieve(DC->delta);
    const MorId tau1 = *DC->cat->find(1, 1, cyclic::tau(1));
    if (p.holds || p.morphisms.empty() || p.morphisms[0] != tau1) o.fail("cyclic sieve witness is not tau_1; ");
    auto audit = [&](const Amalgam& A) {
      const auto& C = *A.shape->cat;
      bool ok = C.object_count() == T->cat->object_count();
      ok = ok && check_category_axioms(C).ok() && check_crossed_group(C, *A.shape->crossed).ok();
      ok = ok && check_functor(A.from_crossed).ok() && check_functor(A.from_aug).ok();
      for (int m = 0; m <= kTop; ++m)
        for (int n = 0; n <= kTop; ++n)
          ok = ok && C.hom(A.from_crossed.on_objects[m], A.from_crossed.on_objects[n]).size() ==
                         DC->cat->hom(m, n).size();
      return ok;
    };
    try {
      const auto A = amalgamate(*DC, *T, AmalgamGate::strict);
      if (!audit(A)) o.fail("amalgam audits fail; ");
    } catch (const AmalgamationRefused& e) {
      o.fail(e.what());
      const auto B = amalgamate(*DC, *T, AmalgamGate::embedding);
      note(std::string("with the embedding gate the amalgam ") + (audit(B) ? "passes" : "fails") +
           " the category, crossed-group, object and hom-set audits");
    }
  });

  criterion(10, "pushout-product of normal monos", [&](Outcome& o) {
    const auto DC = build_cyclic(kPushoutTruncation);
    std::vector<std::pair<std::string, PresheafMap>> monos;
    for (ObjId a = 1; a <= 2; ++a) {
      monos.emplace_back("boundary " + std::to_string(a), subobject_inclusion(boundary(DC, a)));
      for (MorId f : elementary_faces(*DC, a))
        monos.emplace_back("horn " + DC->cat->morphism(f).id, subobject_inclusion(horn(DC, a, f)));
    }
    int pairs = 0;
    for (std::size_t i = 0; i < monos.size(); ++i)
      for (std::size_t j = i; j < monos.size(); ++j) {
        const auto r = pushout_product_check(monos[i].second, monos[j].second);
        ++pairs;
        if (!r.normal_mono) o.fail(monos[i].first + " x " + monos[j].first + ": " + r.witness + "; ");
      }
    o.detail << pairs << " pairs";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
