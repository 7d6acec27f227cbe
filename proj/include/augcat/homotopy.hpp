#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "augcat/presheaf.hpp"

namespace augcat {

struct HornCount {
  ObjId object = -1;
  MorId face = -1;
  std::uint64_t horn_maps = 0;
  std::uint64_t unfilled = 0;
  std::uint64_t max_fillers = 0;
};

struct KanReport {
  CheckReport report;
  std::vector<HornCount> horns;
  bool ok() const { return report.ok(); }
};

// Every map from every horn of degree <= deg_cap extends along the horn inclusion.
KanReport is_kan(const PresheafPtr& X, int deg_cap, const HomSearchOptions& opts = {});

// p: E -> B has the right lifting property against i: K -> L.
PredicateResult has_rlp(const PresheafMap& p, const PresheafMap& i, const HomSearchOptions& opts = {});

// X x I with I the image of the simplicial interval; defined when the image
// of the point is terminal.
struct Cylinder {
  PresheafPtr presheaf;
  PresheafMap i0, i1, collapse;
  Product product;
};
Cylinder cylinder(const PresheafPtr& X);

struct HomotopyResult {
  bool homotopic = false;
  std::optional<PresheafMap> witness;  // H: X x I -> Y
};
// Searches for H with H i0 = f and H i1 = g, constant on rel when given.
HomotopyResult homotopic(const PresheafMap& f, const PresheafMap& g, const Subobject* rel = nullptr,
                         const HomSearchOptions& opts = {});

struct HomotopyClassSet {
  ObjId object = -1;
  int basepoint = -1;                // element of the point level
  std::vector<int> representatives;  // elements of X_a with boundary at the basepoint
  std::vector<int> class_of;         // per representative
  int class_count = 0;
  std::uint64_t raw_pairs = 0;       // related pairs found directly (unordered)
  std::uint64_t closure_added = 0;   // pairs added by transitive closure
};
// Pointed set of classes of maps A[a] -> X whose boundary lies in the
// subobject generated by the basepoint.  Refuses non-Kan X (ArgumentError).
HomotopyClassSet pi_a(const PresheafPtr& X, int basepoint, ObjId a, const HomSearchOptions& opts = {});

// Given the size of the source and the fibre sizes of a map of finite sets,
// decides whether it counts as a covering; the default is surjectivity.
using SurjectivityPredicate = std::function<bool(std::uint64_t, const std::vector<std::uint64_t>&)>;
bool set_surjective(std::uint64_t domain, const std::vector<std::uint64_t>& fibres);

// Horn maps X_a -> Hom(horn, X) covering for all a of degree <= deg_cap and
// bijective above degree n.
KanReport is_hypergroupoid(const PresheafPtr& X, int n, int deg_cap, const SurjectivityPredicate& covering = set_surjective,
                           const HomSearchOptions& opts = {});

// X_a -> Hom(boundary, X) x_{Hom(boundary, Y)} Y_a surjective below degree n
// and bijective from degree n on.
CheckReport is_trivial_relative_hypergroupoid(const PresheafMap& f, int n, int deg_cap,
                                              const HomSearchOptions& opts = {});

// X -> Y x_{cosk_{n-1} Y} cosk_{n-1} X is a levelwise bijection.  Refuses
// (ArgumentError) when f is not a trivial relative n-hypergroupoid.
PredicateResult check_cosk_identity(const PresheafMap& f, int n);

// Random trivial relative n-hypergroupoid over Y, built by attaching cells
// below degree n and then forcing the coskeletal identity.
PresheafMap random_trivial_relative(const PresheafPtr& Y, int n, std::mt19937_64& rng);

}  // namespace augcat
