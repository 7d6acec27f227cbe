#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augcat/presheaf.hpp"

namespace augcat {

// A small category given by its composition table.
struct SmallCategory {
  struct Arrow {
    std::string name;
    int dom = -1;
    int cod = -1;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identities;          // per object
  std::vector<std::vector<int>> table;  // table[g][f] = g o f, or -1 when cod f != dom g

  int compose(int g, int f) const { return table[g][f]; }
  std::optional<int> inverse(int f) const;
  bool is_groupoid() const;
  CheckReport validate() const;
};

// Z/n as a one-object groupoid; arrow k is k mod n.
SmallCategory cyclic_group(int n);
// The groupoid on k objects with exactly one arrow between any two.
SmallCategory pair_groupoid(int k);
// {0..top} under addition capped at top: a finite stand-in for (N, +) in
// which 1 has no inverse.
SmallCategory saturating_monoid(int top);

// Level n = chains of n composable arrows.  Over a groupoid the levels above
// 2 are left to the coskeleton unless `explicit_levels` is set.
PresheafPtr nerve(const SmallCategory& C, const ShapePtr& simplex, bool explicit_levels = false);

// Cyclic nerve of a groupoid over the cyclic shape: level n as in the nerve,
// with tau_n sending x_0 -a_1-> ... -a_n-> x_n to
// x_n -(a_n...a_1)^{-1}-> x_0 -a_1-> ... -a_{n-1}-> x_{n-1}.
PresheafPtr cyclic_nerve(const SmallCategory& G, const ShapePtr& cyclic);

// Restriction along the simplex embedding.
PresheafPtr i_star(const PresheafPtr& Y);
PresheafMap i_star(const PresheafMap& g);

// Left adjoint of i_star.  Each element is a pair (t, x): t an automorphism
// of the object (the identity for extension by zero) and x in X at the
// matching level; it stands for the class of t paired with x.
struct Extension {
  PresheafPtr presheaf;
  std::vector<std::vector<std::pair<MorId, int>>> elements;
  int index(ObjId a, MorId t, int x) const;
};

// Free construction over a crossed simplicial group (level [n] = Aut[n] x X_n).
Extension i_shriek_crossed(const PresheafPtr& X, const ShapePtr& target);
// Extension by zero into a tree shape.
Extension i_shriek_dendroidal(const PresheafPtr& X, const ShapePtr& target);
// Dispatches on the target kind.
Extension i_shriek(const PresheafPtr& X, const ShapePtr& target);
PresheafMap i_shriek_map(const PresheafMap& f, const Extension& source, const Extension& target);

struct AdjunctionReport {
  std::uint64_t left = 0;   // |Hom(i_! X, Y)|
  std::uint64_t right = 0;  // |Hom(X, i^* Y)|
  bool bijection = false;
  std::string witness;
};
// Builds both correspondences explicitly and checks they are mutually inverse.
AdjunctionReport adjunction_check(const PresheafPtr& X, const PresheafPtr& Y, const HomSearchOptions& opts = {});

// Whether the comparison i_!(X x Y) -> i_! X x i_! Y is an isomorphism.
PredicateResult shriek_product_check(const PresheafPtr& X, const PresheafPtr& Y, const ShapePtr& target);

}  // namespace augcat
