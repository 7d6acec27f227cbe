#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "augcat/shapes.hpp"
#include "augcat/structure.hpp"

namespace augcat {

class Presheaf;
using PresheafPtr = std::shared_ptr<const Presheaf>;

// Finite presheaf on the objects of degree <= truncation.  Elements of each
// level are 0..size-1; the action is stored for generating morphisms only
// and extended along words.  With coskeletal_above set, levels above the
// truncation are filled on first access from the coskeleton.
class Presheaf {
 public:
  // actions[i] belongs to generator i of the shape: for u: a -> b it has
  // sizes[b] entries in [0, sizes[a]).  Generators touching objects above the
  // truncation carry empty tables.
  Presheaf(ShapePtr shape, int truncation, std::vector<int> sizes, std::vector<std::vector<int>> actions,
           std::optional<int> coskeletal_above = std::nullopt);
  Presheaf(Presheaf&&) noexcept;
  Presheaf& operator=(Presheaf&&) noexcept;
  ~Presheaf();

  const ShapeCategory& shape() const { return *shape_; }
  const ShapePtr& shape_ptr() const { return shape_; }
  const FiniteCategory& cat() const { return *shape_->cat; }
  int truncation() const { return truncation_; }
  std::optional<int> coskeletal_above() const { return cosk_above_; }
  // Highest degree at which levels can be evaluated.
  int cap() const { return cosk_above_ ? shape_->truncation : truncation_; }
  bool defined(ObjId a) const { return cat().degree(a) <= cap(); }

  int size(ObjId a) const;
  // x in level cod(u) acted on by generator number gi.
  int act_gen(int gi, int x) const;
  // x in level cod(f) acted on by f.
  int act(MorId f, int x) const;
  std::uint64_t total_size() const;

  const std::vector<int>& action_table(int gi) const;

  // Optional element names used by serialization; default is the index.
  std::string label(ObjId a, int x) const;
  void set_labels(std::vector<std::vector<std::string>> labels) { labels_ = std::move(labels); }
  bool has_labels() const { return !labels_.empty(); }

  // Functoriality: every generator action composes as its word prescribes.
  // Throws StructuralError on table shape errors.
  CheckReport validate() const;

 private:
  const Presheaf& full() const;

  ShapePtr shape_;
  int truncation_;
  std::vector<int> sizes_;
  std::vector<std::vector<int>> actions_;
  std::optional<int> cosk_above_;
  std::vector<std::vector<std::string>> labels_;
  struct Lazy;
  std::unique_ptr<Lazy> lazy_;
};

struct PresheafMap {
  PresheafPtr source;
  PresheafPtr target;
  std::vector<std::vector<int>> components;  // per object, for degrees <= cap()

  int cap() const;
  int operator()(ObjId a, int x) const { return components[a][x]; }
};

// Levelwise subset closed under the action.
struct Subobject {
  PresheafPtr parent;
  std::vector<std::vector<char>> selected;

  bool contains(ObjId a, int x) const { return selected[a][x] != 0; }
  int count(ObjId a) const;
  std::uint64_t total() const;
  bool subset_of(const Subobject& o) const;
  bool operator==(const Subobject& o) const { return selected == o.selected; }
};

// ---- basic presheaves and maps ----

PresheafPtr representable(const ShapePtr& shape, ObjId a);
// Element x of representable(a) at level b is the morphism hom(b, a)[x].
PresheafPtr terminal(const ShapePtr& shape, int truncation = -1);
PresheafPtr empty_presheaf(const ShapePtr& shape, int truncation = -1);
// Restriction to objects of degree <= n.
PresheafPtr truncate(const PresheafPtr& X, int n);

PresheafMap identity_map(const PresheafPtr& X);
PresheafMap compose(const PresheafMap& g, const PresheafMap& f);
PresheafMap map_to_terminal(const PresheafPtr& X, const PresheafPtr& terminal);
CheckReport validate_map(const PresheafMap& f);
bool is_mono(const PresheafMap& f);
bool is_iso(const PresheafMap& f);
// The map A[a] -> X classifying x in X_a.
PresheafMap yoneda_map(const PresheafPtr& representable_a, const PresheafPtr& X, ObjId a, int x);

// ---- subobjects ----

Subobject generated_subobject(const PresheafPtr& X, const std::vector<std::pair<ObjId, int>>& elements);
Subobject full_subobject(const PresheafPtr& X);
// The subobject as a presheaf together with its inclusion.
PresheafMap subobject_inclusion(const Subobject& s);
Subobject image(const PresheafMap& f);

// Union of the images of non-invertible face operators into a.
Subobject boundary(const ShapePtr& shape, ObjId a);
// Union of the images of non-invertible faces g: s -> a with g != f o iso.
Subobject horn(const ShapePtr& shape, ObjId a, MorId f);
// Non-invertible faces into a not factoring through another non-invertible face.
std::vector<MorId> elementary_faces(const ShapeCategory& shape, ObjId a);
Subobject skeleton(const PresheafPtr& X, int n);

// x in X_a is degenerate if it is x' . s for a non-invertible degeneracy s.
std::vector<std::vector<char>> nondegenerate(const Presheaf& X);

// ---- coskeleta ----

class Coskeleton {
 public:
  PresheafPtr presheaf;  // levels <= n are those of the input
  int n = 0;
  // For objects of degree > n: the value of each element on every morphism
  // t -> r with d(t) <= n, listed in morphism id order.
  const std::vector<int>& data(ObjId r, int x) const { return data_[r][x]; }
  std::optional<int> lookup(ObjId r, const std::vector<int>& data) const;
  const std::vector<MorId>& low_morphisms(ObjId r) const { return low_[r]; }

 private:
  friend Coskeleton coskeleton(const PresheafPtr& X, int n);
  std::vector<std::vector<std::vector<int>>> data_;
  std::vector<std::vector<MorId>> low_;
  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const;
  };
  std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index_;
};

Coskeleton coskeleton(const PresheafPtr& X, int n);
// The unit X -> cosk_n X.
PresheafMap cosk_unit(const PresheafPtr& X, const Coskeleton& C);
// cosk_n(f): cosk_n X -> cosk_n Y given cosk_n of both ends.
PresheafMap cosk_map(const PresheafMap& f, const Coskeleton& CX, const Coskeleton& CY);

struct CoskeletalVerdict {
  bool unit_iso = true;            // condition (1)
  bool restriction_bijective = true;  // condition (2)
  bool unique_fillers = true;      // condition (3)
  std::string witness;
  bool holds() const { return unit_iso && restriction_bijective && unique_fillers; }
  bool consistent() const { return unit_iso == restriction_bijective && unit_iso == unique_fillers; }
};
CoskeletalVerdict is_coskeletal(const PresheafPtr& X, int n);

// ---- map enumeration ----

struct HomSearchOptions {
  std::uint64_t max_states = 10'000'000;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  int cap = -1;  // highest degree considered; default min of both caps
  // fixed[a][x] >= 0 pins the value of x.
  const std::vector<std::vector<int>>* fixed = nullptr;
  std::function<bool(ObjId, int, int)> allow;  // candidate filter (a, x, y)
};

using Components = std::vector<std::vector<int>>;

// Calls visit on every map X -> Y (restricted to degrees <= cap) until visit
// returns false or the limit is reached; returns the number visited.
// Throws EnumerationLimit when more than max_states assignments are tried.
std::uint64_t hom_search(const Presheaf& X, const Presheaf& Y, const HomSearchOptions& opts,
                         const std::function<bool(const Components&)>& visit);
std::vector<PresheafMap> hom_enumerate(const PresheafPtr& X, const PresheafPtr& Y, const HomSearchOptions& opts = {});
std::uint64_t hom_count(const Presheaf& X, const Presheaf& Y, const HomSearchOptions& opts = {});
std::optional<PresheafMap> find_map(const PresheafPtr& X, const PresheafPtr& Y, const HomSearchOptions& opts = {});

// ---- limits and colimits ----

struct Product {
  PresheafPtr presheaf;
  PresheafMap p1, p2;
  // Element index of (x, y) at level a.
  int pair(ObjId a, int x, int y) const { return x * sizes2[a] + y; }
  std::vector<int> sizes2;
};
Product product(const PresheafPtr& X, const PresheafPtr& Y);

struct Pullback {
  PresheafPtr presheaf;
  PresheafMap p1, p2;
};
Pullback pullback(const PresheafMap& f, const PresheafMap& g);

// Pushout of X <- A -> Y.
struct Pushout {
  PresheafPtr presheaf;
  PresheafMap i1, i2;
};
Pushout pushout(const PresheafMap& f, const PresheafMap& g);
Pushout coproduct(const PresheafPtr& X, const PresheafPtr& Y);

// ---- normal monomorphisms ----

PredicateResult is_normal_mono(const PresheafMap& f);

enum class Linearity { linear, unknown };
struct LinearityCertificate {
  Linearity verdict = Linearity::unknown;
  std::vector<std::string> steps;  // cells attached, in order
};
// Searches for a presentation of f as a sequence of pushouts of boundary
// inclusions of simplex-image objects.
LinearityCertificate certify_linear(const PresheafMap& f, int max_cells = 64);

struct PushoutProductResult {
  bool normal_mono = false;
  std::string witness;
  Linearity f_linear = Linearity::unknown;
  Linearity g_linear = Linearity::unknown;
  PresheafMap map;  // (X x K) +_{X x X'} (Y x X') -> Y x K
};
// f: X -> Y and g: X' -> K; throws ArgumentError if either is not mono.
PushoutProductResult pushout_product_check(const PresheafMap& f, const PresheafMap& g);

// ---- random presheaves ----

struct RandomPresheafOptions {
  int pieces = 2;           // representables glued
  int max_piece_degree = 1;
  int identifications = 2;  // random pairs identified before closing the congruence
};
// A quotient of a coproduct of representables by a random congruence.
PresheafPtr random_presheaf(const ShapePtr& shape, std::mt19937_64& rng, const RandomPresheafOptions& opts = {});
// Quotient of X by the smallest congruence identifying the given pairs.
PresheafMap quotient(const PresheafPtr& X, const std::vector<std::pair<ObjId, std::pair<int, int>>>& identify);

}  // namespace augcat
