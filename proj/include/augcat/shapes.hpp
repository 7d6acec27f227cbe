#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "augcat/category.hpp"
#include "augcat/structure.hpp"
#include "augcat/tree.hpp"

namespace augcat {

enum class ShapeKind { simplex, cyclic, planar_tree, tree, amalgam, custom };

const char* to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(std::string_view s);

struct ShapeCategory {
  ShapeKind kind = ShapeKind::custom;
  int truncation = 0;  // maximal degree
  int max_arity = 0;   // trees only
  std::shared_ptr<const FiniteCategory> cat;
  ReedyStructure reedy;
  std::optional<CrossedGroupData> crossed;
  FunctorData delta;  // embedding of a truncated simplex category; empty source if absent
  // Shape whose category is delta.source; null for the simplex shape itself.
  std::shared_ptr<const ShapeCategory> simplex;

  bool has_delta() const { return delta.source != nullptr; }
  const FiniteCategory& c() const { return *cat; }
};

using ShapePtr = std::shared_ptr<const ShapeCategory>;

ShapePtr build_simplex(int max_degree);
ShapePtr build_cyclic(int max_degree);
// Trees with at most `max_vertices` vertices, each of arity <= `max_arity`.
ShapePtr build_planar_trees(int max_vertices, int max_arity = 2);
ShapePtr build_trees(int max_vertices, int max_arity = 2);
ShapePtr build_shape(ShapeKind kind, int max, int max_arity = 2);

// The simplex shape embedded in `shape` (the shape itself for the simplex kind).
ShapePtr simplex_shape(const ShapePtr& shape);

// The tree of an object of a tree-shaped category.
PlanarTree object_tree(const ShapeCategory& shape, ObjId a);

// Morphism classes from the Reedy structure and invertibility.
std::vector<MorphismClass> classify(const FiniteCategory& cat, const ReedyStructure& reedy);

enum class AmalgamGate {
  strict,     // refuse unless the sieve and 3-for-2 conditions hold
  embedding,  // refuse unless the sieve condition holds and both legs of the result are embeddings
};

struct Amalgam {
  ShapePtr shape;
  FunctorData from_crossed;
  FunctorData from_aug;
};

// Pushout of a crossed simplicial group (cyclic, or the simplex category as
// the trivial one) and a shape containing the simplex category as a sieve.
Amalgam amalgamate(const ShapeCategory& crossed, const ShapeCategory& aug, AmalgamGate gate = AmalgamGate::strict);

}  // namespace augcat
