#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace augcat {

// Planar rooted tree with a root edge, leaves and possibly stumps.
//
// Text form: a bare edge is "|", a vertex is "(" followed by the trees on
// its inputs from left to right and ")".  So "|" is the unit tree, "()" a
// stump, "(|)" the linear tree with one vertex and "(||)" the binary corolla.
// Edges are numbered in preorder; edge 0 is the root.
class PlanarTree {
 public:
  static PlanarTree parse(std::string_view text);
  static PlanarTree linear(int vertices);
  static PlanarTree corolla(int arity);

  std::string encode() const;
  int edge_count() const { return static_cast<int>(inputs_.size()); }
  int vertex_count() const { return vertices_; }
  bool has_vertex(int e) const { return has_vertex_[e] != 0; }
  bool is_leaf(int e) const { return !has_vertex(e); }
  const std::vector<int>& inputs(int e) const { return inputs_[e]; }
  int parent(int e) const { return parent_[e]; }
  int max_arity() const;
  // n if this is the linear tree with n vertices, else -1.
  int linear_length() const;

  // Bit x set iff edge x lies on or above edge e.
  std::uint64_t up(int e) const { return up_[e]; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  void finish();
  std::vector<std::vector<int>> inputs_;
  std::vector<char> has_vertex_;
  std::vector<int> parent_;
  std::vector<std::uint64_t> up_;
  std::uint64_t leaves_ = 0;
  int vertices_ = 0;
};

// All planar trees with at most `max_vertices` vertices of arity at most
// `max_arity`, ordered by vertex count then text form.
std::vector<PlanarTree> enumerate_planar_trees(int max_vertices, int max_arity);

// Edge maps S -> T underlying morphisms of the dendroidal category (planar
// ones only when `planar`).  Each vertex must go to a subtree of T whose root
// is the image of its output and whose leaves are exactly the images of its
// inputs, or, for a unary vertex, collapse to a single edge.
void enumerate_tree_maps(const PlanarTree& S, const PlanarTree& T, bool planar,
                         const std::function<void(const std::vector<int>&)>& visit);

bool is_tree_map(const PlanarTree& S, const PlanarTree& T, const std::vector<int>& map, bool planar);

}  // namespace augcat
