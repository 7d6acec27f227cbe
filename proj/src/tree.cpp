#include "augcat/tree.hpp"

#include <algorithm>
#include <map>

#include "augcat/errors.hpp"

namespace augcat {
namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;
  std::vector<std::vector<int>> inputs;
  std::vector<char> has_vertex;
  std::vector<int> parent;
  int vertices = 0;

  int edge(int below) {
    if (pos >= s.size()) throw ArgumentError("truncated tree text");
    const int e = static_cast<int>(inputs.size());
    inputs.emplace_back();
    has_vertex.push_back(0);
    parent.push_back(below);
    if (s[pos] == '|') {
      ++pos;
      return e;
    }
    if (s[pos] != '(') throw ArgumentError("unexpected character in tree text");
    ++pos;
    has_vertex[e] = 1;
    ++vertices;
    while (pos < s.size() && s[pos] != ')') {
      const int c = edge(e);
      inputs[e].push_back(c);
    }
    if (pos >= s.size()) throw ArgumentError("unbalanced tree text");
    ++pos;
    return e;
  }
};

void encode_rec(const PlanarTree& t, int e, std::string& out) {
  if (!t.has_vertex(e)) {
    out += '|';
    return;
  }
  out += '(';
  for (int c : t.inputs(e)) encode_rec(t, c, out);
  out += ')';
}

}  // namespace

PlanarTree PlanarTree::parse(std::string_view text) {
  Parser p;
  p.s = text;
  p.edge(-1);
  if (p.pos != text.size()) throw ArgumentError("trailing characters in tree text");
  if (p.inputs.size() > 64) throw RangeError("tree has more than 64 edges");
  PlanarTree t;
  t.inputs_ = std::move(p.inputs);
  t.has_vertex_ = std::move(p.has_vertex);
  t.parent_ = std::move(p.parent);
  t.vertices_ = p.vertices;
  t.finish();
  return t;
}

PlanarTree PlanarTree::linear(int vertices) {
  return parse(std::string(vertices, '(') + "|" + std::string(vertices, ')'));
}

PlanarTree PlanarTree::corolla(int arity) { return parse("(" + std::string(arity, '|') + ")"); }

void PlanarTree::finish() {
  const int n = edge_count();
  up_.assign(n, 0);
  leaves_ = 0;
  for (int e = n - 1; e >= 0; --e) {
    up_[e] |= std::uint64_t{1} << e;
    for (int c : inputs_[e]) up_[e] |= up_[c];
    if (!has_vertex_[e]) leaves_ |= std::uint64_t{1} << e;
  }
}

std::string PlanarTree::encode() const {
  std::string out;
  encode_rec(*this, 0, out);
  return out;
}

int PlanarTree::max_arity() const {
  int a = 0;
  for (const auto& in : inputs_) a = std::max(a, static_cast<int>(in.size()));
  return a;
}

int PlanarTree::linear_length() const {
  for (int e = 0; e < edge_count(); ++e)
    if (has_vertex(e) && inputs_[e].size() != 1) return -1;
  return vertices_;
}

std::vector<PlanarTree> enumerate_planar_trees(int max_vertices, int max_arity) {
  if (max_vertices < 0 || max_arity < 0) throw ArgumentError("negative tree bound");
  std::vector<std::vector<std::string>> by_count(max_vertices + 1);
  by_count[0] = {"|"};
  for (int v = 1; v <= max_vertices; ++v) {
    std::vector<std::string> out;
    for (int k = 0; k <= max_arity; ++k) {
      // distribute v - 1 vertices over k ordered inputs
      std::vector<int> parts(k, 0);
      std::function<void(int, int)> split = [&](int i, int left) {
        if (i == k) {
          if (left != 0) return;
          std::function<void(int, std::string)> build = [&](int j, std::string acc) {
            if (j == k) {
              out.push_back("(" + acc + ")");
              return;
            }
            for (const auto& s : by_count[parts[j]]) build(j + 1, acc + s);
          };
          build(0, "");
          return;
        }
        for (int x = 0; x <= left; ++x) {
          parts[i] = x;
          split(i + 1, left - x);
        }
      };
      split(0, v - 1);
    }
    std::sort(out.begin(), out.end());
    by_count[v] = std::move(out);
  }
  std::vector<PlanarTree> trees;
  for (const auto& level : by_count)
    for (const auto& s : level) trees.push_back(PlanarTree::parse(s));
  return trees;
}

namespace {

bool vertex_ok(const PlanarTree& T, int r, const int* L, int k, bool planar) {
  for (int i = 0; i < k; ++i)
    if (L[i] == r) return k == 1;
  std::uint64_t covered = 0;
  for (int i = 0; i < k; ++i) {
    if (!(T.up(r) >> L[i] & 1)) return false;
    for (int j = 0; j < i; ++j) {
      if (L[i] == L[j]) return false;
      if ((T.up(L[i]) >> L[j] & 1) || (T.up(L[j]) >> L[i] & 1)) return false;
      if (planar && L[j] > L[i]) return false;
    }
    covered |= T.up(L[i]);
  }
  return (T.leaves() & T.up(r) & ~covered) == 0;
}

}  // namespace

bool is_tree_map(const PlanarTree& S, const PlanarTree& T, const std::vector<int>& map, bool planar) {
  if (static_cast<int>(map.size()) != S.edge_count()) return false;
  for (int x : map)
    if (x < 0 || x >= T.edge_count()) return false;
  std::vector<int> L;
  for (int e = 0; e < S.edge_count(); ++e) {
    if (!S.has_vertex(e)) continue;
    L.clear();
    for (int c : S.inputs(e)) L.push_back(map[c]);
    if (!vertex_ok(T, map[e], L.data(), static_cast<int>(L.size()), planar)) return false;
  }
  return true;
}

void enumerate_tree_maps(const PlanarTree& S, const PlanarTree& T, bool planar,
                         const std::function<void(const std::vector<int>&)>& visit) {
  const int ns = S.edge_count(), nt = T.edge_count();
  // Vertex to check once edge e is assigned: the vertex whose last input is e,
  // or the stump on e itself.
  std::vector<int> check_at(ns, -1);
  std::vector<int> stump_at(ns, -1);
  for (int e = 0; e < ns; ++e) {
    if (!S.has_vertex(e)) continue;
    if (S.inputs(e).empty())
      stump_at[e] = e;
    else
      check_at[S.inputs(e).back()] = e;
  }
  std::vector<int> map(ns, -1);
  std::vector<int> L;
  auto check = [&](int v) {
    L.clear();
    for (int c : S.inputs(v)) L.push_back(map[c]);
    return vertex_ok(T, map[v], L.data(), static_cast<int>(L.size()), planar);
  };
  std::function<void(int)> rec = [&](int e) {
    if (e == ns) {
      visit(map);
      return;
    }
    const int p = S.parent(e);
    for (int x = 0; x < nt; ++x) {
      if (p >= 0 && !(T.up(map[p]) >> x & 1)) continue;
      map[e] = x;
      if (stump_at[e] >= 0 && !check(e)) continue;
      if (check_at[e] >= 0 && !check(check_at[e])) continue;
      rec(e + 1);
    }
    map[e] = -1;
  };
  rec(0);
}

}  // namespace augcat
