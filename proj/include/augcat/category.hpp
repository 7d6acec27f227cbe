#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "augcat/code.hpp"

namespace augcat {

using ObjId = int;
using MorId = int;

// How codes compose.
//   function: codes are maps of underlying sets, composed as functions.
//   cyclic:   codes are Z-maps (see cyclic.hpp).
//   amalgam:  code = (rotation k, edge map r) meaning r o tau^k.
//   table:    composition comes from an explicit table.
enum class LawKind { function, cyclic, amalgam, table };

enum class MorphismClass { identity, automorphism, face, degeneracy, mixed };

const char* to_string(LawKind law);
const char* to_string(MorphismClass cls);
LawKind law_from_string(std::string_view s);
MorphismClass class_from_string(std::string_view s);

struct Object {
  std::string id;
  int degree = 0;
  int card = 0;     // size of the underlying set of the concrete model
  int linear = -1;  // n if the object is [n] or the linear tree L_n
};

struct Morphism {
  std::string id;
  ObjId dom = -1;
  ObjId cod = -1;
  Code code;
  std::vector<MorId> word;  // generators, first applied first
  MorphismClass cls = MorphismClass::mixed;
};

struct IdRange {
  MorId first = 0;
  MorId last = 0;
  struct iterator {
    MorId v;
    MorId operator*() const { return v; }
    iterator& operator++() {
      ++v;
      return *this;
    }
    bool operator!=(const iterator& o) const { return v != o.v; }
    bool operator==(const iterator& o) const { return v == o.v; }
  };
  iterator begin() const { return {first}; }
  iterator end() const { return {last}; }
  int size() const { return last - first; }
  bool empty() const { return first == last; }
  MorId operator[](int i) const { return first + i; }
};

class CategoryBuilder;

class FiniteCategory {
 public:
  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const Object& object(ObjId a) const { return objects_[a]; }
  const Morphism& morphism(MorId f) const { return morphisms_[f]; }
  const std::vector<Object>& objects() const { return objects_; }
  ObjId dom(MorId f) const { return morphisms_[f].dom; }
  ObjId cod(MorId f) const { return morphisms_[f].cod; }
  int degree(ObjId a) const { return objects_[a].degree; }
  int max_degree() const { return max_degree_; }
  LawKind law() const { return law_; }
  bool amalgam_cyclic() const { return amalgam_cyclic_; }

  std::optional<ObjId> find_object(std::string_view id) const;
  std::optional<MorId> find_morphism(std::string_view id) const;
  ObjId object_by_id(std::string_view id) const;    // throws RangeError
  MorId morphism_by_id(std::string_view id) const;  // throws RangeError
  std::optional<MorId> find(ObjId a, ObjId b, const Code& code) const;

  IdRange hom(ObjId a, ObjId b) const {
    const auto k = static_cast<std::size_t>(a) * objects_.size() + b;
    return {hom_start_[k], hom_start_[k + 1]};
  }
  MorId identity(ObjId a) const { return identity_[a]; }
  bool is_identity(MorId f) const { return identity_[morphisms_[f].dom] == f; }

  // g o f; throws StructuralError when not composable or the composite is missing.
  MorId compose(MorId g, MorId f) const;
  std::optional<MorId> try_compose(MorId g, MorId f) const;
  // Concrete composite code, without lookup (code laws only).
  Code compose_code(MorId g, MorId f) const;

  bool is_iso(MorId f) const { return inverse_[f] >= 0; }
  MorId inverse(MorId f) const { return inverse_[f]; }
  const std::vector<MorId>& automorphisms(ObjId a) const { return automorphisms_[a]; }
  const std::vector<MorId>& isos_from(ObjId a) const { return isos_from_[a]; }

  const std::vector<MorId>& generators() const { return generators_; }
  int generator_index(MorId f) const { return generator_index_[f]; }
  const std::vector<MorId>& generators_into(ObjId a) const { return generators_into_[a]; }
  const std::vector<MorId>& generators_from(ObjId a) const { return generators_from_[a]; }

  // Objects sorted by degree, ties by id order.
  const std::vector<ObjId>& objects_by_degree() const { return by_degree_; }

  // Sets words and classes after construction; recomputes generator tables.
  void set_words(std::vector<std::vector<MorId>> words);
  void set_classes(std::vector<MorphismClass> classes);
  // Words by breadth-first search: stage s post-composes only generators of
  // stages[s], so words come out as stage-0 letters, then stage-1, ...
  // Throws StructuralError if some morphism is unreachable.
  void assign_words(const std::vector<std::vector<MorId>>& stages);

  const std::unordered_map<std::uint64_t, MorId>& table() const { return table_; }

 private:
  friend class CategoryBuilder;
  struct Key {
    ObjId a;
    ObjId b;
    Code code;
    bool operator==(const Key& o) const { return a == o.a && b == o.b && code == o.code; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return k.code.hash() ^ (static_cast<std::size_t>(k.a) * 0x9E3779B97F4A7C15ull) ^
             (static_cast<std::size_t>(k.b) * 0xC2B2AE3D27D4EB4Full);
    }
  };

  void compute_isos();
  void rebuild_generators();

  LawKind law_ = LawKind::function;
  bool amalgam_cyclic_ = true;
  std::vector<Object> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> hom_start_;
  std::vector<MorId> identity_;
  std::vector<MorId> inverse_;
  std::vector<std::vector<MorId>> automorphisms_;
  std::vector<std::vector<MorId>> isos_from_;
  std::vector<MorId> generators_;
  std::vector<int> generator_index_;
  std::vector<std::vector<MorId>> generators_into_;
  std::vector<std::vector<MorId>> generators_from_;
  std::vector<ObjId> by_degree_;
  std::unordered_map<Key, MorId, KeyHash> index_;
  std::unordered_map<std::string, ObjId> object_ids_;
  std::unordered_map<std::string, MorId> morphism_ids_;
  std::unordered_map<std::uint64_t, MorId> table_;
  int max_degree_ = -1;
};

// Collects objects and morphisms, then sorts morphisms by (dom, cod, code)
// so that every hom-set is a contiguous id range.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(LawKind law) : law_(law) {}

  void set_amalgam_cyclic(bool cyclic) { amalgam_cyclic_ = cyclic; }
  ObjId add_object(Object obj);
  int add_morphism(ObjId dom, ObjId cod, Code code, std::string id = {},
                   MorphismClass cls = MorphismClass::mixed);
  void set_word(int m, std::vector<int> word);      // provisional indices
  void add_composite(int g, int f, int composite);  // table law, provisional indices
  void set_identity(ObjId a, int m);                // table law

  // `final_ids` receives the final id of each provisional morphism index.
  std::shared_ptr<FiniteCategory> build(std::vector<MorId>* final_ids = nullptr);

 private:
  LawKind law_;
  bool amalgam_cyclic_ = true;
  std::vector<Object> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::vector<int>> words_;
  std::vector<bool> has_word_;
  std::vector<std::tuple<int, int, int>> composites_;
  std::vector<int> identities_;
};

std::string default_morphism_id(const FiniteCategory& cat, ObjId a, ObjId b, const Code& code);

}  // namespace augcat
