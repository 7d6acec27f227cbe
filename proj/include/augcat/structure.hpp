#pragma once

#include <memory>
#include <string>
#include <vector>

#include "augcat/category.hpp"

namespace augcat {

// Membership flags indexed by morphism id.
struct ReedyStructure {
  std::vector<char> plus;
  std::vector<char> minus;
};

struct CrossedGroupData {
  std::vector<char> base;     // the subcategory R
  std::vector<char> special;  // the special isomorphisms
};

struct FunctorData {
  std::shared_ptr<const FiniteCategory> source;
  std::shared_ptr<const FiniteCategory> target;
  std::vector<ObjId> on_objects;
  std::vector<MorId> on_morphisms;

  // Target morphism -> source morphism, or -1 outside the image.
  // Throws StructuralError if the functor is not injective on morphisms.
  std::vector<MorId> preimage() const;
};

FunctorData identity_functor(std::shared_ptr<const FiniteCategory> cat);

struct Violation {
  std::string rule;
  std::string message;
  std::vector<MorId> morphisms;
};

struct CheckReport {
  std::string name;
  int truncation = -1;
  std::vector<Violation> violations;  // first kMaxStored only
  std::size_t violation_count = 0;
  std::vector<std::string> notes;

  static constexpr std::size_t kMaxStored = 50;
  bool ok() const { return violation_count == 0; }
  void add(std::string rule, std::string message, std::vector<MorId> morphisms = {});
  void merge(const CheckReport& other);
};

struct PredicateResult {
  bool holds = true;
  std::string witness;
  std::vector<MorId> morphisms;
};

// Preserves endpoints, identities and composition.
CheckReport check_functor(const FunctorData& f);

}  // namespace augcat
