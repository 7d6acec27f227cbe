#pragma once

#include <cstdint>
#include <vector>

#include "augcat/category.hpp"
#include "augcat/structure.hpp"

namespace augcat {

struct AxiomBudget {
  std::uint64_t max_pairs = 100'000'000;  // composable pairs checked exhaustively up to this
  std::uint64_t max_triples = 3'000'000;  // associativity: exhaustive up to this, else sampled
  std::uint64_t seed = 0;
};

// Identity laws, closure of composition, associativity, and that every
// stored word composes back to its morphism.
CheckReport check_category_axioms(const FiniteCategory& cat, const AxiomBudget& budget = {});

// f = second o first.
struct Factorization {
  MorId first = -1;
  MorId second = -1;
  bool operator==(const Factorization&) const = default;
};

CheckReport check_generalized_reedy(const FiniteCategory& cat, const ReedyStructure& reedy,
                                    bool dualisable = true);

// first in R-, second in R+.  Throws StructuralError if none exists.
Factorization reedy_factorize(const FiniteCategory& cat, const ReedyStructure& reedy, MorId f);

// Every (R-, R+) factorization of every morphism, found by composing all
// composable pairs (h in R-, g in R+).
std::vector<std::vector<Factorization>> all_reedy_factorizations(const FiniteCategory& cat,
                                                                 const ReedyStructure& reedy);

// Two factorizations of the same morphism differ by an isomorphism of the middle object.
bool factorizations_isomorphic(const FiniteCategory& cat, const Factorization& x, const Factorization& y);

std::vector<char> monomorphisms(const FiniteCategory& cat);
std::vector<char> split_epimorphisms(const FiniteCategory& cat);

CheckReport check_ez(const FiniteCategory& cat, const ReedyStructure& reedy);

// first is a special isomorphism, second lies in the base.
Factorization crossed_decompose(const FiniteCategory& cat, const CrossedGroupData& crossed, MorId f);
std::vector<Factorization> all_crossed_decompositions(const FiniteCategory& cat, const CrossedGroupData& crossed,
                                                      MorId f);

// Unique decomposition of every morphism, special maps are isomorphisms,
// and both classes are closed under composition.
CheckReport check_crossed_group(const FiniteCategory& cat, const CrossedGroupData& crossed,
                                std::uint64_t max_pairs = 100'000'000);

PredicateResult check_sieve(const FunctorData& sub);
PredicateResult check_3for2(const FunctorData& sub);

}  // namespace augcat
