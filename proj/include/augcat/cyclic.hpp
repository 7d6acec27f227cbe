#pragma once

#include <utility>

#include "augcat/code.hpp"

// Morphisms [m] -> [n] of the cyclic category as non-decreasing maps
// f : Z -> Z with f(i + m + 1) = f(i) + n + 1, taken modulo the shift by
// n + 1.  A code lists f(0..m) normalised so that f(0) lies in [0, n].
namespace augcat::cyclic {

int floor_div(int a, int b);

// Value of the periodic extension of f : [m] -> [n] at an arbitrary integer.
int extend(const Code& f, int n, int i);

Code normalize(Code f, int n);

// g o f for f : [m] -> [n] and g : [n] -> [p].
Code compose(const Code& g, const Code& f, int n, int p);

Code identity(int n);

// The generator tau_n : [n] -> [n], i -> i - 1.
Code tau(int n);

bool injective(const Code& f, int n);
bool surjective(const Code& f, int n);

// Unique k in [0, m] and monotone phi : [m] -> [n] with f = phi o tau_m^k.
std::pair<int, Code> split_rotation(const Code& f, int m, int n);

// phi o tau_m^k as a normalised code.
Code join_rotation(int k, const Code& phi, int m, int n);

}  // namespace augcat::cyclic
