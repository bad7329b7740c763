#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "poset_pursuit/poset.hpp"

namespace pursuit {

// Named spaces. Accepted forms: S21, S30, Yoke, Pseudocircle, Fractal6, FigE,
// ConeV(m), ConeOpW(m), Fence(l), Chain(n), and any of these with an "op"
// suffix for the opposite order (e.g. S30op, Fence(3)op).
FinitePoset catalog(std::string_view name);

// Every fixed-size catalog entry plus small members of the families.
std::vector<std::string> catalog_sample_names();

// One representative per isomorphism class of n-point posets, in a
// deterministic order. Points are named p0..p{n-1}.
std::vector<FinitePoset> enumerate_posets(int n, int cap = 6);

// Isomorphism-invariant code; equal codes iff isomorphic.
std::string canonical_code(const FinitePoset& x);

}  // namespace pursuit
