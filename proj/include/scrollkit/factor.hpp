/*
   Copyright 2026 The scrollkit authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SCROLLKIT_FACTOR_HPP
#define SCROLLKIT_FACTOR_HPP

#include <utility>
#include <vector>

#include "scrollkit/poly.hpp"

namespace scrollkit {

/// All roots of f in F_p with multiplicities, sorted by value.
std::vector<std::pair<Fp, int>> roots_in_field(const Poly& f);

bool is_irreducible(const Poly& f);

/// Full factorization into monic irreducibles with multiplicities, sorted.
/// Distinct-degree plus Cantor-Zassenhaus splitting; the internal randomness
/// is seeded from the input so results are reproducible.
std::vector<std::pair<Poly, int>> factor_poly(const Poly& f);

}  // namespace scrollkit

#endif
