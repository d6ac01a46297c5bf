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

#ifndef SCROLLKIT_RR_HPP
#define SCROLLKIT_RR_HPP

#include <memory>
#include <vector>

#include "scrollkit/curve.hpp"

namespace scrollkit {

/// Explicit basis of L(D) = { h : div(h) + D >= 0 }.
struct RRBasis {
    Divisor D;
    std::vector<FunctionElem> basis;
    int h0() const { return static_cast<int>(basis.size()); }
};

/// Solve for L(D). Every solve is validated against the dimension identity
/// h0(D) - h0(K - D) = deg D - g + 1 before anything is returned or cached;
/// a mismatch after degree-bound escalation is a fatal internal error.
std::shared_ptr<const RRBasis> rr_space(const Divisor& D);

int h0(const Divisor& D);
int h1(const Divisor& D);  // h0(K - D)

/// P is a base point of |D| iff h0(D - P) = h0(D). Requires h0(D) >= 1.
bool is_base_point(const Divisor& D, const Place& P);
/// All rational base points (rational-point scan, flagged as such).
std::vector<Place> base_points(const Divisor& D);

/// The semicontinuity condition on the class of A: |A| nonempty and no
/// rational base point P of |A| stays a base point of |A - P|. The trivial
/// class (degree 0, A ~ 0) passes.
bool is_smooth_system(const Divisor& A);

struct SeparationReport {
    bool very_ample = false;
    /// The scan runs over rational pairs only; the verdict carries that scope.
    std::string scope = "rational-points-only";
    std::string failure;  // description of the first failing pair, if any
};
SeparationReport separates(const Divisor& D);

struct PhiProfile {
    bool birational = false;
    bool very_ample = false;
    int max_singularity = 1;  // largest set of rational points identified by the map
    int base_point_count = 0;
};
/// Behavior of the map defined by |b| on rational points (fiber statistics).
PhiProfile phi_b_profile(const Divisor& b);

}  // namespace scrollkit

#endif
