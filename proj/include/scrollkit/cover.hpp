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

#ifndef SCROLLKIT_COVER_HPP
#define SCROLLKIT_COVER_HPP

#include "scrollkit/jacobian.hpp"

namespace scrollkit {

/// Explicit degree-2 cover gamma: C -> X with C: y^2 = g(x^2) over
/// X: v^2 = g(u) and gamma(x, y) = (x^2, y). Admissibility: g squarefree of
/// odd degree, g(0) a nonzero square (rational branch points) and lead(g) a
/// square (rational infinite points of C).
struct DoubleCover {
    Poly g;
    CurvePtr C;
    CurvePtr X;
};

DoubleCover make_cover(const Poly& g);

/// gamma^* on divisors; conjugate fibers that do not split become clusters.
Divisor pullback(const DoubleCover& cov, const Divisor& on_X);
/// gamma_* on divisors.
Divisor pushforward(const DoubleCover& cov, const Divisor& on_C);

struct CoverReport {
    Divisor B;  // branch divisor on X
    Divisor R;  // ramification divisor on C
    Divisor E;  // selected pushforward twist, a divisor class representative
};

/// Fixed locus of the involution x -> -x and its image. Verifies that the
/// pushforward of R is B and the adjunction identity on C.
CoverReport branch_and_ramification(const DoubleCover& cov);

/// Selects the twist class E among the Jacobian halves of -[B] by the
/// projection-formula battery h0_C(gamma^* m) = h0_X(m) + h0_X(m + E); the
/// survivor must be unique.
Divisor pushforward_twist(const DoubleCover& cov, const CoverReport& rep);

/// The two cohomology identities h^i_C(gamma^* m) = h^i_X(m) + h^i_X(m + E)
/// over a battery of divisors, plus the genus bookkeeping of the canonical
/// configuration b = K_X - E.
bool verify_segre(const DoubleCover& cov, const Divisor& E, int battery, Rng rng);

/// g_X lies in {(pi-1)/2, pi/2, (pi+1)/2} with pi = g_C.
bool involution_genus_check(const DoubleCover& cov);

/// gamma^*(g12 of X) ~ 2 (g12 of C) in the Jacobian of C.
bool h1_diagram_check(const DoubleCover& cov);

/// Divisor ledger for projections of the canonical scroll: the state tracks
/// a divisor a on C, starting at K_C.
struct ProjectionState {
    DoubleCover cov;
    Divisor a;
};

ProjectionState projection_start(const DoubleCover& cov);
void twist(ProjectionState& st, const Divisor& m_on_X);
void project(ProjectionState& st, const Place& x_on_C);
void unproject(ProjectionState& st, const Place& x_on_C);

struct StateReport {
    int h0 = 0;
    int speciality = 0;
};
StateReport report(const ProjectionState& st);

}  // namespace scrollkit

#endif
