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

#ifndef SCROLLKIT_SCROLL_HPP
#define SCROLLKIT_SCROLL_HPP

#include "scrollkit/jacobian.hpp"
#include "scrollkit/multmap.hpp"

namespace scrollkit {

/// Decomposable ruled surface P(O + O(e)) over X, represented by the pair
/// (X, e) alone; all surface cohomology is routed through the splitting of
/// the pushforward, so no surface-level machinery exists.
struct RuledSurfaceModel {
    CurvePtr X;
    Divisor e;
};

/// Ruled surface polarized by H ~ X0 + b f. The canonical flag records
/// e ~ K - b (checked on construction).
struct PolarizedScroll {
    RuledSurfaceModel S;
    Divisor b;
    bool canonical = false;
};

PolarizedScroll make_scroll(CurvePtr X, const Divisor& e, const Divisor& b);
/// e := K - b as an explicit divisor, canonical flag set.
PolarizedScroll make_canonical_scroll(CurvePtr X, const Divisor& b);

/// h0 of |n X0 + c f| on the ruled surface: sum of h0(c + i e), 0 <= i <= n.
int h0_scroll(const RuledSurfaceModel& S, int n, const Divisor& c);

/// h1 of the hyperplane system: h1(b) + h1(b + e). Equals 1 on every
/// canonical scroll (asserted when the flag is set).
int speciality(const PolarizedScroll& R);

struct Verdict {
    bool ok = false;
    std::string reason;
    explicit operator bool() const { return ok; }
};

/// b nonspecial of degree >= 2g-2, not canonical, with 2(b - K) a smooth
/// class (the degree-0 case passes exactly when 2b ~ 2K).
Verdict is_canonical_pair(const CurvePtr& X, const Divisor& b);

/// is_canonical_pair minus the explicit exception list (hyperelliptic
/// K + g12 / K + W / sum of g12 plus two ramification points; elliptic
/// degrees 0, 1, 2).
Verdict defines_canonical_scroll(const CurvePtr& X, const Divisor& b);

struct BisecantClass {
    bool hyperelliptic_C = false;
    std::string matched_case;  // "a", "b", "c", "elliptic-deg0/1/2", "none"
};
/// Whether the bisecant curve of the pair (X, b) is hyperelliptic, decided
/// both by the h0 criterion and by the explicit case list; the two routes
/// must agree and a mismatch is fatal.
BisecantClass classify_bisecant(const CurvePtr& X, const Divisor& b);

struct ScrollCorank {
    /// terms[i] is the factor multiset with i copies of b + e and k - i of b.
    std::vector<MultMapReport> terms;
    int total = 0;
};
ScrollCorank scroll_corank(const PolarizedScroll& R, int k);

/// binom(N+k, k) - h0(kH) + total corank at level k; negative values are a
/// fatal consistency failure.
int hypersurface_count(const PolarizedScroll& R, int k);

struct NormalityReport {
    bool projectively_normal = false;
    bool total = false;  // verdict valid for every k, not only the checked range
    std::map<int, int> per_k_total;
    std::string failure_side;  // "K-side", "b-side", "mixed" or empty
    int failure_k = 0;
    PnReport k_side, b_side;
};
NormalityReport normality_verdict(const CurvePtr& X, const Divisor& b, int k_max = 4);

struct FixedSpaceDims {
    int dim_2X1 = 0;
    int dim_F0 = 0;
    int dim_F1 = -1;  // -1 when the second fixed space is empty
};
/// Projective dimensions of |2 X1| and its two fixed spaces under the
/// natural involution; requires e not linearly trivial.
FixedSpaceDims fixed_space_dims(const RuledSurfaceModel& S);

struct ExistenceScan {
    int degree = 0;
    int trials = 0;
    int canonical_count = 0;
    std::vector<std::string> witnesses;        // up to a handful of each
    std::vector<std::string> counterexamples;
    bool low_range = false;
    int constructed = 0;            // classes built by halving 2K + a
    int constructed_canonical = 0;
    bool budget_exceeded = false;
    int exhaustive_canonical = -1;  // exhaustive class count, when requested
};
/// Sample degree-b classes as random point sums, report the fraction that is
/// canonical; in the low range also run the class-halving construction.
ExistenceScan existence_scan(const CurvePtr& X, int degree, int trials, Rng rng,
                             bool exhaustive = false);

struct FamilyProbe {
    int a = 0;
    int trials = 0;
    int smooth_count = 0;
    int bpf_count = 0;
    int nonspecial_count = 0;
    std::map<int, int> speciality_histogram;
};
/// Effective degree-a divisors: smooth / base-point-free fractions and the
/// speciality histogram. For a <= g the sampler draws distinct points in
/// general position (pairwise nonconjugate on hyperelliptic-form models).
FamilyProbe divisor_family_probe(const CurvePtr& X, int a, int trials, Rng rng);

struct ProjectionSpeciality {
    int i_new = 0;
    int span_dim = 0;
};
/// Span of the canonical images of A and the speciality gained by the
/// projection from A; cross-checked against the h0 route (fatal mismatch).
ProjectionSpeciality projection_speciality(const CurvePtr& X, const std::vector<Place>& A);

std::int64_t binomial(int n, int k);

}  // namespace scrollkit

#endif
