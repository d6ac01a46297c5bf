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

#ifndef SCROLLKIT_MULTMAP_HPP
#define SCROLLKIT_MULTMAP_HPP

#include <optional>

#include "scrollkit/rr.hpp"

namespace scrollkit {

/// Outcome of the multiplication map L(D_1) x ... x L(D_k) -> L(sum D_i):
/// the image rank inside the target space and the missing dimensions.
struct MultMapReport {
    std::vector<Divisor> factors;
    int domain_dim = 0;  // product of the factor dimensions
    int target_dim = 0;
    int rank = 0;
    int corank = 0;
    bool degenerate = false;  // some factor space was zero-dimensional
};

MultMapReport corank_report(const std::vector<Divisor>& factors);
int corank(const std::vector<Divisor>& factors);

/// Independent rank computation through point evaluation, usable as an
/// oracle against the coefficient-vector route. Empty when the field has too
/// few rational points clear of the poles.
std::optional<int> corank_eval_oracle(const std::vector<Divisor>& factors);

/// h1(a - b) <= h0(b) - 2 with b base-point-free (checked). When the
/// hypothesis holds, s(a, b) = 0.
bool green_hypothesis(const Divisor& a, const Divisor& b, std::string* why = nullptr);

/// Kernel of V (x) H0(F) -> H0(F + L) for the pencil V spanned by two
/// sections of L(L): its dimension must equal h0(F - L + B) with B the base
/// locus of the pencil. Returns the equality verdict.
bool pencil_trick_kernel_check(const Divisor& L, const Divisor& F);

/// The three-part hypothesis with a = a_1 + ... + a_d: dimensions drop
/// correctly and s(b1 - a, b2) = 0. When it holds, s(b1, b2) = 0.
bool lange_hypothesis(const Divisor& b1, const Divisor& b2, const std::vector<Place>& a,
                      std::string* why = nullptr);

struct PnReport {
    bool applicable = false;  // |D| base-point-free and birational
    bool verdict = false;     // all tested self-coranks vanish
    bool total = false;       // the verdict extends to every k
    int checked_to = 0;
    int first_failure_k = 0;  // 0 when none
    std::map<int, int> corank_by_k;
};

/// Self-corank table s(D, ..., D) for 2 <= k <= k_max, extended to all k by
/// the degree argument when it applies.
PnReport is_projectively_normal(const Divisor& D, int k_max = 4);

/// With s(F1, F2) = 0, the corank of (F1, F2, rest...) equals that of
/// (F1 + F2, rest...). Returns false only on a genuine mismatch; a failed
/// precondition reports skipped = true.
bool corank_additivity_check(const Divisor& F1, const Divisor& F2, const std::vector<Divisor>& rest,
                             bool* skipped = nullptr);

/// Value of h at a rational place; empty on a pole.
std::optional<Fp> eval_at(const FunctionElem& h, const Place& P);

}  // namespace scrollkit

#endif
