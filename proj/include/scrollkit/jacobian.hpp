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

#ifndef SCROLLKIT_JACOBIAN_HPP
#define SCROLLKIT_JACOBIAN_HPP

#include "scrollkit/curve.hpp"

namespace scrollkit {

/// Degree-zero divisor class on an odd-degree hyperelliptic model in reduced
/// Mumford form: u monic with deg u <= g, deg v < deg u, u | v^2 - f.
/// The identity is (1, 0).
class JacClass {
   public:
    JacClass() = default;
    JacClass(CurvePtr X, Poly u, Poly v);

    static JacClass identity(CurvePtr X);

    const CurvePtr& curve() const { return X_; }
    const Poly& u() const { return u_; }
    const Poly& v() const { return v_; }
    bool is_identity() const { return u_.degree() == 0; }

    bool operator==(const JacClass& o) const;
    bool operator!=(const JacClass& o) const { return !(*this == o); }
    bool operator<(const JacClass& o) const;
    std::string str() const;

   private:
    CurvePtr X_;
    Poly u_, v_;
};

/// Reduced class of D - deg(D) * infinity. Odd models only.
JacClass class_of(const Divisor& D);

JacClass jac_add(const JacClass& a, const JacClass& b);
JacClass jac_double(const JacClass& a);
JacClass jac_neg(const JacClass& a);
JacClass jac_scale(const JacClass& a, int n);

/// Divisor representative: the affine part of (u, v) minus deg(u) * infinity.
/// Factors of u that do not split become conjugate cluster atoms.
Divisor divisor_from_class(const JacClass& c);

/// All 2^{2g} two-torsion classes of a fully split f (error otherwise).
std::vector<JacClass> two_torsion(const CurvePtr& X);

/// Every rational point of the Jacobian, by direct Mumford enumeration.
/// Throws when the Weil-bound estimate exceeds the budget.
std::vector<JacClass> enumerate_jacobian(const CurvePtr& X, std::size_t budget = 1000000);

/// All x with 2x = c, by scanning the enumerated group. Either empty or a
/// coset of the rational two-torsion (asserted).
std::vector<JacClass> square_roots(const JacClass& c, std::size_t budget = 1000000);

/// Linear equivalence. On odd hyperelliptic models both the Cantor route and
/// the h0 route run and must agree; on other models the h0 route decides.
bool is_equivalent(const Divisor& D1, const Divisor& D2);

}  // namespace scrollkit

#endif
