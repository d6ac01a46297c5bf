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

#ifndef SCROLLKIT_CURVE_HPP
#define SCROLLKIT_CURVE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scrollkit/factor.hpp"
#include "scrollkit/rng.hpp"
#include "scrollkit/series.hpp"

namespace scrollkit {

class CurveModel;
using CurvePtr = std::shared_ptr<const CurveModel>;

enum class CurveKind { Hyperelliptic, SmoothPlane };

/// A closed point of the curve: a Galois orbit with residue field F_{p^r}.
/// Rational points are the r = 1 case. Divisors built through the public
/// constructors stay on rational places; conjugate clusters appear internally
/// when a fiber or a Mumford representative does not split.
class Place {
   public:
    enum class Kind : std::uint8_t {
        HyperAffine,   // x-cluster mu(x) irreducible, y given by psi(x) mod mu; psi = 0 at ramification
        HyperInert,    // whole fiber above a rational x0 with nonsquare f(x0): one place of degree 2
        HyperInfOdd,   // the single infinite point of an odd-degree model
        HyperInfEven,  // infinite branch of an even-degree model: sign +1/-1, or a conjugate pair (sign 0)
        PlaneAffine,   // rational x0, y-cluster mu(y) irreducible
        PlaneInfY,     // chart (X/Y, Z/Y): cluster mu(u) on the line at infinity
        PlaneInfX,     // chart (Y/X, Z/X): the point (1:0:0) when it lies on the curve
    };

    static Place hyper_affine(const Poly& mu, const Poly& psi);
    static Place hyper_rational(const Fp& x0, const Fp& y0);
    static Place hyper_inert(const Fp& x0);
    static Place hyper_inf_odd(std::uint64_t p);
    static Place hyper_inf_even(std::uint64_t p, int sign);  // sign +1/-1, 0 for the conjugate pair
    static Place plane_affine(const Fp& x0, const Poly& mu_y);
    static Place plane_rational(const Fp& x0, const Fp& y0);
    static Place plane_inf_y(const Poly& mu_u);
    static Place plane_inf_x(std::uint64_t p);

    Kind kind() const { return kind_; }
    int degree() const;  // residue degree
    bool is_rational() const { return degree() == 1; }
    bool at_infinity() const;
    const Poly& mu() const { return mu_; }
    const Poly& psi() const { return psi_; }
    const Fp& x0() const { return x0_; }
    int sign() const { return sign_; }

    /// Affine coordinates of a rational affine place.
    std::pair<Fp, Fp> coords() const;

    bool operator==(const Place& o) const;
    bool operator<(const Place& o) const;
    std::string str() const;

   private:
    Place() = default;
    Kind kind_ = Kind::HyperAffine;
    Poly mu_;    // meaning depends on kind, see above
    Poly psi_;   // HyperAffine only
    Fp x0_;      // PlaneAffine only
    int sign_ = 0;
    std::uint64_t p_ = 0;
};

/// Finite formal sum of places with integer coefficients.
class Divisor {
   public:
    Divisor() = default;
    explicit Divisor(CurvePtr X) : X_(std::move(X)) {}

    static Divisor single(CurvePtr X, const Place& P, int mult = 1);

    CurvePtr curve() const { return X_; }
    const std::map<Place, int>& atoms() const { return a_; }
    int coeff(const Place& P) const;
    int degree() const;
    int degree_plus() const;  // sum over positive parts, weighted by residue degree
    bool empty() const { return a_.empty(); }
    bool is_effective() const;
    bool all_rational() const;

    Divisor& add(const Place& P, int mult);
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator*(int n) const;
    Divisor operator-() const { return *this * -1; }
    bool operator==(const Divisor& o) const;
    bool operator<(const Divisor& o) const;

    std::string str() const;
    /// Stable identification string used as a cache key.
    std::string key() const;

   private:
    CurvePtr X_;
    std::map<Place, int> a_;
};

/// Element of the function field, (sum_j a_j(x) y^j) / d(x) with the
/// numerator reduced modulo the curve equation and the denominator kept in
/// factored form (monic irreducible factors with exponents).
class FunctionElem {
   public:
    FunctionElem() = default;
    FunctionElem(CurvePtr X, BiPoly num, std::map<Poly, int> den_factors);

    static FunctionElem one(CurvePtr X);
    static FunctionElem constant(CurvePtr X, const Fp& c);

    CurvePtr curve() const { return X_; }
    const BiPoly& num() const { return num_; }
    const std::map<Poly, int>& den_factors() const { return denf_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    FunctionElem operator*(const FunctionElem& o) const;
    FunctionElem operator+(const FunctionElem& o) const;
    FunctionElem operator-(const FunctionElem& o) const;
    FunctionElem scaled(const Fp& c) const;

    std::string str() const;

   private:
    CurvePtr X_;
    BiPoly num_;
    std::map<Poly, int> denf_;
    Poly den_;  // expanded product
};

/// Local expansion of the coordinate functions at a place, as Laurent series
/// in a local parameter over the residue field.
template <class E>
struct Expansion {
    Series<E> x, y;
};

/// Smooth curve over F_p: a hyperelliptic model y^2 = f(x) or a smooth plane
/// model q(x, y) = 0 with constant leading y-coefficient.
class CurveModel : public std::enable_shared_from_this<CurveModel> {
   public:
    /// f squarefree of degree >= 3; genus floor((deg f - 1)/2).
    static CurvePtr make_hyperelliptic(const Poly& f);
    /// q of total degree d >= 3 with deg_y q = d; the projective closure must
    /// be smooth over the algebraic closure (certified, not just scanned).
    static CurvePtr make_plane(const BiPoly& q);

    CurveKind kind() const { return kind_; }
    std::uint64_t modulus() const { return p_; }
    int genus() const { return genus_; }
    const Poly& f() const;
    const BiPoly& q() const;
    const BiPoly& chart2() const;  // plane chart (X/Y, Z/Y)
    const BiPoly& chart3() const;  // plane chart (Y/X, Z/X)
    int plane_degree() const { return plane_deg_; }
    bool odd_model() const { return odd_; }
    bool infinity_rational() const { return inf_rational_; }
    /// Models carrying a hyperelliptic-type double cover of the line, i.e.
    /// any y^2 = f(x) model (this includes elliptic ones).
    bool hyperelliptic_form() const { return kind_ == CurveKind::Hyperelliptic; }
    bool is_hyperelliptic_curve() const { return kind_ == CurveKind::Hyperelliptic && genus_ >= 2; }
    bool is_elliptic() const { return genus_ == 1; }
    int y_degree_bound() const;  // 1 for hyperelliptic, d-1 for plane

    const std::vector<Place>& rational_points() const;
    const std::vector<Place>& infinity_places() const;  // all residue degrees
    Place infinity_place() const;                       // odd models only
    /// All places of the fiber above an x-cluster (hyperelliptic models).
    std::vector<Place> places_above_x(const Poly& mu) const;
    /// All places of the fiber above a rational x0 (plane models).
    std::vector<Place> plane_fiber(const Fp& x0) const;

    /// Expand x(t), y(t) at a rational place to window end >= prec_end.
    Expansion<Fp> expand_rational(const Place& P, int prec_end) const;
    /// Same at any place, over the residue field.
    Expansion<ExtEl> expand_cluster(const Place& P, int prec_end) const;

    Divisor canonical_divisor() const;
    Divisor g12_divisor() const;
    /// The x-fiber above a chosen rational base value (hyperelliptic form).
    Divisor g12_divisor_at(const Fp& x0) const;

    Divisor random_effective(int degree, Rng& rng) const;
    /// degree + extra points minus extra points.
    Divisor random_signed(int degree, int extra, Rng& rng) const;

    std::string str() const;

    // dimension, basis and local-expansion caches shared with the
    // Riemann-Roch solver; guarded by cache_mutex
    mutable std::mutex cache_mutex;
    mutable std::map<std::string, int> h0_cache;
    mutable std::map<std::string, std::shared_ptr<const void>> aux_cache;

   private:
    CurveModel() = default;
    void enumerate() const;

    CurveKind kind_ = CurveKind::Hyperelliptic;
    std::uint64_t p_ = 0;
    int genus_ = 0;
    bool odd_ = true;
    bool inf_rational_ = true;
    Poly f_;
    BiPoly q_;
    BiPoly q2_, q3_;  // infinity charts of a plane model
    int plane_deg_ = 0;
    mutable std::vector<Place> rational_;
    mutable std::vector<Place> inf_places_;
    mutable bool enumerated_ = false;
    mutable std::optional<Divisor> canonical_cache_;
};

/// v_P(h) for h nonzero.
int valuation(const FunctionElem& h, const Place& P);

/// Principal divisor of h. The public contract requires every zero and pole
/// to be rational; a degree mismatch reports the offending cluster and
/// suggests a field change. Hyperelliptic models may opt into cluster atoms.
Divisor divisor_of(const FunctionElem& h);
Divisor divisor_of_internal(const FunctionElem& h, bool allow_clusters);

/// Dependent-coordinate expansion at a smooth rational point, exposed mainly
/// for cross-checking: substituting back must vanish to the precision.
struct SeriesExpansion {
    bool swapped;             // true when the roles of the coordinates are exchanged
    std::vector<Fp> coeffs;   // coefficients from t^0 upward
};
SeriesExpansion series_expand(const CurvePtr& X, const Place& P, int precision);

}  // namespace scrollkit

#endif
