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

#ifndef SCROLLKIT_POLY_HPP
#define SCROLLKIT_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "scrollkit/field.hpp"

namespace scrollkit {

/// Dense univariate polynomial over F_p. Coefficients are stored low degree
/// first and kept normalized: the leading coefficient is nonzero unless the
/// polynomial is zero. degree() of the zero polynomial is the sentinel -1.
class Poly {
   public:
    Poly() : p_(0) {}
    explicit Poly(std::uint64_t p) : p_(p) {}
    Poly(std::uint64_t p, std::vector<Fp> coeffs);
    /// Coefficients given as integers, low degree first.
    Poly(std::uint64_t p, std::initializer_list<std::int64_t> coeffs);
    static Poly from_ints(std::uint64_t p, const std::vector<std::int64_t>& coeffs);

    static Poly zero(std::uint64_t p) { return Poly(p); }
    static Poly one(std::uint64_t p) { return constant(Fp::one(p)); }
    static Poly constant(const Fp& c);
    static Poly x(std::uint64_t p);     // the monomial x
    static Poly x_pow(std::uint64_t p, int k);

    std::uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Fp coeff(int i) const;              // 0 beyond the stored range
    Fp lead() const;                    // throws on zero polynomial
    const std::vector<Fp>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Fp& s) const;
    bool operator==(const Poly& o) const { return p_ == o.p_ && same_coeffs(o); }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const;  // total order for use as map keys

    /// Euclidean division: *this = q*b + r with deg r < deg b.
    std::pair<Poly, Poly> divmod(const Poly& b) const;
    Poly operator%(const Poly& b) const { return divmod(b).second; }
    Poly operator/(const Poly& b) const { return divmod(b).first; }

    Poly derivative() const;
    Poly monic() const;                 // throws on zero polynomial
    Fp eval(const Fp& x) const;
    Poly shift(int k) const;            // multiply by x^k, k >= 0
    Poly pow(int e) const;

    std::string str(const std::string& var = "x") const;

   private:
    bool same_coeffs(const Poly& o) const;
    void normalize();
    std::uint64_t p_;
    std::vector<Fp> c_;
};

/// Monic gcd. gcd(0, 0) is an error; gcd with a single zero argument returns
/// the other argument made monic.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Extended gcd: returns (g, s, t) with g = s*a + t*b, g monic.
struct XgcdResult {
    Poly g, s, t;
};
XgcdResult poly_xgcd(const Poly& a, const Poly& b);

/// True iff gcd(f, f') = 1. A nonzero f with vanishing derivative (possible
/// in characteristic p) is reported as not squarefree.
bool is_squarefree(const Poly& f);

/// a^e mod m by repeated squaring.
Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& m);

/// Bivariate polynomial over F_p, stored as coefficients of powers of the
/// second variable y; each coefficient is a Poly in x. Normalized so that the
/// top y-coefficient is nonzero unless the whole polynomial is zero.
class BiPoly {
   public:
    BiPoly() : p_(0) {}
    explicit BiPoly(std::uint64_t p) : p_(p) {}
    BiPoly(std::uint64_t p, std::vector<Poly> ycoeffs);

    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return yc_.empty(); }
    int deg_y() const { return static_cast<int>(yc_.size()) - 1; }
    int deg_x() const;
    int total_degree() const;
    Poly ycoeff(int j) const;
    const std::vector<Poly>& ycoeffs() const { return yc_; }

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const Fp& s) const;
    bool operator==(const BiPoly& o) const;

    BiPoly dx() const;
    BiPoly dy() const;
    Fp eval(const Fp& x, const Fp& y) const;
    Poly eval_x(const Fp& x) const;     // specialize x, poly in y
    Poly eval_y(const Fp& y) const;     // specialize y, poly in x

    /// Remainder of division by m in the variable y; m must have a constant
    /// invertible leading y-coefficient.
    BiPoly mod_y(const BiPoly& m) const;

    std::string str() const;

   private:
    void normalize();
    std::uint64_t p_;
    std::vector<Poly> yc_;
};

}  // namespace scrollkit

#endif
