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

#ifndef SCROLLKIT_EXTFIELD_HPP
#define SCROLLKIT_EXTFIELD_HPP

#include <memory>
#include <vector>

#include "scrollkit/poly.hpp"

namespace scrollkit {

/// Residue field F_p[z]/(m(z)) for a monic irreducible m. These contexts back
/// the local computations at conjugate point clusters; divisors visible at the
/// API surface stay rational, but pole and vanishing conditions at the other
/// points of a fiber live here.
struct ExtCtx {
    Poly modulus;        // monic irreducible
    int deg;
    std::uint64_t p;
    std::uint64_t order; // p^deg

    static std::shared_ptr<const ExtCtx> make(const Poly& modulus);
};

class ExtEl {
   public:
    ExtEl() = default;
    ExtEl(std::shared_ptr<const ExtCtx> ctx, Poly rep);

    static ExtEl zero(const std::shared_ptr<const ExtCtx>& c) { return ExtEl(c, Poly(c->p)); }
    static ExtEl one(const std::shared_ptr<const ExtCtx>& c) { return ExtEl(c, Poly::one(c->p)); }
    static ExtEl embed(const std::shared_ptr<const ExtCtx>& c, const Fp& v) {
        return ExtEl(c, Poly::constant(v));
    }
    /// The class of z, a root of the modulus.
    static ExtEl gen(const std::shared_ptr<const ExtCtx>& c) { return ExtEl(c, Poly::x(c->p)); }

    const std::shared_ptr<const ExtCtx>& ctx() const { return ctx_; }
    const Poly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    ExtEl operator+(const ExtEl& o) const;
    ExtEl operator-(const ExtEl& o) const;
    ExtEl operator*(const ExtEl& o) const;
    ExtEl operator-() const;
    ExtEl inv() const;
    ExtEl operator/(const ExtEl& o) const { return *this * o.inv(); }
    bool operator==(const ExtEl& o) const;
    bool operator!=(const ExtEl& o) const { return !(*this == o); }

    ExtEl pow(std::uint64_t e) const;
    bool is_square() const;
    ExtEl sqrt() const;  // Tonelli-Shanks in F_{p^r}; throws on a nonresidue

    /// Coordinates in the power basis 1, z, ..., z^(deg-1).
    std::vector<Fp> coords() const;

   private:
    void check(const ExtEl& o) const;
    std::shared_ptr<const ExtCtx> ctx_;
    Poly rep_;
};

// lift_to adapters let series code treat F_p and extension coefficients alike.
inline Fp lift_to(const Fp& sample, const Fp& v) {
    (void)sample;
    return v;
}
inline ExtEl lift_to(const ExtEl& sample, const Fp& v) { return ExtEl::embed(sample.ctx(), v); }

inline Fp zero_like(const Fp& sample) { return Fp::zero(sample.modulus()); }
inline ExtEl zero_like(const ExtEl& sample) { return ExtEl::zero(sample.ctx()); }
inline Fp one_like(const Fp& sample) { return Fp::one(sample.modulus()); }
inline ExtEl one_like(const ExtEl& sample) { return ExtEl::one(sample.ctx()); }

/// Evaluate an F_p polynomial at an extension element.
ExtEl eval_ext(const Poly& f, const ExtEl& x);

}  // namespace scrollkit

#endif
