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

#include "scrollkit/extfield.hpp"

namespace scrollkit {

std::shared_ptr<const ExtCtx> ExtCtx::make(const Poly& modulus) {
    if (modulus.degree() < 1) throw Error("ExtCtx: modulus must be nonconstant");
    Poly m = modulus.monic();
    std::uint64_t order = 1;
    for (int i = 0; i < m.degree(); ++i) {
        order *= m.modulus();
        if (order > (1ull << 62)) throw Error("ExtCtx: field too large");
    }
    return std::make_shared<ExtCtx>(ExtCtx{m, m.degree(), m.modulus(), order});
}

ExtEl::ExtEl(std::shared_ptr<const ExtCtx> ctx, Poly rep) : ctx_(std::move(ctx)), rep_(std::move(rep)) {
    if (rep_.degree() >= ctx_->deg) rep_ = rep_ % ctx_->modulus;
}

void ExtEl::check(const ExtEl& o) const {
    if (!ctx_ || !o.ctx_) throw InternalError("ExtEl: uninitialized");
    if (ctx_ != o.ctx_ && ctx_->modulus != o.ctx_->modulus) throw InternalError("ExtEl: context mismatch");
}

ExtEl ExtEl::operator+(const ExtEl& o) const {
    check(o);
    return ExtEl(ctx_, rep_ + o.rep_);
}

ExtEl ExtEl::operator-(const ExtEl& o) const {
    check(o);
    return ExtEl(ctx_, rep_ - o.rep_);
}

ExtEl ExtEl::operator*(const ExtEl& o) const {
    check(o);
    return ExtEl(ctx_, (rep_ * o.rep_) % ctx_->modulus);
}

ExtEl ExtEl::operator-() const { return ExtEl(ctx_, -rep_); }

ExtEl ExtEl::inv() const {
    if (rep_.is_zero()) throw Error("ExtEl: division by zero");
    XgcdResult x = poly_xgcd(rep_, ctx_->modulus);
    if (x.g.degree() != 0) throw InternalError("ExtEl: modulus not irreducible");
    return ExtEl(ctx_, x.s % ctx_->modulus);
}

bool ExtEl::operator==(const ExtEl& o) const {
    check(o);
    return rep_ == o.rep_;
}

ExtEl ExtEl::pow(std::uint64_t e) const {
    ExtEl acc = ExtEl::one(ctx_), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool ExtEl::is_square() const {
    if (rep_.is_zero()) return true;
    return pow((ctx_->order - 1) / 2) == ExtEl::one(ctx_);
}

ExtEl ExtEl::sqrt() const {
    if (rep_.is_zero()) return *this;
    if (!is_square()) throw Error("ExtEl: sqrt of a nonresidue");
    std::uint64_t q = ctx_->order;
    if (q % 4 == 3) return pow((q + 1) / 4);
    std::uint64_t m0 = q - 1;
    unsigned s = 0;
    while ((m0 & 1) == 0) {
        m0 >>= 1;
        ++s;
    }
    // deterministic nonresidue search: scan representatives in base-p order
    ExtEl z = ExtEl::zero(ctx_);
    for (std::uint64_t idx = 1;; ++idx) {
        std::uint64_t v = idx;
        std::vector<Fp> c;
        for (int i = 0; i < ctx_->deg; ++i) {
            c.emplace_back(static_cast<std::int64_t>(v % ctx_->p), ctx_->p);
            v /= ctx_->p;
        }
        z = ExtEl(ctx_, Poly(ctx_->p, std::move(c)));
        if (!z.is_zero() && !z.is_square()) break;
        if (idx > ctx_->order + 2) throw InternalError("ExtEl::sqrt: no nonresidue found");
    }
    ExtEl c = z.pow(m0);
    ExtEl t = pow(m0);
    ExtEl r = pow((m0 + 1) / 2);
    unsigned m = s;
    ExtEl one = ExtEl::one(ctx_);
    while (!(t == one)) {
        ExtEl tt = t;
        unsigned i = 0;
        while (!(tt == one)) {
            tt = tt * tt;
            ++i;
        }
        ExtEl b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    return r;
}

std::vector<Fp> ExtEl::coords() const {
    std::vector<Fp> out;
    out.reserve(static_cast<std::size_t>(ctx_->deg));
    for (int i = 0; i < ctx_->deg; ++i) out.push_back(rep_.coeff(i));
    return out;
}

ExtEl eval_ext(const Poly& f, const ExtEl& x) {
    ExtEl acc = ExtEl::zero(x.ctx());
    for (int i = f.degree(); i >= 0; --i) acc = acc * x + ExtEl::embed(x.ctx(), f.coeff(i));
    return acc;
}

}  // namespace scrollkit
