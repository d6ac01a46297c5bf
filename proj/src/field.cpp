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

#include "scrollkit/field.hpp"

namespace scrollkit {

Fp::Fp(std::int64_t value, std::uint64_t p) : p_(p) {
    if (p < 3) throw Error("Fp: modulus must be an odd prime >= 3");
    std::int64_t m = static_cast<std::int64_t>(p);
    std::int64_t r = value % m;
    if (r < 0) r += m;
    v_ = static_cast<std::uint64_t>(r);
}

Fp Fp::operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    Fp r;
    r.v_ = s;
    r.p_ = p_;
    return r;
}

Fp Fp::operator-(const Fp& o) const {
    check(o);
    Fp r;
    r.v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    r.p_ = p_;
    return r;
}

Fp Fp::operator*(const Fp& o) const {
    check(o);
    Fp r;
    r.v_ = (__uint128_t(v_) * o.v_) % p_;
    r.p_ = p_;
    return r;
}

Fp Fp::operator/(const Fp& o) const { return *this * o.inv(); }

Fp Fp::operator-() const {
    Fp r;
    r.v_ = v_ == 0 ? 0 : p_ - v_;
    r.p_ = p_;
    return r;
}

Fp Fp::inv() const {
    if (v_ == 0) throw Error("Fp: division by zero");
    // extended Euclid on (v, p)
    std::int64_t a = static_cast<std::int64_t>(v_), m = static_cast<std::int64_t>(p_);
    std::int64_t t0 = 0, t1 = 1, r0 = m, r1 = a;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 != 1) throw InternalError("Fp: modulus not prime");
    return Fp(t0, p_);
}

Fp Fp::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    Fp base = *this, acc = Fp::one(p_);
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool Fp::is_square() const {
    if (v_ == 0) return true;
    return pow(static_cast<std::int64_t>((p_ - 1) / 2)).value() == 1;
}

Fp Fp::sqrt() const {
    if (v_ == 0) return *this;
    if (!is_square()) throw Error("Fp: sqrt of a nonresidue");
    if (p_ % 4 == 3) return pow(static_cast<std::int64_t>((p_ + 1) / 4));
    // Tonelli-Shanks
    std::uint64_t q = p_ - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    Fp z = Fp(2, p_);
    while (z.is_square()) z = z + Fp::one(p_);
    Fp m_exp = Fp::zero(p_);  // unused placeholder, loop state below
    (void)m_exp;
    Fp c = z.pow(static_cast<std::int64_t>(q));
    Fp t = pow(static_cast<std::int64_t>(q));
    Fp r = pow(static_cast<std::int64_t>((q + 1) / 2));
    unsigned m = s;
    while (t.value() != 1) {
        Fp tt = t;
        unsigned i = 0;
        while (tt.value() != 1) {
            tt = tt * tt;
            ++i;
        }
        Fp b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = b * b;
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 29; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

}  // namespace scrollkit
