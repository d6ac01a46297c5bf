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

#include "scrollkit/factor.hpp"

#include <algorithm>
#include <map>

#include "scrollkit/rng.hpp"

namespace scrollkit {

namespace {

// p-th root of a polynomial in x^p only; over F_p the coefficient map is the
// identity (Frobenius fixes the prime field).
Poly pth_root(const Poly& f) {
    std::uint64_t p = f.modulus();
    std::vector<Fp> c;
    for (int i = 0; i * static_cast<int>(p) <= f.degree(); ++i)
        c.push_back(f.coeff(i * static_cast<int>(p)));
    return Poly(p, std::move(c));
}

// Squarefree decomposition, returns (g, multiplicity) pairs (Yun's algorithm
// with the characteristic-p fallthrough for vanishing derivatives).
void squarefree_decompose(const Poly& f, int mult, std::map<Poly, int>& out) {
    if (f.degree() <= 0) return;
    Poly d = f.derivative();
    std::uint64_t p = f.modulus();
    if (d.is_zero()) {
        squarefree_decompose(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    Poly g = poly_gcd(f, d);
    Poly w = (f / g).monic();
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, g);
        Poly part = (w / y).monic();
        if (part.degree() > 0) out[part] += mult * i;
        w = y;
        g = (g / y).monic();
        ++i;
    }
    if (g.degree() > 0) squarefree_decompose(g, mult, out);  // p-th power part
}

std::uint64_t poly_fingerprint(const Poly& f) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ f.modulus();
    for (const Fp& c : f.coeffs()) h = (h ^ c.value()) * 0x100000001b3ull;
    return h;
}

// Equal-degree splitting of a squarefree product of degree-d irreducibles.
void equal_degree_split(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    std::uint64_t p = f.modulus();
    // exponent (p^d - 1) / 2 fits in 64 bits at desk scale
    std::uint64_t q = 1;
    for (int i = 0; i < d; ++i) q *= p;
    std::uint64_t e = (q - 1) / 2;
    while (true) {
        std::vector<Fp> c;
        for (int i = 0; i < f.degree(); ++i) c.emplace_back(static_cast<std::int64_t>(rng.uniform(p)), p);
        Poly a(p, std::move(c));
        if (a.degree() < 1) continue;
        Poly g = poly_gcd(a, f);
        if (g.degree() == 0) {
            Poly b = poly_powmod(a, e, f) - Poly::one(p);
            if (b.is_zero()) continue;
            g = poly_gcd(b, f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split((f / g).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Fp, int>> roots_in_field(const Poly& f) {
    if (f.is_zero()) throw Error("roots_in_field: zero polynomial");
    std::uint64_t p = f.modulus();
    // gcd with x^p - x isolates the split part, then direct scan
    Poly xp = poly_powmod(Poly::x(p), p, f.monic().degree() > 0 ? f.monic() : Poly::one(p));
    Poly split = f.degree() > 0 ? poly_gcd(f, xp - Poly::x(p)) : Poly::one(p);
    std::vector<std::pair<Fp, int>> out;
    if (split.degree() <= 0) return out;
    for (std::uint64_t v = 0; v < p; ++v) {
        Fp x(static_cast<std::int64_t>(v), p);
        if (!split.eval(x).is_zero()) continue;
        int m = 0;
        Poly g = f;
        Poly lin(p, {static_cast<std::int64_t>(p - v), 1});
        while (true) {
            auto [q, r] = g.divmod(lin);
            if (!r.is_zero()) break;
            ++m;
            g = q;
            if (g.degree() < 1) break;
        }
        out.emplace_back(x, m);
    }
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    std::uint64_t p = f.modulus();
    int n = f.degree();
    Poly fm = f.monic();
    // x^(p^n) == x mod f, and x^(p^(n/q)) != x for prime q | n
    Poly xp = Poly::x(p);
    std::vector<Poly> frob;  // frob[i] = x^(p^(i+1)) mod f
    Poly cur = poly_powmod(Poly::x(p), p, fm);
    frob.push_back(cur);
    for (int i = 1; i < n; ++i) {
        // compose: cur(x) -> cur evaluated at frob[0]
        Poly next(p);
        Poly acc = Poly::one(p);
        for (int k = 0; k <= cur.degree(); ++k) {
            next = next + acc * cur.coeff(k);
            acc = (acc * frob[0]) % fm;
        }
        cur = next % fm;
        frob.push_back(cur);
    }
    if (frob[static_cast<std::size_t>(n - 1)] != Poly::x(p) % fm) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool qprime = true;
        for (int t = 2; t * t <= q; ++t)
            if (q % t == 0) qprime = false;
        if (!qprime) continue;
        Poly g = frob[static_cast<std::size_t>(n / q - 1)] - Poly::x(p);
        if (g.is_zero()) return false;
        if (poly_gcd(g, fm).degree() != 0) return false;
    }
    return true;
}

std::vector<std::pair<Poly, int>> factor_poly(const Poly& f) {
    if (f.is_zero()) throw Error("factor_poly: zero polynomial");
    std::map<Poly, int> sqf;
    squarefree_decompose(f.monic(), 1, sqf);
    std::map<Poly, int> factors;
    Rng rng(poly_fingerprint(f));
    for (const auto& [g, mult] : sqf) {
        // distinct-degree on the squarefree part g
        std::uint64_t p = g.modulus();
        Poly rest = g;
        Poly h = Poly::x(p);
        int d = 0;
        while (rest.degree() > 0) {
            ++d;
            if (2 * d > rest.degree()) {
                factors[rest.monic()] += mult;
                break;
            }
            h = poly_powmod(h, p, rest);
            Poly gd = poly_gcd(h - Poly::x(p), rest);
            if (gd.degree() > 0) {
                std::vector<Poly> parts;
                equal_degree_split(gd, d, rng, parts);
                for (const Poly& irr : parts) factors[irr] += mult;
                rest = (rest / gd).monic();
                if (rest.degree() > 0) h = h % rest;
            }
        }
    }
    std::vector<std::pair<Poly, int>> out(factors.begin(), factors.end());
    return out;
}

}  // namespace scrollkit
