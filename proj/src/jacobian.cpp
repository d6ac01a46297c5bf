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

#include "scrollkit/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "scrollkit/rr.hpp"

namespace scrollkit {

namespace {

void require_odd_model(const CurvePtr& X, const char* who) {
    if (!X || X->kind() != CurveKind::Hyperelliptic || !X->odd_model())
        throw Error(std::string(who) + ": needs an odd-degree hyperelliptic model");
}

// Cantor composition of semi-reduced pairs followed by reduction.
JacClass compose_and_reduce(const CurvePtr& X, const Poly& u1, const Poly& v1, const Poly& u2,
                            const Poly& v2) {
    const Poly& f = X->f();
    std::uint64_t p = X->modulus();
    XgcdResult e1 = poly_xgcd(u1, u2);                 // d1 = e1.s u1 + e1.t u2
    XgcdResult e2 = poly_xgcd(e1.g, v1 + v2);          // d = e2.s d1 + e2.t (v1+v2)
    Poly d = e2.g;
    Poly s1 = e2.s * e1.s, s2 = e2.s * e1.t, s3 = e2.t;
    Poly u = (u1 * u2) / (d * d);
    Poly num = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f);
    Poly v = (num / d) % u;
    // reduce
    int g = X->genus();
    while (u.degree() > g) {
        Poly unew = (f - v * v) / u;
        unew = unew.monic();
        v = (-v) % unew;
        u = unew;
    }
    u = u.monic();
    if (u.degree() == 0) return JacClass::identity(X);
    return JacClass(X, u, v % u);
    (void)p;
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

JacClass::JacClass(CurvePtr X, Poly u, Poly v) : X_(std::move(X)), u_(std::move(u)), v_(std::move(v)) {
    require_odd_model(X_, "JacClass");
    if (u_.is_zero()) throw InternalError("JacClass: zero u");
    u_ = u_.monic();
    v_ = v_ % u_;
    if (u_.degree() > X_->genus()) throw InternalError("JacClass: not reduced");
    Poly rem = (v_ * v_ - X_->f()) % u_;
    if (!rem.is_zero()) throw InternalError("JacClass: u does not divide v^2 - f");
}

JacClass JacClass::identity(CurvePtr X) {
    require_odd_model(X, "JacClass::identity");
    std::uint64_t p = X->modulus();
    return JacClass(std::move(X), Poly::one(p), Poly::zero(p));
}

bool JacClass::operator==(const JacClass& o) const { return u_ == o.u_ && v_ == o.v_; }

bool JacClass::operator<(const JacClass& o) const {
    if (!(u_ == o.u_)) return u_ < o.u_;
    return v_ < o.v_;
}

std::string JacClass::str() const {
    std::ostringstream os;
    os << "(" << u_.str() << ", " << v_.str() << ")";
    return os.str();
}

JacClass class_of(const Divisor& D) {
    CurvePtr X = D.curve();
    require_odd_model(X, "class_of");
    std::uint64_t p = X->modulus();
    JacClass acc = JacClass::identity(X);
    for (const auto& [P, n] : D.atoms()) {
        if (n == 0) continue;
        if (P.at_infinity()) continue;  // infinity is the base point of the normalization
        if (P.kind() == Place::Kind::HyperInert) continue;  // a whole fiber, trivial in the Jacobian
        if (P.kind() != Place::Kind::HyperAffine) throw Error("class_of: foreign place kind");
        Poly u = P.mu();
        Poly v = P.psi() % u;
        Poly rem = (v * v - X->f()) % u;
        if (!rem.is_zero()) throw InternalError("class_of: atom off the curve");
        Poly vv = n > 0 ? v : -v;
        int times = std::abs(n);
        for (int i = 0; i < times; ++i) acc = compose_and_reduce(X, acc.u(), acc.v(), u, vv);
    }
    (void)p;
    return acc;
}

JacClass jac_add(const JacClass& a, const JacClass& b) {
    if (a.curve() != b.curve()) throw Error("jac_add: curve mismatch");
    return compose_and_reduce(a.curve(), a.u(), a.v(), b.u(), b.v());
}

JacClass jac_double(const JacClass& a) { return jac_add(a, a); }

JacClass jac_neg(const JacClass& a) { return JacClass(a.curve(), a.u(), -a.v()); }

JacClass jac_scale(const JacClass& a, int n) {
    if (n < 0) return jac_scale(jac_neg(a), -n);
    JacClass acc = JacClass::identity(a.curve());
    JacClass base = a;
    while (n) {
        if (n & 1) acc = jac_add(acc, base);
        base = jac_double(base);
        n >>= 1;
    }
    return acc;
}

Divisor divisor_from_class(const JacClass& c) {
    CurvePtr X = c.curve();
    Divisor D(X);
    if (c.is_identity()) return D;
    for (const auto& [mu, e] : factor_poly(c.u())) {
        Poly psi = c.v() % mu;
        D.add(Place::hyper_affine(mu, psi), e);
    }
    D.add(X->infinity_place(), -c.u().degree());
    if (D.degree() != 0) throw InternalError("divisor_from_class: degree bookkeeping");
    return D;
}

std::vector<JacClass> two_torsion(const CurvePtr& X) {
    require_odd_model(X, "two_torsion");
    std::uint64_t p = X->modulus();
    auto roots = roots_in_field(X->f());
    int n = X->f().degree();
    if (static_cast<int>(roots.size()) != n)
        throw Error("two_torsion: f does not split over F_p");
    int g = X->genus();
    std::vector<JacClass> out;
    // subsets of the affine ramification points, one per size up to g
    for (int size = 0; size <= g; ++size) {
        std::vector<int> comb(static_cast<std::size_t>(size));
        std::function<void(int, int)> pick = [&](int start, int k) {
            if (k == size) {
                Poly u = Poly::one(p);
                for (int i = 0; i < size; ++i)
                    u = u * (Poly::x(p) - Poly::constant(roots[static_cast<std::size_t>(comb[static_cast<std::size_t>(i)])].first));
                out.emplace_back(X, u, Poly::zero(p));
                return;
            }
            for (int i = start; i < n; ++i) {
                comb[static_cast<std::size_t>(k)] = i;
                pick(i + 1, k + 1);
            }
        };
        pick(0, 0);
    }
    std::size_t expected = 1ull << (2 * g);
    if (out.size() != expected) throw InternalError("two_torsion: count is not 2^(2g)");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<JacClass> enumerate_jacobian(const CurvePtr& X, std::size_t budget) {
    require_odd_model(X, "enumerate_jacobian");
    {
        std::lock_guard<std::mutex> lock(X->cache_mutex);
        auto it = X->aux_cache.find("jacobian-enumeration");
        if (it != X->aux_cache.end())
            return *std::static_pointer_cast<const std::vector<JacClass>>(it->second);
    }
    std::uint64_t p = X->modulus();
    int g = X->genus();
    double weil_hi = std::pow(std::sqrt(static_cast<double>(p)) + 1.0, 2 * g);
    if (weil_hi > static_cast<double>(budget))
        throw Error("enumerate_jacobian: Weil estimate " + std::to_string(static_cast<std::uint64_t>(weil_hi)) +
                    " exceeds the enumeration budget");
    std::vector<JacClass> out;
    out.push_back(JacClass::identity(X));
    const Poly& f = X->f();
    // deg u = 1: u = x - a, v = c with c^2 = f(a)
    for (std::uint64_t a = 0; a < p; ++a) {
        Fp xa(static_cast<std::int64_t>(a), p);
        Poly u = Poly::x(p) - Poly::constant(xa);
        Fp fa = f.eval(xa);
        if (fa.is_zero()) {
            out.emplace_back(X, u, Poly::zero(p));
        } else if (fa.is_square()) {
            Fp c = fa.sqrt();
            out.emplace_back(X, u, Poly::constant(c));
            out.emplace_back(X, u, Poly::constant(-c));
        }
    }
    if (g >= 2) {
        // deg u = 2: u = x^2 + a x + b, v = c x + d with u | v^2 - f
        for (std::uint64_t a = 0; a < p; ++a) {
            for (std::uint64_t b = 0; b < p; ++b) {
                Fp fa(static_cast<std::int64_t>(a), p), fb(static_cast<std::int64_t>(b), p);
                Poly u(p, {0, 0, 1});
                u = u + Poly::x(p) * fa + Poly::constant(fb);
                Poly r = f % u;  // r1 x + r0
                Fp r1 = r.coeff(1), r0 = r.coeff(0);
                // c = 0 case: v = d constant
                if (r1.is_zero()) {
                    if (r0.is_zero()) {
                        out.emplace_back(X, u, Poly::zero(p));
                    } else if (r0.is_square()) {
                        Fp d = r0.sqrt();
                        out.emplace_back(X, u, Poly::constant(d));
                        out.emplace_back(X, u, Poly::constant(-d));
                    }
                }
                // c != 0: with e = c^2, (a~ e)^2 pattern:
                // e^2 (a^2 - 4b) + e (2 a r1 - 4 r0) + r1^2 = 0
                Fp A = fa * fa - Fp(4, p) * fb;
                Fp B = Fp(2, p) * fa * r1 - Fp(4, p) * r0;
                Fp C = r1 * r1;
                std::vector<Fp> es;
                if (A.is_zero()) {
                    if (!B.is_zero()) es.push_back(-C / B);
                } else {
                    Fp disc = B * B - Fp(4, p) * A * C;
                    if (disc.is_zero()) {
                        es.push_back(-B / (Fp(2, p) * A));
                    } else if (disc.is_square()) {
                        Fp rt = disc.sqrt();
                        es.push_back((-B + rt) / (Fp(2, p) * A));
                        es.push_back((-B - rt) / (Fp(2, p) * A));
                    }
                }
                for (const Fp& e : es) {
                    if (e.is_zero() || !e.is_square()) continue;
                    Fp c = e.sqrt();
                    for (const Fp& cc : {c, -c}) {
                        Fp d = (r1 + fa * e) / (Fp(2, p) * cc);
                        Poly v = Poly::x(p) * cc + Poly::constant(d);
                        if (((v * v - f) % u).is_zero()) out.emplace_back(X, u, v);
                    }
                }
            }
        }
    }
    if (g >= 3)
        throw Error("enumerate_jacobian: direct enumeration implemented for genus <= 2");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    double weil_lo = std::pow(std::sqrt(static_cast<double>(p)) - 1.0, 2 * g);
    if (static_cast<double>(out.size()) < weil_lo || static_cast<double>(out.size()) > weil_hi)
        throw InternalError("enumerate_jacobian: group size violates the Weil interval");
    {
        std::lock_guard<std::mutex> lock(X->cache_mutex);
        X->aux_cache["jacobian-enumeration"] = std::make_shared<const std::vector<JacClass>>(out);
    }
    return out;
}

std::vector<JacClass> square_roots(const JacClass& c, std::size_t budget) {
    CurvePtr X = c.curve();
    std::vector<JacClass> all = enumerate_jacobian(X, budget);
    std::vector<JacClass> out;
    for (const JacClass& x : all)
        if (jac_double(x) == c) out.push_back(x);
    if (!out.empty()) {
        std::size_t torsion = 0;
        for (const JacClass& x : all)
            if (jac_double(x).is_identity()) ++torsion;
        if (out.size() != torsion)
            throw InternalError("square_roots: fiber size differs from the rational 2-torsion");
    }
    return out;
}

bool is_equivalent(const Divisor& D1, const Divisor& D2) {
    if (D1.curve() != D2.curve()) throw Error("is_equivalent: curve mismatch");
    if (D1.degree() != D2.degree()) throw Error("is_equivalent: degree mismatch");
    CurvePtr X = D1.curve();
    Divisor Z = D1 - D2;
    bool by_h0 = h0(Z) == 1;
    if (X->kind() == CurveKind::Hyperelliptic && X->odd_model()) {
        bool by_cantor = class_of(Z).is_identity();
        if (by_cantor != by_h0)
            throw InternalError("is_equivalent: Cantor and h0 routes disagree on " + Z.str());
    }
    return by_h0;
}

}  // namespace scrollkit
