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

#include "scrollkit/curve.hpp"

#include <algorithm>
#include <sstream>

namespace scrollkit {

namespace {

// ---------- small polynomial helpers over an extension field ----------

using EPoly = std::vector<ExtEl>;  // dense, low degree first, not normalized

int epoly_deg(const EPoly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (!f[i].is_zero()) return static_cast<int>(i);
    return -1;
}

EPoly epoly_mod(EPoly a, const EPoly& b) {
    int db = epoly_deg(b);
    if (db < 0) throw InternalError("epoly_mod: zero divisor");
    ExtEl lead = b[static_cast<std::size_t>(db)];
    ExtEl linv = lead.inv();
    int da = epoly_deg(a);
    while (da >= db) {
        ExtEl f = a[static_cast<std::size_t>(da)] * linv;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] =
                a[static_cast<std::size_t>(da - db + i)] - f * b[static_cast<std::size_t>(i)];
        da = epoly_deg(a);
    }
    a.resize(da < 0 ? 0 : static_cast<std::size_t>(da) + 1, lead);  // shrink only
    return a;
}

EPoly epoly_gcd(EPoly a, EPoly b) {
    while (epoly_deg(b) >= 0) {
        EPoly r = epoly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// ---------- resultants via fraction-free elimination ----------

Poly det_poly_matrix(std::vector<std::vector<Poly>> m, std::uint64_t p) {
    std::size_t n = m.size();
    if (n == 0) return Poly::one(p);
    Poly prev = Poly::one(p);
    bool neg = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t sw = k + 1;
            while (sw < n && m[sw][k].is_zero()) ++sw;
            if (sw == n) return Poly::zero(p);
            std::swap(m[k], m[sw]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto [q, r] = num.divmod(prev);
                if (!r.is_zero()) throw InternalError("det_poly_matrix: inexact division");
                m[i][j] = q;
            }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return neg ? -det : det;
}

// Resultant of a and b with respect to the second variable.
Poly resultant_y(const BiPoly& a, const BiPoly& b) {
    std::uint64_t p = a.modulus();
    int da = a.deg_y(), db = b.deg_y();
    if (a.is_zero() || b.is_zero()) return Poly::zero(p);
    if (da == 0) return a.ycoeff(0).pow(db);
    if (db == 0) return b.ycoeff(0).pow(da);
    std::size_t n = static_cast<std::size_t>(da + db);
    std::vector<std::vector<Poly>> syl(n, std::vector<Poly>(n, Poly::zero(p)));
    for (int r = 0; r < db; ++r)
        for (int j = 0; j <= da; ++j) syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = a.ycoeff(da - j);
    for (int r = 0; r < da; ++r)
        for (int j = 0; j <= db; ++j)
            syl[static_cast<std::size_t>(db + r)][static_cast<std::size_t>(r + j)] = b.ycoeff(db - j);
    return det_poly_matrix(std::move(syl), p);
}

// ---------- chart polynomials of a plane model ----------

// q2(u, w) = Z^d q(X/Z, Y/Z) evaluated at (X, Y, Z) = (u, 1, w)
BiPoly chart_y(const BiPoly& q, int d) {
    std::uint64_t p = q.modulus();
    std::vector<Poly> wc(static_cast<std::size_t>(d) + 1, Poly(p));
    for (int j = 0; j <= q.deg_y(); ++j) {
        const Poly& aj = q.ycoeff(j);
        for (int i = 0; i <= aj.degree(); ++i) {
            Fp c = aj.coeff(i);
            if (c.is_zero()) continue;
            int wexp = d - i - j;
            if (wexp < 0) throw InternalError("chart_y: degree bookkeeping");
            wc[static_cast<std::size_t>(wexp)] =
                wc[static_cast<std::size_t>(wexp)] + Poly::x_pow(p, i) * c;
        }
    }
    return BiPoly(p, std::move(wc));
}

// q3(v, w) = Z^d q(X/Z, Y/Z) at (X, Y, Z) = (1, v, w)
BiPoly chart_x(const BiPoly& q, int d) {
    std::uint64_t p = q.modulus();
    std::vector<Poly> wc(static_cast<std::size_t>(d) + 1, Poly(p));
    for (int j = 0; j <= q.deg_y(); ++j) {
        const Poly& aj = q.ycoeff(j);
        for (int i = 0; i <= aj.degree(); ++i) {
            Fp c = aj.coeff(i);
            if (c.is_zero()) continue;
            int wexp = d - i - j;
            wc[static_cast<std::size_t>(wexp)] =
                wc[static_cast<std::size_t>(wexp)] + Poly::x_pow(p, j) * c;
        }
    }
    return BiPoly(p, std::move(wc));
}

// Swap the two variables of a bivariate polynomial.
BiPoly transpose_vars(const BiPoly& q) {
    std::uint64_t p = q.modulus();
    std::vector<Poly> out(static_cast<std::size_t>(std::max(q.deg_x(), 0)) + 1, Poly(p));
    for (int j = 0; j <= q.deg_y(); ++j) {
        const Poly& aj = q.ycoeff(j);
        for (int i = 0; i <= aj.degree(); ++i) {
            Fp c = aj.coeff(i);
            if (c.is_zero()) continue;
            out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] + Poly::x_pow(p, j) * c;
        }
    }
    return BiPoly(p, std::move(out));
}

// No common zero of (s, ds/du, ds/dv) over the algebraic closure. The x-side
// candidates come from resultants; each candidate cluster is then checked in
// its own residue field.
bool chart_smooth_over_closure(const BiPoly& s) {
    std::uint64_t p = s.modulus();
    BiPoly su = s.dx(), sv = s.dy();
    if (su.is_zero() && sv.is_zero()) return false;
    // rational-candidate pass plus closure certification
    Poly r1 = sv.is_zero() ? Poly::zero(p) : resultant_y(s, sv);
    Poly r2 = su.is_zero() ? Poly::zero(p) : resultant_y(s, su);
    Poly g(p);
    if (r1.is_zero() && r2.is_zero()) return false;
    if (r1.is_zero())
        g = r2;
    else if (r2.is_zero())
        g = r1;
    else
        g = poly_gcd(r1, r2);
    if (g.degree() == 0) return true;
    for (const auto& [mu, mult] : factor_poly(g)) {
        (void)mult;
        auto ctx = ExtCtx::make(mu);
        ExtEl xi = ExtEl::gen(ctx);
        // specialize at x = xi and look for a common root in y over kappa
        auto specialize = [&](const BiPoly& b) {
            EPoly r;
            for (int j = 0; j <= b.deg_y(); ++j) r.push_back(eval_ext(b.ycoeff(j), xi));
            return r;
        };
        EPoly a0 = specialize(s);
        EPoly a1 = specialize(su);
        EPoly a2 = specialize(sv);
        EPoly g1 = epoly_gcd(a0, a1);
        EPoly g2 = epoly_gcd(g1, a2);
        if (epoly_deg(g2) > 0) return false;
        if (epoly_deg(g2) < 0) return false;  // all three vanish identically on the fiber
    }
    return true;
}

// ---------- Newton solver for the second variable of s(A, B) = 0 ----------

template <class E>
ExtEl dummy_never_used();

template <class E>
E eval_bipoly_pt(const BiPoly& s, const E& a, const E& b) {
    E acc = zero_like(a);
    for (int j = s.deg_y(); j >= 0; --j) {
        acc = acc * b;
        // Horner over the x polynomial
        E cx = zero_like(a);
        const Poly& aj = s.ycoeff(j);
        for (int i = aj.degree(); i >= 0; --i) cx = cx * a + lift_to(a, aj.coeff(i));
        acc = acc + cx;
    }
    return acc;
}

template <class E>
Series<E> newton_solve_y(const BiPoly& s, const Series<E>& A, const E& B0, int prec_end) {
    if (prec_end < 1) prec_end = 1;
    BiPoly sy = s.dy();
    E z = zero_like(B0);
    std::vector<E> bc{B0};
    int have = 1;
    while (have < prec_end) {
        int target = std::min(2 * have, prec_end);
        std::vector<E> padded = bc;
        padded.resize(static_cast<std::size_t>(target) + 4, z);
        Series<E> B(z, 0, padded);
        Series<E> F = eval_bipoly_series(s, A, B);
        Series<E> dF = eval_bipoly_series(sy, A, B);
        if (dF.known_zero() || dF.valuation() != 0)
            throw InternalError("newton_solve_y: derivative is not a unit");
        if (F.end() < target) throw InternalError("newton_solve_y: input precision too small");
        if (!F.known_zero() && F.valuation() < have)
            throw InternalError("newton_solve_y: iterate lost contact");
        Series<E> delta = (F * dF.inverse()).truncated(target);
        bc.resize(static_cast<std::size_t>(target), z);
        if (!delta.known_zero()) {
            for (int k = delta.valuation(); k < delta.end() && k < target; ++k)
                bc[static_cast<std::size_t>(k)] = bc[static_cast<std::size_t>(k)] - delta.coeff(k);
        }
        have = target;
    }
    bc.resize(static_cast<std::size_t>(prec_end), z);
    return Series<E>(z, 0, bc);
}

// exact series alpha + t with a long window
template <class E>
Series<E> affine_param(const E& alpha, int window_end) {
    E z = zero_like(alpha);
    std::vector<E> c(static_cast<std::size_t>(std::max(window_end, 2)), z);
    c[0] = alpha;
    c[1] = one_like(alpha);
    return Series<E>(z, 0, std::move(c));
}

template <class E>
Series<E> pure_param(const E& one, int window_end) {
    return Series<E>::param(one, std::max(window_end, 2));
}

BiPoly hyper_equation(const Poly& f) {
    std::uint64_t p = f.modulus();
    return BiPoly(p, {-f, Poly(p), Poly::one(p)});
}

// G(t, U) for the odd-model infinite point: substituting x = U t^-2 and
// y = U^g t^-(2g+1) into y^2 = f(x) and clearing t powers gives
// sum_k f_k U^k t^(4g+2-2k) - U^(2g) = 0 with U(0) = 1/lead(f).
BiPoly odd_infinity_equation(const Poly& f, int g) {
    std::uint64_t p = f.modulus();
    int n = f.degree();  // 2g + 1
    std::vector<Poly> uc(static_cast<std::size_t>(n) + 1, Poly(p));
    for (int k = 0; k <= n; ++k) {
        Fp c = f.coeff(k);
        if (c.is_zero()) continue;
        uc[static_cast<std::size_t>(k)] = uc[static_cast<std::size_t>(k)] + Poly::x_pow(p, 4 * g + 2 - 2 * k) * c;
    }
    uc[static_cast<std::size_t>(2 * g)] = uc[static_cast<std::size_t>(2 * g)] - Poly::one(p);
    return BiPoly(p, std::move(uc));
}

Poly reversed_even(const Poly& f) {
    // t^(deg f) f(1/t)
    std::uint64_t p = f.modulus();
    std::vector<Fp> c;
    for (int i = f.degree(); i >= 0; --i) c.push_back(f.coeff(i));
    return Poly(p, std::move(c));
}

template <class E, class EmbedFn>
Expansion<E> expand_generic(const CurveModel& X, const Place& P, int prec_end, const E& gen_or_alpha,
                            EmbedFn embed) {
    std::uint64_t p = X.modulus();
    (void)p;
    int g = X.genus();
    switch (P.kind()) {
        case Place::Kind::HyperAffine: {
            E xi = gen_or_alpha;
            if (P.psi().is_zero()) {
                // ramified: t = y, solve x from f(x) = t^2
                BiPoly st = transpose_vars(hyper_equation(X.f()));
                Series<E> A = pure_param<E>(one_like(xi), prec_end + 4 + X.f().degree() * (prec_end + 4));
                Series<E> B = newton_solve_y(st, A, xi, prec_end + 2);
                return {B, A.truncated(prec_end + 2)};
            }
            E y0 = embed(P.psi(), xi);
            Series<E> A = affine_param(xi, prec_end + 4);
            Series<E> B = newton_solve_y(hyper_equation(X.f()), A, y0, prec_end + 2);
            return {A.truncated(prec_end + 2), B};
        }
        case Place::Kind::HyperInert: {
            E x0v = lift_to(gen_or_alpha, -P.mu().coeff(0));
            Series<E> A = affine_param(x0v, prec_end + 4);
            Series<E> B = newton_solve_y(hyper_equation(X.f()), A, gen_or_alpha, prec_end + 2);
            return {A.truncated(prec_end + 2), B};
        }
        case Place::Kind::HyperInfOdd: {
            E onev = one_like(gen_or_alpha);
            int shift = 2 * g + 1;
            int w = prec_end + shift + 4;
            BiPoly G = odd_infinity_equation(X.f(), g);
            Series<E> A = pure_param<E>(onev, w + (4 * g + 3) * (w + 2));
            E u0 = lift_to(gen_or_alpha, X.f().lead().inv());
            Series<E> U = newton_solve_y(G, A, u0, w);
            Series<E> x = U.shifted(-2);
            Series<E> y = U.pow(g).shifted(-shift);
            return {x.truncated(prec_end + 2), y.truncated(prec_end + 2)};
        }
        case Place::Kind::HyperInfEven: {
            // t = 1/x; y = W(t) t^-(g+1) with W^2 = t^(2g+2) f(1/t)
            E w0 = gen_or_alpha;
            int w = prec_end + g + 4;
            Poly ftilde = reversed_even(X.f());
            Series<E> A = pure_param<E>(one_like(w0), w + (ftilde.degree() + 2) * (w + 2));
            Series<E> W = newton_solve_y(hyper_equation(ftilde), A, w0, w);
            Series<E> x = A.truncated(w).inverse();
            Series<E> y = W.shifted(-(g + 1));
            return {x.truncated(prec_end + 2), y.truncated(prec_end + 2)};
        }
        case Place::Kind::PlaneAffine: {
            E eta = gen_or_alpha;
            E x0v = lift_to(eta, P.x0());
            const BiPoly& q = X.q();
            E qy = eval_bipoly_pt(q.dy(), x0v, eta);
            if (!qy.is_zero()) {
                Series<E> A = affine_param(x0v, prec_end + 4);
                Series<E> B = newton_solve_y(q, A, eta, prec_end + 2);
                return {A.truncated(prec_end + 2), B};
            }
            // swap: parametrize by y
            Series<E> A = affine_param(eta, prec_end + 4);
            Series<E> B = newton_solve_y(transpose_vars(q), A, x0v, prec_end + 2);
            return {B, A.truncated(prec_end + 2)};
        }
        case Place::Kind::PlaneInfY:
        case Place::Kind::PlaneInfX: {
            const BiPoly& chart = P.kind() == Place::Kind::PlaneInfY ? X.chart2() : X.chart3();
            E a0 = gen_or_alpha;  // u0 (or v0 = 0 in chart 3)
            E z = zero_like(a0);
            int d = X.plane_degree();
            int w = prec_end + d + 6;
            E dw = eval_bipoly_pt(chart.dy(), a0, z);
            Series<E> u_s(z, 0, {}), w_s(z, 0, {});
            if (!dw.is_zero()) {
                // parameter is the first chart coordinate
                Series<E> A = affine_param(a0, w + 4);
                Series<E> B = newton_solve_y(chart, A, z, w);
                u_s = A.truncated(w);
                w_s = B;
            } else {
                Series<E> A = pure_param<E>(one_like(a0), (w + 4) * (d + 2));
                Series<E> B = newton_solve_y(transpose_vars(chart), A, a0, w);
                u_s = B;
                w_s = A.truncated(w);
            }
            if (w_s.known_zero()) throw InternalError("expand: chart coordinate vanished");
            Series<E> winv = w_s.inverse();
            if (P.kind() == Place::Kind::PlaneInfY) {
                Series<E> x = u_s * winv;
                return {x.truncated(prec_end + 2), winv.truncated(prec_end + 2)};
            }
            Series<E> y = u_s * winv;
            return {winv.truncated(prec_end + 2), y.truncated(prec_end + 2)};
        }
    }
    throw InternalError("expand: unknown place kind");
}

}  // namespace

// ---------- Place ----------

Place Place::hyper_affine(const Poly& mu, const Poly& psi) {
    Place P;
    P.kind_ = Kind::HyperAffine;
    P.mu_ = mu.monic();
    P.psi_ = psi % P.mu_;
    P.p_ = mu.modulus();
    return P;
}

Place Place::hyper_rational(const Fp& x0, const Fp& y0) {
    Poly mu(x0.modulus(), {0, 1});
    mu = mu - Poly::constant(x0);
    return hyper_affine(mu, Poly::constant(y0));
}

Place Place::hyper_inert(const Fp& x0) {
    Place P;
    P.kind_ = Kind::HyperInert;
    Poly mu(x0.modulus(), {0, 1});
    P.mu_ = mu - Poly::constant(x0);
    P.p_ = x0.modulus();
    return P;
}

Place Place::hyper_inf_odd(std::uint64_t p) {
    Place P;
    P.kind_ = Kind::HyperInfOdd;
    P.p_ = p;
    return P;
}

Place Place::hyper_inf_even(std::uint64_t p, int sign) {
    Place P;
    P.kind_ = Kind::HyperInfEven;
    P.sign_ = sign;
    P.p_ = p;
    return P;
}

Place Place::plane_affine(const Fp& x0, const Poly& mu_y) {
    Place P;
    P.kind_ = Kind::PlaneAffine;
    P.x0_ = x0;
    P.mu_ = mu_y.monic();
    P.p_ = x0.modulus();
    return P;
}

Place Place::plane_rational(const Fp& x0, const Fp& y0) {
    Poly mu(x0.modulus(), {0, 1});
    mu = mu - Poly::constant(y0);
    return plane_affine(x0, mu);
}

Place Place::plane_inf_y(const Poly& mu_u) {
    Place P;
    P.kind_ = Kind::PlaneInfY;
    P.mu_ = mu_u.monic();
    P.p_ = mu_u.modulus();
    return P;
}

Place Place::plane_inf_x(std::uint64_t p) {
    Place P;
    P.kind_ = Kind::PlaneInfX;
    P.p_ = p;
    return P;
}

int Place::degree() const {
    switch (kind_) {
        case Kind::HyperAffine:
        case Kind::PlaneAffine:
        case Kind::PlaneInfY:
            return std::max(mu_.degree(), 1);
        case Kind::HyperInert:
            return 2 * std::max(mu_.degree(), 1);
        case Kind::HyperInfEven:
            return sign_ == 0 ? 2 : 1;
        default:
            return 1;
    }
}

bool Place::at_infinity() const {
    return kind_ == Kind::HyperInfOdd || kind_ == Kind::HyperInfEven || kind_ == Kind::PlaneInfY ||
           kind_ == Kind::PlaneInfX;
}

std::pair<Fp, Fp> Place::coords() const {
    if (!is_rational() || at_infinity()) throw Error("Place: coords of a non-rational or infinite place");
    if (kind_ == Kind::HyperAffine) {
        Fp x = -mu_.coeff(0);
        Fp y = psi_.is_zero() ? Fp::zero(p_) : psi_.coeff(0);
        return {x, y};
    }
    return {x0_, -mu_.coeff(0)};
}

bool Place::operator==(const Place& o) const {
    return kind_ == o.kind_ && sign_ == o.sign_ && mu_ == o.mu_ && psi_ == o.psi_ &&
           (!x0_.valid() == !o.x0_.valid()) && (!x0_.valid() || x0_ == o.x0_);
}

bool Place::operator<(const Place& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (sign_ != o.sign_) return sign_ < o.sign_;
    std::uint64_t xa = x0_.valid() ? x0_.value() + 1 : 0;
    std::uint64_t xb = o.x0_.valid() ? o.x0_.value() + 1 : 0;
    if (xa != xb) return xa < xb;
    if (!(mu_ == o.mu_)) return mu_ < o.mu_;
    return psi_ < o.psi_;
}

std::string Place::str() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::HyperAffine:
            if (is_rational()) {
                auto [x, y] = coords();
                os << "(" << x.value() << "," << y.value() << ")";
            } else {
                os << "cl[" << mu_.str() << ";" << psi_.str() << "]";
            }
            break;
        case Kind::HyperInert:
            os << "inert[" << mu_.str() << "]";
            break;
        case Kind::HyperInfOdd:
            os << "inf";
            break;
        case Kind::HyperInfEven:
            os << (sign_ == 0 ? "inf_pair" : (sign_ > 0 ? "inf+" : "inf-"));
            break;
        case Kind::PlaneAffine:
            if (is_rational()) {
                auto [x, y] = coords();
                os << "(" << x.value() << "," << y.value() << ")";
            } else {
                os << "cl[x=" << x0_.value() << ";" << mu_.str("y") << "]";
            }
            break;
        case Kind::PlaneInfY:
            os << "linf[" << mu_.str("u") << "]";
            break;
        case Kind::PlaneInfX:
            os << "linf[x]";
            break;
    }
    return os.str();
}

// ---------- Divisor ----------

Divisor Divisor::single(CurvePtr X, const Place& P, int mult) {
    Divisor D(std::move(X));
    D.add(P, mult);
    return D;
}

int Divisor::coeff(const Place& P) const {
    auto it = a_.find(P);
    return it == a_.end() ? 0 : it->second;
}

int Divisor::degree() const {
    int d = 0;
    for (const auto& [P, n] : a_) d += n * P.degree();
    return d;
}

int Divisor::degree_plus() const {
    int d = 0;
    for (const auto& [P, n] : a_)
        if (n > 0) d += n * P.degree();
    return d;
}

bool Divisor::is_effective() const {
    for (const auto& [P, n] : a_)
        if (n < 0) return false;
    return true;
}

bool Divisor::all_rational() const {
    for (const auto& [P, n] : a_) {
        (void)n;
        if (!P.is_rational()) return false;
    }
    return true;
}

Divisor& Divisor::add(const Place& P, int mult) {
    if (mult == 0) return *this;
    if (X_ && a_.find(P) == a_.end()) {
        // cheap membership check so off-curve points fail early
        if (P.kind() == Place::Kind::HyperAffine) {
            Poly rem = (P.psi() * P.psi() - X_->f()) % P.mu();
            if (!rem.is_zero()) throw Error("Divisor: point is not on the curve: " + P.str());
        } else if (P.kind() == Place::Kind::PlaneAffine) {
            Poly fib = X_->q().eval_x(P.x0());
            if (!(fib % P.mu()).is_zero()) throw Error("Divisor: point is not on the curve: " + P.str());
        }
    }
    int& c = a_[P];
    c += mult;
    if (c == 0) a_.erase(P);
    return *this;
}

Divisor Divisor::operator+(const Divisor& o) const {
    if (X_ && o.X_ && X_ != o.X_) throw Error("Divisor: curve mismatch");
    Divisor r = *this;
    if (!r.X_) r.X_ = o.X_;
    for (const auto& [P, n] : o.a_) r.add(P, n);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + (o * -1); }

Divisor Divisor::operator*(int n) const {
    Divisor r(X_);
    if (n == 0) return r;
    for (const auto& [P, m] : a_) r.a_[P] = m * n;
    return r;
}

bool Divisor::operator==(const Divisor& o) const { return a_ == o.a_; }

bool Divisor::operator<(const Divisor& o) const { return key() < o.key(); }

std::string Divisor::str() const {
    if (a_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [P, n] : a_) {
        if (!first) os << " ";
        first = false;
        os << (n >= 0 ? "+" : "-") << std::abs(n) << "*" << P.str();
    }
    return os.str();
}

std::string Divisor::key() const {
    std::ostringstream os;
    for (const auto& [P, n] : a_) os << P.str() << "^" << n << ";";
    return os.str();
}

// ---------- FunctionElem ----------

FunctionElem::FunctionElem(CurvePtr X, BiPoly num, std::map<Poly, int> den_factors)
    : X_(std::move(X)), num_(std::move(num)), denf_(std::move(den_factors)) {
    std::uint64_t p = X_->modulus();
    // reduce the numerator modulo the curve equation
    if (X_->kind() == CurveKind::Hyperelliptic) {
        while (num_.deg_y() >= 2) {
            std::vector<Poly> yc(num_.ycoeffs());
            std::size_t top = yc.size() - 1;
            Poly a = yc[top];
            yc[top] = Poly(p);
            yc[top - 2] = yc[top - 2] + a * X_->f();
            num_ = BiPoly(p, std::move(yc));
        }
    } else if (num_.deg_y() >= X_->plane_degree()) {
        num_ = num_.mod_y(X_->q());
    }
    for (auto it = denf_.begin(); it != denf_.end();) {
        if (it->second == 0)
            it = denf_.erase(it);
        else
            ++it;
    }
    den_ = Poly::one(p);
    for (const auto& [factor, e] : denf_) {
        if (e < 0) throw InternalError("FunctionElem: negative denominator exponent");
        den_ = den_ * factor.pow(e);
    }
}

FunctionElem FunctionElem::one(CurvePtr X) {
    std::uint64_t p = X->modulus();
    return FunctionElem(std::move(X), BiPoly(p, {Poly::one(p)}), {});
}

FunctionElem FunctionElem::constant(CurvePtr X, const Fp& c) {
    std::uint64_t p = X->modulus();
    return FunctionElem(std::move(X), BiPoly(p, {Poly::constant(c)}), {});
}

FunctionElem FunctionElem::operator*(const FunctionElem& o) const {
    if (X_ != o.X_) throw Error("FunctionElem: curve mismatch");
    std::map<Poly, int> den = denf_;
    for (const auto& [f, e] : o.denf_) den[f] += e;
    return FunctionElem(X_, num_ * o.num_, std::move(den));
}

FunctionElem FunctionElem::operator+(const FunctionElem& o) const {
    if (X_ != o.X_) throw Error("FunctionElem: curve mismatch");
    std::map<Poly, int> den;
    for (const auto& [f, e] : denf_) den[f] = e;
    for (const auto& [f, e] : o.denf_) den[f] = std::max(den[f], e);
    std::uint64_t p = X_->modulus();
    Poly c1 = Poly::one(p), c2 = Poly::one(p);
    for (const auto& [f, e] : den) {
        auto i1 = denf_.find(f);
        auto i2 = o.denf_.find(f);
        int e1 = i1 == denf_.end() ? 0 : i1->second;
        int e2 = i2 == o.denf_.end() ? 0 : i2->second;
        c1 = c1 * f.pow(e - e1);
        c2 = c2 * f.pow(e - e2);
    }
    BiPoly n = num_ * BiPoly(p, {c1}) + o.num_ * BiPoly(p, {c2});
    return FunctionElem(X_, std::move(n), std::move(den));
}

FunctionElem FunctionElem::operator-(const FunctionElem& o) const {
    return *this + o.scaled(-Fp::one(X_->modulus()));
}

FunctionElem FunctionElem::scaled(const Fp& c) const { return FunctionElem(X_, num_ * c, denf_); }

std::string FunctionElem::str() const {
    std::ostringstream os;
    os << "(" << num_.str() << ")";
    if (den_.degree() > 0) os << "/(" << den_.str() << ")";
    return os.str();
}

// ---------- CurveModel ----------

const Poly& CurveModel::f() const {
    if (kind_ != CurveKind::Hyperelliptic) throw Error("CurveModel: not a hyperelliptic model");
    return f_;
}

const BiPoly& CurveModel::q() const {
    if (kind_ != CurveKind::SmoothPlane) throw Error("CurveModel: not a plane model");
    return q_;
}

int CurveModel::y_degree_bound() const {
    return kind_ == CurveKind::Hyperelliptic ? 1 : plane_deg_ - 1;
}

CurvePtr CurveModel::make_hyperelliptic(const Poly& f) {
    if (f.degree() < 3) throw Error("make_hyperelliptic: deg f must be at least 3");
    if (!is_squarefree(f)) throw Error("make_hyperelliptic: f is not squarefree");
    auto X = std::shared_ptr<CurveModel>(new CurveModel());
    X->kind_ = CurveKind::Hyperelliptic;
    X->p_ = f.modulus();
    X->f_ = f;
    X->odd_ = f.degree() % 2 == 1;
    X->genus_ = (f.degree() - 1) / 2;
    X->inf_rational_ = X->odd_ || f.lead().is_square();
    return X;
}

CurvePtr CurveModel::make_plane(const BiPoly& q) {
    std::uint64_t p = q.modulus();
    int d = q.total_degree();
    if (d < 3) throw Error("make_plane: total degree must be at least 3");
    if (q.deg_y() != d || q.ycoeff(d).degree() != 0)
        throw Error("make_plane: need deg_y q = total degree with a constant leading y-coefficient");
    BiPoly qn = q * q.ycoeff(d).coeff(0).inv();
    auto X = std::shared_ptr<CurveModel>(new CurveModel());
    X->kind_ = CurveKind::SmoothPlane;
    X->p_ = p;
    X->q_ = qn;
    X->plane_deg_ = d;
    X->genus_ = (d - 1) * (d - 2) / 2;
    X->q2_ = chart_y(qn, d);
    X->q3_ = chart_x(qn, d);
    // scan for rational singular points first (cheap, good error reports)
    for (const BiPoly* chart : {&X->q_, &X->q2_, &X->q3_}) {
        BiPoly cu = chart->dx(), cv = chart->dy();
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                Fp xa(static_cast<std::int64_t>(a), p), yb(static_cast<std::int64_t>(b), p);
                if (chart->eval(xa, yb).is_zero() && cu.eval(xa, yb).is_zero() && cv.eval(xa, yb).is_zero())
                    throw Error("make_plane: singular rational point at (" + std::to_string(a) + "," +
                                std::to_string(b) + ") in some chart");
            }
    }
    for (const BiPoly* chart : {&X->q_, &X->q2_, &X->q3_})
        if (!chart_smooth_over_closure(*chart))
            throw Error("make_plane: projective closure is singular over the algebraic closure");
    return X;
}

const BiPoly& CurveModel::chart2() const { return q2_; }
const BiPoly& CurveModel::chart3() const { return q3_; }

void CurveModel::enumerate() const {
    if (enumerated_) return;
    std::vector<Place> pts;
    std::vector<Place> infs;
    if (kind_ == CurveKind::Hyperelliptic) {
        for (std::uint64_t v = 0; v < p_; ++v) {
            Fp x(static_cast<std::int64_t>(v), p_);
            Fp fv = f_.eval(x);
            if (fv.is_zero()) {
                pts.push_back(Place::hyper_rational(x, Fp::zero(p_)));
            } else if (fv.is_square()) {
                Fp y = fv.sqrt();
                pts.push_back(Place::hyper_rational(x, y));
                pts.push_back(Place::hyper_rational(x, -y));
            }
        }
        if (odd_) {
            Place inf = Place::hyper_inf_odd(p_);
            pts.push_back(inf);
            infs.push_back(inf);
        } else if (inf_rational_) {
            Place ip = Place::hyper_inf_even(p_, 1), im = Place::hyper_inf_even(p_, -1);
            pts.push_back(ip);
            pts.push_back(im);
            infs.push_back(ip);
            infs.push_back(im);
        } else {
            infs.push_back(Place::hyper_inf_even(p_, 0));
        }
    } else {
        for (std::uint64_t v = 0; v < p_; ++v) {
            Fp x(static_cast<std::int64_t>(v), p_);
            Poly fib = q_.eval_x(x);
            for (const auto& [root, mult] : roots_in_field(fib)) {
                (void)mult;
                pts.push_back(Place::plane_rational(x, root));
            }
        }
        // line at infinity: roots of q2(u, 0), plus (1:0:0) when on the curve
        Poly r = q2_.ycoeff(0);
        for (const auto& [mu, mult] : factor_poly(r)) {
            (void)mult;
            Place P = Place::plane_inf_y(mu);
            infs.push_back(P);
            if (P.is_rational()) pts.push_back(P);
        }
        if (q3_.eval(Fp::zero(p_), Fp::zero(p_)).is_zero()) {
            Place P = Place::plane_inf_x(p_);
            infs.push_back(P);
            pts.push_back(P);
        }
    }
    std::sort(pts.begin(), pts.end());
    std::sort(infs.begin(), infs.end());
    rational_ = std::move(pts);
    inf_places_ = std::move(infs);
    enumerated_ = true;
}

const std::vector<Place>& CurveModel::rational_points() const {
    std::lock_guard<std::mutex> lock(cache_mutex);
    enumerate();
    return rational_;
}

const std::vector<Place>& CurveModel::infinity_places() const {
    std::lock_guard<std::mutex> lock(cache_mutex);
    enumerate();
    return inf_places_;
}

Place CurveModel::infinity_place() const {
    if (kind_ != CurveKind::Hyperelliptic || !odd_)
        throw Error("infinity_place: only odd-degree hyperelliptic models have a single infinite point");
    return Place::hyper_inf_odd(p_);
}

std::vector<Place> CurveModel::places_above_x(const Poly& mu_in) const {
    if (kind_ != CurveKind::Hyperelliptic) throw Error("places_above_x: hyperelliptic models only");
    Poly mu = mu_in.monic();
    Poly fmod = f_ % mu;
    if (fmod.is_zero()) return {Place::hyper_affine(mu, Poly(p_))};
    if (mu.degree() == 1) {
        Fp x0 = -mu.coeff(0);
        Fp fv = f_.eval(x0);
        if (!fv.is_square()) return {Place::hyper_inert(x0)};
        Fp y0 = fv.sqrt();
        return {Place::hyper_rational(x0, y0), Place::hyper_rational(x0, -y0)};
    }
    auto ctx = ExtCtx::make(mu);
    ExtEl phi(ctx, fmod);
    if (!phi.is_square())
        throw Error("places_above_x: inert fiber above " + mu.str() + "; not representable over F_p clusters");
    ExtEl psi = phi.sqrt();
    return {Place::hyper_affine(mu, psi.rep()), Place::hyper_affine(mu, (-psi).rep())};
}

std::vector<Place> CurveModel::plane_fiber(const Fp& x0) const {
    if (kind_ != CurveKind::SmoothPlane) throw Error("plane_fiber: plane models only");
    Poly fib = q_.eval_x(x0);
    std::vector<Place> out;
    for (const auto& [mu, mult] : factor_poly(fib)) {
        (void)mult;
        out.push_back(Place::plane_affine(x0, mu));
    }
    return out;
}

Expansion<Fp> CurveModel::expand_rational(const Place& P, int prec_end) const {
    if (!P.is_rational()) throw InternalError("expand_rational: place is not rational");
    Fp alpha = Fp::zero(p_);
    switch (P.kind()) {
        case Place::Kind::HyperAffine:
            alpha = -P.mu().coeff(0);
            break;
        case Place::Kind::PlaneAffine:
            alpha = -P.mu().coeff(0);  // the rational y-value
            break;
        case Place::Kind::PlaneInfY:
            alpha = -P.mu().coeff(0);
            break;
        case Place::Kind::HyperInfEven:
            alpha = f_.lead().sqrt();
            if (P.sign() < 0) alpha = -alpha;
            break;
        default:
            break;
    }
    auto embed = [](const Poly& psi, const Fp& at) { return psi.eval(at); };
    return expand_generic<Fp>(*this, P, prec_end, alpha, embed);
}

Expansion<ExtEl> CurveModel::expand_cluster(const Place& P, int prec_end) const {
    std::shared_ptr<const ExtCtx> ctx;
    ExtEl start;
    switch (P.kind()) {
        case Place::Kind::HyperAffine:
        case Place::Kind::PlaneAffine:
        case Place::Kind::PlaneInfY:
            ctx = ExtCtx::make(P.mu());
            start = ExtEl::gen(ctx);
            break;
        case Place::Kind::HyperInert: {
            Fp x0 = -P.mu().coeff(0);
            Poly m = Poly(p_, {0, 0, 1}) - Poly::constant(f_.eval(x0));
            ctx = ExtCtx::make(m);
            start = ExtEl::gen(ctx);
            break;
        }
        case Place::Kind::HyperInfEven: {
            if (P.sign() != 0) {
                ctx = ExtCtx::make(Poly(p_, {1, 1}));  // placeholder degree-1 context
                start = ExtEl::embed(ctx, P.sign() > 0 ? f_.lead().sqrt() : -f_.lead().sqrt());
            } else {
                Poly m = Poly(p_, {0, 0, 1}) - Poly::constant(f_.lead());
                ctx = ExtCtx::make(m);
                start = ExtEl::gen(ctx);
            }
            break;
        }
        case Place::Kind::HyperInfOdd:
        case Place::Kind::PlaneInfX: {
            ctx = ExtCtx::make(Poly(p_, {1, 1}));
            start = ExtEl::zero(ctx);
            break;
        }
    }
    auto embed = [](const Poly& psi, const ExtEl& at) { return eval_ext(psi, at); };
    return expand_generic<ExtEl>(*this, P, prec_end, start, embed);
}

Divisor CurveModel::canonical_divisor() const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (canonical_cache_) return *canonical_cache_;
    }
    Divisor K(shared_from_this());
    if (kind_ == CurveKind::Hyperelliptic) {
        if (odd_) {
            K.add(Place::hyper_inf_odd(p_), 2 * genus_ - 2);
        } else {
            if (!inf_rational_)
                throw Error("canonical_divisor: even model with non-square leading coefficient has "
                            "non-rational infinite points");
            K.add(Place::hyper_inf_even(p_, 1), genus_ - 1);
            K.add(Place::hyper_inf_even(p_, -1), genus_ - 1);
        }
    } else {
        int d = plane_deg_;
        if (d == 3) {
            // K ~ 0
        } else {
            bool found = false;
            for (std::uint64_t a = 0; a < p_ && !found; ++a) {
                for (std::uint64_t b = 0; b < p_ && !found; ++b) {
                    Fp alpha(static_cast<std::int64_t>(a), p_), beta(static_cast<std::int64_t>(b), p_);
                    // r(x) = q(x, alpha x + beta)
                    Poly line(p_, {0, 1});
                    line = line * alpha + Poly::constant(beta);
                    Poly r(p_);
                    for (int j = q_.deg_y(); j >= 0; --j) r = r * line + q_.ycoeff(j);
                    if (r.degree() != d) continue;
                    auto roots = roots_in_field(r);
                    if (static_cast<int>(roots.size()) != d) continue;
                    bool simple = true;
                    for (const auto& [root, mult] : roots)
                        if (mult != 1) simple = false;
                    if (!simple) continue;
                    for (const auto& [root, mult] : roots) {
                        (void)mult;
                        K.add(Place::plane_rational(root, line.eval(root)), d - 3);
                    }
                    found = true;
                }
            }
            if (!found)
                throw Error("canonical_divisor: no fully split transversal line found; use a larger p");
        }
    }
    if (K.degree() != 2 * genus_ - 2) throw InternalError("canonical_divisor: degree mismatch");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        canonical_cache_ = K;
    }
    return K;
}

Divisor CurveModel::g12_divisor() const {
    if (kind_ != CurveKind::Hyperelliptic)
        throw Error("g12_divisor: needs a hyperelliptic-form model");
    Divisor D(shared_from_this());
    if (odd_) {
        D.add(Place::hyper_inf_odd(p_), 2);
        return D;
    }
    if (inf_rational_) {
        D.add(Place::hyper_inf_even(p_, 1), 1);
        D.add(Place::hyper_inf_even(p_, -1), 1);
        return D;
    }
    for (std::uint64_t v = 0; v < p_; ++v) {
        Fp x(static_cast<std::int64_t>(v), p_);
        Fp fv = f_.eval(x);
        if (fv.is_zero() || fv.is_square()) return g12_divisor_at(x);
    }
    throw Error("g12_divisor: no rational fiber found");
}

Divisor CurveModel::g12_divisor_at(const Fp& x0) const {
    if (kind_ != CurveKind::Hyperelliptic)
        throw Error("g12_divisor_at: needs a hyperelliptic-form model");
    Fp fv = f_.eval(x0);
    Divisor D(shared_from_this());
    if (fv.is_zero()) {
        D.add(Place::hyper_rational(x0, Fp::zero(p_)), 2);
        return D;
    }
    if (!fv.is_square()) throw Error("g12_divisor_at: fiber is not rational");
    Fp y0 = fv.sqrt();
    D.add(Place::hyper_rational(x0, y0), 1);
    D.add(Place::hyper_rational(x0, -y0), 1);
    return D;
}

Divisor CurveModel::random_effective(int degree, Rng& rng) const {
    if (degree < 0) throw Error("random_effective: negative degree");
    const std::vector<Place>& pts = rational_points();
    if (pts.empty()) throw Error("random_effective: curve has no rational points");
    Divisor D(shared_from_this());
    for (int i = 0; i < degree; ++i) D.add(pts[rng.uniform(pts.size())], 1);
    return D;
}

Divisor CurveModel::random_signed(int degree, int extra, Rng& rng) const {
    const std::vector<Place>& pts = rational_points();
    if (pts.empty()) throw Error("random_signed: curve has no rational points");
    Divisor D(shared_from_this());
    for (int i = 0; i < degree + extra; ++i) D.add(pts[rng.uniform(pts.size())], 1);
    for (int i = 0; i < extra; ++i) D.add(pts[rng.uniform(pts.size())], -1);
    return D;
}

std::string CurveModel::str() const {
    std::ostringstream os;
    if (kind_ == CurveKind::Hyperelliptic)
        os << "y^2 = " << f_.str() << " over F_" << p_;
    else
        os << q_.str() << " = 0 over F_" << p_;
    os << " (genus " << genus_ << ")";
    return os.str();
}

// ---------- valuation / principal divisors ----------

namespace {

template <class E>
int valuation_at(const CurveModel& X, const FunctionElem& h, const Place& P,
                 Expansion<E> (CurveModel::*expander)(const Place&, int) const) {
    int d = X.kind() == CurveKind::Hyperelliptic ? 2 : X.plane_degree();
    int cap = 4 * (h.num().deg_x() + h.num().deg_y() + h.den().degree() + X.genus() + d + 4) * d;
    int prec = 16;
    while (true) {
        Expansion<E> e = (X.*expander)(P, prec);
        Series<E> num = eval_bipoly_series(h.num(), e.x, e.y);
        Series<E> den = eval_poly_series(h.den(), e.x);
        if (!num.known_zero() && !den.known_zero()) return num.valuation() - den.valuation();
        if (prec > cap) {
            if (den.known_zero()) throw InternalError("valuation: denominator series vanished");
            throw InternalError("valuation: numerator vanishes beyond the norm bound");
        }
        prec *= 2;
    }
}

}  // namespace

int valuation(const FunctionElem& h, const Place& P) {
    if (h.is_zero()) throw Error("valuation: zero function");
    const CurveModel& X = *h.curve();
    if (P.is_rational()) return valuation_at<Fp>(X, h, P, &CurveModel::expand_rational);
    return valuation_at<ExtEl>(X, h, P, &CurveModel::expand_cluster);
}

Divisor divisor_of_internal(const FunctionElem& h, bool allow_clusters) {
    if (h.is_zero()) throw Error("divisor_of: zero function");
    CurvePtr X = h.curve();
    std::uint64_t p = X->modulus();
    std::vector<Place> candidates = X->infinity_places();
    std::map<Poly, bool> xclusters;
    for (const auto& [factor, e] : h.den_factors()) {
        (void)e;
        xclusters[factor] = true;
    }
    if (X->kind() == CurveKind::Hyperelliptic) {
        Poly a = h.num().ycoeff(0), b = h.num().ycoeff(1);
        Poly norm = a * a - b * b * X->f();
        if (norm.is_zero()) throw InternalError("divisor_of: vanishing norm for nonzero function");
        for (const auto& [mu, e] : factor_poly(norm)) {
            (void)e;
            xclusters[mu] = true;
        }
        for (const auto& [mu, dummy] : xclusters) {
            (void)dummy;
            for (const Place& P : X->places_above_x(mu)) candidates.push_back(P);
        }
    } else {
        Poly res = resultant_y(X->q(), h.num());
        if (res.is_zero()) throw InternalError("divisor_of: resultant vanished for nonzero function");
        for (const auto& [mu, e] : factor_poly(res)) {
            (void)e;
            xclusters[mu] = true;
        }
        for (const auto& [mu, dummy] : xclusters) {
            (void)dummy;
            if (mu.degree() != 1)
                throw Error("divisor_of: zeros or poles above the non-rational x-cluster " + mu.str() +
                            "; choose a larger field");
            Fp x0 = -mu.coeff(0);
            for (const Place& P : X->plane_fiber(x0)) candidates.push_back(P);
        }
    }
    Divisor D(X);
    for (const Place& P : candidates) {
        int v = valuation(h, P);
        if (v != 0) D.add(P, v);
    }
    if (D.degree() != 0)
        throw InternalError("divisor_of: principal divisor has nonzero degree " +
                            std::to_string(D.degree()));
    if (!allow_clusters && !D.all_rational())
        throw Error("divisor_of: some zero or pole is a conjugate cluster; choose a field where it splits");
    (void)p;
    return D;
}

Divisor divisor_of(const FunctionElem& h) { return divisor_of_internal(h, false); }

SeriesExpansion series_expand(const CurvePtr& X, const Place& P, int precision) {
    if (precision < 1) throw Error("series_expand: precision must be at least 1");
    if (!P.is_rational() || P.at_infinity())
        throw Error("series_expand: expects a rational affine point");
    // reject singular input early: both partials vanishing
    if (X->kind() == CurveKind::SmoothPlane) {
        auto [x0, y0] = P.coords();
        if (X->q().dx().eval(x0, y0).is_zero() && X->q().dy().eval(x0, y0).is_zero())
            throw Error("series_expand: singular point");
    }
    Expansion<Fp> e = X->expand_rational(P, precision + 1);
    // the local parameter reads back as exactly alpha + t; the other
    // coordinate is the dependent one
    auto is_affine_param = [&](const Series<Fp>& s) {
        if (s.known_zero()) return false;
        if (s.ord() < 0 || s.ord() > 1 || s.end() < 2) return false;
        if (!(s.coeff(1) == Fp::one(X->modulus()))) return false;
        for (int k = 2; k < s.end(); ++k)
            if (!s.coeff(k).is_zero()) return false;
        return true;
    };
    bool swapped = !is_affine_param(e.x);
    const Series<Fp>* dep = swapped ? &e.x : &e.y;
    SeriesExpansion out;
    out.swapped = swapped;
    for (int k = 0; k < precision; ++k)
        out.coeffs.push_back(k >= dep->end() ? Fp::zero(X->modulus())
                                             : (k < dep->ord() ? Fp::zero(X->modulus()) : dep->coeff(k)));
    return out;
}

}  // namespace scrollkit
