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

#include "scrollkit/cover.hpp"

#include <algorithm>

#include "scrollkit/rr.hpp"

namespace scrollkit {

namespace {

Poly substitute_x_squared(const Poly& g) {
    std::uint64_t p = g.modulus();
    if (g.is_zero()) return Poly(p);
    std::vector<Fp> c(static_cast<std::size_t>(2 * g.degree()) + 1, Fp::zero(p));
    for (int i = 0; i <= g.degree(); ++i) c[static_cast<std::size_t>(2 * i)] = g.coeff(i);
    return Poly(p, std::move(c));
}

std::uint64_t cover_fingerprint(const Poly& g) {
    std::uint64_t h = 0x2545f4914f6cdd1dull ^ g.modulus();
    for (const Fp& c : g.coeffs()) h = (h ^ c.value()) * 0x100000001b3ull;
    return h;
}

}  // namespace

DoubleCover make_cover(const Poly& g) {
    std::uint64_t p = g.modulus();
    if (g.degree() < 3 || g.degree() % 2 == 0)
        throw Error("make_cover: g must have odd degree at least 3");
    if (!is_squarefree(g)) throw Error("make_cover: g is not squarefree");
    Fp g0 = g.eval(Fp::zero(p));
    if (g0.is_zero()) throw Error("make_cover: g(0) = 0 makes g(x^2) non-squarefree");
    if (!g0.is_square())
        throw Error("make_cover: g(0) must be a square so the branch points are rational");
    if (!g.lead().is_square())
        throw Error("make_cover: lead(g) must be a square so the infinite points of C are rational");
    DoubleCover cov;
    cov.g = g;
    cov.X = CurveModel::make_hyperelliptic(g);
    cov.C = CurveModel::make_hyperelliptic(substitute_x_squared(g));
    // Hurwitz bookkeeping for the two affine ramification points
    int gC = cov.C->genus(), gX = cov.X->genus();
    if (2 * gC - 2 != 2 * (2 * gX - 2) + 2) throw InternalError("make_cover: Hurwitz identity failed");
    return cov;
}

Divisor pullback(const DoubleCover& cov, const Divisor& on_X) {
    if (on_X.curve() != cov.X) throw Error("pullback: divisor is not on the base curve");
    std::uint64_t p = cov.g.modulus();
    Divisor out(cov.C);
    for (const auto& [P, n] : on_X.atoms()) {
        switch (P.kind()) {
            case Place::Kind::HyperInfOdd:
                out.add(Place::hyper_inf_even(p, 1), n);
                out.add(Place::hyper_inf_even(p, -1), n);
                break;
            case Place::Kind::HyperAffine: {
                if (P.is_rational()) {
                    auto [u0, v0] = P.coords();
                    if (u0.is_zero()) {
                        out.add(Place::hyper_rational(Fp::zero(p), v0), 2 * n);
                    } else if (u0.is_square()) {
                        Fp s = u0.sqrt();
                        out.add(Place::hyper_rational(s, v0), n);
                        out.add(Place::hyper_rational(-s, v0), n);
                    } else {
                        Poly mu = Poly(p, {0, 0, 1}) - Poly::constant(u0);
                        out.add(Place::hyper_affine(mu, Poly::constant(v0)), n);
                    }
                } else {
                    // cluster: substitute u = x^2 into the cluster data
                    Poly M = substitute_x_squared(P.mu());
                    Poly psi2 = substitute_x_squared(P.psi());
                    for (const auto& [m, e] : factor_poly(M)) out.add(Place::hyper_affine(m, psi2 % m), n * e);
                }
                break;
            }
            default:
                throw Error("pullback: unsupported place kind " + P.str());
        }
    }
    if (out.degree() != 2 * on_X.degree()) throw InternalError("pullback: degree bookkeeping");
    return out;
}

Divisor pushforward(const DoubleCover& cov, const Divisor& on_C) {
    if (on_C.curve() != cov.C) throw Error("pushforward: divisor is not on the covering curve");
    std::uint64_t p = cov.g.modulus();
    Divisor out(cov.X);
    for (const auto& [P, n] : on_C.atoms()) {
        switch (P.kind()) {
            case Place::Kind::HyperInfEven:
                if (P.sign() == 0) throw Error("pushforward: conjugate infinite pair unsupported");
                out.add(Place::hyper_inf_odd(p), n);
                break;
            case Place::Kind::HyperAffine: {
                if (!P.is_rational()) throw Error("pushforward: cluster images not implemented");
                auto [x0, y0] = P.coords();
                out.add(Place::hyper_rational(x0 * x0, y0), n);
                break;
            }
            default:
                throw Error("pushforward: unsupported place kind " + P.str());
        }
    }
    return out;
}

CoverReport branch_and_ramification(const DoubleCover& cov) {
    std::uint64_t p = cov.g.modulus();
    Fp s0 = cov.g.eval(Fp::zero(p)).sqrt();
    CoverReport rep;
    rep.R = Divisor(cov.C);
    rep.R.add(Place::hyper_rational(Fp::zero(p), s0), 1);
    rep.R.add(Place::hyper_rational(Fp::zero(p), -s0), 1);
    rep.B = Divisor(cov.X);
    rep.B.add(Place::hyper_rational(Fp::zero(p), s0), 1);
    rep.B.add(Place::hyper_rational(Fp::zero(p), -s0), 1);
    if (!(pushforward(cov, rep.R) == rep.B))
        throw InternalError("branch_and_ramification: pushforward of R is not B");
    // adjunction on C: K_C ~ gamma^* K_X + R
    Divisor KC = cov.C->canonical_divisor();
    Divisor KX = cov.X->canonical_divisor();
    if (!is_equivalent(KC, pullback(cov, KX) + rep.R))
        throw InternalError("branch_and_ramification: K_C is not gamma^* K_X + R");
    return rep;
}

Divisor pushforward_twist(const DoubleCover& cov, const CoverReport& rep) {
    CurvePtr X = cov.X;
    JacClass target = class_of(rep.B * -1);
    std::vector<JacClass> halves = square_roots(target);
    if (halves.empty()) throw InternalError("pushforward_twist: -[B] has no halves");
    // candidates E_i of degree -1
    std::vector<Divisor> cands;
    for (const JacClass& xi : halves) {
        Divisor E = divisor_from_class(xi);
        E.add(X->infinity_place(), -1);
        cands.push_back(E);
    }
    // battery: for each candidate a targeted representative of -[E_i], then
    // random sweeps until a unique candidate passes
    std::vector<Divisor> battery;
    for (const JacClass& xi : halves) {
        Divisor m = divisor_from_class(jac_neg(xi));
        m.add(X->infinity_place(), 1);
        battery.push_back(m);
    }
    Rng rng(cover_fingerprint(cov.g));
    int gX = X->genus();
    auto passes = [&](const Divisor& E, const Divisor& m) {
        Divisor gm = pullback(cov, m);
        return h0(gm) == h0(m) + h0(m + E) &&
               h1(gm) == h1(m) + h1(m + E);
    };
    for (int round = 0; round < 6; ++round) {
        std::vector<std::size_t> alive;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            bool ok = true;
            for (const Divisor& m : battery)
                if (!passes(cands[i], m)) {
                    ok = false;
                    break;
                }
            if (ok) alive.push_back(i);
        }
        if (alive.size() == 1) {
            Divisor E = cands[alive[0]];
            if (!is_equivalent(E * -2, rep.B))
                throw InternalError("pushforward_twist: -2E is not the branch class");
            return E;
        }
        if (alive.empty()) throw InternalError("pushforward_twist: no candidate passed the battery");
        // extend the battery and retry
        for (int extra = 0; extra < 4; ++extra) {
            int deg = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(2 * gX + 3)));
            battery.push_back(X->random_signed(deg, 1, rng));
        }
    }
    throw InternalError("pushforward_twist: battery failed to separate the candidates");
}

bool verify_segre(const DoubleCover& cov, const Divisor& E, int battery, Rng rng) {
    CurvePtr X = cov.X;
    int gX = X->genus(), gC = cov.C->genus();
    for (int t = 0; t < battery; ++t) {
        Rng tr = rng.fork(static_cast<std::uint64_t>(t));
        int deg = static_cast<int>(tr.uniform(static_cast<std::uint64_t>(2 * gX + 3)));
        Divisor m = X->random_signed(deg, static_cast<int>(tr.uniform(2)), tr);
        Divisor gm = pullback(cov, m);
        if (h0(gm) != h0(m) + h0(m + E)) return false;
        if (h1(gm) != h1(m) + h1(m + E)) return false;
    }
    // canonical configuration: deg(K - E) + 1 must be the genus of C
    Divisor b = X->canonical_divisor() - E;
    if (b.degree() + 1 != gC) return false;
    if (h1(b) + h1(X->canonical_divisor()) != 1) return false;
    return true;
}

bool involution_genus_check(const DoubleCover& cov) {
    int pi = cov.C->genus(), gX = cov.X->genus();
    if (!(2 * gX == pi - 1 || 2 * gX == pi || 2 * gX == pi + 1))
        throw InternalError("involution_genus_check: genus pair outside the admissible set");
    return true;
}

bool h1_diagram_check(const DoubleCover& cov) {
    std::uint64_t p = cov.g.modulus();
    Divisor pi12 = cov.C->g12_divisor();  // the two infinite points of C
    // a split fiber of the base pencil
    for (std::uint64_t v = 0; v < p; ++v) {
        Fp u0(static_cast<std::int64_t>(v), p);
        Fp gu = cov.g.eval(u0);
        if (!gu.is_zero() && !gu.is_square()) continue;
        Divisor fib = cov.X->g12_divisor_at(u0);
        Divisor lifted = pullback(cov, fib);
        if (lifted.degree() != 4) return false;
        if (!is_equivalent(lifted, pi12 * 2)) return false;
        if (v > 3) break;  // a few fibers suffice, including the ramified u = 0
    }
    // the fiber at infinity of the base
    Divisor inf_fib = cov.X->g12_divisor();
    if (!is_equivalent(pullback(cov, inf_fib), pi12 * 2)) return false;
    return true;
}

ProjectionState projection_start(const DoubleCover& cov) {
    return ProjectionState{cov, cov.C->canonical_divisor()};
}

void twist(ProjectionState& st, const Divisor& m_on_X) { st.a = st.a + pullback(st.cov, m_on_X); }

void project(ProjectionState& st, const Place& x_on_C) {
    st.a = st.a - Divisor::single(st.cov.C, x_on_C, 1);
}

void unproject(ProjectionState& st, const Place& x_on_C) {
    st.a = st.a + Divisor::single(st.cov.C, x_on_C, 1);
}

StateReport report(const ProjectionState& st) { return StateReport{h0(st.a), h1(st.a)}; }

}  // namespace scrollkit
