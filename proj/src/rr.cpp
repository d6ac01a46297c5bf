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

#include "scrollkit/rr.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "scrollkit/matrix.hpp"

namespace scrollkit {

namespace {

// ---------- cached monomial expansions per place ----------

template <class E>
struct PlaceTable {
    int bound = -1;
    int ybound = -1;
    int end = 0;  // guaranteed window end of every monomial series
    Expansion<E> exp{Series<E>(E(), 0, {}), Series<E>(E(), 0, {})};
    std::vector<Series<E>> mono;  // (bound+1) * (ybound+1), row-major in i
};

template <class E>
Expansion<E> stable_expand(const CurveModel& X, const Place& P, int min_end);

template <>
Expansion<Fp> stable_expand(const CurveModel& X, const Place& P, int min_end) {
    int w = std::max(min_end, 4);
    for (int tries = 0; tries < 12; ++tries) {
        Expansion<Fp> e = X.expand_rational(P, w);
        if (!e.x.known_zero() && !e.y.known_zero() && e.x.end() >= min_end && e.y.end() >= min_end)
            return e;
        w *= 2;
    }
    throw InternalError("stable_expand: coordinate series degenerate");
}

template <>
Expansion<ExtEl> stable_expand(const CurveModel& X, const Place& P, int min_end) {
    int w = std::max(min_end, 4);
    for (int tries = 0; tries < 12; ++tries) {
        Expansion<ExtEl> e = X.expand_cluster(P, w);
        if (!e.x.known_zero() && !e.y.known_zero() && e.x.end() >= min_end && e.y.end() >= min_end)
            return e;
        w *= 2;
    }
    throw InternalError("stable_expand: coordinate series degenerate");
}

template <class E>
std::shared_ptr<const PlaceTable<E>> place_table(const CurveModel& X, const Place& P, int bound,
                                                 int ybound, int need_end) {
    std::string key = (std::is_same_v<E, Fp> ? std::string("fp|") : std::string("ext|")) + P.str();
    {
        std::lock_guard<std::mutex> lock(X.cache_mutex);
        auto it = X.aux_cache.find(key);
        if (it != X.aux_cache.end()) {
            auto tbl = std::static_pointer_cast<const PlaceTable<E>>(it->second);
            if (tbl->bound >= bound && tbl->ybound >= ybound && tbl->end >= need_end) return tbl;
        }
    }
    int old_bound = -1, old_end = 0;
    {
        std::lock_guard<std::mutex> lock(X.cache_mutex);
        auto it = X.aux_cache.find(key);
        if (it != X.aux_cache.end()) {
            auto old = std::static_pointer_cast<const PlaceTable<E>>(it->second);
            old_bound = old->bound;
            old_end = old->end;
        }
    }
    auto tbl = std::make_shared<PlaceTable<E>>();
    tbl->bound = std::max({bound, old_bound, 4});
    tbl->ybound = ybound;
    tbl->end = std::max({need_end, old_end, 8});
    // probe orders first with a small window
    Expansion<E> probe = stable_expand<E>(X, P, 6);
    int ox = probe.x.valuation(), oy = probe.y.valuation();
    int slack = tbl->bound * std::max(0, -ox) + tbl->ybound * std::max(0, -oy) + 8;
    tbl->exp = stable_expand<E>(X, P, tbl->end + slack);
    std::vector<Series<E>> xp, yp;
    const E z = zero_like(tbl->exp.x.zero_element());
    Series<E> one = Series<E>::constant(one_like(z), tbl->end + slack);
    xp.push_back(one);
    for (int i = 1; i <= tbl->bound; ++i) xp.push_back(xp.back() * tbl->exp.x);
    yp.push_back(one);
    for (int j = 1; j <= tbl->ybound; ++j) yp.push_back(yp.back() * tbl->exp.y);
    tbl->mono.reserve(static_cast<std::size_t>(tbl->bound + 1) * (tbl->ybound + 1));
    for (int j = 0; j <= tbl->ybound; ++j)
        for (int i = 0; i <= tbl->bound; ++i) {
            Series<E> m = xp[static_cast<std::size_t>(i)] * yp[static_cast<std::size_t>(j)];
            if (m.end() < tbl->end) throw InternalError("place_table: monomial window too small");
            tbl->mono.push_back(m.truncated(tbl->end));
        }
    {
        std::lock_guard<std::mutex> lock(X.cache_mutex);
        X.aux_cache[key] = tbl;
    }
    return tbl;
}

// ---------- the solver ----------

struct RawResult {
    int dim = 0;
    std::vector<FunctionElem> basis;
};

struct RowSink {
    std::vector<std::vector<std::uint64_t>> rows;
    std::size_t cols = 0;
    std::uint64_t p = 0;
};

template <class E>
void emit_place_rows(const CurveModel& X, const Place& P, int n_P, const Poly& den, int bound,
                     int ybound, RowSink& sink) {
    // monomial valuations at the single infinite point of an odd model are
    // pairwise distinct, so the conditions degenerate to vanishing unknowns
    if (P.kind() == Place::Kind::HyperInfOdd) {
        int g = X.genus();
        int vden = -2 * den.degree();
        int lo_req = vden - n_P;
        for (int j = 0; j <= ybound; ++j)
            for (int i = 0; i <= bound; ++i) {
                int v = -2 * i - (2 * g + 1) * j;
                if (v < lo_req) {
                    std::vector<std::uint64_t> row(sink.cols, 0);
                    row[static_cast<std::size_t>(j) * (bound + 1) + static_cast<std::size_t>(i)] = 1;
                    sink.rows.push_back(std::move(row));
                }
            }
        return;
    }
    int need = std::max(8, 4 * (n_P > 0 ? n_P : -n_P) + 8);
    std::shared_ptr<const PlaceTable<E>> tbl;
    int vden = 0;
    while (true) {
        tbl = place_table<E>(X, P, bound, ybound, need);
        Series<E> dens = eval_poly_series(den, tbl->exp.x);
        if (!dens.known_zero()) {
            vden = dens.valuation();
            int lo_req = vden - n_P;
            if (lo_req <= tbl->end - 2) break;
            need = lo_req + 4;
        } else {
            need = dens.end() * 2 + 8;
        }
        if (need > 4096) throw InternalError("emit_place_rows: runaway precision request");
    }
    int lo_req = vden - n_P;
    auto mono_at = [&](int i, int j) -> const Series<E>& {
        return tbl->mono[static_cast<std::size_t>(j) * (tbl->bound + 1) + static_cast<std::size_t>(i)];
    };
    int base = lo_req;
    for (int j = 0; j <= ybound; ++j)
        for (int i = 0; i <= bound; ++i)
            if (!mono_at(i, j).known_zero()) base = std::min(base, mono_at(i, j).valuation());
    if (lo_req <= base) return;
    int rdeg = P.degree();
    const E z = zero_like(tbl->exp.x.zero_element());
    for (int k = base; k < lo_req; ++k) {
        std::vector<std::vector<std::uint64_t>> block(static_cast<std::size_t>(rdeg),
                                                      std::vector<std::uint64_t>(sink.cols, 0));
        for (int j = 0; j <= ybound; ++j)
            for (int i = 0; i <= bound; ++i) {
                const Series<E>& m = mono_at(i, j);
                E coeff = (m.known_zero() || k < m.ord()) ? z : m.coeff(k);
                if (coeff.is_zero()) continue;
                std::size_t c = static_cast<std::size_t>(j) * (bound + 1) + static_cast<std::size_t>(i);
                if constexpr (std::is_same_v<E, Fp>) {
                    block[0][c] = coeff.value();
                } else {
                    std::vector<Fp> crd = coeff.coords();
                    for (int r = 0; r < rdeg; ++r)
                        block[static_cast<std::size_t>(r)][c] = crd[static_cast<std::size_t>(r)].value();
                }
            }
        for (auto& row : block) sink.rows.push_back(std::move(row));
    }
}

RawResult raw_solve(const Divisor& D, int mult, bool want_basis) {
    CurvePtr X = D.curve();
    if (!X) throw Error("rr: divisor without a curve");
    std::uint64_t p = X->modulus();
    int g = X->genus();
    RawResult out;
    if (D.degree() < 0) return out;

    // denominator from the positive part, one factor per affine x-cluster
    std::map<Poly, int> den_factors;
    for (const auto& [P, n] : D.atoms()) {
        if (n <= 0 || P.at_infinity()) continue;
        Poly mu(p);
        if (P.kind() == Place::Kind::HyperAffine)
            mu = P.mu();
        else
            mu = Poly(p, {0, 1}) - Poly::constant(P.x0());
        int& e = den_factors[mu];
        e = std::max(e, n);
    }
    Poly den = Poly::one(p);
    int den_deg = 0;
    for (const auto& [muf, e] : den_factors) {
        den = den * muf.pow(e);
        den_deg += muf.degree() * e;
    }
    int ybound = X->y_degree_bound();
    int bound = den_deg + D.degree_plus() + 2 * g + 4;
    bound *= mult;

    // constraint places: divisor atoms, completed fibers above the
    // denominator support, and everything at infinity
    std::set<Place> places;
    for (const auto& [P, n] : D.atoms()) {
        (void)n;
        places.insert(P);
    }
    for (const auto& [muf, e] : den_factors) {
        (void)e;
        if (X->kind() == CurveKind::Hyperelliptic) {
            for (const Place& P : X->places_above_x(muf)) places.insert(P);
        } else {
            Fp x0 = -muf.coeff(0);
            for (const Place& P : X->plane_fiber(x0)) places.insert(P);
        }
    }
    for (const Place& P : X->infinity_places()) places.insert(P);

    RowSink sink;
    sink.cols = static_cast<std::size_t>(bound + 1) * (ybound + 1);
    sink.p = p;
    for (const Place& P : places) {
        int n_P = D.coeff(P);
        if (P.is_rational())
            emit_place_rows<Fp>(*X, P, n_P, den, bound, ybound, sink);
        else
            emit_place_rows<ExtEl>(*X, P, n_P, den, bound, ybound, sink);
    }

    Matrix M(sink.rows.size(), sink.cols, p);
    for (std::size_t r = 0; r < sink.rows.size(); ++r)
        for (std::size_t c = 0; c < sink.cols; ++c) M.at(r, c) = sink.rows[r][c];
    RankNullspace rn = rank_and_nullspace(M);
    out.dim = static_cast<int>(rn.nullspace.size());
    if (want_basis) {
        for (const auto& vec : rn.nullspace) {
            std::vector<Poly> yc;
            for (int j = 0; j <= ybound; ++j) {
                std::vector<Fp> c(vec.begin() + static_cast<std::ptrdiff_t>(j) * (bound + 1),
                                  vec.begin() + static_cast<std::ptrdiff_t>(j + 1) * (bound + 1));
                yc.emplace_back(p, std::move(c));
            }
            out.basis.emplace_back(X, BiPoly(p, std::move(yc)), den_factors);
        }
    }
    return out;
}

std::string basis_key(const Divisor& D) { return "rr|" + D.key(); }

}  // namespace

std::shared_ptr<const RRBasis> rr_space(const Divisor& D) {
    CurvePtr X = D.curve();
    if (!X) throw Error("rr_space: divisor without a curve");
    std::string key = basis_key(D);
    {
        std::lock_guard<std::mutex> lock(X->cache_mutex);
        auto it = X->aux_cache.find(key);
        if (it != X->aux_cache.end()) return std::static_pointer_cast<const RRBasis>(it->second);
    }
    int g = X->genus();
    Divisor K = X->canonical_divisor();
    Divisor KD = K - D;
    for (int mult = 1; mult <= 4; mult *= 2) {
        RawResult rd = raw_solve(D, mult, true);
        RawResult rk = raw_solve(KD, mult, false);
        if (rd.dim - rk.dim == D.degree() - g + 1) {
            auto out = std::make_shared<RRBasis>();
            out->D = D;
            out->basis = std::move(rd.basis);
            std::lock_guard<std::mutex> lock(X->cache_mutex);
            X->aux_cache[key] = out;
            X->h0_cache[D.key()] = out->h0();
            X->h0_cache[KD.key()] = rk.dim;
            return out;
        }
    }
    std::ostringstream os;
    os << "rr_space: dimension identity failed for D = " << D.str() << " on " << X->str()
       << " (deg " << D.degree() << ")";
    throw InternalError(os.str());
}

int h0(const Divisor& D) {
    CurvePtr X = D.curve();
    if (!X) throw Error("h0: divisor without a curve");
    {
        std::lock_guard<std::mutex> lock(X->cache_mutex);
        auto it = X->h0_cache.find(D.key());
        if (it != X->h0_cache.end()) return it->second;
    }
    return rr_space(D)->h0();
}

int h1(const Divisor& D) { return h0(D.curve()->canonical_divisor() - D); }

bool is_base_point(const Divisor& D, const Place& P) {
    int n = h0(D);
    if (n < 1) throw Error("is_base_point: empty linear system");
    return h0(D - Divisor::single(D.curve(), P)) == n;
}

std::vector<Place> base_points(const Divisor& D) {
    int n = h0(D);
    if (n < 1) throw Error("base_points: empty linear system");
    CurvePtr X = D.curve();
    // the base locus is the pointwise minimum of div(h) + D over a basis;
    // when the principal divisors resolve over F_p this avoids scanning the
    // whole curve, otherwise fall back to the rational scan
    try {
        auto B = rr_space(D);
        std::optional<Divisor> locus;
        for (const FunctionElem& h : B->basis) {
            Divisor dh = divisor_of_internal(h, true) + D;
            if (!locus) {
                locus = dh;
            } else {
                Divisor m(X);
                for (const auto& [P, c] : locus->atoms()) {
                    int v = std::min(c, dh.coeff(P));
                    if (v != 0) m.add(P, v);
                }
                locus = m;
            }
            if (locus->empty()) break;
        }
        std::vector<Place> out;
        for (const auto& [P, c] : locus->atoms())
            if (c > 0 && P.is_rational()) out.push_back(P);
        return out;
    } catch (const Error&) {
        std::vector<Place> out;
        for (const Place& P : X->rational_points())
            if (h0(D - Divisor::single(X, P)) == n) out.push_back(P);
        return out;
    }
}

bool is_smooth_system(const Divisor& A) {
    if (h0(A) < 1) return false;
    CurvePtr X = A.curve();
    for (const Place& P : base_points(A)) {
        Divisor AP = A - Divisor::single(X, P);
        if (!(h0(AP - Divisor::single(X, P)) < h0(AP))) return false;
    }
    return true;
}

SeparationReport separates(const Divisor& D) {
    SeparationReport rep;
    CurvePtr X = D.curve();
    int n = h0(D);
    const auto& pts = X->rational_points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            Divisor Dm = D - Divisor::single(X, pts[i]) - Divisor::single(X, pts[j]);
            if (h0(Dm) != n - 2) {
                rep.very_ample = false;
                rep.failure = pts[i].str() + " and " + pts[j].str();
                return rep;
            }
        }
    rep.very_ample = true;
    return rep;
}

PhiProfile phi_b_profile(const Divisor& b) {
    PhiProfile prof;
    CurvePtr X = b.curve();
    int n = h0(b);
    if (n < 2) throw Error("phi_b_profile: |b| does not move");
    std::vector<Place> bp = base_points(b);
    prof.base_point_count = static_cast<int>(bp.size());
    std::vector<Place> moving;
    for (const Place& P : X->rational_points())
        if (std::find(bp.begin(), bp.end(), P) == bp.end()) moving.push_back(P);
    // fibers of the map: identification is an equivalence on non-base points
    std::vector<int> fiber_id(moving.size(), -1);
    int fibers = 0;
    auto identified = [&](const Place& P, const Place& Q) {
        Divisor Dm = b - Divisor::single(X, P) - Divisor::single(X, Q);
        return h0(Dm) > n - 2;
    };
    std::vector<std::vector<Place>> classes;
    for (std::size_t i = 0; i < moving.size(); ++i) {
        if (fiber_id[i] >= 0) continue;
        fiber_id[i] = fibers;
        classes.push_back({moving[i]});
        for (std::size_t j = i + 1; j < moving.size(); ++j) {
            if (fiber_id[j] >= 0) continue;
            if (identified(moving[i], moving[j])) {
                fiber_id[j] = fibers;
                classes.back().push_back(moving[j]);
            }
        }
        ++fibers;
    }
    // mean fiber size over points; a mean beyond 4/3 signals a multiple map.
    // This is fiber statistics over rational points, a probe rather than a
    // function-field degree computation.
    long sum = 0, sumsq = 0;
    for (const auto& cls : classes) {
        long s = static_cast<long>(cls.size());
        sum += s;
        sumsq += s * s;
    }
    prof.birational = sum == 0 || 3 * sumsq <= 4 * sum;
    // largest set of mutually identified points, letting base points join
    // a fiber class when they are identified with all of its members
    int max_clique = 1;
    for (const auto& cls : classes) {
        int size = static_cast<int>(cls.size());
        for (const Place& B : bp) {
            bool all = true;
            for (const Place& P : cls)
                if (!identified(B, P)) all = false;
            if (all) ++size;
        }
        max_clique = std::max(max_clique, size);
    }
    prof.max_singularity = max_clique;
    prof.very_ample = prof.birational && separates(b).very_ample;
    return prof;
}

}  // namespace scrollkit
