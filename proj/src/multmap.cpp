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

#include "scrollkit/multmap.hpp"

#include <algorithm>

#include "scrollkit/matrix.hpp"

namespace scrollkit {

namespace {

// Common-denominator coefficient vectors: each function is scaled to the
// least common denominator and read off as the coefficient list of its
// numerator. The map h -> h * lcm_den is linear and injective, so ranks are
// preserved exactly.
struct VectorizedSet {
    std::size_t width = 0;
    int xdim = 0;
    int ybound = 0;
};

std::map<Poly, int> lcm_factors(const std::vector<const FunctionElem*>& hs) {
    std::map<Poly, int> lcm;
    for (const FunctionElem* h : hs)
        for (const auto& [f, e] : h->den_factors()) {
            int& cur = lcm[f];
            cur = std::max(cur, e);
        }
    return lcm;
}

std::vector<std::vector<Fp>> vectorize(const std::vector<const FunctionElem*>& hs, std::uint64_t p,
                                       int ybound) {
    std::map<Poly, int> lcm = lcm_factors(hs);
    std::vector<BiPoly> scaled;
    int xdim = 0;
    for (const FunctionElem* h : hs) {
        Poly cof = Poly::one(p);
        for (const auto& [f, e] : lcm) {
            auto it = h->den_factors().find(f);
            int have = it == h->den_factors().end() ? 0 : it->second;
            cof = cof * f.pow(e - have);
        }
        BiPoly s = h->num() * BiPoly(p, {cof});
        xdim = std::max(xdim, s.deg_x() + 1);
        scaled.push_back(std::move(s));
    }
    std::vector<std::vector<Fp>> rows;
    for (const BiPoly& s : scaled) {
        std::vector<Fp> row(static_cast<std::size_t>(xdim) * (ybound + 1), Fp::zero(p));
        for (int j = 0; j <= s.deg_y(); ++j)
            for (int i = 0; i <= s.ycoeff(j).degree(); ++i)
                row[static_cast<std::size_t>(j) * xdim + static_cast<std::size_t>(i)] = s.ycoeff(j).coeff(i);
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix rows_to_matrix(const std::vector<std::vector<Fp>>& rows, std::uint64_t p) {
    std::size_t w = rows.empty() ? 1 : rows[0].size();
    Matrix m(rows.size(), w, p);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c].value();
    return m;
}

std::vector<FunctionElem> all_products(const std::vector<std::shared_ptr<const RRBasis>>& bases) {
    std::vector<FunctionElem> prods;
    std::vector<std::size_t> idx(bases.size(), 0);
    while (true) {
        FunctionElem prod = bases[0]->basis[idx[0]];
        for (std::size_t i = 1; i < bases.size(); ++i) prod = prod * bases[i]->basis[idx[i]];
        prods.push_back(std::move(prod));
        std::size_t i = 0;
        while (i < idx.size()) {
            if (++idx[i] < bases[i]->basis.size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == idx.size()) break;
    }
    return prods;
}

}  // namespace

std::optional<Fp> eval_at(const FunctionElem& h, const Place& P) {
    if (!P.is_rational()) throw Error("eval_at: rational places only");
    if (h.is_zero()) return Fp::zero(h.curve()->modulus());
    int prec = 8;
    const CurveModel& X = *h.curve();
    for (int tries = 0; tries < 10; ++tries) {
        Expansion<Fp> e = X.expand_rational(P, prec);
        Series<Fp> num = eval_bipoly_series(h.num(), e.x, e.y);
        Series<Fp> den = eval_poly_series(h.den(), e.x);
        if (!num.known_zero() && !den.known_zero()) {
            int v = num.valuation() - den.valuation();
            if (v < 0) return std::nullopt;  // pole
            if (v > 0) return Fp::zero(X.modulus());
            return num.coeff(num.valuation()) / den.coeff(den.valuation());
        }
        prec *= 2;
    }
    throw InternalError("eval_at: series did not stabilize");
}

MultMapReport corank_report(const std::vector<Divisor>& factors) {
    if (factors.empty()) throw Error("corank: no factors");
    CurvePtr X = factors[0].curve();
    for (const Divisor& D : factors)
        if (D.curve() != X) throw Error("corank: factors on different curves");
    std::uint64_t p = X->modulus();
    MultMapReport rep;
    rep.factors = factors;
    Divisor total(X);
    for (const Divisor& D : factors) total = total + D;
    auto target = rr_space(total);
    rep.target_dim = target->h0();

    std::vector<std::shared_ptr<const RRBasis>> bases;
    rep.domain_dim = 1;
    for (const Divisor& D : factors) {
        bases.push_back(rr_space(D));
        rep.domain_dim *= bases.back()->h0();
    }
    if (rep.domain_dim == 0) {
        rep.degenerate = true;
        rep.rank = 0;
        rep.corank = rep.target_dim;
        return rep;
    }

    std::vector<FunctionElem> prods = all_products(bases);
    std::vector<const FunctionElem*> all;
    for (const FunctionElem& h : target->basis) all.push_back(&h);
    for (const FunctionElem& h : prods) all.push_back(&h);
    std::vector<std::vector<Fp>> rows = vectorize(all, p, X->y_degree_bound());

    std::size_t nt = target->basis.size();
    Matrix mt = rows_to_matrix({rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(nt)}, p);
    Matrix mall = rows_to_matrix(rows, p);
    Matrix mp = rows_to_matrix({rows.begin() + static_cast<std::ptrdiff_t>(nt), rows.end()}, p);
    int rt = matrix_rank(mt);
    if (rt != rep.target_dim) throw InternalError("corank: target basis lost rank in vector form");
    if (matrix_rank(mall) != rep.target_dim)
        throw InternalError("corank: a product fell outside the target space (valuation bug)");
    rep.rank = matrix_rank(mp);
    rep.corank = rep.target_dim - rep.rank;
    return rep;
}

int corank(const std::vector<Divisor>& factors) { return corank_report(factors).corank; }

std::optional<int> corank_eval_oracle(const std::vector<Divisor>& factors) {
    CurvePtr X = factors[0].curve();
    std::uint64_t p = X->modulus();
    std::vector<std::shared_ptr<const RRBasis>> bases;
    for (const Divisor& D : factors) {
        bases.push_back(rr_space(D));
        if (bases.back()->h0() == 0) return std::nullopt;
    }
    Divisor total(X);
    for (const Divisor& D : factors) total = total + D;
    int target_dim = h0(total);
    std::vector<FunctionElem> prods = all_products(bases);
    // sample points clear of every denominator and of the support of total
    std::vector<Place> samples;
    for (const Place& P : X->rational_points()) {
        if (P.at_infinity()) continue;
        bool clean = total.coeff(P) == 0;
        if (clean)
            for (const FunctionElem& h : prods) {
                auto [x0, y0] = P.coords();
                if (h.den().eval(x0).is_zero()) {
                    clean = false;
                    break;
                }
                (void)y0;
            }
        if (clean) samples.push_back(P);
    }
    if (static_cast<int>(samples.size()) < target_dim + 2) return std::nullopt;
    // evaluation must be faithful on the target space, otherwise the sample
    // points cannot certify ranks
    auto tb = rr_space(total);
    Matrix tm(tb->basis.size(), samples.size(), p);
    for (std::size_t r = 0; r < tb->basis.size(); ++r)
        for (std::size_t c = 0; c < samples.size(); ++c) {
            auto v = eval_at(tb->basis[r], samples[c]);
            if (!v) return std::nullopt;
            tm.at(r, c) = v->value();
        }
    if (matrix_rank(tm) != target_dim) return std::nullopt;
    Matrix m(prods.size(), samples.size(), p);
    for (std::size_t r = 0; r < prods.size(); ++r)
        for (std::size_t c = 0; c < samples.size(); ++c) {
            auto v = eval_at(prods[r], samples[c]);
            if (!v) return std::nullopt;
            m.at(r, c) = v->value();
        }
    return target_dim - matrix_rank(m);
}

bool green_hypothesis(const Divisor& a, const Divisor& b, std::string* why) {
    if (h0(b) < 1) {
        if (why) *why = "b is not effective";
        return false;
    }
    if (!base_points(b).empty()) {
        if (why) *why = "b has base points";
        return false;
    }
    bool ok = h1(a - b) <= h0(b) - 2;
    if (!ok && why) *why = "h1(a-b) exceeds h0(b)-2";
    return ok;
}

bool pencil_trick_kernel_check(const Divisor& L, const Divisor& F) {
    CurvePtr X = L.curve();
    std::uint64_t p = X->modulus();
    auto BL = rr_space(L);
    if (BL->h0() < 2) throw Error("pencil_trick: h0(L) must be at least 2");
    const FunctionElem& s1 = BL->basis[0];
    const FunctionElem& s2 = BL->basis[1];
    Divisor d1 = divisor_of_internal(s1, true) + L;
    Divisor d2 = divisor_of_internal(s2, true) + L;
    // base locus of the pencil: pointwise minimum of the two members
    Divisor B(X);
    for (const auto& [P, n] : d1.atoms()) {
        int m = std::min(n, d2.coeff(P));
        if (m > 0) B.add(P, m);
    }
    auto BF = rr_space(F);
    std::vector<FunctionElem> prods;
    for (const FunctionElem& s : {s1, s2})
        for (const FunctionElem& f : BF->basis) prods.push_back(s * f);
    auto target = rr_space(F + L);
    std::vector<const FunctionElem*> all;
    for (const FunctionElem& h : target->basis) all.push_back(&h);
    for (const FunctionElem& h : prods) all.push_back(&h);
    std::vector<std::vector<Fp>> rows = vectorize(all, p, X->y_degree_bound());
    Matrix mp = rows_to_matrix({rows.begin() + static_cast<std::ptrdiff_t>(target->basis.size()), rows.end()}, p);
    int kernel = static_cast<int>(prods.size()) - matrix_rank(mp);
    int expected = h0(F - L + B);
    return kernel == expected;
}

bool lange_hypothesis(const Divisor& b1, const Divisor& b2, const std::vector<Place>& a,
                      std::string* why) {
    CurvePtr X = b1.curve();
    Divisor asum(X);
    for (const Place& P : a) asum.add(P, 1);
    int d = asum.degree();
    if (h0(b1 - asum) != h0(b1) - d) {
        if (why) *why = "a does not impose independent conditions on b1";
        return false;
    }
    for (const Place& P : a)
        if (h0(b2 - Divisor::single(X, P)) != h0(b2) - 1) {
            if (why) *why = "some a_i is a base point of b2";
            return false;
        }
    if (corank({b1 - asum, b2}) != 0) {
        if (why) *why = "s(b1-a, b2) does not vanish";
        return false;
    }
    return true;
}

PnReport is_projectively_normal(const Divisor& D, int k_max) {
    PnReport rep;
    rep.checked_to = k_max;
    int n = h0(D);
    if (n >= 2) {
        bool bpf = base_points(D).empty();
        rep.applicable = bpf && phi_b_profile(D).birational;
    }
    bool all_zero = true;
    for (int k = 2; k <= k_max; ++k) {
        std::vector<Divisor> factors(static_cast<std::size_t>(k), D);
        int c = corank(factors);
        rep.corank_by_k[k] = c;
        if (c != 0 && rep.first_failure_k == 0) rep.first_failure_k = k;
        if (c != 0) all_zero = false;
    }
    rep.verdict = all_zero;
    if (!all_zero) {
        rep.total = true;  // a failure is conclusive
        return rep;
    }
    // the trivial class multiplies by powers of its one section
    if (D.degree() == 0 && n == 1) {
        rep.total = true;
        return rep;
    }
    // extension beyond k_max: s(D^(m)) = 0 follows inductively once
    // s((m-1) D, D) = 0, which the h1 bound gives for every larger m
    CurvePtr X = D.curve();
    int g = X->genus();
    if (n < 2 || D.degree() <= 0) {
        rep.total = false;
        return rep;
    }
    int m_star = 2;
    while ((m_star - 2) * D.degree() < 2 * g - 1) ++m_star;
    bool ok = true;
    for (int m = k_max + 1; m <= m_star; ++m)
        if (!(h1(D * (m - 2)) <= n - 2)) ok = false;
    rep.total = ok;
    return rep;
}

bool corank_additivity_check(const Divisor& F1, const Divisor& F2, const std::vector<Divisor>& rest,
                             bool* skipped) {
    if (skipped) *skipped = false;
    if (corank({F1, F2}) != 0) {
        if (skipped) *skipped = true;
        return true;
    }
    std::vector<Divisor> lhs{F1, F2};
    lhs.insert(lhs.end(), rest.begin(), rest.end());
    std::vector<Divisor> rhs{F1 + F2};
    rhs.insert(rhs.end(), rest.begin(), rest.end());
    return corank(lhs) == corank(rhs);
}

}  // namespace scrollkit
