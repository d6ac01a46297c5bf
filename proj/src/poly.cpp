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

#include "scrollkit/poly.hpp"

#include <algorithm>
#include <sstream>

namespace scrollkit {

Poly::Poly(std::uint64_t p, std::vector<Fp> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (const Fp& c : c_)
        if (c.modulus() != p_) throw InternalError("Poly: coefficient modulus mismatch");
    normalize();
}

Poly::Poly(std::uint64_t p, std::initializer_list<std::int64_t> coeffs) : p_(p) {
    for (std::int64_t v : coeffs) c_.emplace_back(v, p);
    normalize();
}

Poly Poly::from_ints(std::uint64_t p, const std::vector<std::int64_t>& coeffs) {
    Poly r(p);
    for (std::int64_t v : coeffs) r.c_.emplace_back(v, p);
    r.normalize();
    return r;
}

Poly Poly::constant(const Fp& c) {
    Poly r(c.modulus());
    if (!c.is_zero()) r.c_.push_back(c);
    return r;
}

Poly Poly::x(std::uint64_t p) { return Poly(p, {0, 1}); }

Poly Poly::x_pow(std::uint64_t p, int k) {
    Poly r(p);
    r.c_.assign(static_cast<std::size_t>(k) + 1, Fp::zero(p));
    r.c_.back() = Fp::one(p);
    return r;
}

Fp Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Fp::zero(p_);
    return c_[static_cast<std::size_t>(i)];
}

Fp Poly::lead() const {
    if (c_.empty()) throw Error("Poly: leading coefficient of zero polynomial");
    return c_.back();
}

bool Poly::same_coeffs(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

bool Poly::operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i].value() != o.c_[i].value()) return c_[i].value() < o.c_[i].value();
    return false;
}

void Poly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    if (p_ != o.p_) throw InternalError("Poly: modulus mismatch");
    Poly r(p_);
    std::size_t n = std::max(c_.size(), o.c_.size());
    r.c_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
    r.normalize();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r(p_);
    r.c_.reserve(c_.size());
    for (const Fp& c : c_) r.c_.push_back(-c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (p_ != o.p_) throw InternalError("Poly: modulus mismatch");
    if (is_zero() || o.is_zero()) return Poly(p_);
    Poly r(p_);
    r.c_.assign(c_.size() + o.c_.size() - 1, Fp::zero(p_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.normalize();
    return r;
}

Poly Poly::operator*(const Fp& s) const {
    Poly r(p_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const Fp& c : c_) r.c_.push_back(c * s);
    r.normalize();
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& b) const {
    if (b.is_zero()) throw Error("Poly: division by zero polynomial");
    if (p_ != b.p_) throw InternalError("Poly: modulus mismatch");
    Poly q(p_), r = *this;
    if (degree() < b.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(degree() - b.degree()) + 1, Fp::zero(p_));
    Fp binv = b.lead().inv();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Fp f = r.lead() * binv;
        q.c_[static_cast<std::size_t>(k)] = f;
        // r -= f * x^k * b
        for (int i = 0; i <= b.degree(); ++i)
            r.c_[static_cast<std::size_t>(i + k)] -= f * b.c_[static_cast<std::size_t>(i)];
        r.normalize();
    }
    q.normalize();
    return {q, r};
}

Poly Poly::derivative() const {
    Poly r(p_);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * Fp(static_cast<std::int64_t>(i), p_));
    r.normalize();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) throw Error("Poly: cannot normalize zero polynomial");
    return *this * lead().inv();
}

Fp Poly::eval(const Fp& x) const {
    Fp acc = Fp::zero(p_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::shift(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r(p_);
    r.c_.assign(c_.size() + static_cast<std::size_t>(k), Fp::zero(p_));
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + static_cast<std::size_t>(k)] = c_[i];
    return r;
}

Poly Poly::pow(int e) const {
    Poly acc = Poly::one(p_), base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c_[i].value() != 1) os << c_[i].value();
        if (i > 0) {
            if (c_[i].value() != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("poly_gcd: gcd(0, 0) undefined");
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    return r0.monic();
}

XgcdResult poly_xgcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("poly_xgcd: gcd(0, 0) undefined");
    std::uint64_t p = a.modulus() ? a.modulus() : b.modulus();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(p), s1 = Poly::zero(p);
    Poly t0 = Poly::zero(p), t1 = Poly::one(p);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        r0 = r1;
        r1 = r2;
        Poly s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        Poly t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    Fp li = r0.lead().inv();
    return {r0 * li, s0 * li, t0 * li};
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) throw Error("is_squarefree: zero polynomial");
    if (f.degree() == 0) return true;
    Poly d = f.derivative();
    if (d.is_zero()) return false;  // f is a p-th power times a constant pattern
    return poly_gcd(f, d).degree() == 0;
}

Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& m) {
    Poly acc = Poly::one(a.modulus()) % m;
    Poly base = a % m;
    while (e) {
        if (e & 1) acc = (acc * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return acc;
}

// --- BiPoly ---

BiPoly::BiPoly(std::uint64_t p, std::vector<Poly> ycoeffs) : p_(p), yc_(std::move(ycoeffs)) {
    for (const Poly& c : yc_)
        if (!c.is_zero() && c.modulus() != p_) throw InternalError("BiPoly: modulus mismatch");
    for (Poly& c : yc_)
        if (c.modulus() == 0) c = Poly(p_);
    normalize();
}

void BiPoly::normalize() {
    while (!yc_.empty() && yc_.back().is_zero()) yc_.pop_back();
}

int BiPoly::deg_x() const {
    int d = -1;
    for (const Poly& c : yc_) d = std::max(d, c.degree());
    return d;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (std::size_t j = 0; j < yc_.size(); ++j)
        if (!yc_[j].is_zero()) d = std::max(d, yc_[j].degree() + static_cast<int>(j));
    return d;
}

Poly BiPoly::ycoeff(int j) const {
    if (j < 0 || j >= static_cast<int>(yc_.size())) return Poly(p_);
    return yc_[static_cast<std::size_t>(j)];
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r(p_);
    std::size_t n = std::max(yc_.size(), o.yc_.size());
    for (std::size_t j = 0; j < n; ++j) r.yc_.push_back(ycoeff(static_cast<int>(j)) + o.ycoeff(static_cast<int>(j)));
    r.normalize();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
    BiPoly r(p_);
    std::size_t n = std::max(yc_.size(), o.yc_.size());
    for (std::size_t j = 0; j < n; ++j) r.yc_.push_back(ycoeff(static_cast<int>(j)) - o.ycoeff(static_cast<int>(j)));
    r.normalize();
    return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r(p_);
    if (is_zero() || o.is_zero()) return r;
    r.yc_.assign(yc_.size() + o.yc_.size() - 1, Poly(p_));
    for (std::size_t i = 0; i < yc_.size(); ++i) {
        if (yc_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.yc_.size(); ++j) r.yc_[i + j] = r.yc_[i + j] + yc_[i] * o.yc_[j];
    }
    r.normalize();
    return r;
}

BiPoly BiPoly::operator*(const Fp& s) const {
    BiPoly r(p_);
    for (const Poly& c : yc_) r.yc_.push_back(c * s);
    r.normalize();
    return r;
}

bool BiPoly::operator==(const BiPoly& o) const {
    if (p_ != o.p_ || yc_.size() != o.yc_.size()) return false;
    for (std::size_t j = 0; j < yc_.size(); ++j)
        if (yc_[j] != o.yc_[j]) return false;
    return true;
}

BiPoly BiPoly::dx() const {
    BiPoly r(p_);
    for (const Poly& c : yc_) r.yc_.push_back(c.derivative());
    r.normalize();
    return r;
}

BiPoly BiPoly::dy() const {
    BiPoly r(p_);
    for (std::size_t j = 1; j < yc_.size(); ++j)
        r.yc_.push_back(yc_[j] * Fp(static_cast<std::int64_t>(j), p_));
    r.normalize();
    return r;
}

Fp BiPoly::eval(const Fp& x, const Fp& y) const {
    Fp acc = Fp::zero(p_);
    for (std::size_t j = yc_.size(); j-- > 0;) acc = acc * y + yc_[j].eval(x);
    return acc;
}

Poly BiPoly::eval_x(const Fp& x) const {
    std::vector<Fp> c;
    c.reserve(yc_.size());
    for (const Poly& q : yc_) c.push_back(q.eval(x));
    return Poly(p_, std::move(c));
}

Poly BiPoly::eval_y(const Fp& y) const {
    Poly acc(p_);
    for (std::size_t j = yc_.size(); j-- > 0;) acc = acc * Poly::constant(y) + yc_[j];
    return acc;
}

BiPoly BiPoly::mod_y(const BiPoly& m) const {
    if (m.is_zero()) throw Error("BiPoly: division by zero");
    if (m.yc_.back().degree() != 0)
        throw Error("BiPoly: modulus must have a constant leading y-coefficient");
    Fp linv = m.yc_.back().coeff(0).inv();
    BiPoly r = *this;
    while (r.deg_y() >= m.deg_y()) {
        int k = r.deg_y() - m.deg_y();
        Poly f = r.yc_.back() * linv;
        for (int j = 0; j <= m.deg_y(); ++j)
            r.yc_[static_cast<std::size_t>(j + k)] =
                r.yc_[static_cast<std::size_t>(j + k)] - f * m.ycoeff(j);
        r.normalize();
        if (r.is_zero()) break;
    }
    return r;
}

std::string BiPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = yc_.size(); j-- > 0;) {
        if (yc_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << yc_[j].str() << ")";
        if (j > 0) {
            os << "*y";
            if (j > 1) os << "^" << j;
        }
    }
    return os.str();
}

}  // namespace scrollkit
