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

#ifndef SCROLLKIT_SERIES_HPP
#define SCROLLKIT_SERIES_HPP

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "scrollkit/extfield.hpp"

namespace scrollkit {

/// Truncated Laurent series over F_p or an extension of it. A value holds the
/// coefficients of t^k for k in the window [ord, end); everything at or past
/// end is unknown (O(t^end)), everything below ord is zero. Arithmetic tracks
/// the window honestly, so precision loss is visible to the caller.
template <class E>
class Series {
   public:
    Series(E zero, int ord, std::vector<E> coeffs)
        : zero_(std::move(zero)), ord_(ord), c_(std::move(coeffs)) {
        normalize();
    }

    static Series zero_to(const E& zero, int prec_end) { return Series(zero, prec_end, {}); }

    static Series constant(const E& v, int prec_end) {
        std::vector<E> c;
        E z = zero_like(v);
        for (int k = 0; k < prec_end; ++k) c.push_back(k == 0 ? v : z);
        return Series(z, 0, std::move(c));
    }

    /// The local parameter t itself.
    static Series param(const E& one, int prec_end) {
        E z = zero_like(one);
        std::vector<E> c;
        for (int k = 1; k < prec_end; ++k) c.push_back(k == 1 ? one : z);
        return Series(z, 1, std::move(c));
    }

    int ord() const { return ord_; }
    int end() const { return ord_ + static_cast<int>(c_.size()); }
    bool known_zero() const { return c_.empty(); }
    const E& zero_element() const { return zero_; }

    E coeff(int k) const {
        if (k < ord_) return zero_;
        if (k >= end()) throw InternalError("Series: coefficient beyond precision window");
        return c_[static_cast<std::size_t>(k - ord_)];
    }

    /// Exact order of vanishing within the known window; the leading
    /// coefficient is nonzero by normalization.
    int valuation() const {
        if (c_.empty()) throw Error("Series: valuation of a window-zero series");
        return ord_;
    }

    Series operator+(const Series& o) const {
        int e = std::min(end(), o.end());
        int s = std::min(ord_, o.ord_);
        std::vector<E> c;
        for (int k = s; k < e; ++k) c.push_back(coeff_or_zero(k) + o.coeff_or_zero(k));
        return Series(zero_, s, std::move(c));
    }

    Series operator-(const Series& o) const { return *this + (-o); }

    Series operator-() const {
        std::vector<E> c;
        c.reserve(c_.size());
        for (const E& x : c_) c.push_back(-x);
        return Series(zero_, ord_, std::move(c));
    }

    Series operator*(const Series& o) const {
        if (c_.empty() || o.c_.empty()) {
            // zero window times anything: zero to the best provable precision
            int e1 = c_.empty() ? end() + o.ord_ : o.end() + ord_;
            return zero_to(zero_, e1);
        }
        int e = std::min(end() + o.ord_, o.end() + ord_);
        int s = ord_ + o.ord_;
        std::vector<E> c(static_cast<std::size_t>(e - s), zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                int k = ord_ + static_cast<int>(i) + o.ord_ + static_cast<int>(j);
                if (k >= e) break;
                c[static_cast<std::size_t>(k - s)] = c[static_cast<std::size_t>(k - s)] + c_[i] * o.c_[j];
            }
        }
        return Series(zero_, s, std::move(c));
    }

    Series scaled(const E& f) const {
        std::vector<E> c;
        c.reserve(c_.size());
        for (const E& x : c_) c.push_back(x * f);
        return Series(zero_, ord_, std::move(c));
    }

    /// Multiplicative inverse; the series must have a nonzero coefficient in
    /// its window (its true valuation is then known). Keeps window length.
    Series inverse() const {
        if (c_.empty()) throw Error("Series: inverse of a window-zero series");
        int n = static_cast<int>(c_.size());
        E u0 = c_[0].inv();
        std::vector<E> r(static_cast<std::size_t>(n), zero_);
        r[0] = u0;
        for (int k = 1; k < n; ++k) {
            E acc = zero_;
            for (int j = 1; j <= k; ++j) acc = acc + c_[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
            r[static_cast<std::size_t>(k)] = -(acc * u0);
        }
        return Series(zero_, -ord_, std::move(r));
    }

    Series shifted(int k) const { return Series(zero_, ord_ + k, c_); }

    Series truncated(int new_end) const {
        if (new_end >= end()) return *this;
        std::vector<E> c;
        for (int k = ord_; k < new_end; ++k) c.push_back(coeff_or_zero(k));
        return Series(zero_, ord_, std::move(c));
    }

    Series pow(int e) const {
        if (e == 0) return constant(one_like(zero_), std::max(end() - ord_, 1));
        Series acc = *this;
        for (int i = 1; i < e; ++i) acc = acc * *this;
        return acc;
    }

   private:
    E coeff_or_zero(int k) const {
        if (k < ord_ || k >= end()) return zero_;
        return c_[static_cast<std::size_t>(k - ord_)];
    }
    void normalize() {
        while (!c_.empty() && c_.front().is_zero()) {
            c_.erase(c_.begin());
            ++ord_;
        }
    }
    E zero_;
    int ord_;
    std::vector<E> c_;
};

namespace detail {
// A window bound no product chain of the given shape can exceed, so fresh
// constants and zero accumulators never become the binding precision limit.
inline int loose_end(int end_x, int ord_x, int deg) {
    return end_x + (std::abs(std::min(ord_x, 0)) + 1) * (std::max(deg, 1) + 1) + 16;
}
}  // namespace detail

/// Evaluate an F_p polynomial at a series (Horner).
template <class E>
Series<E> eval_poly_series(const Poly& f, const Series<E>& x) {
    const E& z = x.zero_element();
    int big = detail::loose_end(x.end(), x.ord(), f.degree());
    if (f.is_zero()) return Series<E>::zero_to(z, big);
    Series<E> acc = Series<E>::constant(lift_to(z, f.lead()), std::max(x.end() - x.ord(), 1));
    for (int i = f.degree() - 1; i >= 0; --i) {
        acc = acc * x;
        if (!f.coeff(i).is_zero())
            acc = acc + Series<E>::constant(lift_to(z, f.coeff(i)), std::max(acc.end(), 1));
    }
    return acc;
}

/// Evaluate a bivariate polynomial at a pair of series (Horner in y).
template <class E>
Series<E> eval_bipoly_series(const BiPoly& q, const Series<E>& x, const Series<E>& y) {
    const E& z = x.zero_element();
    int big = detail::loose_end(x.end(), x.ord(), q.deg_x()) + detail::loose_end(y.end(), y.ord(), q.deg_y());
    Series<E> acc = Series<E>::zero_to(z, big);
    for (int j = q.deg_y(); j >= 0; --j) {
        acc = acc * y;
        acc = acc + eval_poly_series(q.ycoeff(j), x);
    }
    return acc;
}

}  // namespace scrollkit

#endif
