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

#include "scrollkit/matrix.hpp"

namespace scrollkit {

namespace {

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return Fp(static_cast<std::int64_t>(a), p).inv().value(); }

// Row echelon in place; returns pivot columns. Rows are scaled so pivots are 1.
std::vector<std::size_t> echelon(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::uint64_t p = m.modulus();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && m.at(pr, c) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(r, j));
        std::uint64_t pi = inv_mod(m.at(r, c), p);
        for (std::size_t j = c; j < m.cols(); ++j)
            m.at(r, j) = (__uint128_t(m.at(r, j)) * pi) % p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            std::uint64_t f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                std::uint64_t sub = (__uint128_t(f) * m.at(r, j)) % p;
                m.at(i, j) = m.at(i, j) >= sub ? m.at(i, j) - sub : m.at(i, j) + p - sub;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint64_t p)
    : rows_(rows), cols_(cols), p_(p), d_(rows * cols, 0) {
    if (p < 3) throw Error("Matrix: modulus must be an odd prime >= 3");
}

Matrix Matrix::identity(std::size_t n, std::uint64_t p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

std::vector<Fp> Matrix::apply(const std::vector<Fp>& v) const {
    if (v.size() != cols_) throw InternalError("Matrix::apply: size mismatch");
    std::vector<Fp> out(rows_, Fp::zero(p_));
    for (std::size_t i = 0; i < rows_; ++i) {
        __uint128_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += __uint128_t(at(i, j)) * v[j].value();
        out[i] = Fp(static_cast<std::int64_t>(acc % p_), p_);
    }
    return out;
}

RankNullspace rank_and_nullspace(const Matrix& m) {
    Matrix e = m;
    std::vector<std::size_t> pivots = echelon(e);
    RankNullspace out;
    out.rank = static_cast<int>(pivots.size());
    std::uint64_t p = m.modulus();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Fp> v(m.cols(), Fp::zero(p));
        v[fc] = Fp::one(p);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -e.get(k, fc);
        out.nullspace.push_back(std::move(v));
    }
    for (const auto& v : out.nullspace)
        for (const Fp& x : m.apply(v))
            if (!x.is_zero()) throw InternalError("rank_and_nullspace: residual nonzero");
    return out;
}

int matrix_rank(const Matrix& m) {
    Matrix e = m;
    return static_cast<int>(echelon(e).size());
}

std::optional<std::vector<Fp>> solve(const Matrix& m, const std::vector<Fp>& b) {
    if (b.size() != m.rows()) throw InternalError("solve: size mismatch");
    Matrix aug(m.rows(), m.cols() + 1, m.modulus());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i].value();
    }
    std::vector<std::size_t> pivots = echelon(aug);
    for (std::size_t c : pivots)
        if (c == m.cols()) return std::nullopt;  // inconsistent
    std::uint64_t p = m.modulus();
    std::vector<Fp> x(m.cols(), Fp::zero(p));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.get(k, m.cols());
    return x;
}

}  // namespace scrollkit
