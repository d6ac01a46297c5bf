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

#ifndef SCROLLKIT_MATRIX_HPP
#define SCROLLKIT_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "scrollkit/field.hpp"

namespace scrollkit {

/// Dense matrix over F_p. Entries are stored as raw residues; elimination is
/// plain Gaussian elimination with pivot search by first nonzero entry.
class Matrix {
   public:
    Matrix() : rows_(0), cols_(0), p_(0) {}
    Matrix(std::size_t rows, std::size_t cols, std::uint64_t p);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint64_t modulus() const { return p_; }

    std::uint64_t& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, const Fp& v) { at(r, c) = v.value(); }
    Fp get(std::size_t r, std::size_t c) const { return Fp(static_cast<std::int64_t>(at(r, c)), p_); }

    static Matrix identity(std::size_t n, std::uint64_t p);

    Matrix transpose() const;
    std::vector<Fp> apply(const std::vector<Fp>& v) const;  // M * v

   private:
    std::size_t rows_, cols_;
    std::uint64_t p_;
    std::vector<std::uint64_t> d_;
};

struct RankNullspace {
    int rank = 0;
    /// Basis of the right nullspace; each vector has cols() entries and
    /// satisfies M * v = 0 exactly (verified before returning).
    std::vector<std::vector<Fp>> nullspace;
};

RankNullspace rank_and_nullspace(const Matrix& m);

int matrix_rank(const Matrix& m);

/// One solution of M x = b, if any.
std::optional<std::vector<Fp>> solve(const Matrix& m, const std::vector<Fp>& b);

}  // namespace scrollkit

#endif
