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

#ifndef SCROLLKIT_FIELD_HPP
#define SCROLLKIT_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scrollkit {

/// Raised when a computation cannot proceed for a reason the caller can fix
/// (bad input, non-rational data, unsupported model).
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an internal consistency assertion fails. This always means a
/// bug in the toolkit, never bad user input.
class InternalError : public std::runtime_error {
   public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Element of the prime field F_p, p an odd prime. Value semantics; the
/// modulus travels with the element and mixed-modulus arithmetic throws.
class Fp {
   public:
    Fp() : v_(0), p_(0) {}
    Fp(std::int64_t value, std::uint64_t p);

    static Fp zero(std::uint64_t p) { return Fp(0, p); }
    static Fp one(std::uint64_t p) { return Fp(1, p); }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool valid() const { return p_ != 0; }

    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp operator/(const Fp& o) const;
    Fp operator-() const;
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inv() const;
    Fp pow(std::int64_t e) const;

    bool is_square() const;
    /// Square root by Tonelli-Shanks; throws Error on a nonresidue.
    Fp sqrt() const;

   private:
    void check(const Fp& o) const {
        if (p_ != o.p_) throw InternalError("Fp: mixed moduli");
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

}  // namespace scrollkit

#endif
