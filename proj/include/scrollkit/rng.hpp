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

#ifndef SCROLLKIT_RNG_HPP
#define SCROLLKIT_RNG_HPP

#include <cstdint>

namespace scrollkit {

/// Deterministic splittable generator (splitmix64 core). Trial k of a suite
/// draws from fork(k), so per-trial streams do not depend on execution order.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n), n > 0.
    std::uint64_t uniform(std::uint64_t n) {
        // rejection sampling to stay unbiased
        std::uint64_t limit = ~0ull - (~0ull % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    bool coin() { return next() & 1; }

    /// Independent stream derived from this seed and a counter.
    Rng fork(std::uint64_t counter) const {
        Rng base(s_ ^ 0xd1342543de82ef95ull);
        std::uint64_t a = base.next();
        Rng mix(a ^ (counter * 0xa0761d6478bd642full));
        return Rng(mix.next());
    }

   private:
    std::uint64_t s_;
};

}  // namespace scrollkit

#endif
