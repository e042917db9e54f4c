/*
   Copyright 2026 qcrt contributors

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

// Splittable deterministic RNG (splitmix64). Experiments derive one stream
// per (seed, r, trial) so results do not depend on scheduling, and output is
// identical across platforms -- std:: distributions are deliberately avoided.

#ifndef QCRT_RNG_HPP
#define QCRT_RNG_HPP

#include <cstdint>

namespace qcrt {

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Independent stream keyed by up to three integers.
    static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
        std::uint64_t s = mix(seed + 0x632BE59BD9B4E019ull);
        s = mix(s ^ a);
        s = mix(s ^ b);
        s = mix(s ^ c);
        return Rng(s);
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    bool coin() { return next() & 1; }

   private:
    std::uint64_t state_;
};

}  // namespace qcrt

#endif
