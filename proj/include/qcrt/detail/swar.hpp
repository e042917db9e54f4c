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

// Word-parallel helpers for byte-packed arithmetic mod a small prime p.
// One coordinate per byte. The add/sub/scale fast paths require p <= 13 so
// byte products (p-1)^2 <= 144 never carry across lanes; mod_bytes itself is
// exact for any p in [2, 127] and any byte values.

#ifndef QCRT_DETAIL_SWAR_HPP
#define QCRT_DETAIL_SWAR_HPP

#include <cstdint>

namespace qcrt::detail {

inline constexpr std::uint64_t kByteOnes = 0x0101010101010101ull;
inline constexpr std::uint64_t kByteHigh = 0x8080808080808080ull;
inline constexpr std::uint64_t kLaneLo = 0x00FF00FF00FF00FFull;
inline constexpr std::uint64_t kLane16 = 0x0001000100010001ull;

// Reciprocal for byte division: with mul = floor(256/d), the estimate
// (x * mul) >> 8 is floor(x/d) or floor(x/d) - 1 for every x < 256, so one
// conditional subtract finishes the reduction.
struct DivMagic {
    std::uint32_t mul = 0;
};

inline DivMagic make_div_magic(std::uint32_t d) { return {256 / d}; }

// Reduce every byte of w modulo p; exact for byte values 0..255.
inline std::uint64_t mod_bytes(std::uint64_t w, std::uint32_t p, DivMagic mg) {
    auto lane_mod = [&](std::uint64_t v) {
        const std::uint64_t q = ((v * mg.mul) >> 8) & kLaneLo;
        const std::uint64_t r = v - q * p;  // lanes in [0, 2p-1]
        const std::uint64_t ge = ((r + (0x8000 - p) * kLane16) & (0x8000 * kLane16)) >> 15;
        return r - ge * p;
    };
    const std::uint64_t lo = lane_mod(w & kLaneLo);
    const std::uint64_t hi = lane_mod((w >> 8) & kLaneLo);
    return lo | (hi << 8);
}

// Bytewise (a + b) mod p; requires all bytes < p and p <= 127.
inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
    const std::uint64_t t = a + b;  // byte sums <= 2p-2 < 256: no lane crossing
    const std::uint64_t ge = ((t + (128 - p) * kByteOnes) & kByteHigh) >> 7;
    return t - ge * p;
}

// Bytewise (a - b) mod p under the same constraints.
inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
    const std::uint64_t t = a + p * kByteOnes - b;  // bytes in [1, 2p-1]
    const std::uint64_t ge = ((t + (128 - p) * kByteOnes) & kByteHigh) >> 7;
    return t - ge * p;
}

// Bytewise a * c mod p for a scalar c < p; requires p <= 13.
inline std::uint64_t scale_mod(std::uint64_t a, std::uint32_t c, std::uint32_t p, DivMagic mg) {
    return mod_bytes(a * c, p, mg);
}

}  // namespace qcrt::detail

#endif
