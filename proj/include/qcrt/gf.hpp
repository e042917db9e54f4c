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

/**
 * @file gf.hpp
 * @brief Exact arithmetic in the field tower GF(p) <= GF(q) <= GF(q^l) <= GF(q^m), q = p^e.
 *
 * One arithmetic kernel serves the whole tower: GF(q^m) is realized as
 * GF(p)[X]/(modulus) of degree e*m, and elements of intermediate fields are
 * recognized by Frobenius fixed-point tests rather than carried in separate
 * types. A FieldContext is immutable after construction and freely shareable
 * across threads; FieldElement is a plain value.
 *
 * Representation limits: p <= 251 (one byte per GF(p) coordinate), e*m <= 64
 * for p = 2 (bit-packed) and e*m <= 128 otherwise; q = p^e <= 256 when e > 1.
 *
 * Element text form: "p,e,m:" followed by the little-endian coordinate string
 * over GF(p), one fixed-width hex group per coordinate.
 */

#ifndef QCRT_GF_HPP
#define QCRT_GF_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcrt/detail/swar.hpp"
#include "qcrt/rng.hpp"

namespace qcrt {

class FieldContext;
using CtxPtr = std::shared_ptr<const FieldContext>;

inline constexpr std::size_t kMaxCoordWords = 16;  // 128 coordinate bytes

struct FieldElement {
    std::array<std::uint64_t, kMaxCoordWords> w{};
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

class FieldError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

// Dense byte matrix mod p used during context construction (cold paths only).
struct PrimeMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> d;
    PrimeMat() = default;
    PrimeMat(std::size_t r, std::size_t c) : rows(r), cols(c), d(r * c, 0) {}
    std::uint8_t& at(std::size_t r, std::size_t c) { return d[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return d[r * cols + c]; }
};

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    std::uint32_t r = 1, b = a % p, n = p - 2;
    while (n) {
        if (n & 1) r = r * b % p;
        b = b * b % p;
        n >>= 1;
    }
    return r;
}

inline std::vector<std::size_t> rref_prime(PrimeMat& M, std::uint32_t p) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < M.cols && rank < M.rows; ++c) {
        std::size_t sel = rank;
        while (sel < M.rows && M.at(sel, c) == 0) ++sel;
        if (sel == M.rows) continue;
        for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(rank, j), M.at(sel, j));
        const std::uint32_t inv = inv_mod_p(M.at(rank, c), p);
        for (std::size_t j = 0; j < M.cols; ++j)
            M.at(rank, j) = static_cast<std::uint8_t>(M.at(rank, j) * inv % p);
        for (std::size_t r = 0; r < M.rows; ++r) {
            if (r == rank) continue;
            const std::uint32_t f = M.at(r, c);
            if (!f) continue;
            for (std::size_t j = 0; j < M.cols; ++j)
                M.at(r, j) =
                    static_cast<std::uint8_t>((M.at(r, j) + (p - f) * M.at(rank, j)) % p);
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

inline bool invert_prime(const PrimeMat& M0, std::uint32_t p, PrimeMat& out) {
    const std::size_t n = M0.rows;
    PrimeMat aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = M0.at(r, c);
        aug.at(r, n + r) = 1;
    }
    auto piv = rref_prime(aug, p);
    if (piv.size() != n) return false;
    for (std::size_t r = 0; r < n; ++r)
        if (piv[r] != r) return false;
    out = PrimeMat(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
    return true;
}

inline PrimeMat nullspace_prime(PrimeMat M, std::uint32_t p) {
    const std::size_t n = M.cols;
    auto piv = rref_prime(M, p);
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    PrimeMat out(free_cols.size(), n);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t fc = free_cols[k];
        out.at(k, fc) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) {
            const std::uint32_t v = M.at(r, fc);
            if (v) out.at(k, piv[r]) = static_cast<std::uint8_t>(p - v);
        }
    }
    return out;
}

// polynomial helpers over GF(p); coefficient index = degree

inline void poly_trim(std::vector<std::uint8_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint8_t> poly_mul(const std::vector<std::uint8_t>& a,
                                          const std::vector<std::uint8_t>& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
    std::vector<std::uint8_t> res(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) res[i] = static_cast<std::uint8_t>(acc[i] % p);
    poly_trim(res);
    return res;
}

inline std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> poly_divmod(
    std::vector<std::uint8_t> a, const std::vector<std::uint8_t>& b, std::uint32_t p) {
    poly_trim(a);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, std::move(a)};
    std::vector<std::uint8_t> q(a.size() - b.size() + 1, 0);
    const std::uint32_t invl = inv_mod_p(b.back(), p);
    for (std::size_t sh = q.size(); sh-- > 0;) {
        const std::uint32_t cc = a[b.size() - 1 + sh];
        if (!cc) continue;
        const std::uint32_t f = cc * invl % p;
        q[sh] = static_cast<std::uint8_t>(f);
        for (std::size_t j = 0; j < b.size(); ++j)
            a[sh + j] = static_cast<std::uint8_t>((a[sh + j] + (p - f * b[j] % p)) % p);
    }
    poly_trim(a);
    return {std::move(q), std::move(a)};
}

inline std::vector<std::uint8_t> poly_mod(std::vector<std::uint8_t> a,
                                          const std::vector<std::uint8_t>& b, std::uint32_t p) {
    return poly_divmod(std::move(a), b, p).second;
}

inline std::vector<std::uint8_t> poly_mulmod(const std::vector<std::uint8_t>& a,
                                             const std::vector<std::uint8_t>& b,
                                             const std::vector<std::uint8_t>& f, std::uint32_t p) {
    return poly_mod(poly_mul(a, b, p), f, p);
}

inline std::vector<std::uint8_t> poly_gcd(std::vector<std::uint8_t> a,
                                          std::vector<std::uint8_t> b, std::uint32_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        auto r = poly_mod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint32_t inv = inv_mod_p(a.back(), p);
        for (auto& c : a) c = static_cast<std::uint8_t>(c * inv % p);
    }
    return a;
}

}  // namespace detail

/// Arithmetic view of the base field GF(q), q = p^e <= 256. Scalar s encodes
/// sum_j digit_j(s) * u_j over the canonical GF(p)-basis u of GF(q) with
/// u_0 = 1, so scalars 0..p-1 are the prime-subfield naturals and scalar 1 is
/// the field one for every e.
struct SmallFq {
    std::uint32_t p = 2, e = 1, q = 2;
    const std::uint8_t* add_tab = nullptr;  // q*q, only when e > 1
    const std::uint8_t* mul_tab = nullptr;  // q*q, only when e > 1
    const std::uint8_t* inv_tab = nullptr;  // q,   only when e > 1
    const std::uint8_t* neg_tab = nullptr;  // q,   only when e > 1

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
        if (e == 1) return static_cast<std::uint8_t>((a + b) % p);
        return add_tab[static_cast<std::size_t>(a) * q + b];
    }
    std::uint8_t neg(std::uint8_t a) const {
        if (e == 1) return static_cast<std::uint8_t>(a ? p - a : 0);
        return neg_tab[a];
    }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        if (e == 1) return static_cast<std::uint8_t>(a * b % p);
        return mul_tab[static_cast<std::size_t>(a) * q + b];
    }
    std::uint8_t inv(std::uint8_t a) const {
        if (a == 0) throw std::domain_error("inversion of zero in GF(q)");
        if (e == 1) return static_cast<std::uint8_t>(detail::inv_mod_p(a, p));
        return inv_tab[a];
    }
};

class FieldContext : public std::enable_shared_from_this<FieldContext> {
   public:
    /// Builds GF(q^m), q = p^e, with intermediate degree l (l must divide m).
    /// An empty modulus selects the lexicographically smallest irreducible
    /// polynomial of degree e*m over GF(p) (non-leading coefficients read as a
    /// little-endian base-p integer); a supplied modulus is verified
    /// irreducible by the gcd chain with X^{p^j} - X for j < e*m.
    static CtxPtr make(std::uint32_t p, std::uint32_t e, std::uint32_t m, std::uint32_t l = 1,
                       std::vector<std::uint8_t> modulus = {}) {
        auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
        ctx->init(p, e, m, l, std::move(modulus));
        return ctx;
    }

    static CtxPtr make_q(std::uint64_t q, std::uint32_t m, std::uint32_t l = 1,
                         std::vector<std::uint8_t> modulus = {}) {
        auto [p, e] = factor_prime_power(q);
        return make(p, e, m, l, std::move(modulus));
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t l() const { return l_; }
    std::uint64_t q() const { return q_; }
    std::size_t coord_count() const { return em_; }
    std::size_t words() const { return words_; }
    const std::vector<std::uint8_t>& modulus() const { return modulus_; }
    const SmallFq& fq() const { return fq_; }

    bool same_as(const FieldContext& o) const {
        return p_ == o.p_ && e_ == o.e_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

    // ---- element basics ----

    FieldElement zero() const { return FieldElement{}; }
    FieldElement one() const {
        FieldElement x{};
        set_coord(x, 0, 1);
        return x;
    }
    bool is_zero(const FieldElement& x) const {
        for (std::size_t i = 0; i < words_; ++i)
            if (x.w[i]) return false;
        return true;
    }

    std::uint32_t coord(const FieldElement& x, std::size_t i) const {
        if (p_ == 2) return static_cast<std::uint32_t>((x.w[0] >> i) & 1u);
        return static_cast<std::uint32_t>((x.w[i >> 3] >> ((i & 7) * 8)) & 0xFFu);
    }
    void set_coord(FieldElement& x, std::size_t i, std::uint32_t v) const {
        if (p_ == 2) {
            x.w[0] = (x.w[0] & ~(1ull << i)) | (static_cast<std::uint64_t>(v & 1) << i);
        } else {
            const std::size_t wi = i >> 3, sh = (i & 7) * 8;
            x.w[wi] = (x.w[wi] & ~(0xFFull << sh)) | (static_cast<std::uint64_t>(v) << sh);
        }
    }

    FieldElement from_coords(std::span<const std::uint8_t> c) const {
        if (c.size() != em_) throw std::invalid_argument("coordinate length mismatch");
        FieldElement x{};
        for (std::size_t i = 0; i < em_; ++i) set_coord(x, i, c[i] % p_);
        return x;
    }
    std::vector<std::uint8_t> coords_of(const FieldElement& x) const {
        std::vector<std::uint8_t> c(em_);
        for (std::size_t i = 0; i < em_; ++i) c[i] = static_cast<std::uint8_t>(coord(x, i));
        return c;
    }

    // ---- arithmetic ----

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement r{};
        if (p_ == 2) {
            r.w[0] = a.w[0] ^ b.w[0];
        } else if (p_ <= 13) {
            for (std::size_t i = 0; i < words_; ++i) r.w[i] = detail::add_mod(a.w[i], b.w[i], p_);
        } else {
            for (std::size_t i = 0; i < em_; ++i)
                set_coord(r, i, (coord(a, i) + coord(b, i)) % p_);
        }
        return r;
    }
    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        FieldElement r{};
        if (p_ == 2) {
            r.w[0] = a.w[0] ^ b.w[0];
        } else if (p_ <= 13) {
            for (std::size_t i = 0; i < words_; ++i) r.w[i] = detail::sub_mod(a.w[i], b.w[i], p_);
        } else {
            for (std::size_t i = 0; i < em_; ++i)
                set_coord(r, i, (coord(a, i) + p_ - coord(b, i)) % p_);
        }
        return r;
    }
    FieldElement neg(const FieldElement& a) const { return sub(zero(), a); }

    /// Scale by a GF(p) digit.
    FieldElement scale_p(const FieldElement& a, std::uint32_t c) const {
        c %= p_;
        if (c == 0) return zero();
        if (c == 1) return a;
        FieldElement r{};
        if (p_ <= 13) {
            for (std::size_t i = 0; i < words_; ++i)
                r.w[i] = detail::scale_mod(a.w[i], c, p_, magic_);
        } else {
            for (std::size_t i = 0; i < em_; ++i) set_coord(r, i, coord(a, i) * c % p_);
        }
        return r;
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        switch (kind_) {
            case Kind::Log: {
                const std::uint32_t ia = pack_index(a), ib = pack_index(b);
                if (!ia || !ib) return zero();
                std::uint32_t s = log_[ia] + log_[ib];
                if (s >= order_) s -= order_;
                return exp_[s];
            }
            case Kind::Gf2:
                return gf2_mul(a, b);
            case Kind::OddSwar:
                return odd_mul_swar(a, b);
            default:
                return odd_mul_generic(a, b);
        }
    }

    FieldElement inv(const FieldElement& a) const {
        if (is_zero(a)) throw std::domain_error("inversion of zero field element");
        if (kind_ == Kind::Log) {
            const std::uint32_t la = log_[pack_index(a)];
            return exp_[la ? order_ - la : 0];
        }
        // extended Euclid on coordinate polynomials over GF(p)
        std::vector<std::uint8_t> r0 = modulus_, r1 = coords_of(a);
        detail::poly_trim(r1);
        std::vector<std::uint8_t> t0{}, t1{1};
        while (!r1.empty()) {
            auto [quot, rem] = detail::poly_divmod(std::move(r0), r1, p_);
            std::vector<std::uint8_t> t2 = t0;
            if (!quot.empty() && !t1.empty()) {
                if (t2.size() < quot.size() + t1.size() - 1)
                    t2.resize(quot.size() + t1.size() - 1, 0);
                for (std::size_t i = 0; i < quot.size(); ++i)
                    if (quot[i])
                        for (std::size_t j = 0; j < t1.size(); ++j)
                            t2[i + j] = static_cast<std::uint8_t>(
                                (t2[i + j] +
                                 (p_ - static_cast<std::uint32_t>(quot[i]) * t1[j] % p_)) %
                                p_);
            }
            detail::poly_trim(t2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        const std::uint32_t c = detail::inv_mod_p(r0.empty() ? 1 : r0.back(), p_);
        FieldElement out{};
        // gcd r0 is a nonzero constant (modulus irreducible, a nonzero)
        for (std::size_t i = 0; i < t0.size() && i < em_; ++i)
            set_coord(out, i, static_cast<std::uint32_t>(t0[i]) * c % p_);
        return out;
    }

    FieldElement pow(const FieldElement& a, std::uint64_t n) const {
        FieldElement r = one(), b = a;
        while (n) {
            if (n & 1) r = mul(r, b);
            b = mul(b, b);
            n >>= 1;
        }
        return r;
    }

    /// x^{q^j}; additive and GF(q)-linear in x.
    FieldElement frobenius_q(const FieldElement& x, std::uint64_t j) const {
        const std::size_t jr = static_cast<std::size_t>(j % m_);
        if (jr == 0) return x;
        if (kind_ == Kind::Log) {
            const std::uint32_t ix = pack_index(x);
            if (!ix) return zero();
            return exp_[static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(log_[ix]) * qpow_mod_order_[jr] % order_)];
        }
        return apply_frob(x, jr);
    }

    /// True iff x lies in GF(q^d); requires d | m.
    bool in_subfield(const FieldElement& x, std::uint32_t d) const {
        if (d == 0 || m_ % d != 0) throw std::invalid_argument("subfield degree must divide m");
        return frobenius_q(x, d) == x;
    }

    /// GF(p)-basis of the subfield GF(q^d); size e*d. Requires d | m.
    const std::vector<FieldElement>& subfield_basis(std::uint32_t d) const {
        if (d == 0 || m_ % d != 0) throw std::invalid_argument("subfield degree must divide m");
        for (const auto& [dd, basis] : subfield_bases_)
            if (dd == d) return basis;
        throw std::logic_error("subfield basis missing");
    }

    // ---- GF(q) scalar structure ----

    FieldElement fq_element(std::uint8_t s) const { return fq_elems_[s]; }
    std::uint8_t fq_scalar(const FieldElement& x) const {
        if (e_ == 1) {
            // prime subfield: multiples of one
            for (std::size_t i = 1; i < em_; ++i)
                if (coord(x, i)) throw std::domain_error("element does not lie in GF(q)");
            return static_cast<std::uint8_t>(coord(x, 0));
        }
        for (std::size_t i = 0; i < fq_elems_.size(); ++i)
            if (fq_elems_[i] == x) return static_cast<std::uint8_t>(i);
        throw std::domain_error("element does not lie in GF(q)");
    }

    /// Default GF(q)-basis of GF(q^m) (the power basis when e = 1).
    const std::vector<FieldElement>& default_basis() const { return default_basis_; }

    /// Coordinates of x in the default basis, one GF(q) scalar per entry.
    void coords_q(const FieldElement& x, std::uint8_t* out) const {
        if (e_ == 1) {
            for (std::size_t i = 0; i < m_; ++i) out[i] = static_cast<std::uint8_t>(coord(x, i));
            return;
        }
        std::array<std::uint8_t, 128> pc{};
        for (std::size_t i = 0; i < em_; ++i) pc[i] = static_cast<std::uint8_t>(coord(x, i));
        for (std::size_t i = 0; i < m_; ++i) {
            std::uint32_t s = 0, w = 1;
            for (std::uint32_t j = 0; j < e_; ++j) {
                std::uint32_t acc = 0;
                const std::size_t row = static_cast<std::size_t>(i) * e_ + j;
                for (std::size_t c = 0; c < em_; ++c) acc += coordq_inv_.at(row, c) * pc[c];
                s += (acc % p_) * w;
                w *= p_;
            }
            out[i] = static_cast<std::uint8_t>(s);
        }
    }
    std::vector<std::uint8_t> coords_q(const FieldElement& x) const {
        std::vector<std::uint8_t> out(m_);
        coords_q(x, out.data());
        return out;
    }
    FieldElement from_coords_q(std::span<const std::uint8_t> c) const {
        if (c.size() != m_) throw std::invalid_argument("coordinate length mismatch");
        if (e_ == 1) {
            FieldElement x{};
            for (std::size_t i = 0; i < m_; ++i) set_coord(x, i, c[i] % p_);
            return x;
        }
        FieldElement x = zero();
        for (std::size_t i = 0; i < m_; ++i) x = add(x, mul(fq_element(c[i]), default_basis_[i]));
        return x;
    }

    // ---- text form ----

    std::string signature() const {
        return std::to_string(p_) + "," + std::to_string(e_) + "," + std::to_string(m_);
    }
    std::string to_hex(const FieldElement& x) const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string s;
        s.reserve(em_ * hex_width_);
        for (std::size_t i = 0; i < em_; ++i) {
            std::uint32_t v = coord(x, i);
            for (std::uint32_t k = 0; k < hex_width_; ++k) {
                s.push_back(digits[v & 0xF]);
                v >>= 4;
            }
        }
        return s;
    }
    FieldElement from_hex(const std::string& s) const {
        if (s.size() != em_ * hex_width_) throw std::invalid_argument("bad element hex length");
        FieldElement x{};
        auto nib = [](char c) -> std::uint32_t {
            if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
            if (c >= 'a' && c <= 'f') return static_cast<std::uint32_t>(c - 'a' + 10);
            if (c >= 'A' && c <= 'F') return static_cast<std::uint32_t>(c - 'A' + 10);
            throw std::invalid_argument("bad hex digit");
        };
        for (std::size_t i = 0; i < em_; ++i) {
            std::uint32_t v = 0;
            for (std::uint32_t k = hex_width_; k-- > 0;) v = (v << 4) | nib(s[i * hex_width_ + k]);
            if (v >= p_) throw std::invalid_argument("coordinate out of range");
            set_coord(x, i, v);
        }
        return x;
    }
    std::string to_text(const FieldElement& x) const { return signature() + ":" + to_hex(x); }
    FieldElement from_text(const std::string& t) const {
        const auto pos = t.rfind(':');
        if (pos == std::string::npos || t.substr(0, pos) != signature())
            throw std::invalid_argument("element text context header mismatch");
        return from_hex(t.substr(pos + 1));
    }

    // ---- sampling ----

    FieldElement random_element(Rng& rng) const {
        FieldElement x{};
        if (p_ == 2) {
            x.w[0] = rng.next() & mask_;
        } else {
            for (std::size_t i = 0; i < em_; ++i)
                set_coord(x, i, static_cast<std::uint32_t>(rng.below(p_)));
        }
        return x;
    }
    FieldElement random_nonzero(Rng& rng) const {
        FieldElement x = random_element(rng);
        while (is_zero(x)) x = random_element(rng);
        return x;
    }
    FieldElement random_subfield_element(Rng& rng, std::uint32_t d) const {
        const auto& basis = subfield_basis(d);
        FieldElement x = zero();
        for (const auto& b : basis)
            x = add(x, scale_p(b, static_cast<std::uint32_t>(rng.below(p_))));
        return x;
    }

    static std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
        if (q < 2) throw FieldError("q must be a prime power >= 2");
        std::uint64_t pp = q;
        for (std::uint64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                pp = d;
                break;
            }
        std::uint32_t e = 0;
        std::uint64_t v = q;
        while (v % pp == 0) {
            v /= pp;
            ++e;
        }
        if (v != 1) throw FieldError("q is not a prime power");
        return {static_cast<std::uint32_t>(pp), e};
    }

   private:
    enum class Kind { Log, Gf2, OddSwar, OddGeneric };

    FieldContext() = default;

    void init(std::uint32_t p, std::uint32_t e, std::uint32_t m, std::uint32_t l,
              std::vector<std::uint8_t> modulus);

    std::uint32_t pack_index(const FieldElement& x) const {
        if (p_ == 2) return static_cast<std::uint32_t>(x.w[0]);
        std::uint32_t v = 0;
        for (std::size_t i = em_; i-- > 0;) v = v * p_ + coord(x, i);
        return v;
    }
    FieldElement unpack_index(std::uint32_t v) const {
        FieldElement x{};
        if (p_ == 2) {
            x.w[0] = v;
            return x;
        }
        for (std::size_t i = 0; i < em_ && v; ++i) {
            set_coord(x, i, v % p_);
            v /= p_;
        }
        return x;
    }

    FieldElement gf2_mul(const FieldElement& a, const FieldElement& b) const {
        using u128 = unsigned __int128;
        u128 tab[16];
        tab[0] = 0;
        tab[1] = b.w[0];
        for (std::uint32_t u = 2; u < 16; ++u)
            tab[u] = (tab[u >> 1] << 1) ^ (u & 1 ? static_cast<u128>(b.w[0]) : 0);
        u128 acc = 0;
        const std::uint64_t aw = a.w[0];
        for (std::size_t i = (em_ + 3) / 4; i-- > 0;)
            acc = (acc << 4) ^ tab[(aw >> (4 * i)) & 0xF];
        for (std::size_t bits = 2 * em_; bits > em_;) {
            const std::size_t take = std::min<std::size_t>(8, bits - em_);
            bits -= take;
            const std::uint32_t top =
                static_cast<std::uint32_t>(acc >> bits) & ((1u << take) - 1);
            if (top) {
                acc ^= static_cast<u128>(top) << bits;
                acc ^= static_cast<u128>(gf2_red_[top]) << (bits - em_);
            }
        }
        FieldElement r{};
        r.w[0] = static_cast<std::uint64_t>(acc) & mask_;
        return r;
    }

    FieldElement odd_mul_swar(const FieldElement& a, const FieldElement& b) const {
        // schoolbook with 16-bit lanes; one reduction pass at the end
        std::array<std::uint16_t, 272> acc{};
        std::array<std::uint16_t, 136> b16{};
        for (std::size_t j = 0; j < em_; ++j) b16[j] = static_cast<std::uint16_t>(coord(b, j));
        const std::size_t bw = (em_ + 3) / 4;
        for (std::size_t i = 0; i < em_; ++i) {
            const std::uint64_t ai = coord(a, i);
            if (!ai) continue;
            auto* dst = reinterpret_cast<std::uint8_t*>(acc.data()) + 2 * i;
            const auto* src = reinterpret_cast<const std::uint8_t*>(b16.data());
            for (std::size_t w = 0; w < bw; ++w) {
                std::uint64_t sv, dv;
                std::memcpy(&sv, src + 8 * w, 8);
                std::memcpy(&dv, dst + 8 * w, 8);
                dv += sv * ai;  // lanes < 2^16 by the p <= 13 bound
                std::memcpy(dst + 8 * w, &dv, 8);
            }
        }
        for (std::size_t t = 0; t + 1 < 2 * em_; ++t) acc[t] %= p_;
        for (std::size_t t = 2 * em_ - 1; t-- > em_;) {
            const std::uint32_t c = acc[t] % p_;
            acc[t] = 0;
            if (!c) continue;
            for (std::size_t j = 0; j < em_; ++j)
                acc[t - em_ + j] =
                    static_cast<std::uint16_t>(acc[t - em_ + j] + c * (p_ - mod_lo_[j]));
        }
        FieldElement r{};
        for (std::size_t i = 0; i < em_; ++i) set_coord(r, i, acc[i] % p_);
        return r;
    }

    FieldElement odd_mul_generic(const FieldElement& a, const FieldElement& b) const {
        std::array<std::uint32_t, 272> acc{};
        for (std::size_t i = 0; i < em_; ++i) {
            const std::uint32_t ai = coord(a, i);
            if (!ai) continue;
            for (std::size_t j = 0; j < em_; ++j) acc[i + j] += ai * coord(b, j);
        }
        for (std::size_t t = 0; t + 1 < 2 * em_; ++t) acc[t] %= p_;
        for (std::size_t t = 2 * em_ - 1; t-- > em_;) {
            const std::uint32_t c = acc[t] % p_;
            acc[t] = 0;
            if (!c) continue;
            for (std::size_t j = 0; j < em_; ++j) acc[t - em_ + j] += c * (p_ - mod_lo_[j]);
        }
        FieldElement r{};
        for (std::size_t i = 0; i < em_; ++i) set_coord(r, i, acc[i] % p_);
        return r;
    }

    FieldElement apply_frob(const FieldElement& x, std::size_t j) const {
        if (p_ == 2) {
            const auto& cols = frob_cols_gf2_[j];
            std::uint64_t y = 0, v = x.w[0];
            while (v) {
                y ^= cols[static_cast<std::size_t>(std::countr_zero(v))];
                v &= v - 1;
            }
            FieldElement r{};
            r.w[0] = y;
            return r;
        }
        const auto& cols = frob_cols_odd16_[j];
        std::array<std::uint16_t, 136> acc{};
        auto* accb = reinterpret_cast<std::uint8_t*>(acc.data());
        const std::size_t cw = lanes16_ / 4;
        for (std::size_t i = 0; i < em_; ++i) {
            const std::uint64_t xi = coord(x, i);
            if (!xi) continue;
            const auto* col = reinterpret_cast<const std::uint8_t*>(cols.data() + i * lanes16_);
            for (std::size_t w = 0; w < cw; ++w) {
                std::uint64_t cv, av;
                std::memcpy(&cv, col + 8 * w, 8);
                std::memcpy(&av, accb + 8 * w, 8);
                av += cv * xi;
                std::memcpy(accb + 8 * w, &av, 8);
            }
        }
        FieldElement r{};
        for (std::size_t i = 0; i < em_; ++i) set_coord(r, i, acc[i] % p_);
        return r;
    }

    void build_frobenius();
    void build_subfields();
    void build_fq();
    void build_default_basis();
    void build_log_tables();

    static bool is_prime_u32(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static std::vector<std::uint8_t> sieve_modulus(std::uint32_t p, std::size_t deg);
    static bool irreducible_gcd_chain(const std::vector<std::uint8_t>& f, std::uint32_t p);

    std::uint32_t p_ = 2, e_ = 1, m_ = 1, l_ = 1;
    std::uint64_t q_ = 2;
    std::size_t em_ = 1, words_ = 1;
    std::uint32_t hex_width_ = 1;
    std::uint64_t mask_ = 1;
    std::vector<std::uint8_t> modulus_;
    std::vector<std::uint8_t> mod_lo_;
    detail::DivMagic magic_;
    Kind kind_ = Kind::Gf2;

    std::uint32_t order_ = 0;
    std::vector<std::uint16_t> log_;
    std::vector<FieldElement> exp_;
    std::vector<std::uint32_t> qpow_mod_order_;

    std::vector<std::uint64_t> gf2_red_;

    std::vector<std::vector<std::uint64_t>> frob_cols_gf2_;
    std::vector<std::vector<std::uint16_t>> frob_cols_odd16_;
    std::size_t lanes16_ = 0;
    detail::PrimeMat frob_q_mat_;

    std::vector<std::pair<std::uint32_t, std::vector<FieldElement>>> subfield_bases_;

    SmallFq fq_;
    std::vector<std::uint8_t> fq_add_, fq_mul_, fq_inv_, fq_neg_;
    std::vector<FieldElement> fq_elems_;
    std::vector<FieldElement> fq_basis_;  // GF(p)-basis of GF(q) with u_0 = 1

    std::vector<FieldElement> default_basis_;
    detail::PrimeMat coordq_inv_;  // only used when e > 1
};

inline void FieldContext::init(std::uint32_t p, std::uint32_t e, std::uint32_t m, std::uint32_t l,
                               std::vector<std::uint8_t> modulus) {
    if (!is_prime_u32(p) || p > 251) throw FieldError("p must be a prime <= 251");
    if (e < 1 || m < 1) throw FieldError("e and m must be >= 1");
    if (l < 1 || m % l != 0) throw FieldError("l must divide m");
    p_ = p;
    e_ = e;
    m_ = m;
    l_ = l;
    em_ = static_cast<std::size_t>(e) * m;
    if (p == 2) {
        if (em_ > 64) throw FieldError("p = 2 supports e*m <= 64");
        words_ = 1;
        mask_ = (em_ == 64) ? ~0ull : ((1ull << em_) - 1);
    } else {
        if (em_ > 128) throw FieldError("odd p supports e*m <= 128");
        words_ = (em_ + 7) / 8;
    }
    q_ = 1;
    for (std::uint32_t i = 0; i < e; ++i) q_ *= p;
    if (e > 1 && q_ > 256) throw FieldError("q = p^e must be <= 256 when e > 1");
    hex_width_ = 1;
    for (std::uint32_t v = (p - 1) >> 4; v > 0; v >>= 4) ++hex_width_;
    magic_ = detail::make_div_magic(p);

    if (modulus.empty()) {
        modulus_ = sieve_modulus(p, em_);
    } else {
        detail::poly_trim(modulus);
        if (modulus.size() != em_ + 1) throw FieldError("modulus degree must equal e*m");
        for (auto c : modulus)
            if (c >= p) throw FieldError("modulus coefficient out of range");
        if (modulus.back() != 1) throw FieldError("modulus must be monic");
        if (!irreducible_gcd_chain(modulus, p)) throw FieldError("modulus is reducible");
        modulus_ = std::move(modulus);
    }
    mod_lo_.assign(modulus_.begin(), modulus_.end() - 1);

    if (p_ == 2) {
        std::uint64_t modbits = 0;
        for (std::size_t i = 0; i < em_; ++i)
            if (modulus_[i]) modbits |= 1ull << i;
        gf2_red_.assign(256, 0);
        for (std::uint32_t b = 1; b < 256; ++b) {
            unsigned __int128 v = static_cast<unsigned __int128>(b) << em_;
            for (std::size_t bit = em_ + 8; bit-- > em_;)
                if ((v >> bit) & 1) {
                    v ^= static_cast<unsigned __int128>(1) << bit;
                    v ^= static_cast<unsigned __int128>(modbits) << (bit - em_);
                }
            gf2_red_[b] = static_cast<std::uint64_t>(v) & mask_;
        }
    }

    std::uint64_t field_size = 1;
    bool small = true;
    for (std::size_t i = 0; i < em_; ++i) {
        field_size *= p_;
        if (field_size > 65536) {
            small = false;
            break;
        }
    }
    kind_ = (p_ == 2) ? Kind::Gf2 : (p_ <= 13) ? Kind::OddSwar : Kind::OddGeneric;

    build_frobenius();
    if (small && field_size >= 4) {
        build_log_tables();
        kind_ = Kind::Log;
    }
    build_subfields();
    build_fq();
    build_default_basis();
}

inline void FieldContext::build_frobenius() {
    const std::size_t D = em_;
    detail::PrimeMat F(D, D);
    std::vector<std::uint8_t> mono(static_cast<std::size_t>(p_) + 1, 0);
    mono[p_] = 1;
    const auto xp = detail::poly_mod(std::move(mono), modulus_, p_);
    std::vector<std::uint8_t> col{1};
    for (std::size_t i = 0; i < D; ++i) {
        for (std::size_t r = 0; r < D; ++r) F.at(r, i) = r < col.size() ? col[r] : 0;
        if (i + 1 < D) col = detail::poly_mulmod(col, xp, modulus_, p_);
    }
    auto matmul = [this, D](const detail::PrimeMat& A, const detail::PrimeMat& B) {
        detail::PrimeMat C(D, D);
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t k = 0; k < D; ++k) {
                const std::uint32_t a = A.at(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < D; ++j)
                    C.at(i, j) = static_cast<std::uint8_t>((C.at(i, j) + a * B.at(k, j)) % p_);
            }
        return C;
    };
    detail::PrimeMat Fq = F;
    for (std::uint32_t t = 1; t < e_; ++t) Fq = matmul(F, Fq);

    if (p_ == 2) {
        frob_cols_gf2_.assign(m_, {});
    } else {
        lanes16_ = ((em_ + 3) / 4) * 4;
        frob_cols_odd16_.assign(m_, {});
    }
    detail::PrimeMat Pow(D, D);
    for (std::size_t i = 0; i < D; ++i) Pow.at(i, i) = 1;
    for (std::uint32_t j = 1; j < m_; ++j) {
        Pow = matmul(Fq, Pow);
        if (p_ == 2) {
            auto& cols = frob_cols_gf2_[j];
            cols.assign(D, 0);
            for (std::size_t c = 0; c < D; ++c) {
                std::uint64_t mask = 0;
                for (std::size_t r = 0; r < D; ++r)
                    if (Pow.at(r, c)) mask |= 1ull << r;
                cols[c] = mask;
            }
        } else {
            auto& cols = frob_cols_odd16_[j];
            cols.assign(D * lanes16_, 0);
            for (std::size_t c = 0; c < D; ++c)
                for (std::size_t r = 0; r < D; ++r) cols[c * lanes16_ + r] = Pow.at(r, c);
        }
    }
    frob_q_mat_ = std::move(Fq);
}

inline void FieldContext::build_subfields() {
    const std::size_t D = em_;
    auto matmul = [this, D](const detail::PrimeMat& A, const detail::PrimeMat& B) {
        detail::PrimeMat C(D, D);
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t k = 0; k < D; ++k) {
                const std::uint32_t a = A.at(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < D; ++j)
                    C.at(i, j) = static_cast<std::uint8_t>((C.at(i, j) + a * B.at(k, j)) % p_);
            }
        return C;
    };
    detail::PrimeMat Pow(D, D);
    for (std::size_t i = 0; i < D; ++i) Pow.at(i, i) = 1;
    for (std::uint32_t d = 1; d <= m_; ++d) {
        Pow = matmul(frob_q_mat_, Pow);
        if (m_ % d != 0) continue;
        detail::PrimeMat K = Pow;
        for (std::size_t i = 0; i < D; ++i)
            K.at(i, i) = static_cast<std::uint8_t>((K.at(i, i) + p_ - 1) % p_);
        auto ns = detail::nullspace_prime(std::move(K), p_);
        std::vector<FieldElement> basis;
        basis.reserve(ns.rows);
        for (std::size_t r = 0; r < ns.rows; ++r) {
            FieldElement x{};
            for (std::size_t c = 0; c < D; ++c) set_coord(x, c, ns.at(r, c));
            basis.push_back(x);
        }
        if (basis.size() != static_cast<std::size_t>(e_) * d)
            throw std::logic_error("subfield dimension mismatch");
        subfield_bases_.emplace_back(d, std::move(basis));
    }
}

inline void FieldContext::build_fq() {
    // GF(p)-basis of GF(q) with first vector = 1
    const auto& raw = subfield_basis(1);
    fq_basis_.clear();
    fq_basis_.push_back(one());
    {
        detail::PrimeMat span(e_, em_);
        std::size_t have = 1;
        span.at(0, 0) = 1;
        for (const auto& cand : raw) {
            if (have == e_) break;
            detail::PrimeMat trial(have + 1, em_);
            trial.d.assign(span.d.begin(), span.d.begin() + static_cast<long>(have * em_));
            trial.d.resize((have + 1) * em_, 0);
            for (std::size_t c = 0; c < em_; ++c)
                trial.at(have, c) = static_cast<std::uint8_t>(coord(cand, c));
            auto piv = detail::rref_prime(trial, p_);
            if (piv.size() == have + 1) {
                for (std::size_t c = 0; c < em_; ++c)
                    span.at(have, c) = static_cast<std::uint8_t>(coord(cand, c));
                fq_basis_.push_back(cand);
                ++have;
            }
        }
        if (fq_basis_.size() != e_) throw std::logic_error("GF(q) basis construction failed");
    }
    const std::size_t q = static_cast<std::size_t>(q_);
    fq_elems_.assign(q, FieldElement{});
    for (std::size_t s = 0; s < q; ++s) {
        FieldElement x = zero();
        std::size_t v = s;
        for (std::uint32_t j = 0; j < e_; ++j) {
            x = add(x, scale_p(fq_basis_[j], static_cast<std::uint32_t>(v % p_)));
            v /= p_;
        }
        fq_elems_[s] = x;
    }
    if (e_ > 1) {
        auto index_of = [&](const FieldElement& x) -> std::uint8_t {
            for (std::size_t i = 0; i < q; ++i)
                if (fq_elems_[i] == x) return static_cast<std::uint8_t>(i);
            throw std::logic_error("GF(q) closure violation");
        };
        fq_add_.assign(q * q, 0);
        fq_mul_.assign(q * q, 0);
        fq_inv_.assign(q, 0);
        fq_neg_.assign(q, 0);
        for (std::size_t a = 0; a < q; ++a) {
            fq_neg_[a] = index_of(neg(fq_elems_[a]));
            for (std::size_t b = 0; b < q; ++b) {
                fq_add_[a * q + b] = index_of(add(fq_elems_[a], fq_elems_[b]));
                fq_mul_[a * q + b] = index_of(mul(fq_elems_[a], fq_elems_[b]));
            }
        }
        for (std::size_t a = 1; a < q; ++a) fq_inv_[a] = index_of(inv(fq_elems_[a]));
        fq_ = SmallFq{p_,          e_,           static_cast<std::uint32_t>(q_), fq_add_.data(),
                      fq_mul_.data(), fq_inv_.data(), fq_neg_.data()};
    } else {
        fq_ = SmallFq{p_, 1, p_, nullptr, nullptr, nullptr, nullptr};
    }
}

inline void FieldContext::build_default_basis() {
    default_basis_.clear();
    if (e_ == 1) {
        for (std::uint32_t i = 0; i < m_; ++i) {
            FieldElement x{};
            set_coord(x, i, 1);
            default_basis_.push_back(x);
        }
        return;
    }
    // greedy GF(q)-independent subset of the power basis
    std::vector<FieldElement> powers;
    {
        FieldElement x = one(), gen{};
        set_coord(gen, 1, 1);
        for (std::size_t i = 0; i < em_; ++i) {
            powers.push_back(x);
            x = mul(x, gen);
        }
    }
    std::vector<std::uint8_t> flat;
    std::size_t nrows = 0;
    auto full_rank = [&](const std::vector<std::uint8_t>& data, std::size_t r) {
        detail::PrimeMat M(r, em_);
        M.d = data;
        return detail::rref_prime(M, p_).size() == r;
    };
    for (const auto& cand : powers) {
        if (default_basis_.size() == m_) break;
        std::vector<std::uint8_t> trial = flat;
        for (std::uint32_t j = 0; j < e_; ++j) {
            const FieldElement v = mul(fq_basis_[j], cand);
            for (std::size_t c = 0; c < em_; ++c)
                trial.push_back(static_cast<std::uint8_t>(coord(v, c)));
        }
        if (full_rank(trial, nrows + e_)) {
            flat = std::move(trial);
            nrows += e_;
            default_basis_.push_back(cand);
        }
    }
    if (default_basis_.size() != m_) throw std::logic_error("default basis construction failed");
    detail::PrimeMat M(em_, em_);
    for (std::uint32_t i = 0; i < m_; ++i)
        for (std::uint32_t j = 0; j < e_; ++j) {
            const FieldElement v = mul(fq_basis_[j], default_basis_[i]);
            for (std::size_t r = 0; r < em_; ++r)
                M.at(r, static_cast<std::size_t>(i) * e_ + j) =
                    static_cast<std::uint8_t>(coord(v, r));
        }
    if (!detail::invert_prime(M, p_, coordq_inv_))
        throw std::logic_error("default basis expansion not invertible");
}

inline void FieldContext::build_log_tables() {
    std::uint64_t field_size = 1;
    for (std::size_t i = 0; i < em_; ++i) field_size *= p_;
    order_ = static_cast<std::uint32_t>(field_size - 1);
    log_.assign(field_size, 0);
    exp_.assign(order_, FieldElement{});
    bool found = false;
    for (std::uint32_t cand = 2; cand < field_size && !found; ++cand) {
        const FieldElement g = unpack_index(cand);
        FieldElement x = g;
        std::uint32_t t = 1;
        while (!(x == one()) && t <= order_) {
            x = mul(x, g);
            ++t;
        }
        if (t == order_) {
            FieldElement v = one();
            for (std::uint32_t i = 0; i < order_; ++i) {
                exp_[i] = v;
                log_[pack_index(v)] = static_cast<std::uint16_t>(i);
                v = mul(v, g);
            }
            found = true;
        }
    }
    if (!found) throw std::logic_error("no field generator found");
    qpow_mod_order_.assign(m_, 1);
    for (std::uint32_t j = 1; j < m_; ++j)
        qpow_mod_order_[j] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(qpow_mod_order_[j - 1]) * (q_ % order_) % order_);
}

inline bool FieldContext::irreducible_gcd_chain(const std::vector<std::uint8_t>& f,
                                                std::uint32_t p) {
    const std::size_t D = f.size() - 1;
    if (D == 0) return false;
    if (f[0] == 0) return D == 1 && f[1] != 0;
    if (D == 1) return true;
    detail::PrimeMat F(D, D);
    std::vector<std::uint8_t> mono(static_cast<std::size_t>(p) + 1, 0);
    mono[p] = 1;
    const auto xp = detail::poly_mod(std::move(mono), f, p);
    std::vector<std::uint8_t> col{1};
    for (std::size_t i = 0; i < D; ++i) {
        for (std::size_t r = 0; r < D; ++r) F.at(r, i) = r < col.size() ? col[r] : 0;
        if (i + 1 < D) col = detail::poly_mulmod(col, xp, f, p);
    }
    std::vector<std::uint8_t> s(D, 0);
    if (D > 1) s[1] = 1;
    for (std::size_t j = 1; j < D; ++j) {
        std::vector<std::uint8_t> ns(D, 0);
        for (std::size_t c = 0; c < D; ++c) {
            const std::uint32_t v = s[c];
            if (!v) continue;
            for (std::size_t r = 0; r < D; ++r)
                ns[r] = static_cast<std::uint8_t>((ns[r] + v * F.at(r, c)) % p);
        }
        s = std::move(ns);
        std::vector<std::uint8_t> diff = s;
        diff[1] = static_cast<std::uint8_t>((diff[1] + p - 1) % p);
        detail::poly_trim(diff);
        if (diff.empty()) return false;  // X^{p^j} = X with j < D: proper subfield root
        auto g = detail::poly_gcd(f, std::move(diff), p);
        if (g.size() != 1) return false;
    }
    return true;
}

inline std::vector<std::uint8_t> FieldContext::sieve_modulus(std::uint32_t p, std::size_t deg) {
    if (deg == 1) return {0, 1};  // X is irreducible; GF(p) itself
    std::vector<std::uint8_t> f(deg + 1, 0);
    f[deg] = 1;
    for (std::uint64_t n = 1;; ++n) {
        std::uint64_t v = n;
        for (std::size_t i = 0; i < deg; ++i) {
            f[i] = static_cast<std::uint8_t>(v % p);
            v /= p;
        }
        if (v != 0) throw FieldError("modulus sieve exhausted");
        if (f[0] == 0) continue;
        if (irreducible_gcd_chain(f, p)) return f;
    }
}

inline void check_same_context(const CtxPtr& a, const CtxPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_as(*b)) throw std::invalid_argument("field context mismatch");
}

/// Coordinates with respect to a caller-supplied GF(q)-basis of GF(q^m).
/// Independence over GF(q) is checked once at construction.
class CoordinateBasis {
   public:
    CoordinateBasis(CtxPtr ctx, std::vector<FieldElement> basis)
        : ctx_(std::move(ctx)), basis_(std::move(basis)) {
        const auto& C = *ctx_;
        if (basis_.size() != C.m()) throw std::invalid_argument("basis must have m elements");
        const std::size_t em = C.coord_count();
        // expansion columns u_j * b_i over the canonical GF(p)-basis u of GF(q)
        detail::PrimeMat M(em, em);
        for (std::uint32_t i = 0; i < C.m(); ++i)
            for (std::uint32_t j = 0; j < C.e(); ++j) {
                const FieldElement v = C.mul(fq_basis_elem(C, j), basis_[i]);
                for (std::size_t r = 0; r < em; ++r)
                    M.at(r, static_cast<std::size_t>(i) * C.e() + j) =
                        static_cast<std::uint8_t>(C.coord(v, r));
            }
        if (!detail::invert_prime(M, C.p(), inv_))
            throw std::invalid_argument("basis is not GF(q)-linearly independent");
    }

    const std::vector<FieldElement>& basis() const { return basis_; }

    /// GF(q)-scalar coordinates of x; inverse of expand().
    std::vector<std::uint8_t> coordinates(const FieldElement& x) const {
        const auto& C = *ctx_;
        const std::size_t em = C.coord_count();
        std::vector<std::uint8_t> out(C.m());
        std::array<std::uint8_t, 128> pc{};
        for (std::size_t i = 0; i < em; ++i) pc[i] = static_cast<std::uint8_t>(C.coord(x, i));
        for (std::uint32_t i = 0; i < C.m(); ++i) {
            std::uint32_t s = 0, w = 1;
            for (std::uint32_t j = 0; j < C.e(); ++j) {
                std::uint32_t acc = 0;
                const std::size_t row = static_cast<std::size_t>(i) * C.e() + j;
                for (std::size_t c = 0; c < em; ++c) acc += inv_.at(row, c) * pc[c];
                s += (acc % C.p()) * w;
                w *= C.p();
            }
            out[i] = static_cast<std::uint8_t>(s);
        }
        return out;
    }

    FieldElement expand(std::span<const std::uint8_t> coords) const {
        const auto& C = *ctx_;
        if (coords.size() != C.m()) throw std::invalid_argument("coordinate length mismatch");
        FieldElement x = C.zero();
        for (std::uint32_t i = 0; i < C.m(); ++i)
            x = C.add(x, C.mul(C.fq_element(coords[i]), basis_[i]));
        return x;
    }

   private:
    static FieldElement fq_basis_elem(const FieldContext& C, std::uint32_t j) {
        // u_j in the canonical GF(p)-basis of GF(q): scalar index p^j
        std::uint32_t s = 1;
        for (std::uint32_t t = 0; t < j; ++t) s *= C.p();
        return C.fq_element(static_cast<std::uint8_t>(s));
    }

    CtxPtr ctx_;
    std::vector<FieldElement> basis_;
    detail::PrimeMat inv_;
};

}  // namespace qcrt

#endif
