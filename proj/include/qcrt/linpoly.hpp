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
 * @file linpoly.hpp
 * @brief The non-commutative ring (GF(q^m)<X^q>, +, o) of linearized polynomials.
 *
 * A LinPoly is sum_i c_i X^{q^i}; composition is the ring product, induced on
 * terms by (a X^{q^i}) o (b X^{q^j}) = a b^{q^i} X^{q^{i+j}}. The ring is
 * right Euclidean: rquorem computes A = Q o B + R with qdeg(R) < qdeg(B), and
 * the extended Euclidean scheme yields the greatest common right divisor and
 * least common left multiple. The q-degree of the zero polynomial is the
 * sentinel -1, ordered below every true degree.
 *
 * Left division is not provided; nothing downstream needs it.
 */

#ifndef QCRT_LINPOLY_HPP
#define QCRT_LINPOLY_HPP

#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcrt/fqmat.hpp"
#include "qcrt/gf.hpp"

namespace qcrt {

class LinPoly {
   public:
    LinPoly() = default;
    explicit LinPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    LinPoly(CtxPtr ctx, std::vector<FieldElement> coeffs)
        : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
        trim();
    }

    static LinPoly zero(CtxPtr ctx) { return LinPoly(std::move(ctx)); }
    /// X, the identity of composition.
    static LinPoly identity(CtxPtr ctx) {
        LinPoly r(ctx);
        r.c_.push_back(ctx->one());
        return r;
    }
    static LinPoly monomial(CtxPtr ctx, std::size_t qd, const FieldElement& coeff) {
        LinPoly r(ctx);
        if (!ctx->is_zero(coeff)) {
            r.c_.assign(qd + 1, ctx->zero());
            r.c_[qd] = coeff;
        }
        return r;
    }

    const CtxPtr& ctx() const { return ctx_; }
    /// q-degree; -1 stands in for the zero polynomial and compares below all.
    int qdeg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_identity() const { return c_.size() == 1 && c_[0] == ctx_->one(); }
    bool is_monic() const { return !c_.empty() && c_.back() == ctx_->one(); }

    const FieldElement& coeff(std::size_t i) const {
        static const FieldElement z{};
        return i < c_.size() ? c_[i] : z;
    }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& lead() const {
        if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
        return c_.back();
    }

    friend bool operator==(const LinPoly& a, const LinPoly& b) { return a.c_ == b.c_; }

    friend LinPoly operator+(const LinPoly& a, const LinPoly& b) {
        check_same_context(a.ctx_, b.ctx_);
        const auto& C = *a.ctx_;
        std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()), C.zero());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = C.add(a.coeff(i), b.coeff(i));
        return LinPoly(a.ctx_, std::move(r));
    }
    friend LinPoly operator-(const LinPoly& a, const LinPoly& b) {
        check_same_context(a.ctx_, b.ctx_);
        const auto& C = *a.ctx_;
        std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()), C.zero());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = C.sub(a.coeff(i), b.coeff(i));
        return LinPoly(a.ctx_, std::move(r));
    }

    /// Left scalar multiple c * P (coefficientwise).
    friend LinPoly scale(const FieldElement& s, const LinPoly& a) {
        const auto& C = *a.ctx_;
        if (C.is_zero(s)) return LinPoly(a.ctx_);
        std::vector<FieldElement> r(a.c_.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = C.mul(s, a.c_[i]);
        return LinPoly(a.ctx_, std::move(r));
    }

    LinPoly monic() const {
        if (is_zero()) throw std::domain_error("zero polynomial cannot be made monic");
        if (is_monic()) return *this;
        return scale(ctx_->inv(c_.back()), *this);
    }

    std::string to_string() const {
        std::string s = "qpoly[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ", ";
            s += ctx_->to_text(c_[i]);
        }
        return s + "]";
    }

   private:
    void trim() {
        while (!c_.empty() && ctx_->is_zero(c_.back())) c_.pop_back();
    }

    CtxPtr ctx_;
    std::vector<FieldElement> c_;  // c_[i] multiplies X^{q^i}; trailing entry nonzero
};

/// Composition product P o Q; qdeg adds for nonzero operands.
inline LinPoly compose(const LinPoly& P, const LinPoly& Q) {
    check_same_context(P.ctx(), Q.ctx());
    if (P.is_zero() || Q.is_zero()) return LinPoly::zero(P.ctx());
    const auto& C = *P.ctx();
    const std::size_t dp = static_cast<std::size_t>(P.qdeg());
    const std::size_t dq = static_cast<std::size_t>(Q.qdeg());
    std::vector<FieldElement> r(dp + dq + 1, C.zero());
    for (std::size_t i = 0; i <= dp; ++i) {
        const FieldElement& a = P.coeff(i);
        if (C.is_zero(a)) continue;
        for (std::size_t j = 0; j <= dq; ++j) {
            const FieldElement& b = Q.coeff(j);
            if (C.is_zero(b)) continue;
            r[i + j] = C.add(r[i + j], C.mul(a, C.frobenius_q(b, i)));
        }
    }
    return LinPoly(P.ctx(), std::move(r));
}

/// Evaluation P(zeta) = sum_i c_i zeta^{q^i}; GF(q)-linear in zeta.
inline FieldElement eval(const LinPoly& P, const FieldElement& zeta) {
    const auto& C = *P.ctx();
    FieldElement acc = C.zero();
    FieldElement pw = zeta;
    for (int i = 0; i <= P.qdeg(); ++i) {
        const FieldElement& c = P.coeff(static_cast<std::size_t>(i));
        if (!C.is_zero(c)) acc = C.add(acc, C.mul(c, pw));
        if (i < P.qdeg()) pw = C.frobenius_q(pw, 1);
    }
    return acc;
}

/// Right Euclidean division: A = Q o B + R with qdeg(R) < qdeg(B).
inline std::pair<LinPoly, LinPoly> rquorem(const LinPoly& A, const LinPoly& B) {
    check_same_context(A.ctx(), B.ctx());
    if (B.is_zero()) throw std::domain_error("right division by the zero polynomial");
    const auto& C = *A.ctx();
    const int db = B.qdeg();
    if (A.qdeg() < db) return {LinPoly::zero(A.ctx()), A};
    std::vector<FieldElement> rem(A.coeffs());
    std::vector<FieldElement> quo(static_cast<std::size_t>(A.qdeg() - db) + 1, C.zero());
    const FieldElement invLB = C.inv(B.lead());
    int dr = A.qdeg();
    while (dr >= db) {
        const std::size_t t = static_cast<std::size_t>(dr - db);
        // c X^{q^t} o B cancels the leading term: c = lead(R) * (1/LC(B))^{q^t}
        const FieldElement c = C.mul(rem[static_cast<std::size_t>(dr)], C.frobenius_q(invLB, t));
        quo[t] = C.add(quo[t], c);
        for (int j = 0; j <= db; ++j) {
            const FieldElement& bj = B.coeff(static_cast<std::size_t>(j));
            if (C.is_zero(bj)) continue;
            const std::size_t k = t + static_cast<std::size_t>(j);
            rem[k] = C.sub(rem[k], C.mul(c, C.frobenius_q(bj, t)));
        }
        --dr;
        while (dr >= 0 && C.is_zero(rem[static_cast<std::size_t>(dr)])) --dr;
    }
    rem.resize(static_cast<std::size_t>(dr + 1));
    return {LinPoly(A.ctx(), std::move(quo)), LinPoly(A.ctx(), std::move(rem))};
}

inline LinPoly rrem(const LinPoly& A, const LinPoly& B) { return rquorem(A, B).second; }

inline bool right_divides(const LinPoly& B, const LinPoly& A) {
    return rquorem(A, B).second.is_zero();
}

struct ExtendedRgcd {
    LinPoly u, v, g;  // u o A + v o B = g, monic
};

/// Extended right GCD. Returns monic g = A ^r B with the Bezout pair; the
/// remainder-sequence invariant u_i o A + v_i o B = r_i is asserted in debug
/// builds and replayed by the test suites.
inline ExtendedRgcd rgcd_extended(const LinPoly& A, const LinPoly& B) {
    check_same_context(A.ctx(), B.ctx());
    if (A.is_zero() && B.is_zero()) throw std::domain_error("rgcd(0, 0) is undefined");
    const auto ctx = A.ctx();
    const auto& C = *ctx;
    LinPoly r0 = A, r1 = B;
    LinPoly u0 = LinPoly::identity(ctx), u1 = LinPoly::zero(ctx);
    LinPoly v0 = LinPoly::zero(ctx), v1 = LinPoly::identity(ctx);
    while (!r1.is_zero()) {
        auto [q, r] = rquorem(r0, r1);
        LinPoly u2 = u0 - compose(q, u1);
        LinPoly v2 = v0 - compose(q, v1);
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
        assert(compose(u1, A) + compose(v1, B) == r1);
    }
    const FieldElement s = C.inv(r0.lead());
    return {scale(s, u0), scale(s, v0), scale(s, r0)};
}

inline LinPoly rgcd(const LinPoly& A, const LinPoly& B) { return rgcd_extended(A, B).g; }

inline bool right_coprime(const LinPoly& A, const LinPoly& B) {
    return rgcd(A, B).qdeg() == 0;
}

/// Least common left multiple, monic; qdeg(A v B) = qdeg A + qdeg B - qdeg(A ^ B).
inline LinPoly llcm(const LinPoly& A, const LinPoly& B) {
    check_same_context(A.ctx(), B.ctx());
    if (A.is_zero() || B.is_zero()) throw std::domain_error("llcm of the zero polynomial");
    const auto ctx = A.ctx();
    LinPoly r0 = A, r1 = B;
    LinPoly u0 = LinPoly::identity(ctx), u1 = LinPoly::zero(ctx);
    while (!r1.is_zero()) {
        auto [q, r] = rquorem(r0, r1);
        LinPoly u2 = u0 - compose(q, u1);
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    // at termination u1 o A + v1 o B = 0, so u1 o A is the llcm
    return compose(u1, A).monic();
}

/// m x m matrix over GF(q) of the induced endomorphism of GF(q^m): column j
/// holds the coordinates of P(basis_j). Polynomials congruent mod
/// X^{q^m} - X yield the same matrix.
inline FqMat to_endomorphism_matrix(const LinPoly& P, const CoordinateBasis& basis) {
    const auto& C = *P.ctx();
    FqMat M(C.fq(), C.m(), C.m());
    for (std::uint32_t j = 0; j < C.m(); ++j) {
        const auto img = eval(P, basis.basis()[j]);
        const auto co = basis.coordinates(img);
        for (std::uint32_t i = 0; i < C.m(); ++i) M.set(i, j, co[i]);
    }
    return M;
}

/// Same, in the context's default basis.
inline FqMat to_endomorphism_matrix(const LinPoly& P) {
    const auto& C = *P.ctx();
    FqMat M(C.fq(), C.m(), C.m());
    std::vector<std::uint8_t> co(C.m());
    for (std::uint32_t j = 0; j < C.m(); ++j) {
        const auto img = eval(P, C.default_basis()[j]);
        C.coords_q(img, co.data());
        for (std::uint32_t i = 0; i < C.m(); ++i) M.set(i, j, co[i]);
    }
    return M;
}

/// Smallest d dividing m with every coefficient in GF(q^d).
inline std::uint32_t coeff_subfield_degree(const LinPoly& P) {
    const auto& C = *P.ctx();
    for (std::uint32_t d = 1; d <= C.m(); ++d) {
        if (C.m() % d != 0) continue;
        bool ok = true;
        for (int i = 0; i <= P.qdeg() && ok; ++i)
            ok = C.in_subfield(P.coeff(static_cast<std::size_t>(i)), d);
        if (ok) return d;
    }
    return C.m();
}

}  // namespace qcrt

#endif
