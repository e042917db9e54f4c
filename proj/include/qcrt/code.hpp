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
 * @file code.hpp
 * @brief The residue code C_{F,k,A}: messages are linearized polynomials P of
 * q-degree < k, encoded as the residues of P o A modulo the family F.
 *
 * Codewords are stored as residue blocks (qdeg < d_i each) and flattened to
 * length-n words over GF(q^m) by concatenating block coefficients in modulus
 * order, coefficient index ascending. Generator and parity machinery is
 * cached lazily behind a one-time barrier; CodeSpec is immutable afterwards.
 *
 * The minimum distance is neither computed nor asserted anywhere; an
 * exhaustive search tool exists for tiny parameters only.
 */

#ifndef QCRT_CODE_HPP
#define QCRT_CODE_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcrt/crt.hpp"
#include "qcrt/gfmat.hpp"
#include "qcrt/linpoly.hpp"
#include "qcrt/rankmetric.hpp"

namespace qcrt {

struct Codeword {
    std::vector<std::vector<FieldElement>> blocks;  // block i has length d_i

    friend bool operator==(const Codeword&, const Codeword&) = default;
};

class CodeSpec;
using SpecPtr = std::shared_ptr<const CodeSpec>;

class CodeSpec {
   public:
    static SpecPtr make(FamilyPtr fam, std::size_t k, LinPoly A) {
        return std::shared_ptr<const CodeSpec>(new CodeSpec(std::move(fam), k, std::move(A)));
    }

    const FamilyPtr& family() const { return fam_; }
    const CtxPtr& ctx() const { return fam_->ctx; }
    std::size_t k() const { return k_; }
    std::size_t alpha() const { return alpha_; }
    std::size_t n() const { return fam_->n; }
    const LinPoly& A() const { return A_; }

    /// k x n matrix whose row i is the flat codeword of the monomial X^{q^i}.
    const GfMat& generator_matrix() const {
        std::call_once(gen_once_, [this] { gen_ = build_generator(); });
        return *gen_;
    }

    /// alpha x (k+alpha) parity block of { coefficients of P o A : qdeg P < k }.
    const GfMat& subcode_parity() const {
        std::call_once(sub_once_, [this] { sub_ = build_subcode_parity(); });
        return *sub_;
    }

    /// n x n matrix of the lift: column j is the coefficient vector of the
    /// lift of the unit residue tuple with flat coordinate j.
    const GfMat& lift_matrix() const {
        std::call_once(lift_once_, [this] { lift_ = build_lift_matrix(); });
        return *lift_;
    }

    /// (n-k) x n parity-check matrix: w is a codeword iff H w = 0.
    const GfMat& parity_check_matrix() const {
        std::call_once(par_once_, [this] { par_ = build_parity(); });
        return *par_;
    }

   private:
    CodeSpec(FamilyPtr fam, std::size_t k, LinPoly A)
        : fam_(std::move(fam)), k_(k), A_(std::move(A)) {
        check_same_context(fam_->ctx, A_.ctx());
        if (A_.is_zero()) throw std::invalid_argument("A must be nonzero");
        alpha_ = static_cast<std::size_t>(A_.qdeg());
        if (k_ < 1) throw std::invalid_argument("k must be >= 1");
        if (k_ + alpha_ >= fam_->n)
            throw std::invalid_argument("k + qdeg(A) must be less than n");
    }

    GfMat build_generator() const;
    GfMat build_subcode_parity() const;
    GfMat build_lift_matrix() const;
    GfMat build_parity() const;

    FamilyPtr fam_;
    std::size_t k_;
    std::size_t alpha_;
    LinPoly A_;

    mutable std::once_flag gen_once_, sub_once_, lift_once_, par_once_;
    mutable std::optional<GfMat> gen_, sub_, lift_, par_;
};

// ---- codeword layout ----

inline std::vector<FieldElement> flat(const Codeword& cw) {
    std::vector<FieldElement> out;
    for (const auto& b : cw.blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Codeword word_from_flat(const ModulusFamily& fam, std::span<const FieldElement> v) {
    if (v.size() != fam.n) throw std::invalid_argument("flat word length mismatch");
    Codeword cw;
    std::size_t off = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const std::size_t d = fam.degree(i);
        cw.blocks.emplace_back(v.begin() + static_cast<long>(off),
                               v.begin() + static_cast<long>(off + d));
        off += d;
    }
    return cw;
}

inline Codeword word_from_residues(const ModulusFamily& fam, std::span<const LinPoly> resid) {
    if (resid.size() != fam.size()) throw std::invalid_argument("residue count mismatch");
    Codeword cw;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const std::size_t d = fam.degree(i);
        if (resid[i].qdeg() >= static_cast<int>(d))
            throw std::invalid_argument("residue degree exceeds modulus");
        std::vector<FieldElement> b(d, fam.ctx->zero());
        for (int t = 0; t <= resid[i].qdeg(); ++t)
            b[static_cast<std::size_t>(t)] = resid[i].coeff(static_cast<std::size_t>(t));
        cw.blocks.push_back(std::move(b));
    }
    return cw;
}

inline std::vector<LinPoly> residues_of_word(const ModulusFamily& fam, const Codeword& cw) {
    std::vector<LinPoly> out;
    out.reserve(cw.blocks.size());
    for (const auto& b : cw.blocks) out.emplace_back(fam.ctx, b);
    return out;
}

// ---- encoding ----

/// Residue encoding of message P (qdeg < k): block i is P o A mod f_i.
inline Codeword encode(const CodeSpec& spec, const LinPoly& P) {
    if (P.qdeg() >= static_cast<int>(spec.k()))
        throw std::invalid_argument("message degree too large");
    const auto r = residues(compose(P, spec.A()), *spec.family());
    return word_from_residues(*spec.family(), r);
}

inline GfMat CodeSpec::build_generator() const {
    const auto ctx = fam_->ctx;
    GfMat G(ctx, k_, fam_->n);
    for (std::size_t i = 0; i < k_; ++i) {
        const auto row = flat(encode(*this, LinPoly::monomial(ctx, i, ctx->one())));
        for (std::size_t j = 0; j < fam_->n; ++j) G.at(i, j) = row[j];
    }
    return G;
}

inline GfMat CodeSpec::build_subcode_parity() const {
    const auto ctx = fam_->ctx;
    const std::size_t cols = k_ + alpha_;
    GfMat GA(ctx, k_, cols);
    for (std::size_t i = 0; i < k_; ++i) {
        const LinPoly w = compose(LinPoly::monomial(ctx, i, ctx->one()), A_);
        for (std::size_t j = 0; j < cols; ++j) GA.at(i, j) = w.coeff(j);
    }
    return GA.nullspace();  // alpha rows once A != 0
}

inline GfMat CodeSpec::build_lift_matrix() const {
    const auto ctx = fam_->ctx;
    const std::size_t n = fam_->n;
    GfMat M(ctx, n, n);
    std::size_t col = 0;
    for (std::size_t i = 0; i < fam_->size(); ++i) {
        for (std::size_t t = 0; t < fam_->degree(i); ++t, ++col) {
            std::vector<LinPoly> resid;
            resid.reserve(fam_->size());
            for (std::size_t j = 0; j < fam_->size(); ++j)
                resid.push_back(j == i ? LinPoly::monomial(ctx, t, ctx->one())
                                       : LinPoly::zero(ctx));
            const LinPoly lifted = crt_lift_incremental(resid, *fam_);
            for (std::size_t r = 0; r < n; ++r) M.at(r, col) = lifted.coeff(r);
        }
    }
    return M;
}

inline GfMat CodeSpec::build_parity() const {
    const auto ctx = fam_->ctx;
    const std::size_t n = fam_->n;
    const std::size_t low = k_ + alpha_;
    // K_A: subcode parity on coefficients 0..k+alpha-1 stacked over the
    // identity selecting coefficients k+alpha..n-1
    GfMat K(ctx, n - k_, n);
    const GfMat& HA = subcode_parity();
    for (std::size_t r = 0; r < alpha_; ++r)
        for (std::size_t c = 0; c < low; ++c) K.at(r, c) = HA.at(r, c);
    for (std::size_t r = 0; r < n - low; ++r) K.at(alpha_ + r, low + r) = ctx->one();
    return K.mul(lift_matrix());
}

// ---- special families ----

/// f = X^q - z^{q-1} X, the degree-one modulus whose kernel is <z>.
inline LinPoly point_modulus(const CtxPtr& ctx, const FieldElement& z) {
    if (ctx->is_zero(z)) throw std::invalid_argument("point must be nonzero");
    const FieldElement zq1 = ctx->mul(ctx->frobenius_q(z, 1), ctx->inv(z));
    return LinPoly(ctx, {ctx->neg(zq1), ctx->one()});
}

/// Degree-one moduli from GF(q)-independent points; n = number of points.
inline FamilyPtr make_point_family(const CtxPtr& ctx, std::span<const FieldElement> pts) {
    std::vector<LinPoly> mods;
    mods.reserve(pts.size());
    for (const auto& z : pts) mods.push_back(point_modulus(ctx, z));
    return build_family(std::move(mods));
}

/// The two-modulus family f_1 = X^{q^ldeg}, f_2 = X^{q^m} - X.
inline FamilyPtr make_two_block_family(const CtxPtr& ctx, std::size_t ldeg) {
    if (ldeg < 1 || ldeg >= ctx->m())
        throw std::invalid_argument("ldeg must be in [1, m)");
    LinPoly f1 = LinPoly::monomial(ctx, ldeg, ctx->one());
    std::vector<FieldElement> c2(ctx->m() + 1, ctx->zero());
    c2[0] = ctx->neg(ctx->one());
    c2[ctx->m()] = ctx->one();
    return build_family({std::move(f1), LinPoly(ctx, std::move(c2))});
}

/// Moore-style generator of the evaluation code on the given points,
/// right-multiplied by diag(weights) when weights are supplied: entry (i, j)
/// = pts_j^{q^i} * weights_j.
inline GfMat moore_matrix(const CtxPtr& ctx, std::span<const FieldElement> pts, std::size_t k,
                          std::span<const FieldElement> weights = {}) {
    GfMat M(ctx, k, pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        FieldElement v = pts[j];
        for (std::size_t i = 0; i < k; ++i) {
            M.at(i, j) = weights.empty() ? v : ctx->mul(v, weights[j]);
            v = ctx->frobenius_q(v, 1);
        }
    }
    return M;
}

/// Closed-form generator for the two-block family: block 1 truncates
/// X^{q^i} o A to q-degree < ldeg; block 2 reduces it mod X^{q^m} - X by
/// folding exponents mod m.
inline GfMat two_block_generator(const CodeSpec& spec, std::size_t ldeg) {
    const auto ctx = spec.ctx();
    const std::size_t mm = ctx->m();
    if (spec.family()->size() != 2 || spec.family()->degree(0) != ldeg ||
        spec.family()->degree(1) != mm)
        throw std::invalid_argument("spec is not a two-block instance");
    GfMat G(ctx, spec.k(), ldeg + mm);
    for (std::size_t i = 0; i < spec.k(); ++i) {
        for (std::size_t t = 0; t <= spec.alpha(); ++t) {
            const FieldElement a = ctx->frobenius_q(spec.A().coeff(t), i);
            const std::size_t pos = t + i;
            if (pos < ldeg) G.at(i, pos) = ctx->add(G.at(i, pos), a);
            G.at(i, ldeg + pos % mm) = ctx->add(G.at(i, ldeg + pos % mm), a);
        }
    }
    return G;
}

/// Exhaustive minimum rank distance for tiny parameters (q^{m k} <= 2^24).
inline std::size_t min_distance_exhaustive(const CodeSpec& spec) {
    const auto ctx = spec.ctx();
    double bits = 0;
    for (std::size_t i = 0; i < spec.k(); ++i) bits += ctx->coord_count() * std::log2(ctx->p());
    if (bits > 24) throw std::invalid_argument("parameter space too large for exhaustion");
    const std::uint64_t per = [&] {
        std::uint64_t v = 1;
        for (std::size_t i = 0; i < ctx->coord_count(); ++i) v *= ctx->p();
        return v;
    }();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < spec.k(); ++i) total *= per;
    std::size_t best = spec.n() + 1;
    std::vector<FieldElement> coeffs(spec.k(), ctx->zero());
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (std::size_t i = 0; i < spec.k(); ++i) {
            std::uint64_t ci = v % per;
            v /= per;
            FieldElement x{};
            for (std::size_t c = 0; c < ctx->coord_count(); ++c) {
                ctx->set_coord(x, c, static_cast<std::uint32_t>(ci % ctx->p()));
                ci /= ctx->p();
            }
            coeffs[i] = x;
        }
        const LinPoly P(ctx, coeffs);
        if (P.is_zero()) continue;
        const auto w = flat(encode(spec, P));
        best = std::min(best, rank_weight(ctx, w));
        if (best == 1) break;
    }
    return best;
}

}  // namespace qcrt

#endif
