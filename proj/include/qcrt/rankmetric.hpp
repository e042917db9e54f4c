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
 * @file rankmetric.hpp
 * @brief Supports, rank and sum-rank weights, canonical subspaces of GF(q^m)
 * over GF(q), subspace products, and random errors of prescribed rank weight.
 *
 * A Subspace is stored as a reduced-row-echelon basis over GF(q), so equality
 * and inclusion of subspaces are plain matrix comparisons.
 */

#ifndef QCRT_RANKMETRIC_HPP
#define QCRT_RANKMETRIC_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcrt/fqmat.hpp"
#include "qcrt/gf.hpp"
#include "qcrt/linpoly.hpp"
#include "qcrt/rng.hpp"

namespace qcrt {

class Subspace {
   public:
    explicit Subspace(CtxPtr ctx)
        : ctx_(std::move(ctx)), mat_(ctx_->fq(), 0, ctx_->m()) {}

    /// Echelonized span of the given elements.
    static Subspace span_of(CtxPtr ctx, std::span<const FieldElement> gens) {
        const auto& C = *ctx;
        FqMat M(C.fq(), gens.size(), C.m());
        for (std::size_t i = 0; i < gens.size(); ++i) C.coords_q(gens[i], M.row(i));
        return from_rows(std::move(ctx), std::move(M));
    }

    static Subspace from_rows(CtxPtr ctx, FqMat rows) {
        auto piv = rows.rref();
        FqMat basis(ctx->fq(), piv.size(), ctx->m());
        for (std::size_t r = 0; r < piv.size(); ++r)
            std::copy(rows.row(r), rows.row(r) + ctx->m(), basis.row(r));
        Subspace s(std::move(ctx));
        s.mat_ = std::move(basis);
        return s;
    }

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t dim() const { return mat_.rows(); }
    const FqMat& basis_matrix() const { return mat_; }

    std::vector<FieldElement> basis_elements() const {
        std::vector<FieldElement> out;
        out.reserve(dim());
        for (std::size_t r = 0; r < dim(); ++r)
            out.push_back(ctx_->from_coords_q(std::span(mat_.row(r), ctx_->m())));
        return out;
    }

    bool contains(const FieldElement& x) const {
        std::vector<std::uint8_t> v(ctx_->m());
        ctx_->coords_q(x, v.data());
        return reduces_to_zero(v);
    }

    bool includes(const Subspace& other) const {
        for (std::size_t r = 0; r < other.dim(); ++r) {
            std::vector<std::uint8_t> v(other.mat_.row(r), other.mat_.row(r) + ctx_->m());
            if (!reduces_to_zero(v)) return false;
        }
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.mat_ == b.mat_;  // canonical form
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        check_same_context(a.ctx_, b.ctx_);
        FqMat M(a.ctx_->fq(), a.dim() + b.dim(), a.ctx_->m());
        for (std::size_t r = 0; r < a.dim(); ++r)
            std::copy(a.mat_.row(r), a.mat_.row(r) + a.ctx_->m(), M.row(r));
        for (std::size_t r = 0; r < b.dim(); ++r)
            std::copy(b.mat_.row(r), b.mat_.row(r) + a.ctx_->m(), M.row(a.dim() + r));
        return from_rows(a.ctx_, std::move(M));
    }

   private:
    bool reduces_to_zero(std::vector<std::uint8_t>& v) const {
        const auto& fq = ctx_->fq();
        for (std::size_t r = 0; r < mat_.rows(); ++r) {
            std::size_t piv = 0;
            while (piv < mat_.cols() && mat_.get(r, piv) == 0) ++piv;
            if (piv == mat_.cols()) continue;
            const std::uint8_t c = v[piv];
            if (!c) continue;
            for (std::size_t j = piv; j < mat_.cols(); ++j)
                v[j] = fq.sub(v[j], fq.mul(c, mat_.get(r, j)));
        }
        for (auto x : v)
            if (x) return false;
        return true;
    }

    CtxPtr ctx_;
    FqMat mat_;
};

/// supp(v): the GF(q)-subspace of GF(q^m) spanned by the coordinates.
inline Subspace support(CtxPtr ctx, std::span<const FieldElement> v) {
    return Subspace::span_of(std::move(ctx), v);
}

/// Support of a linearized polynomial: the span of its coefficient vector,
/// read as a word of the stated length (missing high coefficients are zero).
inline Subspace support(const LinPoly& P, std::size_t padded_len) {
    std::vector<FieldElement> v(padded_len, P.ctx()->zero());
    for (int i = 0; i <= P.qdeg() && static_cast<std::size_t>(i) < padded_len; ++i)
        v[static_cast<std::size_t>(i)] = P.coeff(static_cast<std::size_t>(i));
    return support(P.ctx(), v);
}

inline std::size_t rank_weight(CtxPtr ctx, std::span<const FieldElement> v) {
    return support(std::move(ctx), v).dim();
}

struct BlockPartition {
    std::vector<std::size_t> lengths;

    explicit BlockPartition(std::vector<std::size_t> ls) : lengths(std::move(ls)) {
        for (auto n : lengths)
            if (n == 0) throw std::invalid_argument("block lengths must be positive");
    }
    static BlockPartition single(std::size_t n) { return BlockPartition({n}); }
    static BlockPartition units(std::size_t n) {
        return BlockPartition(std::vector<std::size_t>(n, 1));
    }
    std::size_t total() const {
        std::size_t t = 0;
        for (auto n : lengths) t += n;
        return t;
    }
};

/// Sum of per-block rank weights; Hamming weight for unit blocks, rank weight
/// for a single block.
inline std::size_t sum_rank_weight(CtxPtr ctx, std::span<const FieldElement> v,
                                   const BlockPartition& part) {
    if (part.total() != v.size()) throw std::invalid_argument("partition does not match length");
    std::size_t acc = 0, off = 0;
    for (auto len : part.lengths) {
        acc += rank_weight(ctx, v.subspan(off, len));
        off += len;
    }
    return acc;
}

/// Uniform r-dimensional GF(q)-subspace of GF(q^m).
inline Subspace random_subspace(CtxPtr ctx, std::size_t r, Rng& rng) {
    const auto& C = *ctx;
    if (r > C.m()) throw std::invalid_argument("subspace dimension exceeds m");
    FqMat M(C.fq(), r, C.m());
    do {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < C.m(); ++j)
                M.set(i, j, static_cast<std::uint8_t>(rng.below(C.q())));
    } while (M.rank() != r);
    return Subspace::from_rows(std::move(ctx), std::move(M));
}

/// Uniform word of exact rank weight r in GF(q^m)^n: an m x r full-column-rank
/// matrix times an r x n full-row-rank matrix over GF(q), redrawn until full
/// rank; conditioned on weight r the output is uniform.
inline std::vector<FieldElement> random_error(CtxPtr ctx, std::size_t n, std::size_t r,
                                              Rng& rng) {
    const auto& C = *ctx;
    if (r > C.m() || r > n) throw std::invalid_argument("rank weight out of range");
    if (r == 0) return std::vector<FieldElement>(n, C.zero());
    FqMat A(C.fq(), C.m(), r);
    do {
        for (std::size_t i = 0; i < C.m(); ++i)
            for (std::size_t j = 0; j < r; ++j)
                A.set(i, j, static_cast<std::uint8_t>(rng.below(C.q())));
    } while (A.rank() != r);
    FqMat B(C.fq(), r, n);
    do {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j)
                B.set(i, j, static_cast<std::uint8_t>(rng.below(C.q())));
    } while (B.rank() != r);
    const FqMat W = A.mul(B);  // m x n coordinate matrix
    std::vector<FieldElement> out(n);
    std::vector<std::uint8_t> col(C.m());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < C.m(); ++i) col[i] = W.get(i, j);
        out[j] = C.from_coords_q(col);
    }
    return out;
}

/// Span of all pairwise products of basis elements; dim <= dim(A) * dim(B).
inline Subspace subspace_product(const Subspace& A, const Subspace& B) {
    check_same_context(A.ctx(), B.ctx());
    const auto& C = *A.ctx();
    const auto ea = A.basis_elements();
    const auto eb = B.basis_elements();
    std::vector<FieldElement> gens;
    gens.reserve(ea.size() * eb.size());
    for (const auto& a : ea)
        for (const auto& b : eb) gens.push_back(C.mul(a, b));
    return support(A.ctx(), gens);
}

/// The subfield GF(q^d) viewed as a GF(q)-subspace of GF(q^m).
inline Subspace subfield_subspace(CtxPtr ctx, std::uint32_t d) {
    const auto& basis = ctx->subfield_basis(d);
    return Subspace::span_of(std::move(ctx), basis);
}

}  // namespace qcrt

#endif
