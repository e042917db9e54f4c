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

// Dense matrices over the big field GF(q^m). Used for generator and parity
// machinery at code-construction time; decoding works over GF(q) instead.

#ifndef QCRT_GFMAT_HPP
#define QCRT_GFMAT_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcrt/gf.hpp"

namespace qcrt {

class GfMat {
   public:
    GfMat() = default;
    GfMat(CtxPtr ctx, std::size_t rows, std::size_t cols)
        : ctx_(std::move(ctx)), rows_(rows), cols_(cols), d_(rows * cols, FieldElement{}) {}

    static GfMat identity(CtxPtr ctx, std::size_t n) {
        GfMat m(ctx, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ctx->one();
        return m;
    }

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldElement& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

    friend bool operator==(const GfMat& a, const GfMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

    GfMat mul(const GfMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        const auto& C = *ctx_;
        GfMat r(ctx_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FieldElement& a = at(i, k);
                if (C.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const FieldElement& b = o.at(k, j);
                    if (!C.is_zero(b)) r.at(i, j) = C.add(r.at(i, j), C.mul(a, b));
                }
            }
        return r;
    }

    std::vector<FieldElement> apply(std::span<const FieldElement> x) const {
        if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
        const auto& C = *ctx_;
        std::vector<FieldElement> y(rows_, C.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const FieldElement& a = at(i, j);
                if (!C.is_zero(a) && !C.is_zero(x[j])) y[i] = C.add(y[i], C.mul(a, x[j]));
            }
        return y;
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref() {
        const auto& C = *ctx_;
        std::vector<std::size_t> pivots;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
            std::size_t sel = rank;
            while (sel < rows_ && C.is_zero(at(sel, c))) ++sel;
            if (sel == rows_) continue;
            if (sel != rank)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(rank, j), at(sel, j));
            const FieldElement inv = C.inv(at(rank, c));
            for (std::size_t j = c; j < cols_; ++j) at(rank, j) = C.mul(at(rank, j), inv);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank) continue;
                const FieldElement f = at(r, c);
                if (C.is_zero(f)) continue;
                for (std::size_t j = c; j < cols_; ++j)
                    at(r, j) = C.sub(at(r, j), C.mul(f, at(rank, j)));
            }
            pivots.push_back(c);
            ++rank;
        }
        return pivots;
    }

    std::size_t rank() const {
        GfMat copy = *this;
        return copy.rref().size();
    }

    /// Rows form a basis of { x : M x = 0 }.
    GfMat nullspace() const {
        const auto& C = *ctx_;
        GfMat M = *this;
        auto piv = M.rref();
        std::vector<bool> is_piv(cols_, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_piv[c]) free_cols.push_back(c);
        GfMat out(ctx_, free_cols.size(), cols_);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            const std::size_t fc = free_cols[k];
            out.at(k, fc) = C.one();
            for (std::size_t r = 0; r < piv.size(); ++r) {
                const FieldElement& v = M.at(r, fc);
                if (!C.is_zero(v)) out.at(k, piv[r]) = C.neg(v);
            }
        }
        return out;
    }

    GfMat vstack(const GfMat& o) const {
        if (cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
        GfMat r(ctx_, rows_ + o.rows_, cols_);
        std::copy(d_.begin(), d_.end(), r.d_.begin());
        std::copy(o.d_.begin(), o.d_.end(), r.d_.begin() + static_cast<long>(d_.size()));
        return r;
    }

   private:
    CtxPtr ctx_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> d_;
};

/// Row-space equality via ranks of the stack.
inline bool same_row_space(const GfMat& A, const GfMat& B) {
    if (A.cols() != B.cols()) return false;
    const std::size_t ra = A.rank(), rb = B.rank();
    if (ra != rb) return false;
    return A.vstack(B).rank() == ra;
}

}  // namespace qcrt

#endif
