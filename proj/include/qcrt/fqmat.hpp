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

// Dense matrices over GF(q), one byte per entry, with Gaussian elimination.
// Rows are padded to word boundaries; elimination uses word-wide XOR for
// q = 2 and word-parallel multiply-add with delayed reduction for odd p <= 13
// (entries stay below 256 between reductions). Other fields take the scalar
// path, which is plenty for the small matrices they appear in.

#ifndef QCRT_FQMAT_HPP
#define QCRT_FQMAT_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <vector>

#include "qcrt/gf.hpp"

namespace qcrt {

class FqMat {
   public:
    FqMat() = default;
    FqMat(SmallFq fq, std::size_t rows, std::size_t cols)
        : fq_(fq), rows_(rows), cols_(cols), stride_((cols + 7) & ~std::size_t{7}),
          d_(rows * stride_, 0) {}

    static FqMat identity(SmallFq fq, std::size_t n) {
        FqMat m(fq, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    const SmallFq& fq() const { return fq_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t get(std::size_t r, std::size_t c) const { return d_[r * stride_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint8_t v) { d_[r * stride_ + c] = v; }
    std::uint8_t* row(std::size_t r) { return d_.data() + r * stride_; }
    const std::uint8_t* row(std::size_t r) const { return d_.data() + r * stride_; }

    friend bool operator==(const FqMat& a, const FqMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

    FqMat transposed() const {
        FqMat t(fq_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, get(r, c));
        return t;
    }

    FqMat mul(const FqMat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
        FqMat r(fq_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const std::uint8_t a = get(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.set(i, j, fq_.add(r.get(i, j), fq_.mul(a, o.get(k, j))));
            }
        return r;
    }

    std::vector<std::uint8_t> apply(std::span<const std::uint8_t> x) const {
        if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<std::uint8_t> y(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint8_t acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if (x[c]) acc = fq_.add(acc, fq_.mul(get(r, c), x[c]));
            y[r] = acc;
        }
        return y;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        Elim el(*this);
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
            std::size_t sel = rank;
            while (sel < rows_ && el.read(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            el.swap_rows(rank, sel);
            el.normalize(rank, c);
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == rank) continue;
                const std::uint8_t v = el.read(r, c);
                if (v) el.eliminate(r, rank, v, c);
            }
            pivots.push_back(c);
            ++rank;
        }
        el.finish();
        return pivots;
    }

    std::size_t rank() const {
        FqMat copy = *this;
        return copy.rref().size();
    }

    /// Rows form a basis of { x : M x = 0 }.
    FqMat nullspace() const {
        FqMat M = *this;
        auto piv = M.rref();
        std::vector<bool> is_piv(cols_, false);
        for (auto c : piv) is_piv[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_piv[c]) free_cols.push_back(c);
        FqMat out(fq_, free_cols.size(), cols_);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            const std::size_t fc = free_cols[k];
            out.set(k, fc, 1);
            for (std::size_t r = 0; r < piv.size(); ++r) {
                const std::uint8_t v = M.get(r, fc);
                if (v) out.set(k, piv[r], fq_.neg(v));
            }
        }
        return out;
    }

    bool invert(FqMat& out) const {
        if (rows_ != cols_) return false;
        FqMat aug(fq_, rows_, 2 * cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::memcpy(aug.row(r), row(r), cols_);
            aug.set(r, cols_ + r, 1);
        }
        auto piv = aug.rref();
        if (piv.size() != rows_) return false;
        for (std::size_t r = 0; r < rows_; ++r)
            if (piv[r] != r) return false;
        out = FqMat(fq_, rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r) std::memcpy(out.row(r), aug.row(r) + cols_, cols_);
        return true;
    }

    // Elimination engine shared by rref() and solve paths. Keeps per-row
    // dirt counters for the delayed-reduction odd-p fast path.
    class Elim {
       public:
        explicit Elim(FqMat& M)
            : M_(M), p_(M.fq_.p), fast2_(M.fq_.q == 2),
              fast_odd_(M.fq_.e == 1 && M.fq_.p > 2 && M.fq_.p <= 13) {
            if (fast_odd_) {
                magic_ = detail::make_div_magic(p_);
                const std::uint32_t pm1 = p_ - 1;
                limit_ = (255 - pm1) / (pm1 * pm1);
                if (limit_ == 0) limit_ = 1;
                dirt_.assign(M_.rows_, 0);
            }
        }

        std::uint8_t read(std::size_t r, std::size_t c) const {
            const std::uint8_t v = M_.d_[r * M_.stride_ + c];
            return fast_odd_ ? static_cast<std::uint8_t>(v % p_) : v;
        }

        void swap_rows(std::size_t a, std::size_t b) {
            if (a == b) return;
            std::swap_ranges(M_.row(a), M_.row(a) + M_.stride_, M_.row(b));
            if (fast_odd_) std::swap(dirt_[a], dirt_[b]);
        }

        // Reduce row r and scale it so that entry (r, c) becomes 1.
        void normalize(std::size_t r, std::size_t c) {
            reduce_row(r);
            const std::uint8_t v = M_.get(r, c);
            if (v == 1) return;
            const std::uint8_t iv = M_.fq_.inv(v);
            auto* p = M_.row(r);
            if (fast_odd_) {
                for (std::size_t i = 0; i < M_.stride_; i += 8) {
                    std::uint64_t w;
                    std::memcpy(&w, p + i, 8);
                    w = detail::scale_mod(w, iv, p_, magic_);
                    std::memcpy(p + i, &w, 8);
                }
            } else {
                for (std::size_t j = 0; j < M_.cols_; ++j) p[j] = M_.fq_.mul(p[j], iv);
            }
        }

        // row r -= v * row src, valid from column c onward (earlier columns of
        // src are zero). src must be normalized.
        void eliminate(std::size_t r, std::size_t src, std::uint8_t v, std::size_t c) {
            const std::size_t from = (c / 8) * 8;
            auto* dst = M_.row(r) + from;
            const auto* s = M_.row(src) + from;
            const std::size_t nb = M_.stride_ - from;
            if (fast2_) {
                for (std::size_t i = 0; i < nb; i += 8) {
                    std::uint64_t a, b;
                    std::memcpy(&a, dst + i, 8);
                    std::memcpy(&b, s + i, 8);
                    a ^= b;
                    std::memcpy(dst + i, &a, 8);
                }
            } else if (fast_odd_) {
                const std::uint64_t f = p_ - v;  // add (p-v)*src
                for (std::size_t i = 0; i < nb; i += 8) {
                    std::uint64_t a, b;
                    std::memcpy(&a, dst + i, 8);
                    std::memcpy(&b, s + i, 8);
                    a += b * f;
                    std::memcpy(dst + i, &a, 8);
                }
                if (++dirt_[r] >= limit_) reduce_row(r);
            } else {
                const std::uint8_t f = M_.fq_.neg(v);
                for (std::size_t j = c; j < M_.cols_; ++j)
                    dst[j - from] = M_.fq_.add(dst[j - from], M_.fq_.mul(f, s[j - from]));
            }
        }

        void reduce_row(std::size_t r) {
            if (!fast_odd_) return;
            if (dirt_[r] == 0) return;
            auto* p = M_.row(r);
            for (std::size_t i = 0; i < M_.stride_; i += 8) {
                std::uint64_t w;
                std::memcpy(&w, p + i, 8);
                w = detail::mod_bytes(w, p_, magic_);
                std::memcpy(p + i, &w, 8);
            }
            dirt_[r] = 0;
        }

        void finish() {
            if (!fast_odd_) return;
            for (std::size_t r = 0; r < M_.rows_; ++r) reduce_row(r);
        }

       private:
        FqMat& M_;
        std::uint32_t p_;
        bool fast2_, fast_odd_;
        detail::DivMagic magic_;
        std::uint32_t limit_ = 0;
        std::vector<std::uint16_t> dirt_;
    };

   private:
    SmallFq fq_;
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint8_t> d_;

    friend struct FqSolveAccess;
};

enum class SolveKind { Unique, Inconsistent, Underdetermined };

struct FqSolve {
    SolveKind kind = SolveKind::Inconsistent;
    std::vector<std::uint8_t> x;  // filled only when kind == Unique
    std::size_t rank = 0;
};

/// Solves A x = b over GF(q) by forward elimination with back-substitution.
/// Consumes the augmented matrix [A | b] (unknowns = A's column count).
inline FqSolve solve_fq_augmented(FqMat Ab, std::size_t unknowns) {
    if (Ab.cols() != unknowns + 1)
        throw std::invalid_argument("augmented matrix must have unknowns + 1 columns");
    const std::size_t rows = Ab.rows();
    FqMat::Elim el(Ab);
    std::vector<std::size_t> pivcols;
    std::vector<std::size_t> pivrows;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < unknowns && rank < rows; ++c) {
        std::size_t sel = rank;
        while (sel < rows && el.read(sel, c) == 0) ++sel;
        if (sel == rows) continue;
        el.swap_rows(rank, sel);
        el.normalize(rank, c);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const std::uint8_t v = el.read(r, c);
            if (v) el.eliminate(r, rank, v, c);
        }
        pivcols.push_back(c);
        ++rank;
    }
    el.finish();
    FqSolve out;
    out.rank = rank;
    for (std::size_t r = rank; r < rows; ++r) {
        if (Ab.get(r, unknowns) != 0) {
            out.kind = SolveKind::Inconsistent;
            return out;
        }
    }
    if (rank < unknowns) {
        out.kind = SolveKind::Underdetermined;
        return out;
    }
    out.kind = SolveKind::Unique;
    out.x.assign(unknowns, 0);
    const auto& fq = Ab.fq();
    for (std::size_t i = rank; i-- > 0;) {
        const std::size_t pc = pivcols[i];
        std::uint8_t acc = Ab.get(i, unknowns);
        for (std::size_t j = pc + 1; j < unknowns; ++j) {
            const std::uint8_t a = Ab.get(i, j);
            if (a && out.x[j]) acc = fq.sub(acc, fq.mul(a, out.x[j]));
        }
        out.x[pc] = acc;  // pivot normalized to 1
    }
    return out;
}

inline FqSolve solve_fq_linear(const FqMat& A, std::span<const std::uint8_t> b) {
    if (b.size() != A.rows()) throw std::invalid_argument("rhs length mismatch");
    FqMat aug(A.fq(), A.rows(), A.cols() + 1);
    for (std::size_t r = 0; r < A.rows(); ++r) {
        std::memcpy(aug.row(r), A.row(r), A.cols());
        aug.set(r, A.cols(), b[r]);
    }
    return solve_fq_augmented(std::move(aug), A.cols());
}

}  // namespace qcrt

#endif
