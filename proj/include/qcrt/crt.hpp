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
 * @file crt.hpp
 * @brief Effective Chinese remaindering for linearized polynomials.
 *
 * A ModulusFamily F = (f_1, ..., f_s) carries the llcm chain
 * h_1 = f_1, h_{i+1} = h_i v f_{i+1} together with two cofactor sets, both
 * verified by replaying their Bezout identities at build time:
 *
 *   - chain cofactors (T1_i, T2_i) with T1_i o h_i + T2_i o f_{i+1} = X,
 *     used by the incremental lift (they keep intermediate q-degrees bounded);
 *   - direct cofactors (S1_i, S2_i) with S1_i o b_i + S2_i o f_i = X where
 *     b_i = llcm of the other moduli, used by the one-shot lift.
 *
 * Pairwise coprimality of the moduli is not enough for the chain to be
 * coprime; build_family rejects such inputs with ChainNotCoprime carrying the
 * 1-based index of the first modulus that collides with the chain.
 */

#ifndef QCRT_CRT_HPP
#define QCRT_CRT_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcrt/linpoly.hpp"
#include "qcrt/rankmetric.hpp"

namespace qcrt {

class ChainNotCoprime : public std::runtime_error {
   public:
    explicit ChainNotCoprime(std::size_t index)
        : std::runtime_error("modulus " + std::to_string(index) +
                             " is not coprime with the llcm chain"),
          index_(index) {}
    /// 1-based index of the first failing modulus.
    std::size_t index() const { return index_; }

   private:
    std::size_t index_;
};

class NotCoprime : public std::runtime_error {
   public:
    NotCoprime() : std::runtime_error("moduli are not right-coprime") {}
};

struct ModulusFamily {
    CtxPtr ctx;
    std::vector<LinPoly> moduli;       // f_i, monic, qdeg >= 1
    std::vector<LinPoly> chain;        // h_i = f_1 v ... v f_i
    std::vector<LinPoly> chain_t1;     // T1_i: inverse of h_i mod f_{i+1}
    std::vector<LinPoly> chain_t2;     // T2_i: inverse of f_{i+1} mod h_i
    std::vector<LinPoly> others_lcm;   // b_i = llcm_{j != i} f_j
    std::vector<LinPoly> s1;           // S1_i: inverse of b_i mod f_i
    std::vector<LinPoly> s2;           // S2_i: inverse of f_i mod b_i
    std::size_t n = 0;                 // sum of the q-degrees d_i
    std::uint32_t coeff_subfield_degree = 1;

    std::size_t size() const { return moduli.size(); }
    std::size_t degree(std::size_t i) const {
        return static_cast<std::size_t>(moduli[i].qdeg());
    }
    const LinPoly& lcm_all() const { return chain.back(); }
    BlockPartition partition() const {
        std::vector<std::size_t> ls(size());
        for (std::size_t i = 0; i < size(); ++i) ls[i] = degree(i);
        return BlockPartition(std::move(ls));
    }
};

using FamilyPtr = std::shared_ptr<const ModulusFamily>;

/// Builds the family: llcm chain, both cofactor sets, chain coprimality
/// verification, and the Bezout-identity replays.
inline FamilyPtr build_family(std::vector<LinPoly> moduli) {
    if (moduli.empty()) throw std::invalid_argument("empty modulus family");
    const CtxPtr ctx = moduli.front().ctx();
    auto fam = std::make_shared<ModulusFamily>();
    fam->ctx = ctx;
    for (auto& f : moduli) {
        check_same_context(ctx, f.ctx());
        if (f.is_zero() || f.qdeg() < 1)
            throw std::invalid_argument("every modulus must have q-degree >= 1");
        if (!f.is_monic()) throw std::invalid_argument("every modulus must be monic");
        fam->n += static_cast<std::size_t>(f.qdeg());
    }
    fam->moduli = std::move(moduli);
    const std::size_t s = fam->moduli.size();
    const LinPoly X = LinPoly::identity(ctx);

    // llcm chain with coprimality checks and chain cofactors
    fam->chain.push_back(fam->moduli[0]);
    for (std::size_t i = 1; i < s; ++i) {
        auto eg = rgcd_extended(fam->chain.back(), fam->moduli[i]);
        if (eg.g.qdeg() != 0) throw ChainNotCoprime(i + 1);
        // scale so that u o h + v o f = X exactly
        fam->chain_t1.push_back(eg.u);
        fam->chain_t2.push_back(eg.v);
        if (compose(eg.u, fam->chain.back()) + compose(eg.v, fam->moduli[i]) != X)
            throw std::logic_error("chain Bezout replay failed");
        fam->chain.push_back(llcm(fam->chain.back(), fam->moduli[i]));
    }
    if (fam->chain.back().qdeg() != static_cast<int>(fam->n))
        throw std::logic_error("llcm chain degree mismatch");

    // b_i via prefix/suffix llcms
    if (s == 1) {
        fam->others_lcm.push_back(X);
        fam->s1.push_back(X);
        fam->s2.push_back(LinPoly::zero(ctx));
    } else {
        std::vector<LinPoly> suffix(s, X);
        suffix[s - 1] = fam->moduli[s - 1];
        for (std::size_t i = s - 1; i-- > 0;) suffix[i] = llcm(fam->moduli[i], suffix[i + 1]);
        for (std::size_t i = 0; i < s; ++i) {
            LinPoly b = (i == 0) ? suffix[1]
                        : (i == s - 1)
                            ? fam->chain[s - 2]
                            : llcm(fam->chain[i - 1], suffix[i + 1]);
            auto eg = rgcd_extended(b, fam->moduli[i]);
            if (eg.g.qdeg() != 0) throw ChainNotCoprime(i + 1);
            if (compose(eg.u, b) + compose(eg.v, fam->moduli[i]) != X)
                throw std::logic_error("direct Bezout replay failed");
            fam->others_lcm.push_back(std::move(b));
            fam->s1.push_back(eg.u);
            fam->s2.push_back(eg.v);
        }
    }

    std::uint32_t csd = 1;
    for (const auto& f : fam->moduli) {
        const std::uint32_t d = coeff_subfield_degree(f);
        // smallest divisor of m containing both current and d
        for (std::uint32_t cand = std::max(csd, d); cand <= ctx->m(); ++cand) {
            if (ctx->m() % cand != 0 || cand % csd != 0 || cand % d != 0) continue;
            csd = cand;
            break;
        }
    }
    fam->coeff_subfield_degree = csd;
    return fam;
}

/// Residues of g modulo each f_i by right division; entry i has qdeg < d_i.
inline std::vector<LinPoly> residues(const LinPoly& g, const ModulusFamily& fam) {
    std::vector<LinPoly> out;
    out.reserve(fam.size());
    for (const auto& f : fam.moduli) out.push_back(rrem(g, f));
    return out;
}

/// Two-modulus Chinese remainder lift: the unique G with qdeg < d1 + d2,
/// G = r1 mod f1 and G = r2 mod f2.
inline LinPoly crt_pair(const LinPoly& r1, const LinPoly& r2, const LinPoly& f1,
                        const LinPoly& f2) {
    check_same_context(f1.ctx(), f2.ctx());
    if (r1.qdeg() >= f1.qdeg() || r2.qdeg() >= f2.qdeg())
        throw std::invalid_argument("residue degree exceeds modulus");
    auto eg = rgcd_extended(f1, f2);
    if (eg.g.qdeg() != 0) throw NotCoprime();
    // eg.u o f1 + eg.v o f2 = X: eg.u inverts f1 mod f2, eg.v inverts f2 mod f1
    const LinPoly G = compose(compose(r2, eg.u), f1) + compose(compose(r1, eg.v), f2);
    return rrem(G, llcm(f1, f2));
}

/// Incremental lift g_i = r_i o T1_{i-1} o h_{i-1} + g_{i-1} o T2_{i-1} o f_i,
/// reduced mod h_i at every step so intermediate q-degrees stay below the
/// chain degree. `upto` truncates to the first `upto` moduli (early exit).
inline LinPoly crt_lift_incremental(std::span<const LinPoly> resid, const ModulusFamily& fam,
                                    std::size_t upto = SIZE_MAX) {
    const std::size_t s = std::min(upto, fam.size());
    if (resid.size() < s) throw std::invalid_argument("residue count mismatch");
    for (std::size_t i = 0; i < s; ++i)
        if (resid[i].qdeg() >= fam.moduli[i].qdeg())
            throw std::invalid_argument("residue degree exceeds modulus");
    LinPoly g = resid[0];
    for (std::size_t i = 1; i < s; ++i) {
        const LinPoly a = compose(compose(resid[i], fam.chain_t1[i - 1]), fam.chain[i - 1]);
        const LinPoly b = compose(compose(g, fam.chain_t2[i - 1]), fam.moduli[i]);
        g = rrem(a + b, fam.chain[i]);
    }
    return g;
}

/// One-shot lift G = sum_i r_i o S1_i o b_i reduced mod the full llcm.
inline LinPoly crt_lift_direct(std::span<const LinPoly> resid, const ModulusFamily& fam) {
    if (resid.size() != fam.size()) throw std::invalid_argument("residue count mismatch");
    LinPoly G = LinPoly::zero(fam.ctx);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        if (resid[i].qdeg() >= fam.moduli[i].qdeg())
            throw std::invalid_argument("residue degree exceeds modulus");
        G = G + compose(compose(resid[i], fam.s1[i]), fam.others_lcm[i]);
    }
    return rrem(G, fam.lcm_all());
}

}  // namespace qcrt

#endif
