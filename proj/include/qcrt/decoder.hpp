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
 * @file decoder.hpp
 * @brief Probabilistic syndrome decoder for the residue codes.
 *
 * Pipeline for a received word y:
 *   1. lift Y of y through the Chinese remainder map (incremental variant);
 *   2. the part of Y at q-degrees >= k+alpha is error-only; its support
 *      estimates the lifted-error support (dimension rhat);
 *   3. syndrome s = H_A * (low coefficients of Y); the low error part is
 *      written in the support basis, giving rhat*(k+alpha) unknowns over
 *      GF(q) against m*alpha equations, and solved by Gaussian elimination;
 *   4. subtracting the error leaves P o A, and right division by A yields P;
 *   5. the result is accepted only if the re-encoded word lies within rank
 *      distance r_max of y.
 *
 * Underdetermined systems are reported as failures rather than resolved by an
 * arbitrary choice: any particular solution may silently decode to a wrong
 * message. decode() requires moduli with coefficients in GF(q); for moduli
 * over GF(q^l) use decode_extended(), whose radius budget shrinks by 1/l.
 */

#ifndef QCRT_DECODER_HPP
#define QCRT_DECODER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcrt/code.hpp"
#include "qcrt/fqmat.hpp"
#include "qcrt/rankmetric.hpp"

namespace qcrt {

enum class FailureReason {
    SupportDeficient,      // syndrome system inconsistent: high part missed support
    SystemUnderdetermined, // fewer independent equations than unknowns
    ResidualDivision,      // right division by A left a remainder
    DistanceCheck          // re-encoded word farther than r_max
};

inline const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::SupportDeficient: return "SupportDeficient";
        case FailureReason::SystemUnderdetermined: return "SystemUnderdetermined";
        case FailureReason::ResidualDivision: return "ResidualDivision";
        case FailureReason::DistanceCheck: return "DistanceCheck";
    }
    return "?";
}

struct DecodeDiagnostics {
    std::size_t high_support_dim = 0;      // dim of the observed support
    std::size_t support_budget = 0;        // l * r_max
    std::size_t system_unknowns = 0;
    std::size_t system_equations = 0;
    std::size_t residual_rank_distance = 0;      // on Success
    std::size_t residual_sum_rank_distance = 0;  // on Success
};

struct DecodeResult {
    bool success = false;
    LinPoly message;                       // valid on success
    std::size_t error_weight = 0;          // rank distance of re-encoded word
    std::optional<FailureReason> reason;
    DecodeDiagnostics diag;
};

namespace detail_decode {

inline DecodeResult decode_impl(const CodeSpec& spec, const Codeword& y, std::size_t r_max,
                                std::uint32_t l_eff) {
    const auto& fam = *spec.family();
    const auto ctx = spec.ctx();
    const auto& C = *ctx;
    const std::size_t n = spec.n(), k = spec.k(), alpha = spec.alpha();
    const std::size_t low_len = k + alpha;

    DecodeResult res;
    res.diag.support_budget = static_cast<std::size_t>(l_eff) * r_max;
    res.diag.system_equations = C.m() * alpha;

    // step 1: lift
    const auto resid = residues_of_word(fam, y);
    const LinPoly Y = crt_lift_incremental(resid, fam);

    // step 2: observable high part and its support
    std::vector<FieldElement> high(n - low_len, C.zero());
    for (std::size_t t = low_len; t < n; ++t)
        high[t - low_len] = Y.coeff(t);
    const Subspace sup = support(ctx, high);
    const std::size_t rhat = sup.dim();
    res.diag.high_support_dim = rhat;

    // step 3: syndrome system over GF(q)
    std::vector<FieldElement> low(low_len, C.zero());
    for (std::size_t t = 0; t < low_len; ++t) low[t] = Y.coeff(t);
    const GfMat& HA = spec.subcode_parity();
    const auto synd = HA.apply(low);

    const std::size_t unknowns = rhat * low_len;
    res.diag.system_unknowns = unknowns;
    const std::size_t m = C.m();
    std::vector<FieldElement> eps = sup.basis_elements();

    FqMat aug(C.fq(), m * alpha, unknowns + 1);
    std::vector<std::uint8_t> co(m);
    for (std::size_t a = 0; a < alpha; ++a) {
        for (std::size_t t = 0; t < low_len; ++t) {
            const FieldElement& h = HA.at(a, t);
            if (C.is_zero(h)) continue;
            for (std::size_t j = 0; j < rhat; ++j) {
                const FieldElement prod = C.mul(h, eps[j]);
                C.coords_q(prod, co.data());
                const std::size_t colidx = t * rhat + j;
                for (std::size_t mu = 0; mu < m; ++mu)
                    if (co[mu]) aug.set(a * m + mu, colidx, co[mu]);
            }
        }
        C.coords_q(synd[a], co.data());
        for (std::size_t mu = 0; mu < m; ++mu) aug.set(a * m + mu, unknowns, co[mu]);
    }
    const FqSolve sol = solve_fq_augmented(std::move(aug), unknowns);
    if (sol.kind == SolveKind::Inconsistent) {
        res.reason = FailureReason::SupportDeficient;
        return res;
    }
    if (sol.kind == SolveKind::Underdetermined) {
        res.reason = FailureReason::SystemUnderdetermined;
        return res;
    }

    // step 4: P o A = Y - E
    std::vector<FieldElement> pa(low_len, C.zero());
    for (std::size_t t = 0; t < low_len; ++t) {
        FieldElement elow = C.zero();
        for (std::size_t j = 0; j < rhat; ++j) {
            const std::uint8_t u = sol.x[t * rhat + j];
            if (u) elow = C.add(elow, C.mul(C.fq_element(u), eps[j]));
        }
        pa[t] = C.sub(low[t], elow);
    }

    // step 5: right division by A
    auto [msg, rem] = rquorem(LinPoly(ctx, std::move(pa)), spec.A());
    if (!rem.is_zero()) {
        res.reason = FailureReason::ResidualDivision;
        return res;
    }

    // verification: re-encode and check the rank distance
    const auto reenc = flat(encode(spec, msg));
    const auto yflat = flat(y);
    std::vector<FieldElement> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = C.sub(yflat[i], reenc[i]);
    res.diag.residual_rank_distance = rank_weight(ctx, diff);
    res.diag.residual_sum_rank_distance = sum_rank_weight(ctx, diff, fam.partition());
    if (res.diag.residual_rank_distance > r_max) {
        res.reason = FailureReason::DistanceCheck;
        return res;
    }
    res.success = true;
    res.message = std::move(msg);
    res.error_weight = res.diag.residual_rank_distance;
    return res;
}

}  // namespace detail_decode

/// Largest admissible rank weights: the linear-system bound floor(m a / (l (k+a))),
/// the observable-support bound floor((n-k-a)/l), and the generic unique
/// decoding radius floor((n-k)/2).
struct RadiusBounds {
    std::size_t system_bound = 0;
    std::size_t support_bound = 0;
    std::size_t unique_radius = 0;
};

inline RadiusBounds decode_bounds(const CodeSpec& spec, std::uint32_t l) {
    const std::size_t m = spec.ctx()->m();
    RadiusBounds b;
    b.system_bound = m * spec.alpha() / (static_cast<std::size_t>(l) * (spec.k() + spec.alpha()));
    b.support_bound = (spec.n() - spec.k() - spec.alpha()) / l;
    b.unique_radius = (spec.n() - spec.k()) / 2;
    return b;
}

/// Decoder for families whose moduli have coefficients in GF(q).
inline DecodeResult decode(const CodeSpec& spec, const Codeword& y, std::size_t r_max) {
    if (spec.family()->coeff_subfield_degree != 1)
        throw std::invalid_argument("decode requires moduli over GF(q); use decode_extended");
    const auto b = decode_bounds(spec, 1);
    if (r_max > std::min(b.system_bound, b.support_bound))
        throw std::invalid_argument("r_max exceeds the decoding bounds");
    return detail_decode::decode_impl(spec, y, r_max, 1);
}

/// Decoder for families whose moduli have coefficients in GF(q^l): identical
/// pipeline with the support budget scaled by l.
inline DecodeResult decode_extended(const CodeSpec& spec, const Codeword& y,
                                    std::size_t r_max) {
    const std::uint32_t l = spec.family()->coeff_subfield_degree;
    const auto b = decode_bounds(spec, l);
    if (r_max > std::min(b.system_bound, b.support_bound))
        throw std::invalid_argument("r_max exceeds the decoding bounds");
    return detail_decode::decode_impl(spec, y, r_max, l);
}

}  // namespace qcrt

#endif
