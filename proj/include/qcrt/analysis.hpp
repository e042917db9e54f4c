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
 * @file analysis.hpp
 * @brief Closed-form decoding-success probabilities, radius bounds, and
 * rank-population counting.
 *
 * The success probability of support recovery from the observable part,
 * conditioned on a lifted error of rank weight r, is
 *
 *     q^{r(k+alpha)} * prod_{i=0}^{r-1} (q^{n-(k+alpha)} - q^i) / (q^n - q^i),
 *
 * independent of m. Probabilities are evaluated as exp of summed logs (the
 * plain product overflows any fixed-width integer long before the parameter
 * scales of interest, e.g. q = 5 with r(k+alpha) in the thousands), with an
 * exact-rational variant for cross-checking.
 */

#ifndef QCRT_ANALYSIS_HPP
#define QCRT_ANALYSIS_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qcrt {

struct CodeParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t alpha = 0;
    std::uint64_t q = 2;
    std::uint32_t m = 1;
    std::uint32_t l = 1;

    void validate() const {
        if (k + alpha >= n) throw std::invalid_argument("requires k + alpha < n");
        if (l < 1 || m % l != 0) throw std::invalid_argument("l must divide m");
        if (q < 2) throw std::invalid_argument("q must be at least 2");
    }
};

namespace detail_analysis {

// log(q^a - q^i) for a > i, in natural log
inline long double log_qpow_diff(long double lq, std::size_t a, std::size_t i) {
    return static_cast<long double>(a) * lq +
           std::log1p(-std::exp(-(static_cast<long double>(a - i)) * lq));
}

inline long double capture_log(std::uint64_t q, std::size_t n, std::size_t ka, std::size_t r) {
    const long double lq = std::log(static_cast<long double>(q));
    long double acc = static_cast<long double>(r) * static_cast<long double>(ka) * lq;
    for (std::size_t i = 0; i < r; ++i)
        acc += log_qpow_diff(lq, n - ka, i) - log_qpow_diff(lq, n, i);
    return acc;
}

inline mpq_class capture_exact(std::uint64_t q, std::size_t n, std::size_t ka, std::size_t r) {
    const mpz_class Q(static_cast<unsigned long>(q));
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(r * ka));
    den = 1;
    mpz_class qn, qnka, qi;
    mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
    mpz_ui_pow_ui(qnka.get_mpz_t(), static_cast<unsigned long>(q),
                  static_cast<unsigned long>(n - ka));
    qi = 1;
    for (std::size_t i = 0; i < r; ++i) {
        num *= (qnka - qi);
        den *= (qn - qi);
        qi *= Q;
    }
    mpq_class res(num, den);
    res.canonicalize();
    return res;
}

}  // namespace detail_analysis

/// P(observable support = full lifted support | rank weight exactly r).
/// Returns 1 for r = 0 and clamps to 0 beyond the observable window
/// (r > n-k-alpha). The value does not depend on m.
inline double success_probability(const CodeParams& p, std::size_t r) {
    p.validate();
    if (r == 0) return 1.0;
    const std::size_t ka = p.k + p.alpha;
    if (r > p.n - ka) return 0.0;
    return static_cast<double>(
        std::exp(detail_analysis::capture_log(p.q, p.n, ka, r)));
}

inline mpq_class success_probability_exact(const CodeParams& p, std::size_t r) {
    p.validate();
    if (r == 0) return mpq_class(1);
    const std::size_t ka = p.k + p.alpha;
    if (r > p.n - ka) return mpq_class(0);
    return detail_analysis::capture_exact(p.q, p.n, ka, r);
}

/// One-sided upper bound for moduli over GF(q^l): the same formula with r*l
/// in place of r. The hard domain is r <= floor(m/l) (rank weights above it
/// cannot occur); the observable-window boundary clamps to 0 instead.
inline double success_probability_bound(const CodeParams& p, std::size_t r) {
    p.validate();
    if (r > p.m / p.l) throw std::out_of_range("r exceeds floor(m/l)");
    if (r == 0) return 1.0;
    const std::size_t ka = p.k + p.alpha;
    const std::size_t rl = r * p.l;
    if (rl > p.n - ka) return 0.0;
    return static_cast<double>(
        std::exp(detail_analysis::capture_log(p.q, p.n, ka, rl)));
}

inline mpq_class success_probability_bound_exact(const CodeParams& p, std::size_t r) {
    p.validate();
    if (r > p.m / p.l) throw std::out_of_range("r exceeds floor(m/l)");
    if (r == 0) return mpq_class(1);
    const std::size_t ka = p.k + p.alpha;
    const std::size_t rl = r * p.l;
    if (rl > p.n - ka) return mpq_class(0);
    return detail_analysis::capture_exact(p.q, p.n, ka, rl);
}

struct DecodingRadius {
    std::size_t system_bound = 0;   // floor(m*alpha / (l*(k+alpha)))
    std::size_t support_bound = 0;  // floor((n-k-alpha) / l)
    std::size_t unique_radius = 0;  // floor((n-k)/2)
};

inline DecodingRadius decoding_radius(const CodeParams& p) {
    p.validate();
    DecodingRadius d;
    d.system_bound =
        static_cast<std::size_t>(p.m) * p.alpha / (static_cast<std::size_t>(p.l) * (p.k + p.alpha));
    d.support_bound = (p.n - p.k - p.alpha) / p.l;
    d.unique_radius = (p.n - p.k) / 2;
    return d;
}

/// Exact number of words of rank weight r in GF(q^m)^n:
/// prod_{i=0}^{r-1} (q^n - q^i)(q^m - q^i) / (q^r - q^i).
inline mpz_class count_rank_words(std::size_t n, std::uint32_t m, std::uint64_t q,
                                  std::size_t r) {
    if (r > n || r > m) throw std::invalid_argument("rank exceeds min(m, n)");
    if (r == 0) return mpz_class(1);
    const mpz_class Q(static_cast<unsigned long>(q));
    mpz_class qn, qm, qr, qi, num(1), den(1);
    mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
    mpz_ui_pow_ui(qm.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(m));
    mpz_ui_pow_ui(qr.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(r));
    qi = 1;
    for (std::size_t i = 0; i < r; ++i) {
        num *= (qn - qi) * (qm - qi);
        den *= (qr - qi);
        qi *= Q;
    }
    mpz_class res;
    mpz_divexact(res.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return res;
}

/// Binomial standard deviation of the empirical rate at the given success
/// probability and trial count.
inline double binomial_stddev(double prob, std::size_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(std::max(0.0, prob * (1.0 - prob)) / static_cast<double>(trials));
}

}  // namespace qcrt

#endif
