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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "qcrt/analysis.hpp"
#include "qcrt/rankmetric.hpp"
#include "qcrt/serialize.hpp"

using namespace qcrt;

TEST_CASE("support basics") {
    auto ctx = FieldContext::make(2, 1, 12);
    SECTION("zero word has the zero support") {
        std::vector<FieldElement> v(5, ctx->zero());
        CHECK(support(ctx, v).dim() == 0);
    }
    SECTION("the all-ones word spans <1>") {
        std::vector<FieldElement> v(7, ctx->one());
        auto s = support(ctx, v);
        CHECK(s.dim() == 1);
        CHECK(s.contains(ctx->one()));
    }
    SECTION("omega and omega+1 span a 2-dimensional space over GF(2)") {
        auto f4 = FieldContext::make(2, 1, 2);
        FieldElement w{};
        f4->set_coord(w, 1, 1);
        std::vector<FieldElement> v = {w, f4->add(w, f4->one())};
        CHECK(support(f4, v).dim() == 2);
    }
}

TEST_CASE("support is invariant under permutation and GF(q) scaling") {
    auto ctx = FieldContext::make(3, 1, 6);
    Rng rng(50);
    for (int t = 0; t < 100; ++t) {
        std::vector<FieldElement> v(8);
        for (auto& x : v) x = ctx->random_element(rng);
        auto s = support(ctx, v);
        auto w = v;
        for (std::size_t i = 0; i < w.size(); ++i) std::swap(w[i], w[rng.below(w.size())]);
        for (auto& x : w) {
            const auto c = static_cast<std::uint8_t>(1 + rng.below(ctx->q() - 1));
            x = ctx->mul(ctx->fq_element(c), x);
        }
        CHECK(support(ctx, w) == s);
    }
}

TEST_CASE("rank weight is subadditive") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(51);
    for (int t = 0; t < 200; ++t) {
        std::vector<FieldElement> u(9), v(9), s(9);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = ctx->random_element(rng);
            v[i] = ctx->random_element(rng);
            s[i] = ctx->add(u[i], v[i]);
        }
        CHECK(rank_weight(ctx, s) <= rank_weight(ctx, u) + rank_weight(ctx, v));
    }
}

TEST_CASE("sum-rank weight") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(52);
    SECTION("zero word") {
        std::vector<FieldElement> v(10, ctx->zero());
        CHECK(sum_rank_weight(ctx, v, BlockPartition({4, 6})) == 0);
    }
    SECTION("a single block collapses to the rank weight") {
        for (int t = 0; t < 50; ++t) {
            std::vector<FieldElement> v(10);
            for (auto& x : v) x = ctx->random_element(rng);
            CHECK(sum_rank_weight(ctx, v, BlockPartition::single(10)) == rank_weight(ctx, v));
        }
    }
    SECTION("unit blocks collapse to the Hamming weight on 100 random words") {
        for (int t = 0; t < 100; ++t) {
            std::vector<FieldElement> v(10);
            for (auto& x : v) x = rng.coin() ? ctx->random_element(rng) : ctx->zero();
            std::size_t hamming = 0;
            for (const auto& x : v) hamming += !ctx->is_zero(x);
            CHECK(sum_rank_weight(ctx, v, BlockPartition::units(10)) == hamming);
        }
    }
    SECTION("partition mismatch is rejected") {
        std::vector<FieldElement> v(10, ctx->zero());
        CHECK_THROWS_AS(sum_rank_weight(ctx, v, BlockPartition({4, 4})), std::invalid_argument);
        CHECK_THROWS_AS(BlockPartition({3, 0, 7}), std::invalid_argument);
    }
}

TEST_CASE("random errors have exact rank weight") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(53);
    SECTION("r = 0 gives the zero word") {
        auto e = random_error(ctx, 9, 0, rng);
        for (const auto& x : e) CHECK(ctx->is_zero(x));
    }
    SECTION("requested rank is achieved in all of 1000 draws") {
        for (int t = 0; t < 1000; ++t) {
            const std::size_t r = rng.below(7);
            auto e = random_error(ctx, 9, r, rng);
            CHECK(rank_weight(ctx, e) == r);
        }
    }
    SECTION("full rank r = n <= m makes all coordinates independent") {
        for (int t = 0; t < 50; ++t) {
            auto e = random_error(ctx, 5, 5, rng);
            CHECK(support(ctx, e).dim() == 5);
        }
    }
    SECTION("out-of-range rank is rejected") {
        CHECK_THROWS_AS(random_error(ctx, 9, 13, rng), std::invalid_argument);
        CHECK_THROWS_AS(random_error(ctx, 3, 4, rng), std::invalid_argument);
    }
}

TEST_CASE("rank distribution of uniform words matches the counting formula") {
    // exhaustive enumeration over GF(2^3)^3: 512 words
    auto ctx = FieldContext::make(2, 1, 3);
    std::map<std::size_t, std::size_t> histogram;
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b)
            for (std::uint32_t c = 0; c < 8; ++c) {
                FieldElement xa{}, xb{}, xc{};
                xa.w[0] = a;
                xb.w[0] = b;
                xc.w[0] = c;
                std::vector<FieldElement> v = {xa, xb, xc};
                ++histogram[rank_weight(ctx, v)];
            }
    mpz_class total = 0;
    for (std::size_t r = 0; r <= 3; ++r) {
        const mpz_class want = count_rank_words(3, 3, 2, r);
        CHECK(mpz_class(histogram[r]) == want);
        total += want;
    }
    CHECK(total == mpz_class(512));

    // and the sampler's support-dimension histogram is consistent: uniform
    // words at q=2, m=3, n=3 hit each rank in proportion to the counts
    Rng rng(54);
    std::map<std::size_t, std::size_t> sampled;
    const int N = 20000;
    for (int t = 0; t < N; ++t) {
        std::vector<FieldElement> v(3);
        for (auto& x : v) x = ctx->random_element(rng);
        ++sampled[rank_weight(ctx, v)];
    }
    for (std::size_t r = 0; r <= 3; ++r) {
        const double p = mpq_class(count_rank_words(3, 3, 2, r), mpz_class(512)).get_d();
        const double emp = static_cast<double>(sampled[r]) / N;
        CHECK(std::abs(emp - p) <= 4.0 * binomial_stddev(p, N) + 1e-9);
    }
}

TEST_CASE("subspace product") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(55);
    SECTION("product of lines is the line of the product") {
        for (int t = 0; t < 50; ++t) {
            auto a = ctx->random_nonzero(rng);
            auto b = ctx->random_nonzero(rng);
            std::vector<FieldElement> va = {a}, vb = {b}, vab = {ctx->mul(a, b)};
            CHECK(subspace_product(support(ctx, va), support(ctx, vb)) == support(ctx, vab));
        }
    }
    SECTION("the unit line is neutral") {
        for (int t = 0; t < 50; ++t) {
            auto A = random_subspace(ctx, 1 + rng.below(4), rng);
            std::vector<FieldElement> one = {ctx->one()};
            CHECK(subspace_product(A, support(ctx, one)) == A);
        }
    }
    SECTION("dimension bound dim(A*B) <= dim(A)*dim(B) on 500 random pairs") {
        for (int t = 0; t < 500; ++t) {
            auto A = random_subspace(ctx, 1 + rng.below(3), rng);
            auto B = random_subspace(ctx, 1 + rng.below(3), rng);
            CHECK(subspace_product(A, B).dim() <= A.dim() * B.dim());
        }
    }
}

TEST_CASE("subspace canonical form") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(56);
    for (int t = 0; t < 100; ++t) {
        auto S = random_subspace(ctx, 3, rng);
        // re-span from a shuffled, rescaled basis: identical representation
        auto els = S.basis_elements();
        std::vector<FieldElement> gens;
        for (const auto& x : els) {
            gens.push_back(ctx->add(x, els[rng.below(els.size())]));
            gens.push_back(x);
        }
        CHECK(Subspace::span_of(ctx, gens) == S);
        CHECK(S.includes(S));
        for (const auto& x : els) CHECK(S.contains(x));
    }
}

TEST_CASE("linear solver over GF(q)") {
    SECTION("identity system returns the right-hand side") {
        for (auto ctx : {FieldContext::make(2, 1, 4), FieldContext::make(5, 1, 3),
                         FieldContext::make(2, 2, 3)}) {
            Rng rng(57);
            auto I = FqMat::identity(ctx->fq(), 6);
            std::vector<std::uint8_t> b(6);
            for (auto& x : b) x = static_cast<std::uint8_t>(rng.below(ctx->q()));
            auto sol = solve_fq_linear(I, b);
            REQUIRE(sol.kind == SolveKind::Unique);
            CHECK(sol.x == b);
        }
    }
    SECTION("zero system with zero rhs is underdetermined") {
        auto ctx = FieldContext::make(2, 1, 4);
        FqMat Z(ctx->fq(), 3, 2);
        std::vector<std::uint8_t> b(3, 0);
        CHECK(solve_fq_linear(Z, b).kind == SolveKind::Underdetermined);
    }
    SECTION("zero system with nonzero rhs is inconsistent") {
        auto ctx = FieldContext::make(2, 1, 4);
        FqMat Z(ctx->fq(), 3, 2);
        std::vector<std::uint8_t> b = {0, 1, 0};
        CHECK(solve_fq_linear(Z, b).kind == SolveKind::Inconsistent);
    }
    SECTION("solutions replay on 500 random full-column-rank systems") {
        for (auto ctx : {FieldContext::make(2, 1, 4), FieldContext::make(5, 1, 3),
                         FieldContext::make(3, 1, 4), FieldContext::make(2, 2, 3)}) {
            Rng rng(58);
            for (int t = 0; t < 125; ++t) {
                const std::size_t n = 1 + rng.below(12);
                const std::size_t m = n + rng.below(8);
                FqMat A(ctx->fq(), m, n);
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        A.set(i, j, static_cast<std::uint8_t>(rng.below(ctx->q())));
                std::vector<std::uint8_t> x(n);
                for (auto& v : x) v = static_cast<std::uint8_t>(rng.below(ctx->q()));
                const auto b = A.apply(x);
                auto sol = solve_fq_linear(A, b);
                REQUIRE(sol.kind != SolveKind::Inconsistent);
                if (sol.kind == SolveKind::Unique) {
                    CHECK(A.apply(sol.x) == b);
                    CHECK(A.rank() == n);
                } else {
                    CHECK(A.rank() < n);
                }
            }
        }
    }
    SECTION("nullspace vectors annihilate the matrix") {
        auto ctx = FieldContext::make(5, 1, 3);
        Rng rng(59);
        for (int t = 0; t < 50; ++t) {
            FqMat A(ctx->fq(), 4, 7);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 7; ++j)
                    A.set(i, j, static_cast<std::uint8_t>(rng.below(5)));
            auto N = A.nullspace();
            CHECK(N.rows() == 7 - A.rank());
            for (std::size_t r = 0; r < N.rows(); ++r) {
                std::vector<std::uint8_t> v(N.row(r), N.row(r) + 7);
                for (auto y : A.apply(v)) CHECK(y == 0);
            }
        }
    }
}

TEST_CASE("subfield subspace") {
    auto ctx = FieldContext::make(2, 1, 12, 2);
    auto s = subfield_subspace(ctx, 2);
    CHECK(s.dim() == 2);
    CHECK(s.contains(ctx->one()));
    Rng rng(60);
    for (int t = 0; t < 20; ++t) CHECK(s.contains(ctx->random_subfield_element(rng, 2)));
}

TEST_CASE("subspace serialization round trips") {
    auto ctx = FieldContext::make(5, 1, 6);
    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
        auto s = random_subspace(ctx, rng.below(5), rng);
        auto j = subspace_to_json(s);
        CHECK(j.at("q") == 5);
        CHECK(j.at("m") == 6);
        CHECK(subspace_from_json(ctx, j) == s);
    }
    auto other = FieldContext::make(2, 1, 6);
    auto s = random_subspace(ctx, 2, rng);
    CHECK_THROWS_AS(subspace_from_json(other, subspace_to_json(s)), std::invalid_argument);
}
