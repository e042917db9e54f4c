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

#include <catch2/catch_amalgamated.hpp>

#include "qcrt/linpoly.hpp"
#include "qcrt/rankmetric.hpp"

using namespace qcrt;

namespace {

LinPoly random_poly(const CtxPtr& ctx, int qdeg, Rng& rng, bool monic = false) {
    std::vector<FieldElement> c(static_cast<std::size_t>(qdeg) + 1);
    for (auto& x : c) x = ctx->random_element(rng);
    c.back() = monic ? ctx->one() : ctx->random_nonzero(rng);
    return LinPoly(ctx, std::move(c));
}

LinPoly point_mod(const CtxPtr& ctx, const FieldElement& z) {
    return LinPoly(ctx, {ctx->neg(ctx->mul(ctx->frobenius_q(z, 1), ctx->inv(z))), ctx->one()});
}

}  // namespace

TEST_CASE("composition term rule") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(10);
    for (int t = 0; t < 200; ++t) {
        const std::size_t i = rng.below(6), j = rng.below(6);
        auto a = ctx->random_nonzero(rng);
        auto b = ctx->random_nonzero(rng);
        auto got = compose(LinPoly::monomial(ctx, i, a), LinPoly::monomial(ctx, j, b));
        // (a X^{q^i}) o (b X^{q^j}) = a b^{q^i} X^{q^{i+j}}
        auto want = LinPoly::monomial(ctx, i + j, ctx->mul(a, ctx->frobenius_q(b, i)));
        CHECK(got == want);
    }
}

TEST_CASE("X is the unit of composition") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(11);
    auto X = LinPoly::identity(ctx);
    for (int t = 0; t < 20; ++t) {
        auto P = random_poly(ctx, static_cast<int>(rng.below(10)), rng);
        CHECK(compose(P, X) == P);
        CHECK(compose(X, P) == P);
    }
}

TEST_CASE("composition is non-commutative: GF(4) witness") {
    auto ctx = FieldContext::make(2, 1, 2);
    FieldElement w{};
    ctx->set_coord(w, 1, 1);
    auto lhs = compose(LinPoly::monomial(ctx, 1, w), LinPoly::monomial(ctx, 1, ctx->one()));
    auto rhs = compose(LinPoly::monomial(ctx, 1, ctx->one()), LinPoly::monomial(ctx, 1, w));
    CHECK(lhs.coeff(2) == w);
    CHECK(rhs.coeff(2) == ctx->mul(w, w));
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("right division") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(12);
    SECTION("monomial split") {
        auto [q, r] = rquorem(LinPoly::monomial(ctx, 2, ctx->one()),
                              LinPoly::monomial(ctx, 1, ctx->one()));
        CHECK(q == LinPoly::monomial(ctx, 1, ctx->one()));
        CHECK(r.is_zero());
    }
    SECTION("self-division") {
        for (int t = 0; t < 20; ++t) {
            auto P = random_poly(ctx, 1 + static_cast<int>(rng.below(8)), rng);
            auto [q, r] = rquorem(P, P);
            CHECK(q == LinPoly::identity(ctx));
            CHECK(r.is_zero());
        }
    }
    SECTION("GF(4) worked division: rquorem(X^2, X^2 + wX) = (X, wX)") {
        auto f4 = FieldContext::make(2, 1, 2);
        FieldElement w{};
        f4->set_coord(w, 1, 1);
        LinPoly b(f4, {w, f4->one()});
        auto [q, r] = rquorem(LinPoly::monomial(f4, 1, f4->one()), b);
        CHECK(q == LinPoly::identity(f4));
        CHECK(r == LinPoly::monomial(f4, 0, w));
        // cross-check against the evaluation form with zeta = w:
        // remainder = zeta^{-1} P(zeta) X = w^{-1} w^2 X = w X
        auto expect = f4->mul(f4->inv(w), eval(LinPoly::monomial(f4, 1, f4->one()), w));
        CHECK(r.coeff(0) == expect);
    }
    SECTION("division identity on random pairs") {
        for (int t = 0; t < 300; ++t) {
            auto A = random_poly(ctx, static_cast<int>(rng.below(25)), rng);
            auto B = random_poly(ctx, static_cast<int>(rng.below(12)), rng);
            auto [Q, R] = rquorem(A, B);
            CHECK(compose(Q, B) + R == A);
            CHECK(R.qdeg() < B.qdeg());
            CHECK((R.is_zero()) == right_divides(B, A));
        }
    }
    SECTION("division by zero polynomial") {
        auto A = random_poly(ctx, 3, rng);
        CHECK_THROWS_AS(rquorem(A, LinPoly::zero(ctx)), std::domain_error);
    }
}

TEST_CASE("evaluation") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(13);
    auto X = LinPoly::identity(ctx);
    auto z = ctx->random_element(rng);
    CHECK(eval(X, z) == z);
    for (int t = 0; t < 20; ++t) {
        auto P = random_poly(ctx, static_cast<int>(rng.below(10)), rng);
        CHECK(ctx->is_zero(eval(P, ctx->zero())));
    }
    auto f4 = FieldContext::make(2, 1, 2);
    FieldElement w{};
    f4->set_coord(w, 1, 1);
    CHECK(eval(LinPoly::monomial(f4, 1, f4->one()), w) == f4->add(w, f4->one()));
    // GF(q)-linearity of the induced map
    for (int t = 0; t < 100; ++t) {
        auto P = random_poly(ctx, 5, rng);
        auto x = ctx->random_element(rng);
        auto y = ctx->random_element(rng);
        auto a = ctx->fq_element(static_cast<std::uint8_t>(rng.below(2)));
        CHECK(eval(P, ctx->add(ctx->mul(a, x), y)) ==
              ctx->add(ctx->mul(a, eval(P, x)), eval(P, y)));
    }
}

TEST_CASE("remainder equals the evaluation form (1000 random pairs)") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(14);
    for (int t = 0; t < 1000; ++t) {
        auto P = random_poly(ctx, static_cast<int>(rng.below(20)), rng);
        auto z = ctx->random_nonzero(rng);
        auto r = rrem(P, point_mod(ctx, z));
        auto want = scale(ctx->mul(ctx->inv(z), eval(P, z)), LinPoly::identity(ctx));
        CHECK(r == want);
    }
    // corollary: a kernel element makes the point modulus a right divisor
    for (int t = 0; t < 100; ++t) {
        auto z = ctx->random_nonzero(rng);
        auto f = point_mod(ctx, z);
        auto W = random_poly(ctx, static_cast<int>(rng.below(6)), rng);
        auto P = compose(W, f);  // P(z) = W(f(z)) = 0
        CHECK(ctx->is_zero(eval(P, z)));
        CHECK(right_divides(f, P));
    }
}

TEST_CASE("extended right gcd") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(15);
    SECTION("gcd with zero") {
        auto A = random_poly(ctx, 5, rng);
        auto eg = rgcd_extended(A, LinPoly::zero(ctx));
        CHECK(eg.g == A.monic());
        CHECK(eg.v.is_zero());
        CHECK(compose(eg.u, A) == eg.g);
        CHECK_THROWS_AS(rgcd_extended(LinPoly::zero(ctx), LinPoly::zero(ctx)),
                        std::domain_error);
    }
    SECTION("point moduli from independent points are coprime") {
        for (int t = 0; t < 50; ++t) {
            FieldElement z1, z2;
            do {
                z1 = ctx->random_nonzero(rng);
                z2 = ctx->random_nonzero(rng);
            } while (support(ctx, std::vector<FieldElement>{z1, z2}).dim() != 2);
            CHECK(rgcd(point_mod(ctx, z1), point_mod(ctx, z2)) == LinPoly::identity(ctx));
        }
    }
    SECTION("Bezout replay on 1000 random pairs") {
        for (int t = 0; t < 1000; ++t) {
            auto A = random_poly(ctx, static_cast<int>(rng.below(15)), rng);
            auto B = random_poly(ctx, static_cast<int>(rng.below(15)), rng);
            auto eg = rgcd_extended(A, B);
            CHECK(compose(eg.u, A) + compose(eg.v, B) == eg.g);
            CHECK(eg.g.is_monic());
            CHECK(right_divides(eg.g, A));
            CHECK(right_divides(eg.g, B));
        }
    }
}

TEST_CASE("least common left multiple") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(16);
    SECTION("llcm with itself") {
        for (int t = 0; t < 20; ++t) {
            auto A = random_poly(ctx, 1 + static_cast<int>(rng.below(8)), rng);
            CHECK(llcm(A, A) == A.monic());
        }
    }
    SECTION("coprime q-degree-1 inputs give q-degree 2") {
        for (int t = 0; t < 50; ++t) {
            auto A = random_poly(ctx, 1, rng);
            auto B = random_poly(ctx, 1, rng);
            if (rgcd(A, B).qdeg() != 0) continue;
            CHECK(llcm(A, B).qdeg() == 2);
        }
    }
    SECTION("degree formula and divisibility") {
        for (int t = 0; t < 300; ++t) {
            auto A = random_poly(ctx, 1 + static_cast<int>(rng.below(10)), rng);
            auto B = random_poly(ctx, 1 + static_cast<int>(rng.below(10)), rng);
            auto L = llcm(A, B);
            CHECK(L.is_monic());
            CHECK(right_divides(A, L));
            CHECK(right_divides(B, L));
            CHECK(L.qdeg() == A.qdeg() + B.qdeg() - rgcd(A, B).qdeg());
        }
    }
    SECTION("sum of kernel elements lies in the kernel of the llcm") {
        for (int t = 0; t < 50; ++t) {
            FieldElement z1, z2;
            do {
                z1 = ctx->random_nonzero(rng);
                z2 = ctx->random_nonzero(rng);
            } while (support(ctx, std::vector<FieldElement>{z1, z2}).dim() != 2);
            auto f1 = point_mod(ctx, z1);
            auto f2 = point_mod(ctx, z2);
            auto L = llcm(f1, f2);
            auto s = ctx->add(z1, z2);
            CHECK(ctx->is_zero(eval(L, s)));
            CHECK(right_divides(point_mod(ctx, s), L));
        }
    }
    SECTION("zero operand is rejected") {
        auto A = random_poly(ctx, 3, rng);
        CHECK_THROWS_AS(llcm(A, LinPoly::zero(ctx)), std::domain_error);
    }
}

TEST_CASE("endomorphism matrices") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(17);
    auto I = FqMat::identity(ctx->fq(), 12);
    CHECK(to_endomorphism_matrix(LinPoly::identity(ctx)) == I);
    CHECK(to_endomorphism_matrix(LinPoly::monomial(ctx, 12, ctx->one())) == I);
    SECTION("ring homomorphism on 200 random pairs") {
        for (int t = 0; t < 200; ++t) {
            auto P = random_poly(ctx, static_cast<int>(rng.below(6)), rng);
            auto Q = random_poly(ctx, static_cast<int>(rng.below(6)), rng);
            CHECK(to_endomorphism_matrix(compose(P, Q)) ==
                   to_endomorphism_matrix(P).mul(to_endomorphism_matrix(Q)));
        }
    }
    SECTION("polynomials congruent mod X^{q^m} - X have equal matrices") {
        for (int t = 0; t < 30; ++t) {
            auto P = random_poly(ctx, static_cast<int>(rng.below(20)), rng);
            std::vector<FieldElement> c(13, ctx->zero());
            c[0] = ctx->neg(ctx->one());
            c[12] = ctx->one();
            auto R = rrem(P, LinPoly(ctx, c));
            CHECK(to_endomorphism_matrix(P) == to_endomorphism_matrix(R));
        }
    }
}

TEST_CASE("ring laws: associativity and distributivity") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(18);
    for (int t = 0; t < 200; ++t) {
        auto P = random_poly(ctx, static_cast<int>(rng.below(6)), rng);
        auto Q = random_poly(ctx, static_cast<int>(rng.below(6)), rng);
        auto R = random_poly(ctx, static_cast<int>(rng.below(6)), rng);
        CHECK(compose(compose(P, Q), R) == compose(P, compose(Q, R)));
        CHECK(compose(P + Q, R) == compose(P, R) + compose(Q, R));
        CHECK(compose(P, Q + R) == compose(P, Q) + compose(P, R));
        auto z = ctx->random_element(rng);
        CHECK(eval(compose(P, Q), z) == eval(P, eval(Q, z)));
    }
}

TEST_CASE("zero polynomial degree sentinel orders below everything") {
    auto ctx = FieldContext::make(2, 1, 12);
    auto Z = LinPoly::zero(ctx);
    CHECK(Z.qdeg() == -1);
    CHECK(Z.qdeg() < LinPoly::identity(ctx).qdeg());
    CHECK(Z.is_zero());
    CHECK_THROWS_AS(Z.monic(), std::domain_error);
    // trailing zero coefficients are trimmed away
    LinPoly trimmed(ctx, {ctx->one(), ctx->zero(), ctx->zero()});
    CHECK(trimmed.qdeg() == 0);
}

TEST_CASE("support of a linearized polynomial") {
    auto ctx = FieldContext::make(2, 1, 12);
    Rng rng(19);
    auto P = random_poly(ctx, 4, rng);
    auto s = support(P, 8);
    std::vector<FieldElement> v(8, ctx->zero());
    for (int i = 0; i <= P.qdeg(); ++i) v[static_cast<std::size_t>(i)] = P.coeff(static_cast<std::size_t>(i));
    CHECK(s == support(ctx, v));
    CHECK(support(LinPoly::zero(ctx), 5).dim() == 0);
}

TEST_CASE("context mismatch is rejected") {
    auto a = FieldContext::make(2, 1, 12);
    auto b = FieldContext::make(2, 1, 13);
    Rng rng(20);
    auto P = random_poly(a, 2, rng);
    auto Q = random_poly(b, 2, rng);
    CHECK_THROWS_AS(compose(P, Q), std::invalid_argument);
    CHECK_THROWS_AS(P + Q, std::invalid_argument);
}

TEST_CASE("coefficient subfield degree") {
    auto ctx = FieldContext::make(2, 1, 12, 2);
    Rng rng(21);
    std::vector<FieldElement> c = {ctx->random_subfield_element(rng, 2), ctx->one()};
    LinPoly P(ctx, c);
    CHECK(coeff_subfield_degree(P) <= 2);
    LinPoly X = LinPoly::identity(ctx);
    CHECK(coeff_subfield_degree(X) == 1);
}
