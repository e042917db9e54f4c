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

#include "qcrt/decoder.hpp"
#include "qcrt/sim.hpp"

using namespace qcrt;

namespace {

struct Fixture {
    CtxPtr ctx;
    FamilyPtr fam;
    SpecPtr spec;
};

Fixture make_fixture(std::uint64_t q, std::uint32_t m, std::uint32_t l, std::size_t n,
                     std::size_t blocks, std::size_t k, std::size_t alpha, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.params = CodeParams{n, k, alpha, q, m, l};
    cfg.blocks = blocks;
    cfg.seed = seed;
    auto s = build_setup(cfg);
    return {s.ctx, s.fam, s.spec};
}

Codeword corrupt(const Fixture& f, const LinPoly& P, std::size_t r, Rng& rng) {
    auto w = flat(encode(*f.spec, P));
    const auto e = random_error(f.ctx, f.spec->n(), r, rng);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = f.ctx->add(w[i], e[i]);
    return word_from_flat(*f.fam, w);
}

}  // namespace

TEST_CASE("error-free words decode to their message with weight zero") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 101);
    Rng rng(102);
    for (int t = 0; t < 30; ++t) {
        auto P = random_message(*f.spec, rng);
        auto res = decode(*f.spec, encode(*f.spec, P), 8);
        REQUIRE(res.success);
        CHECK(res.message == P);
        CHECK(res.error_weight == 0);
        CHECK(res.diag.high_support_dim == 0);
    }
}

TEST_CASE("random errors within the bounds decode to the exact message") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 103);
    Rng rng(104);
    const auto b = decode_bounds(*f.spec, 1);
    CHECK(b.system_bound == 8);
    CHECK(b.support_bound == 28);
    CHECK(b.unique_radius == 16);
    std::size_t succ = 0, trials = 0;
    for (std::size_t r = 1; r <= 6; ++r) {
        for (int t = 0; t < 40; ++t, ++trials) {
            auto P = random_message(*f.spec, rng);
            auto res = decode(*f.spec, corrupt(f, P, r, rng), 8);
            if (res.success && res.message == P) {
                CHECK(res.error_weight == r);
                ++succ;
            }
            // the residual-division guard must never fire in exact arithmetic
            if (!res.success) CHECK(res.reason != FailureReason::ResidualDivision);
        }
    }
    CHECK(succ >= trials - 1);
}

TEST_CASE("success never exceeds the declared radius") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 105);
    Rng rng(106);
    for (int t = 0; t < 60; ++t) {
        auto P = random_message(*f.spec, rng);
        auto res = decode(*f.spec, corrupt(f, P, 5, rng), 8);
        if (res.success) CHECK(res.error_weight <= 8);
    }
}

TEST_CASE("a rank-3 error with r_max 1 fails the distance check") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 107);
    Rng rng(108);
    int distance_failures = 0;
    for (int t = 0; t < 30; ++t) {
        auto P = random_message(*f.spec, rng);
        auto res = decode(*f.spec, corrupt(f, P, 3, rng), 1);
        REQUIRE_FALSE(res.success);
        distance_failures += res.reason == FailureReason::DistanceCheck;
    }
    CHECK(distance_failures >= 28);
}

TEST_CASE("beyond the observable window the message is never recovered") {
    // r > n - k - alpha forces a strictly smaller observed support
    auto f = make_fixture(2, 48, 1, 40, 4, 8, 4, 109);
    Rng rng(110);
    const std::size_t r = 29;  // support bound is 28
    for (int t = 0; t < 50; ++t) {
        auto P = random_message(*f.spec, rng);
        auto res = decode(*f.spec, corrupt(f, P, r, rng), 8);
        CHECK_FALSE((res.success && res.message == P));
        if (!res.success) {
            CHECK((res.reason == FailureReason::SupportDeficient ||
                   res.reason == FailureReason::SystemUnderdetermined ||
                   res.reason == FailureReason::DistanceCheck));
        }
    }
}

TEST_CASE("square syndrome systems go underdetermined with noticeable frequency") {
    // m*alpha = 24 equations, k+alpha = 6, so r = 4 gives exactly 24 unknowns
    auto f = make_fixture(2, 12, 1, 24, 3, 4, 2, 111);
    Rng rng(112);
    const auto b = decode_bounds(*f.spec, 1);
    REQUIRE(b.system_bound == 4);
    int under = 0, success = 0;
    for (int t = 0; t < 120; ++t) {
        auto P = random_message(*f.spec, rng);
        auto res = decode(*f.spec, corrupt(f, P, 4, rng), 4);
        if (res.success) ++success;
        else if (res.reason == FailureReason::SystemUnderdetermined) ++under;
    }
    // the kernel is nontrivial with probability about 1 - prod(1 - 2^-i) ~ 0.71
    CHECK(under >= 40);
    CHECK(success >= 5);
    CHECK(under + success >= 100);
}

TEST_CASE("r_max beyond the bounds is rejected") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 113);
    Rng rng(114);
    auto y = corrupt(f, random_message(*f.spec, rng), 1, rng);
    CHECK_THROWS_AS(decode(*f.spec, y, 9), std::invalid_argument);
}

TEST_CASE("decode requires GF(q) moduli; decode_extended handles the rest") {
    auto f2 = make_fixture(2, 24, 2, 40, 4, 8, 4, 115);
    REQUIRE(f2.fam->coeff_subfield_degree == 2);
    Rng rng(116);
    auto y = corrupt(f2, random_message(*f2.spec, rng), 1, rng);
    CHECK_THROWS_AS(decode(*f2.spec, y, 1), std::invalid_argument);
    auto res = decode_extended(*f2.spec, y, 4);
    CHECK(res.success);
}

TEST_CASE("extended decoder with l = 1 matches decode bit for bit") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 117);
    Rng rng(118);
    for (int t = 0; t < 200; ++t) {
        auto P = random_message(*f.spec, rng);
        auto y = corrupt(f, P, 1 + rng.below(8), rng);
        auto a = decode(*f.spec, y, 8);
        auto b = decode_extended(*f.spec, y, 8);
        CHECK(a.success == b.success);
        CHECK(a.reason == b.reason);
        CHECK(a.error_weight == b.error_weight);
        CHECK(a.message == b.message);
        CHECK(a.diag.high_support_dim == b.diag.high_support_dim);
        CHECK(a.diag.system_unknowns == b.diag.system_unknowns);
    }
}

TEST_CASE("extended decoder on GF(q^2) moduli") {
    auto f = make_fixture(2, 24, 2, 40, 4, 8, 4, 119);
    Rng rng(120);
    const auto b = decode_bounds(*f.spec, 2);
    CHECK(b.system_bound == 4);   // floor(96 / 24)
    CHECK(b.support_bound == 14); // floor(28 / 2)
    std::size_t succ = 0, trials = 0;
    for (std::size_t r = 1; r <= 3; ++r) {
        for (int t = 0; t < 30; ++t, ++trials) {
            auto P = random_message(*f.spec, rng);
            auto res = decode_extended(*f.spec, corrupt(f, P, r, rng), 4);
            if (res.success && res.message == P) ++succ;
            // the lifted support obeys the product budget
            CHECK(res.diag.high_support_dim <= 2 * r);
        }
    }
    CHECK(succ >= trials - 2);
}

TEST_CASE("diagnostics are populated") {
    auto f = make_fixture(2, 24, 1, 40, 4, 8, 4, 121);
    Rng rng(122);
    auto P = random_message(*f.spec, rng);
    auto res = decode(*f.spec, corrupt(f, P, 5, rng), 8);
    REQUIRE(res.success);
    CHECK(res.diag.high_support_dim == 5);
    CHECK(res.diag.system_unknowns == 5 * 12);
    CHECK(res.diag.system_equations == 24 * 4);
    CHECK(res.diag.residual_rank_distance == 5);
    CHECK(res.diag.residual_sum_rank_distance >= 5);
    CHECK(res.diag.support_budget == 8);
}
