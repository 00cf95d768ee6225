#include <catch2/catch_amalgamated.hpp>

#include "coreinv/instance_gen.hpp"
#include "coreinv/pierce.hpp"
#include "test_helpers.hpp"

using namespace coreinv;
using test_helpers::near;

namespace {
const Tolerance tol;
}

TEST_CASE("pierce_decompose corner projections") {
    const ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix x{{1.0, 2.0}, {3.0, 4.0}};
    const auto blocks = pierce_decompose(x, p, tol);
    CHECK(blocks.b11 == ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}});
    CHECK(blocks.b12 == ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}});
    CHECK(blocks.b21 == ComplexMatrix{{0.0, 0.0}, {3.0, 0.0}});
    CHECK(blocks.b22 == ComplexMatrix{{0.0, 0.0}, {0.0, 4.0}});
    CHECK(pierce_assemble(blocks) == x);
}

TEST_CASE("pierce_decompose at the trivial idempotents") {
    const ComplexMatrix x{{1.0, 2.0}, {3.0, 4.0}};
    const auto at_identity = pierce_decompose(x, ComplexMatrix::identity(2), tol);
    CHECK(at_identity.b11 == x);
    CHECK(frobenius_norm(at_identity.b12) == 0.0);
    CHECK(frobenius_norm(at_identity.b21) == 0.0);
    CHECK(frobenius_norm(at_identity.b22) == 0.0);

    const auto at_zero = pierce_decompose(x, ComplexMatrix::zeros(2, 2), tol);
    CHECK(at_zero.b22 == x);
    CHECK(frobenius_norm(at_zero.b11) == 0.0);
}

TEST_CASE("pierce_decompose rejects non-idempotent p") {
    const ComplexMatrix x{{1.0, 2.0}, {3.0, 4.0}};
    CHECK_THROWS_AS(pierce_decompose(x, x, tol), NotIdempotentError);
    CHECK_THROWS_AS(pierce_decompose(x, ComplexMatrix::identity(3), tol), DimensionError);
}

TEST_CASE("pierce decomposition reconstructs and satisfies corner identities") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(1, 7);
        auto [p, a] = gen_lemma_2_1_instance(n, rng.next_u64());
        ComplexMatrix x(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x(i, j) = rng.cgaussian();
        const auto blocks = pierce_decompose(x, p, tol);
        CHECK(near(pierce_assemble(blocks), x, 1e-9 * (1.0 + frobenius_norm(x))));
        const ComplexMatrix q = ComplexMatrix::identity(n) - p;
        const double scale = 1e-8 * (1.0 + frobenius_norm(x)) *
                             (1.0 + frobenius_norm(p)) * (1.0 + frobenius_norm(p));
        CHECK(near(p * blocks.b11 * p, blocks.b11, scale));
        CHECK(near(p * blocks.b12 * q, blocks.b12, scale));
        CHECK(near(q * blocks.b21 * p, blocks.b21, scale));
        CHECK(near(q * blocks.b22 * q, blocks.b22, scale));
    }
}

TEST_CASE("triangular_group_inverse reproduces the ordinary inverse") {
    const ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix a{{2.0, 0.0}, {3.0, 4.0}};
    // a is invertible, so a^# = a^-1; the only surviving z-term is the third.
    const ComplexMatrix expected{{0.5, 0.0}, {-0.375, 0.25}};
    CHECK(near(triangular_group_inverse(p, a, tol), expected, 1e-13));
    CHECK(near(inverse(a, tol), expected, 1e-13));
}

TEST_CASE("triangular_group_inverse degenerates at p = I") {
    const ComplexMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(near(triangular_group_inverse(ComplexMatrix::identity(2), a, tol), inverse(a, tol),
               1e-12));
}

TEST_CASE("triangular_group_inverse gate failure is not a non-existence claim") {
    const ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix a{{2.0, 0.0}, {1.0, 0.0}};
    // a is group invertible, but the sufficiency condition fails.
    CHECK(is_group_invertible(a, tol));
    CHECK_THROWS_AS(triangular_group_inverse(p, a, tol), HypothesisNotMetError);
}

TEST_CASE("triangular_core_inverse worked examples") {
    SECTION("invertible lower triangular") {
        const ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
        const ComplexMatrix a{{2.0, 0.0}, {3.0, 4.0}};
        const ComplexMatrix expected{{0.5, 0.0}, {-0.375, 0.25}};
        const ComplexMatrix x = triangular_core_inverse(p, a, tol);
        CHECK(near(x, expected, 1e-13));
        CHECK(near(x, core_inverse(a, tol), 1e-12));
    }
    SECTION("reduces to the corner core inverse at p = I") {
        const ComplexMatrix a{{2.0, 0.0}, {0.0, 0.0}};
        CHECK(near(triangular_core_inverse(ComplexMatrix::identity(2), a, tol),
                   ComplexMatrix{{0.5, 0.0}, {0.0, 0.0}}, 1e-13));
    }
    SECTION("violated pap^pi = 0 precondition") {
        const ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
        const ComplexMatrix a{{1.0, 1.0}, {0.0, 0.0}};
        CHECK_THROWS_AS(triangular_core_inverse(p, a, tol), HypothesisNotMetError);
    }
    SECTION("rejects idempotents that are not projections") {
        const ComplexMatrix p{{1.0, 1.0}, {0.0, 0.0}};  // idempotent, not Hermitian
        const ComplexMatrix a{{2.0, 0.0}, {0.0, 3.0}};
        CHECK_THROWS_AS(triangular_core_inverse(p, a, tol), NotProjectionError);
    }
}

TEST_CASE("corner spectral idempotent uses p as the corner identity") {
    const ComplexMatrix p{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix c{{2.0, 0.0}, {0.0, 0.0}};  // corner element of pAp
    CHECK(near(corner_spectral_idempotent(c, p, tol), ComplexMatrix::zeros(2, 2), 1e-14));
}

TEST_CASE("triangular formulas agree with the direct inverses on generated instances") {
    Rng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(1, 7);
        auto [p, a] = gen_lemma_2_3_instance(n, rng.next_u64());
        const ComplexMatrix tg = triangular_group_inverse(p, a, tol);
        const ComplexMatrix tc = triangular_core_inverse(p, a, tol);
        CHECK(relative_error(tg, group_inverse(a, tol)) <= 1e-8);
        CHECK(relative_error(tc, core_inverse(a, tol)) <= 1e-8);
        // Conclusion invariant: p a^core p^pi = 0.
        const ComplexMatrix q = ComplexMatrix::identity(n) - p;
        CHECK(zero_residual(p * tc * q, frobenius_norm(tc)) <= 1e-9);
    }
}

TEST_CASE("check_lemma_2_1 passes on its generator family") {
    Rng rng(107);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(1, 7);
        auto [p, a] = gen_lemma_2_1_instance(n, rng.next_u64());
        const auto v = check_lemma_2_1(p, a, tol);
        INFO("outcome " << static_cast<int>(v.outcome()) << " max residual " << v.max_residual);
        CHECK(v.hypotheses_met);
        CHECK(v.pass());
    }
}

TEST_CASE("check_lemma_2_2 holds on both branches") {
    Rng rng(109);
    int both_true = 0;
    int both_false = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform_int(1, 7);
        auto [a, b] = gen_lemma_2_2_instance(n, rng.next_u64());
        const auto v = check_lemma_2_2(a, b, tol);
        REQUIRE(v.hypotheses_met);
        CHECK(v.pass());
        if (v.side1 && v.side2) ++both_true;
        if (!v.side1 && !v.side2) ++both_false;
    }
    // The generator mixes annihilated and generic b, so both branches occur.
    CHECK(both_true > 0);
    CHECK(both_false > 0);
}

TEST_CASE("check_lemma_2_3 passes and records the proof condition") {
    Rng rng(113);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(1, 7);
        auto [p, a] = gen_lemma_2_3_instance(n, rng.next_u64());
        const auto v = check_lemma_2_3(p, a, tol);
        CHECK(v.hypotheses_met);
        CHECK(v.pass());
        bool has_proof_condition = false;
        for (const auto& c : v.conditions)
            if (c.name == "proof_condition") has_proof_condition = c.ok;
        CHECK(has_proof_condition);
    }
}

TEST_CASE("check_lemma_2_3 reports an unmet statement condition without claiming failure") {
    const auto miss = gen_near_miss("lem2.3", "statement_condition", 4, 2024);
    const auto v = check_lemma_2_3(miss.a, miss.b, tol);
    CHECK_FALSE(v.hypotheses_met);
    CHECK(v.outcome() == Outcome::HypothesesNotMet);
    for (const auto& h : v.hypotheses)
        if (h.name != "statement_condition") CHECK(h.ok);
}
