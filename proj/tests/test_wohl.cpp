#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zorn/wohl.hpp"

using namespace zorn;

namespace {

// Random member of the level-n congruence subloop (shortish elementary fold).
ZornMatrix random_congruence(std::mt19937_64& rng, std::int64_t n) {
    std::uniform_int_distribution<int> kind(0, 1), axis(1, 3);
    std::uniform_int_distribution<std::int64_t> scale(-2, 2);
    ZornMatrix acc = identity();
    for (int i = 0; i < 8; ++i) {
        const Vec3 v = axis_vec(axis(rng), n * scale(rng));
        acc = zmul(acc, generator(kind(rng) ? GeneratorTag::upper(v) : GeneratorTag::lower(v)));
    }
    return acc;
}

bool has_conj_node(const ExprPtr& t) {
    if (std::get_if<GeneratorTag>(&t->node)) return false;
    if (const auto* m = std::get_if<MulNode>(&t->node))
        return has_conj_node(m->l) || has_conj_node(m->r);
    return true;
}

}  // namespace

// ============================================================================
// wohlfahrt_split
// ============================================================================

TEST_CASE("wohlfahrt_split pinned cases", "[wohl]") {
    // S1^2 lies in the level-2 subloop and is already congruent to I mod 3
    // after the elementary factor: B = U(2e1), C = I.
    const ZornMatrix s1sq = zmat(1, {2, 0, 0}, {}, 1);
    const WohlfahrtSplit w = wohlfahrt_split(s1sq, 2, 3);
    REQUIRE(std::holds_alternative<GeneratorTag>(w.b_tree->node));
    CHECK(std::get<GeneratorTag>(w.b_tree->node) == GeneratorTag::upper({2, 0, 0}));
    CHECK(w.c == identity());

    // The identity splits as the empty product times itself.
    const WohlfahrtSplit wi = wohlfahrt_split(identity(), 5, 7);
    CHECK(eval(wi.b_tree) == identity());
    CHECK(wi.c == identity());

    // Unit-but-not-1 corner: the full contract, checked by evaluation.
    const ZornMatrix a = zmat(3, {2, 0, 0}, {4, 0, 0}, 3);
    const WohlfahrtSplit wa = wohlfahrt_split(a, 2, 3);
    CHECK(certify_level(wa.b_tree, 2));
    CHECK(gamma_membership(wa.c, 3));
    CHECK(zmul(eval(wa.b_tree), wa.c) == a);
}

TEST_CASE("wohlfahrt_split contract on random elements", "[wohl]") {
    std::mt19937_64 rng(0x301FULL);
    const std::int64_t levels1[3] = {2, 3, 4};
    const std::int64_t levels2[3] = {3, 4, 5};
    for (int i = 0; i < 200; ++i) {
        const std::int64_t n1 = levels1[i % 3];
        const std::int64_t n2 = levels2[(i / 3) % 3];
        const ZornMatrix a = random_congruence(rng, n1);
        const WohlfahrtSplit w = wohlfahrt_split(a, n1, n2);
        REQUIRE(certify_level(w.b_tree, n1));
        REQUIRE(gamma_membership(w.c, n2));
        REQUIRE(zmul(eval(w.b_tree), w.c) == a);
    }
}

TEST_CASE("corner already 1 mod n2 never needs conjugation", "[wohl]") {
    std::mt19937_64 rng(0x1C04EULL);
    int seen = 0;
    while (seen < 50) {
        const ZornMatrix a = random_congruence(rng, 2);
        if ((a.a - 1) % 5 != 0) continue;
        ++seen;
        const WohlfahrtSplit w = wohlfahrt_split(a, 2, 5);
        REQUIRE_FALSE(has_conj_node(w.b_tree));
    }
}

TEST_CASE("wohlfahrt_split rejects outside elements", "[wohl][errors]") {
    try {
        (void)wohlfahrt_split(zmat(1, {1, 0, 0}, {}, 1), 2, 3);
        FAIL("expected a thrown error");
    } catch (const zorn_error& e) {
        CHECK(e.code() == errc::not_in_gamma);
    }
    CHECK_THROWS_AS(wohlfahrt_split(identity(Modulus::mod(6)), 2, 3), zorn_error);
    CHECK_THROWS_AS(wohlfahrt_split(identity(), 0, 3), zorn_error);
}

// ============================================================================
// delta_level_join
// ============================================================================

TEST_CASE("delta_level_join pinned values", "[wohl]") {
    CHECK(delta_level_join(4, 6) == DeltaJoin{2, -1, 1});
    CHECK(delta_level_join(3, 3) == DeltaJoin{3, 1, 0});

    // gcd(n*s, 2*n^2) = n for coprime s: the n = 2, s = 3 instance.
    const DeltaJoin j = delta_level_join(2 * 4, 2 * 3);
    CHECK(j.d == 2);
    CHECK(j.t * 8 + j.s * 6 == 2);
    CHECK(verify_delta_join_certificate(8, 6, axis_vec(1)));
}

TEST_CASE("delta_level_join certificate holds on small vectors", "[wohl]") {
    for (std::int64_t m1 = 1; m1 <= 10; ++m1)
        for (std::int64_t m2 = 1; m2 <= 10; ++m2) {
            const DeltaJoin j = delta_level_join(m1, m2);
            REQUIRE(j.d == gcd(m1, m2));
            REQUIRE(j.t * m1 + j.s * m2 == j.d);
            REQUIRE(verify_delta_join_certificate(m1, m2, {1, 0, 0}));
            REQUIRE(verify_delta_join_certificate(m1, m2, {2, -5, 10}));
            REQUIRE(verify_delta_join_certificate(m1, m2, {7, 3, -9}));
        }
    CHECK_THROWS_AS(delta_level_join(0, 3), zorn_error);
}
