#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zorn/quotient.hpp"

using namespace zorn;

// ============================================================================
// Index formula
// ============================================================================

TEST_CASE("index_gamma pinned values", "[quotient]") {
    CHECK(index_gamma(1) == 1);
    CHECK(index_gamma(2) == 120);
    CHECK(index_gamma(3) == 2160);
    CHECK(index_gamma(4) == 15360);
    CHECK(index_gamma(5) == 78000);
    CHECK(index_gamma(6) == 259200);
    CHECK(index_gamma(7) == 823200);
    CHECK(index_gamma(8) == 1966080);
    CHECK(index_gamma(9) == 4723920);
}

TEST_CASE("index_gamma is multiplicative over coprime arguments", "[quotient]") {
    CHECK(index_gamma(6) == index_gamma(2) * index_gamma(3));
    CHECK(index_gamma(35) == index_gamma(5) * index_gamma(7));
    CHECK(index_gamma(72) == index_gamma(8) * index_gamma(9));
    // Not multiplicative on shared factors: 4 = 2*2 but the formula is not a square.
    CHECK(index_gamma(4) != index_gamma(2) * index_gamma(2));
    CHECK_THROWS_AS(index_gamma(0), zorn_error);
}

// ============================================================================
// Enumeration
// ============================================================================

TEST_CASE("enumerate_sll counts match the index formula", "[quotient]") {
    for (std::int64_t m = 1; m <= 6; ++m) {
        const FiniteLoop l = enumerate_sll(m);
        REQUIRE(l.modulus() == m);
        REQUIRE(BigInt(l.order()) == index_gamma(m));
    }
}

TEST_CASE("enumeration is canonically ordered with identity first", "[quotient]") {
    const FiniteLoop l = enumerate_sll(3);
    CHECK(l.element(0) == identity(Modulus::mod(3)));
    for (std::uint32_t i = 2; i < l.order(); ++i)
        REQUIRE(l.packed(i - 1) < l.packed(i));
}

TEST_CASE("loop multiplication agrees with matrix multiplication", "[quotient]") {
    const FiniteLoop l = enumerate_sll(4);
    std::mt19937_64 rng(0xAB5EEDULL);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(l.order() - 1));
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint32_t i = pick(rng), j = pick(rng);
        const std::uint32_t k = l.mul(i, j);
        REQUIRE(k < l.order());
        REQUIRE(l.element(k) == zmul(l.element(i), l.element(j)));
    }
}

TEST_CASE("loop inverse and powers agree with the algebra", "[quotient]") {
    const FiniteLoop l = enumerate_sll(3);
    std::mt19937_64 rng(0x1A7EULL);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(l.order() - 1));
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint32_t i = pick(rng);
        REQUIRE(l.element(l.inv(i)) == zinv(l.element(i)));
        REQUIRE(l.mul(i, l.inv(i)) == 0);
        REQUIRE(l.element(l.pow(i, 5)) == zpow(l.element(i), 5));
        const std::int64_t ord = l.element_order(i);
        REQUIRE(ord >= 1);
        REQUIRE(l.pow(i, ord) == 0);
    }
}

TEST_CASE("index_of round-trips and flags absent matrices", "[quotient]") {
    const FiniteLoop l = enumerate_sll(2);
    for (std::uint32_t i = 0; i < l.order(); ++i) REQUIRE(l.index_of(l.element(i)) == i);

    // det 0 mod 2: not an element.
    const ZornMatrix zero = zmat(0, {}, {}, 0, Modulus::mod(2));
    CHECK(l.index_of(zero) == FiniteLoop::npos);
    CHECK_FALSE(l.contains(zero));

    // A matrix over the wrong ring is a usage error, not a lookup miss.
    CHECK_THROWS_AS(l.index_of(identity(Modulus::mod(4))), zorn_error);
    CHECK_THROWS_AS(l.index_of(identity()), zorn_error);
}

TEST_CASE("congruence-to-identity classification", "[quotient]") {
    const FiniteLoop l = enumerate_sll(4);
    std::size_t at_level_2 = 0;
    for (std::uint32_t i = 0; i < l.order(); ++i) {
        REQUIRE(l.is_congruent_identity(i, 1));
        if (l.is_congruent_identity(i, 2)) ++at_level_2;
    }
    // |kernel| = index_gamma(4) / index_gamma(2).
    CHECK(at_level_2 == 128);
    CHECK(l.is_congruent_identity(0, 4));
    CHECK_THROWS_AS(l.is_congruent_identity(0, 3), zorn_error);
}

TEST_CASE("warm cache leaves products unchanged", "[quotient]") {
    const FiniteLoop l = enumerate_sll(2);
    std::mt19937_64 rng(0xCACE0ULL);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(l.order() - 1));
    std::vector<std::array<std::uint32_t, 3>> samples;
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t a = pick(rng), b = pick(rng);
        samples.push_back({a, b, l.mul(a, b)});
    }
    l.warm_cache();
    for (const auto& s : samples) REQUIRE(l.mul(s[0], s[1]) == s[2]);
}

TEST_CASE("enumeration caps produce TooLarge", "[quotient][errors]") {
    try {
        (void)enumerate_sll(11);  // prime power beyond the direct cap
        FAIL("expected a thrown error");
    } catch (const zorn_error& e) {
        CHECK(e.code() == errc::too_large);
        CHECK_THAT(e.witness(), Catch::Matchers::ContainsSubstring("11"));
    }
    try {
        (void)enumerate_sll(2520);  // all factors small, total order too big
        FAIL("expected a thrown error");
    } catch (const zorn_error& e) {
        CHECK(e.code() == errc::too_large);
    }
    CHECK_THROWS_AS(enumerate_sll(0), zorn_error);
}

// ============================================================================
// CRT product decomposition
// ============================================================================

TEST_CASE("componentwise reduction is an isomorphism onto the product", "[quotient]") {
    CHECK(crt_iso_check(2, 3));
    CHECK(crt_iso_check(1, 5));
}

TEST_CASE("crt_iso_check rejects shared factors", "[quotient][errors]") {
    try {
        (void)crt_iso_check(2, 4);
        FAIL("expected a thrown error");
    } catch (const zorn_error& e) {
        CHECK(e.code() == errc::not_coprime);
    }
}
