#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "zorn/factor.hpp"

using namespace zorn;

namespace {

// Walk all leaves of a tree (through mul and conj nodes).
template <typename F>
void walk_leaves(const ExprPtr& t, F&& f) {
    if (const auto* g = std::get_if<GeneratorTag>(&t->node)) {
        f(*g);
    } else if (const auto* m = std::get_if<MulNode>(&t->node)) {
        walk_leaves(m->l, f);
        walk_leaves(m->r, f);
    } else {
        walk_leaves(std::get<ConjNode>(t->node).inner, f);
    }
}

// Leaf contract of the congruence decomposition: axis elementaries with
// entries in nZ, or embedded leaves congruent to the identity mod n.
bool decomposition_leaves_ok(const ExprPtr& t, const BigInt& n) {
    bool ok = true;
    walk_leaves(t, [&](const GeneratorTag& g) {
        if (g.kind == TagKind::upper || g.kind == TagKind::lower) {
            int nonzero = 0;
            for (int i = 0; i < 3; ++i) {
                if (g.v[i] != 0) ++nonzero;
                if (g.v[i] % n != 0) ok = false;
            }
            if (nonzero > 1) ok = false;
        } else if (g.kind == TagKind::sl2) {
            if (reduce_mod(generator(g), n) != identity(Modulus::mod(n))) ok = false;
        } else {
            ok = false;
        }
    });
    return ok;
}

// Count embedded leaves, and how many sit off axis 1.
std::pair<int, int> embedded_census(const ExprPtr& t) {
    int embedded = 0, off_axis = 0;
    walk_leaves(t, [&](const GeneratorTag& g) {
        if (g.kind == TagKind::sl2) {
            ++embedded;
            if (g.j != 1) ++off_axis;
        }
    });
    return {embedded, off_axis};
}

// Random member of the level-n congruence subloop: a 12-step left fold of
// level-n elementaries and embedded unipotents.
ZornMatrix random_congruence(std::mt19937_64& rng, std::int64_t n) {
    std::uniform_int_distribution<int> kind(0, 3), axis(1, 3);
    std::uniform_int_distribution<std::int64_t> scale_dist(0, 3);
    const auto scale = [&] {
        static const std::int64_t k[4] = {-2, -1, 1, 2};
        return k[scale_dist(rng)];
    };
    ZornMatrix acc = identity();
    for (int i = 0; i < 12; ++i) {
        const int j = axis(rng);
        const BigInt e = n * scale();
        ZornMatrix g;
        switch (kind(rng)) {
            case 0: g = generator(GeneratorTag::upper(axis_vec(j, e))); break;
            case 1: g = generator(GeneratorTag::lower(axis_vec(j, e))); break;
            case 2: g = generator(GeneratorTag::embedded_sl2(j, 1, e, 0, 1)); break;
            default: g = generator(GeneratorTag::embedded_sl2(j, 1, 0, e, 1)); break;
        }
        acc = zmul(acc, g);
    }
    return acc;
}

// Random unital element of level q: Z[1|v|u|1 + u.v] with v, u in (qZ)^3.
ZornMatrix random_unital(std::mt19937_64& rng, std::int64_t q) {
    std::uniform_int_distribution<std::int64_t> comp(-4, 4);
    const Vec3 v{q * comp(rng), q * comp(rng), q * comp(rng)};
    const Vec3 u{q * comp(rng), q * comp(rng), q * comp(rng)};
    return zmat(1, v, u, 1 + dot(u, v));
}

}  // namespace

// ============================================================================
// factor_unital
// ============================================================================

TEST_CASE("factor_unital pinned trees", "[factor]") {
    // Already elementary: a single leaf.
    const ExprPtr single = factor_unital(zmat(1, {}, {2, 0, 0}, 1), 2);
    REQUIRE(std::holds_alternative<GeneratorTag>(single->node));
    CHECK(std::get<GeneratorTag>(single->node) == GeneratorTag::lower({2, 0, 0}));

    // Pure lower vector with two components: the three-leaf correction tree.
    const ZornMatrix a = zmat(1, {}, {2, 2, 0}, 1);
    const ExprPtr t = factor_unital(a, 2);
    CHECK(eval(t) == a);
    const auto ls = leaves(t);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == GeneratorTag::lower({0, 2, 0}));
    CHECK(ls[1] == GeneratorTag::lower({2, 0, 0}));
    CHECK(ls[2] == GeneratorTag::upper({0, 0, -4}));

    // Upper vector with two components routes through a lower correction.
    const ZornMatrix b = zmat(1, {1, 1, 0}, {}, 1);
    const ExprPtr u = factor_unital(b, 1);
    CHECK(eval(u) == b);
    const auto uls = leaves(u);
    REQUIRE(uls.size() == 3);
    CHECK(uls[0] == GeneratorTag::lower({0, 0, 1}));
    CHECK(uls[1] == GeneratorTag::upper({0, 1, 0}));
    CHECK(uls[2] == GeneratorTag::upper({1, 0, 0}));
}

TEST_CASE("factor_unital round-trips with level certificates", "[factor]") {
    std::mt19937_64 rng(0xFAC70ULL);
    for (const std::int64_t q : {1, 2, 3, 4}) {
        for (int i = 0; i < 200; ++i) {
            const ZornMatrix a = random_unital(rng, q);
            REQUIRE(zdet(a) == 1);
            const ExprPtr t = factor_unital(a, q);
            REQUIRE(eval(t) == a);
            REQUIRE(certify_level(t, q));
        }
    }
}

TEST_CASE("factor_unital rejects non-unital input", "[factor][errors]") {
    const auto expect_precondition = [](const ZornMatrix& a, const BigInt& q) {
        try {
            (void)factor_unital(a, q);
            FAIL("expected a thrown error");
        } catch (const zorn_error& e) {
            CHECK(e.code() == errc::precondition_violated);
        }
    };
    expect_precondition(zmat(2, {}, {2, 0, 0}, 1), 2);      // corner != 1
    expect_precondition(zmat(1, {1, 0, 0}, {}, 1), 2);      // vector not in 2Z
    expect_precondition(zmat(1, {2, 0, 0}, {2, 0, 0}, 1), 2);  // det != 1
    expect_precondition(identity(Modulus::mod(5)), 1);      // modular ring
    expect_precondition(identity(), 0);                     // level < 1
}

// ============================================================================
// sl2_factor
// ============================================================================

TEST_CASE("sl2_factor pinned words", "[factor]") {
    CHECK(sl2_factor({1, 1, 0, 1}) == SL2Word{{'S', 1}});
    CHECK(sl2_factor({0, 1, -1, 0}) == SL2Word{{'T', 1}});

    const Mat2 m{2, 1, 1, 1};
    CHECK(sl2_eval(sl2_factor(m)) == m);

    // Empty word for the identity.
    CHECK(sl2_factor({1, 0, 0, 1}).empty());
}

TEST_CASE("sl2_factor round-trips on a det-1 box sweep", "[factor]") {
    int count = 0;
    for (std::int64_t p = -8; p <= 8; ++p)
        for (std::int64_t q = -8; q <= 8; ++q)
            for (std::int64_t r = -8; r <= 8; ++r)
                for (std::int64_t s = -8; s <= 8; ++s) {
                    if (p * s - q * r != 1) continue;
                    ++count;
                    const Mat2 m{p, q, r, s};
                    REQUIRE(sl2_eval(sl2_factor(m)) == m);
                }
    CHECK(count == 692);  // every det-1 matrix in the box, counted independently
}

TEST_CASE("sl2_factor rejects other determinants", "[factor][errors]") {
    try {
        (void)sl2_factor({1, 0, 0, 2});
        FAIL("expected a thrown error");
    } catch (const zorn_error& e) {
        CHECK(e.code() == errc::invalid_sl2);
    }
}

// ============================================================================
// decompose_congruence
// ============================================================================

TEST_CASE("decompose_congruence pinned trees", "[factor]") {
    // Axis-aligned input stays a single embedded leaf.
    const ZornMatrix g = generator(GeneratorTag::embedded_sl2(1, 1, 2, 0, 1));
    const ExprPtr single = decompose_congruence(g, 2);
    REQUIRE(std::holds_alternative<GeneratorTag>(single->node));
    CHECK(std::get<GeneratorTag>(single->node) == GeneratorTag::embedded_sl2(1, 1, 2, 0, 1));

    // General level-2 element: round-trip plus the leaf contract.
    const ZornMatrix a = zmat(3, {2, 0, 0}, {4, 0, 0}, 3);
    const ExprPtr t = decompose_congruence(a, 2);
    CHECK(eval(t) == a);
    CHECK(decomposition_leaves_ok(t, 2));

    // Vanishing corner at level 1 exercises the pivot branch.
    const ZornMatrix p = zmat(0, {2, 3, 2}, {0, -3, 4}, 3);
    REQUIRE(zdet(p) == 1);
    CHECK(eval(decompose_congruence(p, 1)) == p);
}

TEST_CASE("decompose_congruence round-trips on random congruence elements", "[factor]") {
    std::mt19937_64 rng(0xDEC0ULL);
    for (const std::int64_t n : {1, 2, 3, 4}) {
        for (int i = 0; i < 100; ++i) {
            const ZornMatrix a = random_congruence(rng, n);
            REQUIRE(gamma_membership(a, n));
            const ExprPtr t = decompose_congruence(a, n);
            REQUIRE(eval(t) == a);
            REQUIRE(decomposition_leaves_ok(t, n));
        }
    }
}

TEST_CASE("decompose_congruence rejects outside elements", "[factor][errors]") {
    try {
        (void)decompose_congruence(zmat(1, {1, 0, 0}, {}, 1), 2);
        FAIL("expected a thrown error");
    } catch (const zorn_error& e) {
        CHECK(e.code() == errc::not_in_gamma);
    }
    // det -1 is not in any congruence subloop.
    CHECK_THROWS_AS(decompose_congruence(zmat(-1, {}, {}, 1), 1), zorn_error);
}

// ============================================================================
// split_gamma1_delta
// ============================================================================

TEST_CASE("split_gamma1_delta pinned trees", "[factor]") {
    // Axis-1 embedded input stays a single embedded leaf.
    const ZornMatrix g = generator(GeneratorTag::embedded_sl2(1, 1, 2, 0, 1));
    const ExprPtr single = split_gamma1_delta(g, 2);
    REQUIRE(std::holds_alternative<GeneratorTag>(single->node));
    CHECK(std::get<GeneratorTag>(single->node) == GeneratorTag::embedded_sl2(1, 1, 2, 0, 1));

    // Level-2 elementary off axis 1: one elementary leaf, no embedded part.
    const ZornMatrix u2 = zmat(1, {0, 2, 0}, {}, 1);
    const ExprPtr t = split_gamma1_delta(u2, 2);
    REQUIRE(std::holds_alternative<GeneratorTag>(t->node));
    CHECK(std::get<GeneratorTag>(t->node) == GeneratorTag::upper({0, 2, 0}));

    // Mixed element: round-trip with at most one embedded leaf, on axis 1.
    const ZornMatrix a = zmat(3, {2, 0, 0}, {4, 0, 0}, 3);
    const ExprPtr m = split_gamma1_delta(a, 2);
    CHECK(eval(m) == a);
    CHECK(decomposition_leaves_ok(m, 2));
    const auto [embedded, off_axis] = embedded_census(m);
    CHECK(embedded <= 1);
    CHECK(off_axis == 0);
}

TEST_CASE("split_gamma1_delta round-trips with the single-pivot contract", "[factor]") {
    std::mt19937_64 rng(0x5B117ULL);
    for (const std::int64_t n : {1, 2, 3}) {
        for (int i = 0; i < 100; ++i) {
            const ZornMatrix a = random_congruence(rng, n);
            const ExprPtr t = split_gamma1_delta(a, n);
            REQUIRE(eval(t) == a);
            REQUIRE(decomposition_leaves_ok(t, n));
            const auto [embedded, off_axis] = embedded_census(t);
            REQUIRE(embedded <= 1);
            REQUIRE(off_axis == 0);
        }
    }
}

TEST_CASE("level-1 decomposition covers a small exhaustive box", "[factor]") {
    // Every det-1 matrix with entries in [-1, 1]: 8 components, full sweep.
    int checked = 0;
    std::array<std::int64_t, 8> c{};
    const auto next = [&c]() -> bool {
        for (int i = 0; i < 8; ++i) {
            if (c[i] < 1) {
                ++c[i];
                return true;
            }
            c[i] = -1;
        }
        return false;
    };
    c.fill(-1);
    do {
        const ZornMatrix a = zmat(c[0], {c[1], c[2], c[3]}, {c[4], c[5], c[6]}, c[7]);
        if (zdet(a) != 1) continue;
        ++checked;
        const ExprPtr t = decompose_congruence(a, 1);
        REQUIRE(eval(t) == a);
        REQUIRE(decomposition_leaves_ok(t, 1));
    } while (next());
    CHECK(checked == 1480);  // det-1 count in the [-1,1] box
}
