#pragma once

/**
 * Level splitting: any element of the level-n1 congruence subloop factors as
 * B * C where B carries a tree certificate over level-n1 elementaries and C
 * is congruent to the identity mod n2.  The construction never relies on
 * associativity: B is assembled as a certified product and C is *solved* as
 * eval(B)^-1 * A, which is exact by the inverse property, so the pair
 * (B_tree, C) is self-verifying.
 *
 * Also the lattice join of elementary levels: gcd levels combine through an
 * explicit exponent identity on parallel upper elementaries.
 */

#include <stdexcept>
#include <utility>

#include "zorn/algebra.hpp"
#include "zorn/errors.hpp"
#include "zorn/expr.hpp"
#include "zorn/factor.hpp"
#include "zorn/ring.hpp"

namespace zorn {

struct WohlfahrtSplit {
    ExprPtr b_tree;  // certified over level-n1 elementaries
    ZornMatrix c;    // congruent to the identity mod n2; A == eval(b_tree) * c
};

namespace detail {

[[nodiscard]] inline BigInt vec_gcd(const Vec3& v) {
    return gcd(gcd(v[0], v[1]), v[2]);
}

// A vector t with t . xp == 1 for primitive xp, via two Bezout steps.
[[nodiscard]] inline Vec3 dual_vector(const Vec3& xp) {
    const ExtGcd inner = ext_gcd(xp[0], xp[1]);
    const ExtGcd outer = ext_gcd(inner.g, xp[2]);
    Vec3 t{outer.x * inner.x, outer.x * inner.y, outer.y};
    if (dot(t, xp) != 1) throw std::logic_error("internal: dual vector for non-primitive input");
    return t;
}

// Builds a tree over level-n1 elementaries whose product is congruent to A
// mod n2.  Dispatch mirrors the constructive proof: the corner is made
// congruent to 1 (directly, by an upper-elementary correction plus a lower
// conjugation, or by a preliminary conjugation making it a unit).
[[nodiscard]] inline ExprPtr wohl_tree(const ZornMatrix& A, const BigInt& n1, const BigInt& n2,
                                       int depth) {
    if (depth > 6) throw std::logic_error("internal: level-split recursion did not terminate");

    // Case 1: corner already 1 mod n2.  B = Z[1|x|y|ab] matches A mod n2 and
    // is unital of level n1, so the unital factorization certifies it.
    if ((A.a - 1) % n2 == 0)
        return factor_unital(zmat(1, A.x, A.y, A.a * A.b, Modulus::integers()), n1);

    // Case 2: corner is a unit mod n2.
    if (gcd(A.a, n2) == 1) {
        if (A.x.is_zero()) {
            // Degenerate route: make x nonzero by a level-n1 elementary.
            if (A.a == 0)
                throw zorn_error(errc::degenerate_v, "unit-corner split has x = 0 and a = 0");
            const ZornMatrix A2 = zmul(A, generator(GeneratorTag::upper(axis_vec(1, n1))));
            return mul_opt(wohl_tree(A2, n1, n2, depth + 1), upper_leaf(axis_vec(1, -n1)));
        }
        const BigInt c = vec_gcd(A.x);
        Vec3 xp;
        for (int i = 0; i < 3; ++i) {
            if (A.x[i] % c != 0) throw std::logic_error("internal: vector gcd does not divide");
            xp[i] = A.x[i] / c;
        }
        const BigInt ap = mod_inv(A.a, n2);
        const Vec3 w = (ap * (1 - A.a - c)) * xp;  // 1 - a and c both lie in n1*Z
        for (int i = 0; i < 3; ++i)
            if (w[i] % n1 != 0) throw std::logic_error("internal: correction misses level n1");
        const ZornMatrix D = zmul(A, generator(GeneratorTag::upper(w)));
        const ZornMatrix T1 = generator(GeneratorTag::lower(dual_vector(xp)));
        const ZornMatrix E = zmul(zmul(zinv(T1), D), T1);  // corner a + (aw + x).t == 1 mod n2
        ExprPtr inner = wohl_tree(E, n1, n2, depth + 1);
        return mul_opt(conj(T1, std::move(inner)), upper_leaf(-w));
    }

    // Case 3: conjugate by a lower elementary to make the corner a unit.
    // a and d = x.y are coprime (ab - d == 1), so a - t*d hits a unit mod n2.
    const BigInt d = dot(A.x, A.y);
    BigInt t;
    bool found = false;
    for (std::int64_t rank = 0; BigInt(rank) < 2 * n2 + 3 && !found; ++rank) {
        t = zigzag(rank);
        found = gcd(A.a - t * d, n2) == 1;
    }
    if (!found) throw std::logic_error("internal: no unit-making shift exists");
    const ZornMatrix T = generator(GeneratorTag::lower((-t) * A.y));
    const ZornMatrix E = zmul(zmul(zinv(T), A), T);  // corner a - t*d, x unchanged
    ExprPtr inner = wohl_tree(E, n1, n2, depth + 1);
    return conj(T, std::move(inner));
}

}  // namespace detail

// ============================================================================
// wohlfahrt_split
// ============================================================================

/**
 * Splits A in the level-n1 congruence subloop as A = eval(B_tree) * C with
 * certify_level(B_tree, n1) and C congruent to the identity mod n2.  Both
 * postconditions are re-checked before returning.
 */
[[nodiscard]] inline WohlfahrtSplit wohlfahrt_split(const ZornMatrix& A, const BigInt& n1,
                                                    const BigInt& n2) {
    if (n1 < 1 || n2 < 1)
        throw zorn_error(errc::precondition_violated, "wohlfahrt_split requires n1, n2 >= 1");
    if (!A.mod.is_integers())
        throw zorn_error(errc::precondition_violated, "wohlfahrt_split operates over the integers");
    if (!gamma_membership(A, n1))
        throw zorn_error(errc::not_in_gamma,
                         "input is outside the level-" + n1.str() + " congruence subloop");
    ExprPtr tree = detail::wohl_tree(A, n1, n2, 0);
    const ZornMatrix B = eval(tree);
    ZornMatrix C = zmul(zinv(B), A);
    if (!certify_level(tree, n1) || !gamma_membership(C, n2) || zmul(B, C) != A)
        throw std::logic_error("internal: level split failed self-check");
    return {std::move(tree), std::move(C)};
}

// ============================================================================
// delta_level_join
// ============================================================================

struct DeltaJoin {
    BigInt d;  // gcd(m1, m2)
    BigInt t, s;  // t*m1 + s*m2 == d
    friend bool operator==(const DeltaJoin&, const DeltaJoin&) = default;
};

[[nodiscard]] inline DeltaJoin delta_level_join(const BigInt& m1, const BigInt& m2) {
    if (m1 < 1 || m2 < 1)
        throw zorn_error(errc::precondition_violated, "delta_level_join requires m1, m2 >= 1");
    const ExtGcd eg = ext_gcd(m1, m2);
    return {eg.g, eg.x, eg.y};
}

/**
 * Exponent identity behind the join: parallel upper elementaries associate
 * and commute, so U(d x) == U(m1 x)^t * U(m2 x)^s.  Checked by evaluation.
 */
[[nodiscard]] inline bool verify_delta_join_certificate(const BigInt& m1, const BigInt& m2,
                                                        const Vec3& x) {
    const DeltaJoin j = delta_level_join(m1, m2);
    const ZornMatrix lhs = generator(GeneratorTag::upper(j.d * x));
    const ZornMatrix rhs = zmul(zpow(generator(GeneratorTag::upper(m1 * x)), j.t),
                                zpow(generator(GeneratorTag::upper(m2 * x)), j.s));
    return lhs == rhs;
}

}  // namespace zorn
