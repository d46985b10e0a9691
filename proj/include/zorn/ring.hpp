#pragma once

/**
 * Exact integer and residue arithmetic underpinning everything else.
 *
 * All quantities that can outgrow 64 bits (Bezout coefficients, CRT moduli,
 * matrix entries produced by the factorization algorithms) use an
 * arbitrary-precision integer type.  A Modulus with m == 0 denotes the ring
 * of integers; otherwise arithmetic is mod m with canonical representatives
 * in [0, m).
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "zorn/errors.hpp"

namespace zorn {

using BigInt = boost::multiprecision::cpp_int;

[[nodiscard]] inline int sgn(const BigInt& v) { return v == 0 ? 0 : (v < 0 ? -1 : 1); }

[[nodiscard]] inline BigInt big_abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// gcd(a, b) >= 0 under any signs.
[[nodiscard]] inline BigInt gcd(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

// ============================================================================
// Modulus
// ============================================================================

struct Modulus {
    BigInt m;  // 0 denotes the integers; otherwise m >= 1

    [[nodiscard]] static Modulus integers() { return Modulus{0}; }
    [[nodiscard]] static Modulus mod(BigInt n) {
        if (n < 0) throw zorn_error(errc::precondition_violated, "modulus must be nonnegative");
        return Modulus{std::move(n)};
    }

    [[nodiscard]] bool is_integers() const { return m == 0; }

    // Canonical representative: identity over the integers, value in [0, m) otherwise.
    [[nodiscard]] BigInt canonical(const BigInt& v) const {
        if (is_integers()) return v;
        BigInt r = v % m;
        if (r < 0) r += m;
        return r;
    }

    friend bool operator==(const Modulus&, const Modulus&) = default;
};

// ============================================================================
// Extended gcd and modular inverse
// ============================================================================

struct ExtGcd {
    BigInt g;  // gcd(a, b) >= 0
    BigInt x;  // a*x + b*y == g
    BigInt y;
};

namespace detail {

// Magnitude-only recursion; the coefficient convention is pinned by the
// worked values (6,4)->(2,1,-1), (3,7)->(1,-2,1), (3,3)->(3,1,0), (0,0)->(0,0,0).
inline ExtGcd ext_gcd_nonneg(const BigInt& a, const BigInt& b) {
    if (a == 0) return {b, 0, b > 0 ? 1 : 0};
    ExtGcd r = ext_gcd_nonneg(b % a, a);
    return {r.g, r.y - (b / a) * r.x, r.x};
}

}  // namespace detail

[[nodiscard]] inline ExtGcd ext_gcd(const BigInt& a, const BigInt& b) {
    ExtGcd r = detail::ext_gcd_nonneg(big_abs(a), big_abs(b));
    if (a < 0) r.x = -r.x;
    if (b < 0) r.y = -r.y;
    return r;
}

// Inverse of a mod m (m >= 1), canonical in [0, m).
[[nodiscard]] inline BigInt mod_inv(const BigInt& a, const BigInt& m) {
    if (m < 1) throw zorn_error(errc::precondition_violated, "mod_inv requires m >= 1");
    const BigInt ar = Modulus::mod(m).canonical(a);
    ExtGcd e = ext_gcd(ar, m);
    if (e.g != 1)
        throw zorn_error(errc::not_invertible,
                         "value " + a.str() + " has no inverse mod " + m.str(),
                         "{\"value\":\"" + a.str() + "\",\"mod\":\"" + m.str() + "\"}");
    return Modulus::mod(m).canonical(e.x);
}

// ============================================================================
// Prime factorization (trial division; inputs are desk scale)
// ============================================================================

struct PrimePower {
    std::int64_t p;
    int k;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using PrimePowerList = std::vector<PrimePower>;

[[nodiscard]] inline PrimePowerList factor_int(std::int64_t n) {
    if (n < 1) throw zorn_error(errc::precondition_violated, "factor_int requires n >= 1");
    PrimePowerList out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

// ============================================================================
// Chinese remainder theorem
// ============================================================================

struct Residue {
    BigInt r;
    BigInt m;
};

// Combined residue and modulus for pairwise-coprime moduli.
[[nodiscard]] inline Residue crt(const std::vector<Residue>& parts) {
    if (parts.empty()) throw zorn_error(errc::precondition_violated, "crt requires a nonempty sequence");
    BigInt r = 0, M = 1;
    for (const Residue& p : parts) {
        if (p.m < 1) throw zorn_error(errc::precondition_violated, "crt moduli must be >= 1");
        if (gcd(M, p.m) != 1)
            throw zorn_error(errc::not_coprime,
                             "moduli " + M.str() + " and " + p.m.str() + " share a factor");
        // r' == r (mod M), r' == p.r (mod p.m)
        const BigInt t = Modulus::mod(p.m).canonical((p.r - r) * mod_inv(M % p.m, p.m));
        r += M * t;
        M *= p.m;
        r = Modulus::mod(M).canonical(r);
    }
    return {r, M};
}

// ============================================================================
// Unimodular shift search
// ============================================================================

namespace detail {

// Scalar enumeration order 0, 1, -1, 2, -2, ...
[[nodiscard]] inline BigInt zigzag(std::int64_t rank) {
    const std::int64_t half = (rank + 1) / 2;
    return rank % 2 == 1 ? BigInt(half) : BigInt(-half);
}

}  // namespace detail

struct Shift {
    BigInt t;
    BigInt s;
};

/**
 * First pair (t, s) making u1 + v2*t + v3*s coprime to a, where pairs are
 * ordered by max(|t|,|s|) and, within a ring, by the zigzag scalar order
 * 0, 1, -1, 2, -2, ... on t then s.  A solution exists inside [-|a|, |a|]^2
 * whenever gcd(u1, v2, v3, a) == 1.
 */
[[nodiscard]] inline Shift unimodular_shift(const BigInt& a, const BigInt& u1,
                                            const BigInt& v2, const BigInt& v3) {
    if (a == 0) throw zorn_error(errc::precondition_violated, "unimodular_shift requires a != 0");
    if (gcd(gcd(u1, v2), gcd(v3, a)) != 1)
        throw zorn_error(errc::not_unimodular,
                         "gcd(u1, v2, v3, a) > 1",
                         "{\"a\":\"" + a.str() + "\",\"u1\":\"" + u1.str() + "\",\"v2\":\"" +
                             v2.str() + "\",\"v3\":\"" + v3.str() + "\"}");

    const BigInt bound = big_abs(a);
    auto hit = [&](const BigInt& t, const BigInt& s) {
        return gcd(u1 + v2 * t + v3 * s, a) == 1;
    };

    for (BigInt ring = 0; ring <= bound; ++ring) {
        const std::int64_t r = ring.convert_to<std::int64_t>();
        for (std::int64_t ti = 0; ti <= 2 * r; ++ti) {
            const BigInt t = detail::zigzag(ti);
            if (big_abs(t) == ring) {
                for (std::int64_t si = 0; si <= 2 * r; ++si) {
                    const BigInt s = detail::zigzag(si);
                    if (hit(t, s)) return {t, s};
                }
            } else {
                // Interior t: only |s| == ring completes the ring, positive first.
                if (hit(t, ring)) return {t, ring};
                if (hit(t, -ring)) return {t, -ring};
            }
        }
    }
    throw zorn_error(errc::not_unimodular, "search exhausted without a coprime shift");
}

}  // namespace zorn
