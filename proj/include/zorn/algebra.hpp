#pragma once

/**
 * The vector-matrix algebra: 2x2 matrices whose diagonal holds scalars and
 * whose off-diagonal slots hold 3-vectors, multiplied with dot and cross
 * corrections.  Over any commutative ring the algebra is alternative, its
 * determinant is multiplicative, and its invertible elements form a Moufang
 * loop; the unit-determinant elements are the loop this library studies.
 *
 * Conventions: cross is right-handed (e1 x e2 = e3); modular entries are
 * kept canonical in [0, m).
 */

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "zorn/errors.hpp"
#include "zorn/ring.hpp"

namespace zorn {

// ============================================================================
// Vec3
// ============================================================================

struct Vec3 {
    std::array<BigInt, 3> c{};

    Vec3() = default;
    Vec3(BigInt c1, BigInt c2, BigInt c3) : c{std::move(c1), std::move(c2), std::move(c3)} {}

    [[nodiscard]] const BigInt& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    [[nodiscard]] BigInt& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    [[nodiscard]] bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }

    friend Vec3 operator+(const Vec3& u, const Vec3& v) {
        return {u.c[0] + v.c[0], u.c[1] + v.c[1], u.c[2] + v.c[2]};
    }
    friend Vec3 operator-(const Vec3& u, const Vec3& v) {
        return {u.c[0] - v.c[0], u.c[1] - v.c[1], u.c[2] - v.c[2]};
    }
    friend Vec3 operator-(const Vec3& u) { return {-u.c[0], -u.c[1], -u.c[2]}; }
    friend Vec3 operator*(const BigInt& k, const Vec3& u) {
        return {k * u.c[0], k * u.c[1], k * u.c[2]};
    }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

[[nodiscard]] inline BigInt dot(const Vec3& u, const Vec3& v) {
    return u.c[0] * v.c[0] + u.c[1] * v.c[1] + u.c[2] * v.c[2];
}

[[nodiscard]] inline Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u.c[1] * v.c[2] - u.c[2] * v.c[1],
            u.c[2] * v.c[0] - u.c[0] * v.c[2],
            u.c[0] * v.c[1] - u.c[1] * v.c[0]};
}

// e_j for j in {1, 2, 3}, scaled by k.
[[nodiscard]] inline Vec3 axis_vec(int j, const BigInt& k = 1) {
    if (j < 1 || j > 3) throw zorn_error(errc::precondition_violated, "axis index must be 1, 2 or 3");
    Vec3 v;
    v[j - 1] = k;
    return v;
}

// ============================================================================
// ZornMatrix
// ============================================================================

struct ZornMatrix {
    BigInt a;
    Vec3 x;  // upper-right vector
    Vec3 y;  // lower-left vector
    BigInt b;
    Modulus mod = Modulus::integers();

    friend bool operator==(const ZornMatrix&, const ZornMatrix&) = default;
};

inline void canonicalize(ZornMatrix& m) {
    if (m.mod.is_integers()) return;
    m.a = m.mod.canonical(m.a);
    m.b = m.mod.canonical(m.b);
    for (int i = 0; i < 3; ++i) {
        m.x[i] = m.mod.canonical(m.x[i]);
        m.y[i] = m.mod.canonical(m.y[i]);
    }
}

[[nodiscard]] inline ZornMatrix zmat(BigInt a, Vec3 x, Vec3 y, BigInt b,
                                     Modulus mod = Modulus::integers()) {
    ZornMatrix m{std::move(a), std::move(x), std::move(y), std::move(b), std::move(mod)};
    canonicalize(m);
    return m;
}

[[nodiscard]] inline ZornMatrix identity(Modulus mod = Modulus::integers()) {
    return zmat(1, {}, {}, 1, std::move(mod));
}

namespace detail {

inline void require_same_mod(const ZornMatrix& l, const ZornMatrix& r) {
    if (l.mod != r.mod)
        throw zorn_error(errc::modulus_mismatch, "operands live over different rings");
}

}  // namespace detail

[[nodiscard]] inline ZornMatrix zmul(const ZornMatrix& l, const ZornMatrix& r) {
    detail::require_same_mod(l, r);
    return zmat(l.a * r.a + dot(l.x, r.y),
                l.a * r.x + r.b * l.x - cross(l.y, r.y),
                r.a * l.y + l.b * r.y + cross(l.x, r.x),
                l.b * r.b + dot(l.y, r.x),
                l.mod);
}

[[nodiscard]] inline ZornMatrix zadd(const ZornMatrix& l, const ZornMatrix& r) {
    detail::require_same_mod(l, r);
    return zmat(l.a + r.a, l.x + r.x, l.y + r.y, l.b + r.b, l.mod);
}

[[nodiscard]] inline ZornMatrix zneg(const ZornMatrix& m) {
    return zmat(-m.a, -m.x, -m.y, -m.b, m.mod);
}

[[nodiscard]] inline BigInt zdet(const ZornMatrix& m) {
    return m.mod.canonical(m.a * m.b - dot(m.x, m.y));
}

// Unit test of the determinant in the coefficient ring.
[[nodiscard]] inline bool is_gll(const ZornMatrix& m) {
    const BigInt d = zdet(m);
    if (m.mod.is_integers()) return d == 1 || d == -1;
    return gcd(d, m.mod.m) == 1;
}

[[nodiscard]] inline bool is_sll(const ZornMatrix& m) {
    return zdet(m) == m.mod.canonical(1);
}

[[nodiscard]] inline ZornMatrix zinv(const ZornMatrix& m) {
    const BigInt d = zdet(m);
    BigInt di;
    if (m.mod.is_integers()) {
        if (d != 1 && d != -1)
            throw zorn_error(errc::not_invertible, "determinant " + d.str() + " is not a unit",
                             "{\"det\":\"" + d.str() + "\"}");
        di = d;  // d * d == 1
    } else {
        if (gcd(d, m.mod.m) != 1)
            throw zorn_error(errc::not_invertible,
                             "determinant " + d.str() + " is not a unit mod " + m.mod.m.str(),
                             "{\"det\":\"" + d.str() + "\"}");
        di = mod_inv(d, m.mod.m);
    }
    return zmat(di * m.b, di * -m.x, di * -m.y, di * m.a, m.mod);
}

// Integer power by repeated squaring; well-defined because any single element
// generates an associative subloop.  Negative exponents require a unit.
[[nodiscard]] inline ZornMatrix zpow(ZornMatrix base, BigInt e) {
    if (e < 0) {
        base = zinv(base);
        e = -e;
    }
    ZornMatrix acc = identity(base.mod);
    while (e > 0) {
        if ((e & 1) != 0) acc = zmul(acc, base);
        base = zmul(base, base);
        e >>= 1;
    }
    return acc;
}

// Componentwise reduction onto Z/mZ; the source modulus must refine m.
[[nodiscard]] inline ZornMatrix reduce_mod(const ZornMatrix& m, const BigInt& n) {
    if (n < 1) throw zorn_error(errc::precondition_violated, "reduce_mod requires n >= 1");
    if (!m.mod.is_integers() && m.mod.m % n != 0)
        throw zorn_error(errc::modulus_mismatch,
                         "cannot reduce mod " + n.str() + " from mod " + m.mod.m.str());
    return zmat(m.a, m.x, m.y, m.b, Modulus::mod(n));
}

// Membership in the principal congruence subloop of level n (n == 1: whole loop).
[[nodiscard]] inline bool gamma_membership(const ZornMatrix& m, const BigInt& n) {
    if (n < 1) throw zorn_error(errc::precondition_violated, "gamma_membership requires n >= 1");
    if (!is_sll(m)) return false;
    return reduce_mod(m, n) == identity(Modulus::mod(n));
}

// ============================================================================
// Generators
// ============================================================================

enum class TagKind : std::uint8_t { upper, lower, s, t, u, sl2 };

/**
 * Symbolic generator label.  upper/lower carry a vector; s carries an axis and
 * an exponent-like entry; t/u carry an axis; sl2 carries an axis and a 2x2
 * integer matrix (p q / r s) embedded along that axis.
 */
struct GeneratorTag {
    TagKind kind = TagKind::upper;
    Vec3 v{};
    int j = 1;
    BigInt e = 1;
    std::array<BigInt, 4> m{1, 0, 0, 1};

    [[nodiscard]] static GeneratorTag upper(Vec3 v) {
        GeneratorTag t;
        t.kind = TagKind::upper;
        t.v = std::move(v);
        return t;
    }
    [[nodiscard]] static GeneratorTag lower(Vec3 v) {
        GeneratorTag t;
        t.kind = TagKind::lower;
        t.v = std::move(v);
        return t;
    }
    [[nodiscard]] static GeneratorTag S(int j, BigInt a) {
        GeneratorTag t;
        t.kind = TagKind::s;
        t.j = j;
        t.e = std::move(a);
        return t;
    }
    [[nodiscard]] static GeneratorTag T(int j) {
        GeneratorTag t;
        t.kind = TagKind::t;
        t.j = j;
        return t;
    }
    [[nodiscard]] static GeneratorTag U(int j) {
        GeneratorTag t;
        t.kind = TagKind::u;
        t.j = j;
        return t;
    }
    [[nodiscard]] static GeneratorTag embedded_sl2(int j, BigInt p, BigInt q, BigInt r, BigInt s) {
        GeneratorTag t;
        t.kind = TagKind::sl2;
        t.j = j;
        t.m = {std::move(p), std::move(q), std::move(r), std::move(s)};
        return t;
    }

    friend bool operator==(const GeneratorTag&, const GeneratorTag&) = default;
};

[[nodiscard]] inline ZornMatrix generator(const GeneratorTag& tag,
                                          Modulus mod = Modulus::integers()) {
    switch (tag.kind) {
        case TagKind::upper:
            return zmat(1, tag.v, {}, 1, std::move(mod));
        case TagKind::lower:
            return zmat(1, {}, tag.v, 1, std::move(mod));
        case TagKind::s:
            return zmat(1, axis_vec(tag.j, tag.e), {}, 1, std::move(mod));
        case TagKind::t:
            return zmat(0, axis_vec(tag.j), -axis_vec(tag.j), 0, std::move(mod));
        case TagKind::u:
            return zmat(0, axis_vec(tag.j), -axis_vec(tag.j), 1, std::move(mod));
        case TagKind::sl2: {
            if (tag.m[0] * tag.m[3] - tag.m[1] * tag.m[2] != 1)
                throw zorn_error(errc::invalid_sl2, "embedded 2x2 matrix must have determinant 1");
            return zmat(tag.m[0], axis_vec(tag.j, tag.m[1]), axis_vec(tag.j, tag.m[2]), tag.m[3],
                        std::move(mod));
        }
    }
    throw zorn_error(errc::precondition_violated, "unknown generator tag");
}

// ============================================================================
// Commutator, associator, Moufang identities
// ============================================================================

namespace detail {

inline void require_invertible(const ZornMatrix& m, const char* who) {
    if (!is_gll(m)) throw zorn_error(errc::not_invertible, std::string(who) + " operand is not invertible");
}

}  // namespace detail

// ((A*B)*A^-1)*B^-1
[[nodiscard]] inline ZornMatrix commutator(const ZornMatrix& A, const ZornMatrix& B) {
    detail::require_invertible(A, "commutator");
    detail::require_invertible(B, "commutator");
    return zmul(zmul(zmul(A, B), zinv(A)), zinv(B));
}

// ((A*B)*C) * (A*(B*C))^-1
[[nodiscard]] inline ZornMatrix associator(const ZornMatrix& A, const ZornMatrix& B,
                                           const ZornMatrix& C) {
    detail::require_invertible(A, "associator");
    detail::require_invertible(B, "associator");
    detail::require_invertible(C, "associator");
    return zmul(zmul(zmul(A, B), C), zinv(zmul(A, zmul(B, C))));
}

struct MoufangReport {
    bool left_alternative = false;   // (AA)B == A(AB)
    bool right_alternative = false;  // A(BB) == (AB)B
    bool flexible = false;           // (AB)A == A(BA)
    bool moufang = false;            // ((AB)A)C == A(B(AC))

    [[nodiscard]] bool all() const {
        return left_alternative && right_alternative && flexible && moufang;
    }
};

[[nodiscard]] inline MoufangReport moufang_report(const ZornMatrix& A, const ZornMatrix& B,
                                                  const ZornMatrix& C) {
    detail::require_invertible(A, "moufang_report");
    detail::require_invertible(B, "moufang_report");
    detail::require_invertible(C, "moufang_report");
    MoufangReport r;
    r.left_alternative = zmul(zmul(A, A), B) == zmul(A, zmul(A, B));
    r.right_alternative = zmul(A, zmul(B, B)) == zmul(zmul(A, B), B);
    r.flexible = zmul(zmul(A, B), A) == zmul(A, zmul(B, A));
    r.moufang = zmul(zmul(zmul(A, B), A), C) == zmul(A, zmul(B, zmul(A, C)));
    return r;
}

}  // namespace zorn
