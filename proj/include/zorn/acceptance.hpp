#pragma once

/**
 * End-to-end verification suite.  Twelve numbered criteria pin exact values
 * and run bulk property scans over the exact algebra, the factorization
 * certificates, the level-splitting machinery and the finite quotients; a
 * handful of slower exhaustive sweeps sit behind the `slow` flag.  Every
 * criterion prints a single PASS/FAIL line with its runtime, and all random
 * sampling is seeded, so a run is reproducible bit for bit.
 */

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zorn/zorn.hpp"

namespace zorn::acceptance {

struct Outcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

using Check = std::pair<bool, std::string>;

// ----------------------------------------------------------------------------
// Random element builders (deterministic given the engine state)
// ----------------------------------------------------------------------------

/// One of the fifteen determinant-one building blocks U(+-e_j), L(+-e_j), T_j.
[[nodiscard]] inline ZornMatrix random_unit_generator(std::mt19937_64& rng) {
    const int kind = static_cast<int>(rng() % 15);
    const int j = kind % 3 + 1;
    const BigInt sign = (rng() & 1) != 0 ? 1 : -1;
    if (kind < 6) return generator(GeneratorTag::upper(axis_vec(j, sign)));
    if (kind < 12) return generator(GeneratorTag::lower(axis_vec(j, sign)));
    return generator(GeneratorTag::T(j));
}

[[nodiscard]] inline bool entries_within(const ZornMatrix& A, const BigInt& cap) {
    const auto ok = [&](const BigInt& v) { return v >= -cap && v <= cap; };
    return ok(A.a) && ok(A.b) && ok(A.x[0]) && ok(A.x[1]) && ok(A.x[2]) && ok(A.y[0]) &&
           ok(A.y[1]) && ok(A.y[2]);
}

/// Invertible integer element with entries in [-9, 9], built as a short
/// product of unit generators (rejection keeps the entry bound exact).
[[nodiscard]] inline ZornMatrix random_small_invertible(std::mt19937_64& rng) {
    for (;;) {
        ZornMatrix A = identity();
        const int k = 3 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) A = zmul(A, random_unit_generator(rng));
        if (entries_within(A, 9)) return A;
    }
}

/// Unit-determinant element of Z/mZ with uniform components.
[[nodiscard]] inline ZornMatrix random_mod_invertible(std::mt19937_64& rng, std::int64_t m) {
    const Modulus mod = Modulus::mod(m);
    for (;;) {
        Vec3 x, y;
        for (int c = 0; c < 3; ++c) {
            x[c] = BigInt(static_cast<std::int64_t>(rng() % m));
            y[c] = BigInt(static_cast<std::int64_t>(rng() % m));
        }
        ZornMatrix A = zmat(BigInt(static_cast<std::int64_t>(rng() % m)), x, y,
                            BigInt(static_cast<std::int64_t>(rng() % m)), mod);
        if (is_gll(A)) return A;
    }
}

/// Arbitrary (not necessarily invertible) element of the given ring.
[[nodiscard]] inline ZornMatrix random_any(std::mt19937_64& rng, std::int64_t m) {
    const auto comp = [&]() {
        if (m == 0) return BigInt(static_cast<std::int64_t>(rng() % 199)) - 99;
        return BigInt(static_cast<std::int64_t>(rng() % m));
    };
    Vec3 x, y;
    for (int c = 0; c < 3; ++c) {
        x[c] = comp();
        y[c] = comp();
    }
    return zmat(comp(), x, y, comp(), m == 0 ? Modulus::integers() : Modulus::mod(m));
}

/// Level-n congruence element as a 12-step product of level-n upper/lower
/// elementaries and embedded unipotents over random axes.
[[nodiscard]] inline ZornMatrix random_congruence(std::mt19937_64& rng, const BigInt& n) {
    ZornMatrix A = identity();
    for (int i = 0; i < 12; ++i) {
        const int j = static_cast<int>(rng() % 3) + 1;
        BigInt k = BigInt(static_cast<int>(rng() % 4)) - 2;
        if (k == 0) k = 2;
        ZornMatrix F = identity();
        switch (rng() % 4) {
            case 0: F = generator(GeneratorTag::upper(axis_vec(j, k * n))); break;
            case 1: F = generator(GeneratorTag::lower(axis_vec(j, k * n))); break;
            case 2: F = generator(GeneratorTag::embedded_sl2(j, 1, k * n, 0, 1)); break;
            default: F = generator(GeneratorTag::embedded_sl2(j, 1, 0, k * n, 1)); break;
        }
        A = zmul(A, F);
    }
    return A;
}

/// Unital level-q element: corner 1, vectors in q[-4,4]^3, closing scalar.
[[nodiscard]] inline ZornMatrix random_unital(std::mt19937_64& rng, const BigInt& q) {
    Vec3 u, v;
    for (int c = 0; c < 3; ++c) {
        u[c] = q * (BigInt(static_cast<int>(rng() % 9)) - 4);
        v[c] = q * (BigInt(static_cast<int>(rng() % 9)) - 4);
    }
    return zmat(1, u, v, 1 + dot(u, v));
}

// ----------------------------------------------------------------------------
// Certificate tree inspection
// ----------------------------------------------------------------------------

template <class Fn>
inline void walk_leaves(const ExprPtr& t, Fn&& fn) {
    if (const auto* g = std::get_if<GeneratorTag>(&t->node)) {
        fn(*g);
        return;
    }
    if (const auto* m = std::get_if<MulNode>(&t->node)) {
        walk_leaves(m->l, fn);
        walk_leaves(m->r, fn);
        return;
    }
    const auto& c = std::get<ConjNode>(t->node);
    walk_leaves(c.inner, fn);
}

/// Every leaf is an axis-aligned elementary with entries in nZ.
[[nodiscard]] inline bool leaves_axis_elementary(const ExprPtr& t, const BigInt& n) {
    bool ok = true;
    walk_leaves(t, [&](const GeneratorTag& g) {
        if (g.kind != TagKind::upper && g.kind != TagKind::lower) {
            ok = false;
            return;
        }
        int nonzero = 0;
        for (int c = 0; c < 3; ++c) {
            if (g.v[c] % n != 0) ok = false;
            if (g.v[c] != 0) ++nonzero;
        }
        if (nonzero > 1) ok = false;
    });
    return ok;
}

/// Decomposition leaf contract: level-n elementaries or embedded leaves
/// congruent to the identity mod n.
[[nodiscard]] inline bool leaves_decomposition_contract(const ExprPtr& t, const BigInt& n) {
    bool ok = true;
    walk_leaves(t, [&](const GeneratorTag& g) {
        if (g.kind == TagKind::upper || g.kind == TagKind::lower) {
            for (int c = 0; c < 3; ++c)
                if (g.v[c] % n != 0) ok = false;
            return;
        }
        if (g.kind != TagKind::sl2) {
            ok = false;
            return;
        }
        if (reduce_mod(generator(g), n) != identity(Modulus::mod(n))) ok = false;
    });
    return ok;
}

struct EmbeddedCount {
    int embedded = 0;
    int off_axis1 = 0;
};

[[nodiscard]] inline EmbeddedCount count_embedded(const ExprPtr& t) {
    EmbeddedCount n;
    walk_leaves(t, [&](const GeneratorTag& g) {
        if (g.kind == TagKind::sl2) {
            ++n.embedded;
            if (g.j != 1) ++n.off_axis1;
        }
    });
    return n;
}

}  // namespace detail

// ============================================================================
// The suite
// ============================================================================

class Suite {
  public:
    explicit Suite(std::ostream& os, bool slow = false) : os_(os), slow_(slow) {}

    /// Runs every criterion (plus the slow sweeps when enabled) and returns
    /// the outcomes; one line per criterion is streamed as it finishes.
    [[nodiscard]] std::vector<Outcome> run() {
        results_.clear();
        criterion(1, "product-reproduction", [this] { return c1(); });
        criterion(2, "quotient-orders", [this] { return c2(); });
        criterion(3, "crt-isomorphism", [this] { return c3(); });
        criterion(4, "moufang-identities", [this] { return c4(); });
        criterion(5, "det-multiplicativity", [this] { return c5(); });
        criterion(6, "unital-roundtrip", [this] { return c6(); });
        criterion(7, "congruence-roundtrip", [this] { return c7(); });
        criterion(8, "level-splitting", [this] { return c8(); });
        criterion(9, "kernel-index", [this] { return c9(); });
        criterion(10, "relative-lagrange", [this] { return c10(); });
        criterion(11, "diassociativity", [this] { return c11(); });
        criterion(12, "ns-containments", [this] { return c12(); });
        if (slow_) {
            criterion(13, "slow-box-sweep", [this] { return s1(); });
            criterion(14, "slow-sl2-sweep", [this] { return s2(); });
            criterion(15, "slow-derived-closure", [this] { return s3(); });
        }
        return results_;
    }

  private:
    std::ostream& os_;
    bool slow_;
    std::vector<Outcome> results_;
    std::optional<FiniteLoop> l4_;  // shared between the two mod-4 criteria

    using clock = std::chrono::steady_clock;

    void criterion(int id, const char* name, const std::function<detail::Check()>& fn) {
        Outcome o;
        o.id = id;
        o.name = name;
        const auto t0 = clock::now();
        try {
            auto [pass, detail] = fn();
            o.pass = pass;
            o.detail = std::move(detail);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        o.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        std::ostringstream line;
        line << (o.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << std::setfill('0') << o.id
             << std::setfill(' ') << ' ' << std::left << std::setw(22) << o.name << std::right
             << std::fixed << std::setprecision(3) << std::setw(8) << o.seconds << " s  "
             << o.detail;
        os_ << line.str() << '\n' << std::flush;
        results_.push_back(std::move(o));
    }

    // --- 1: pinned three-factor product ------------------------------------
    detail::Check c1() {
        const ZornMatrix m1 = zmat(1, axis_vec(1), axis_vec(1), 2);
        const ZornMatrix m2 = generator(GeneratorTag::lower(axis_vec(1)));
        const ZornMatrix m3 = zmat(0, Vec3{1, 1, 0}, Vec3{0, -1, 1}, 0);
        const ZornMatrix expected = zmat(0, Vec3{2, 3, 2}, Vec3{0, -3, 4}, 3);
        const auto t0 = clock::now();
        const ZornMatrix got = zmul(m1, zmul(m2, m3));
        const double dt = std::chrono::duration<double>(clock::now() - t0).count();
        const bool ok = got == expected && dt < 1e-3;
        std::ostringstream d;
        d << "A(BC) == Z[0|(2,3,2)|(0,-3,4)|3]: " << (got == expected ? "yes" : "NO") << ", "
          << std::scientific << std::setprecision(1) << dt << " s";
        return {ok, d.str()};
    }

    // --- 2: enumerated orders match the closed index formula ----------------
    detail::Check c2() {
        const std::int64_t pinned[7] = {0, 1, 120, 2160, 15360, 78000, 259200};
        for (std::int64_t m = 1; m <= 9; ++m) {
            const FiniteLoop L = enumerate_sll(m);
            if (BigInt(L.order()) != index_gamma(m))
                return {false, "order mismatch at modulus " + std::to_string(m)};
            if (m <= 6 && L.order() != static_cast<std::size_t>(pinned[m]))
                return {false, "pinned order mismatch at modulus " + std::to_string(m)};
        }
        return {true, "orders equal the index formula for moduli 1..9 (120, 2160, 15360, ...)"};
    }

    // --- 3: componentwise reduction is a loop isomorphism -------------------
    detail::Check c3() {
        const bool ok = crt_iso_check(2, 3);
        return {ok, std::string("mod-6 loop ~ mod-2 x mod-3 on all 259200 elements: ") +
                        (ok ? "yes" : "NO")};
    }

    // --- 4: alternative/flexible/Moufang identities -------------------------
    detail::Check c4() {
        std::mt19937_64 rng(0xA11CE704u);
        for (int i = 0; i < 10000; ++i) {
            const ZornMatrix A = detail::random_small_invertible(rng);
            const ZornMatrix B = detail::random_small_invertible(rng);
            const ZornMatrix C = detail::random_small_invertible(rng);
            if (!moufang_report(A, B, C).all())
                return {false, "identity failed over the integers at sample " + std::to_string(i)};
        }
        for (std::int64_t m = 2; m <= 12; ++m)
            for (int i = 0; i < 10000; ++i) {
                const ZornMatrix A = detail::random_mod_invertible(rng, m);
                const ZornMatrix B = detail::random_mod_invertible(rng, m);
                const ZornMatrix C = detail::random_mod_invertible(rng, m);
                if (!moufang_report(A, B, C).all())
                    return {false, "identity failed mod " + std::to_string(m) + " at sample " +
                                       std::to_string(i)};
            }
        return {true, "left/right alternative, flexible, Moufang on 10^4 triples x 12 rings"};
    }

    // --- 5: determinant is multiplicative -----------------------------------
    detail::Check c5() {
        std::mt19937_64 rng(0xDE7E04u);
        const std::int64_t rings[12] = {0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
        for (const std::int64_t m : rings)
            for (int i = 0; i < 10000; ++i) {
                const ZornMatrix A = detail::random_any(rng, m);
                const ZornMatrix B = detail::random_any(rng, m);
                const Modulus mod = A.mod;
                if (zdet(zmul(A, B)) != mod.canonical(zdet(A) * zdet(B)))
                    return {false, "det(AB) != det(A)det(B) in ring " + std::to_string(m)};
            }
        return {true, "det(AB) == det(A)det(B) on 10^4 pairs x 12 rings"};
    }

    // --- 6: unital factorization round-trip ---------------------------------
    detail::Check c6() {
        std::mt19937_64 rng(0xFAC704u);
        for (int q = 1; q <= 4; ++q)
            for (int i = 0; i < 1000; ++i) {
                const ZornMatrix A = detail::random_unital(rng, q);
                const ExprPtr t = factor_unital(A, q);
                if (eval(t) != A)
                    return {false, "round-trip failed at level " + std::to_string(q)};
                if (!detail::leaves_axis_elementary(t, q))
                    return {false, "leaf off axis or below level " + std::to_string(q)};
            }
        return {true, "eval(factor_unital(A,q)) == A, axis leaves in qZ, 10^3 x levels 1..4"};
    }

    // --- 7: congruence decomposition round-trip -----------------------------
    detail::Check c7() {
        std::mt19937_64 rng(0xDEC0704u);
        for (int n = 1; n <= 4; ++n)
            for (int i = 0; i < 1000; ++i) {
                const ZornMatrix A = detail::random_congruence(rng, n);
                const ExprPtr t = decompose_congruence(A, n);
                if (eval(t) != A || !detail::leaves_decomposition_contract(t, n))
                    return {false, "decomposition contract failed at level " + std::to_string(n)};
                const ExprPtr s = split_gamma1_delta(A, n);
                const auto cnt = detail::count_embedded(s);
                if (eval(s) != A || cnt.embedded > 1 || cnt.off_axis1 != 0)
                    return {false, "split form kept " + std::to_string(cnt.embedded) +
                                       " embedded leaves at level " + std::to_string(n)};
            }
        return {true, "round-trip + leaf contract, split keeps <= 1 embedded leaf, 10^3 x 4 levels"};
    }

    // --- 8: two-level splitting ---------------------------------------------
    detail::Check c8() {
        std::mt19937_64 rng(0x3017704u);
        const std::pair<int, int> pairs[3] = {{2, 3}, {3, 4}, {2, 5}};
        for (int i = 0; i < 200; ++i) {
            const auto [n1, n2] = pairs[i % 3];
            const ZornMatrix A = detail::random_congruence(rng, n1);
            const WohlfahrtSplit w = wohlfahrt_split(A, n1, n2);
            if (zmul(eval(w.b_tree), w.c) != A)
                return {false, "B*C != A for levels (" + std::to_string(n1) + "," +
                                   std::to_string(n2) + ")"};
            if (!certify_level(w.b_tree, n1)) return {false, "B tree not certified"};
            if (reduce_mod(w.c, n2) != identity(Modulus::mod(n2)))
                return {false, "C not congruent to the identity"};
        }
        return {true, "A == eval(B)*C with B level-n1 certified, C == I mod n2, 200 samples"};
    }

    // --- 9: congruence kernel in the mod-4 quotient -------------------------
    detail::Check c9() {
        l4_.emplace(enumerate_sll(4));
        const SubloopSet K = kernel_subloop(*l4_, 2);
        if (K.size() != 128) return {false, "kernel has " + std::to_string(K.size()) + " elements"};
        const NormalityResult nr = normality_check(*l4_, K);
        if (!nr.ok) return {false, "kernel fails normality condition " + std::to_string(nr.condition)};
        const LagrangeResult lr = lagrange_check(*l4_, K);
        if (!lr.ok) return {false, "kernel fails the Lagrange property"};
        const std::size_t idx = index_or_cosets(*l4_, K);
        if (idx != 120) return {false, "index " + std::to_string(idx) + " != 120"};
        return {true, "|kernel| == 128, normal, Lagrange, index == 120"};
    }

    // --- 10: relative Lagrange property in the mod-2 quotient ---------------
    detail::Check c10() {
        const FiniteLoop L2 = enumerate_sll(2);
        const std::vector<SubloopSet> all = all_subloops(L2);
        const std::vector<SubloopSet> cyclic = cyclic_subloops(L2);
        std::size_t good_h = 0, pairs = 0;
        for (const SubloopSet& H : all) {
            if (!lagrange_check(L2, H).ok) continue;
            ++good_h;
            for (const SubloopSet& F : cyclic) {
                ++pairs;
                if (!lagrange_check(F, intersect(H, F)).ok)
                    return {false, "H of size " + std::to_string(H.size()) +
                                       " meets a cyclic F without the Lagrange property"};
            }
        }
        return {true, std::to_string(all.size()) + " subloops, " + std::to_string(good_h) +
                          " Lagrange-ok; all " + std::to_string(pairs) +
                          " (F, H cap F) pairs inherit the property"};
    }

    // --- 11: diassociativity and two pinned brackets ------------------------
    detail::Check c11() {
        const ZornMatrix s1 = generator(GeneratorTag::upper(axis_vec(1)));
        const ZornMatrix s2 = generator(GeneratorTag::upper(axis_vec(2)));
        const ZornMatrix low1 = generator(GeneratorTag::lower(axis_vec(1)));
        if (commutator(s1, s2) != generator(GeneratorTag::lower(axis_vec(3, 2))))
            return {false, "[S1,S2] != LowerElementary(2 e3)"};
        if (associator(s1, s2, low1) != zmat(1, Vec3{0, -2, 0}, Vec3{0, 0, -1}, 1))
            return {false, "[S1,S2,L1] != Z[1|(0,-2,0)|(0,0,-1)|1]"};
        std::mt19937_64 rng(0xD1A5704u);
        const ZornMatrix id = identity();
        for (int i = 0; i < 10000; ++i) {
            const ZornMatrix A = detail::random_small_invertible(rng);
            const ZornMatrix B = detail::random_small_invertible(rng);
            if (associator(A, A, B) != id || associator(A, B, A) != id ||
                associator(B, A, A) != id)
                return {false, "two-generator associator nonzero at sample " + std::to_string(i)};
        }
        return {true, "[A,A,B] == [A,B,A] == [B,A,A] == I on 10^4 pairs; pinned brackets match"};
    }

    // --- 12: finite-quotient containments for the (n, s) subloop ------------
    detail::Check c12() {
        if (!l4_) l4_.emplace(enumerate_sll(4));
        const FiniteLoop& L = *l4_;
        const SubloopSet G = gamma_ns_image(L, 2, 3);
        if (G.status != ClosureStatus::certified_closed) return {false, "image not certified"};

        // Level-6 elementaries reduce to the level-2 ones mod 4; together with
        // normality of the image this bounds the whole normal closure.
        for (int mask = 1; mask < 8; ++mask)
            for (int low = 0; low < 2; ++low) {
                const Vec3 v{mask & 1 ? 2 : 0, mask & 2 ? 2 : 0, mask & 4 ? 2 : 0};
                const ZornMatrix g = reduce_mod(
                    generator(low != 0 ? GeneratorTag::lower(v) : GeneratorTag::upper(v)), 4);
                if (!G.contains(L.index_of(g)))
                    return {false, "a level-6 elementary image escapes the (2,3) image"};
            }
        const NormalityResult nr = normality_check(L, G);
        if (!nr.ok) return {false, "(2,3) image is not normal in the mod-4 loop"};

        // Level-8 elementaries vanish mod 4, so their closure is the trivial
        // subloop; it must land inside the derived component.
        const SubloopSet K = kernel_subloop(L, 2);
        const SubloopSet D = derived_subloop(K);
        for (int j = 1; j <= 3; ++j) {
            const ZornMatrix g = reduce_mod(generator(GeneratorTag::upper(axis_vec(j, 8))), 4);
            if (g != identity(Modulus::mod(4)) || !D.contains(L.index_of(g)))
                return {false, "a level-8 elementary image escapes the derived component"};
        }

        const DeltaJoin join = delta_level_join(6, 8);
        if (join.d != 2) return {false, "join level gcd(6,8) != 2"};
        const Vec3 xs[5] = {axis_vec(1), axis_vec(2), axis_vec(3), {1, 2, 3}, {-4, 5, -6}};
        for (const Vec3& x : xs)
            if (!verify_delta_join_certificate(6, 8, x))
                return {false, "join exponent identity failed"};
        return {true, "|image| == " + std::to_string(G.size()) +
                          ", contains the level-6 closure; level-8 image trivial; join gcd == 2"};
    }

    // --- slow: exhaustive small-box decomposition sweep ---------------------
    detail::Check s1() {
        std::int64_t total = 0;
        for (int a = -2; a <= 2; ++a)
            for (int x1 = -2; x1 <= 2; ++x1)
                for (int x2 = -2; x2 <= 2; ++x2)
                    for (int x3 = -2; x3 <= 2; ++x3)
                        for (int y1 = -2; y1 <= 2; ++y1)
                            for (int y2 = -2; y2 <= 2; ++y2)
                                for (int y3 = -2; y3 <= 2; ++y3)
                                    for (int b = -2; b <= 2; ++b) {
                                        if (a * b - (x1 * y1 + x2 * y2 + x3 * y3) != 1) continue;
                                        const ZornMatrix A =
                                            zmat(a, Vec3{x1, x2, x3}, Vec3{y1, y2, y3}, b);
                                        const ExprPtr t = decompose_congruence(A, 1);
                                        if (eval(t) != A) return {false, "round-trip failed"};
                                        ++total;
                                    }
        return {true, "all " + std::to_string(total) +
                          " determinant-one elements in [-2,2]^8 decompose at level 1"};
    }

    // --- slow: exhaustive 2x2 word sweep ------------------------------------
    detail::Check s2() {
        std::int64_t total = 0;
        for (int p = -20; p <= 20; ++p)
            for (int q = -20; q <= 20; ++q)
                for (int r = -20; r <= 20; ++r)
                    for (int s = -20; s <= 20; ++s) {
                        if (p * s - q * r != 1) continue;
                        const SL2Word w = sl2_factor({p, q, r, s});  // self-verifying
                        (void)w;
                        ++total;
                    }
        return {true, "all " + std::to_string(total) +
                          " determinant-one 2x2 matrices in [-20,20] factor into S/T words"};
    }

    // --- slow: derived closure of the whole mod-2 quotient ------------------
    detail::Check s3() {
        const FiniteLoop L2 = enumerate_sll(2);
        const SubloopSet D = derived_subloop(full_subloop(L2));
        const bool ok = D.status == ClosureStatus::certified_closed && D.size() == 120;
        return {ok, "commutator-associator closure of the order-120 loop has size " +
                        std::to_string(D.size()) + " (exhaustive)"};
    }
};

/// Convenience wrapper: runs the suite, prints a summary, returns the number
/// of failed criteria (0 on full success).
[[nodiscard]] inline int run_suite(std::ostream& os, bool slow = false) {
    Suite suite(os, slow);
    const std::vector<Outcome> results = suite.run();
    int failures = 0;
    for (const Outcome& o : results)
        if (!o.pass) ++failures;
    double total = 0.0;
    for (const Outcome& o : results) total += o.seconds;
    std::ostringstream line;
    line << (failures == 0 ? "PASSED" : "FAILED") << ": " << (results.size() - failures) << "/"
         << results.size() << " criteria in " << std::fixed << std::setprecision(1) << total
         << " s";
    os << line.str() << '\n' << std::flush;
    return failures;
}

}  // namespace zorn::acceptance
