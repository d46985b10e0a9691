#pragma once

/**
 * Subloop analysis inside a FiniteLoop: generated subloops, cosets, the
 * relative Lagrange property, normality, commutator/associator subloops,
 * power subloops, and the finite images of the level-n congruence subloops
 * and their (n, s) variants.
 *
 * All heavy checks work on element indices with dense coset-id arrays: right
 * cosets are deduplicated once per universe element, after which both the
 * Lagrange condition and the two translation conditions of normality reduce
 * to constant-time id comparisons per product.  Witnesses are reported as
 * the first violating pair when universe elements are scanned in canonical
 * order.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zorn/errors.hpp"
#include "zorn/quotient.hpp"

namespace zorn {

// ============================================================================
// SubloopSet
// ============================================================================

enum class ClosureStatus {
    certified_closed,  // contains I, closed under mul and inv
    partial,           // a closed lower bound obtained by sampling
};

struct SubloopSet {
    FiniteLoop parent;
    std::vector<std::uint32_t> members;  // ascending element indices
    ClosureStatus status = ClosureStatus::certified_closed;

    [[nodiscard]] std::size_t size() const { return members.size(); }
    [[nodiscard]] bool contains(std::uint32_t i) const {
        return std::binary_search(members.begin(), members.end(), i);
    }
};

namespace detail {

inline void require_certified(const SubloopSet& s, const char* who) {
    if (s.status != ClosureStatus::certified_closed)
        throw zorn_error(errc::precondition_violated,
                         std::string(who) + " requires a certified-closed subloop");
}

inline void require_same_parent(const SubloopSet& a, const SubloopSet& b, const char* who) {
    if (!(a.parent == b.parent))
        throw zorn_error(errc::modulus_mismatch,
                         std::string(who) + " requires subloops of the same loop");
}

// Worklist closure.  The first `base` entries of `list` may be declared an
// already-closed subloop, in which case pairs inside that prefix are skipped.
[[nodiscard]] inline SubloopSet closure_impl(const FiniteLoop& L, std::vector<std::uint32_t> list,
                                             std::vector<std::uint8_t>& flag, std::size_t base) {
    for (std::size_t i = base; i < list.size(); ++i) {
        const std::uint32_t a = list[i];
        const auto maybe_add = [&](std::uint32_t e) {
            if (!flag[e]) {
                flag[e] = 1;
                list.push_back(e);
            }
        };
        maybe_add(L.inv(a));
        for (std::size_t j = 0; j <= i; ++j) {
            const std::uint32_t b = list[j];
            maybe_add(L.mul(a, b));
            maybe_add(L.mul(b, a));
        }
    }
    std::sort(list.begin(), list.end());
    return {L, std::move(list), ClosureStatus::certified_closed};
}

}  // namespace detail

/// Smallest subloop containing the seed: contains I, closed under mul and inv.
[[nodiscard]] inline SubloopSet closure(const FiniteLoop& L,
                                        const std::vector<std::uint32_t>& seed) {
    std::vector<std::uint8_t> flag(L.order(), 0);
    std::vector<std::uint32_t> list{0};
    flag[0] = 1;
    for (const std::uint32_t s : seed) {
        if (s >= L.order())
            throw zorn_error(errc::precondition_violated, "seed index outside the loop");
        if (!flag[s]) {
            flag[s] = 1;
            list.push_back(s);
        }
    }
    return detail::closure_impl(L, std::move(list), flag, 0);
}

/// The whole loop as a certified subloop view.
[[nodiscard]] inline SubloopSet full_subloop(const FiniteLoop& L) {
    std::vector<std::uint32_t> all(L.order());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return {L, std::move(all), ClosureStatus::certified_closed};
}

// ============================================================================
// Cosets
// ============================================================================

enum class Side { left, right };

/// Right coset {h*x} or left coset {x*h}, as a sorted index set.
[[nodiscard]] inline std::vector<std::uint32_t> coset(const SubloopSet& H, std::uint32_t x,
                                                      Side side) {
    detail::require_certified(H, "coset");
    if (x >= H.parent.order())
        throw zorn_error(errc::precondition_violated, "coset element outside the loop");
    std::vector<std::uint32_t> out;
    out.reserve(H.size());
    for (const std::uint32_t h : H.members)
        out.push_back(side == Side::right ? H.parent.mul(h, x) : H.parent.mul(x, h));
    std::sort(out.begin(), out.end());
    return out;
}

// ============================================================================
// Lagrange property
// ============================================================================

struct LagrangeResult {
    bool ok = true;
    std::uint32_t h = FiniteLoop::npos;  // first violating pair: H(h*x) != Hx
    std::uint32_t x = FiniteLoop::npos;
};

namespace detail {

// Right-coset ids of every universe element, deduplicated by exact set
// comparison; cosets[id] is the sorted coset and reps[id] its first member
// in canonical order.  setid is indexed by parent element index.
struct CosetTable {
    std::vector<std::uint32_t> setid;
    std::vector<std::vector<std::uint32_t>> cosets;
    std::vector<std::uint32_t> reps;
};

[[nodiscard]] inline CosetTable right_coset_table(const FiniteLoop& L,
                                                  const std::vector<std::uint32_t>& universe,
                                                  const std::vector<std::uint32_t>& members) {
    CosetTable t;
    t.setid.assign(L.order(), FiniteLoop::npos);
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> c;
    for (const std::uint32_t x : universe) {
        c.clear();
        for (const std::uint32_t h : members) c.push_back(L.mul(h, x));
        std::sort(c.begin(), c.end());
        const auto [it, fresh] = ids.emplace(c, static_cast<std::uint32_t>(t.cosets.size()));
        if (fresh) {
            t.cosets.push_back(c);
            t.reps.push_back(x);
        }
        t.setid[x] = it->second;
    }
    return t;
}

[[nodiscard]] inline LagrangeResult lagrange_core(const FiniteLoop& L,
                                                  const std::vector<std::uint32_t>& universe,
                                                  const std::vector<std::uint32_t>& members,
                                                  CosetTable* table_out = nullptr) {
    CosetTable t = right_coset_table(L, universe, members);
    LagrangeResult r;
    for (const std::uint32_t h : members) {
        for (const std::uint32_t x : universe) {
            if (t.setid[L.mul(h, x)] != t.setid[x]) {
                r = {false, h, x};
                if (table_out) *table_out = std::move(t);
                return r;
            }
        }
    }
    if (table_out) *table_out = std::move(t);
    return r;
}

}  // namespace detail

/// Checks H(h*x) == Hx for all h in H and x in the universe F.
[[nodiscard]] inline LagrangeResult lagrange_check(const SubloopSet& F, const SubloopSet& H) {
    detail::require_certified(F, "lagrange_check");
    detail::require_certified(H, "lagrange_check");
    detail::require_same_parent(F, H, "lagrange_check");
    for (const std::uint32_t h : H.members)
        if (!F.contains(h))
            throw zorn_error(errc::precondition_violated, "subloop is not inside the universe");
    return detail::lagrange_core(F.parent, F.members, H.members);
}

[[nodiscard]] inline LagrangeResult lagrange_check(const FiniteLoop& L, const SubloopSet& H) {
    return lagrange_check(full_subloop(L), H);
}

/// Number of distinct right cosets; requires the Lagrange property.
[[nodiscard]] inline std::size_t index_or_cosets(const SubloopSet& F, const SubloopSet& H) {
    detail::require_certified(F, "index_or_cosets");
    detail::require_certified(H, "index_or_cosets");
    detail::require_same_parent(F, H, "index_or_cosets");
    detail::CosetTable t;
    const LagrangeResult r = detail::lagrange_core(F.parent, F.members, H.members, &t);
    if (!r.ok) throw lagrange_error(r.h, r.x);
    if (t.cosets.size() * H.size() != F.size())
        throw std::logic_error("internal: cosets do not tile the universe");
    return t.cosets.size();
}

[[nodiscard]] inline std::size_t index_or_cosets(const FiniteLoop& L, const SubloopSet& H) {
    return index_or_cosets(full_subloop(L), H);
}

// ============================================================================
// Normality
// ============================================================================

struct NormalityResult {
    bool ok = true;
    // 1: xH != Hx.  2: (xy)H != x(yH).  3: H(xy) != (Hx)y.
    int condition = 0;
    std::uint32_t x = FiniteLoop::npos;
    std::uint32_t y = FiniteLoop::npos;
};

/**
 * Checks the three set equalities xH = Hx, (xy)H = x(yH), H(xy) = (Hx)y over
 * the universe F.  The pair conditions are decided through the right-coset
 * partition: once cosets coincide with left cosets and are h-translation
 * stable, (xy)H = x(yH) holds iff every translate x*C of a coset stays
 * inside one coset, and symmetrically for H(xy) = (Hx)y; witnesses are
 * mapped back to explicit violating pairs.
 */
[[nodiscard]] inline NormalityResult normality_check(const SubloopSet& F, const SubloopSet& H) {
    detail::require_certified(F, "normality_check");
    detail::require_certified(H, "normality_check");
    detail::require_same_parent(F, H, "normality_check");
    const FiniteLoop& L = F.parent;
    for (const std::uint32_t h : H.members)
        if (!F.contains(h))
            throw zorn_error(errc::precondition_violated, "subloop is not inside the universe");

    // H = {I} and H = F are normal outright (all three equalities collapse).
    if (H.size() == 1 || H.size() == F.size()) return {};

    // The translation scans touch ~2|F|^2 products; once that dwarfs the
    // order^2 build cost, the dense table pays for itself.
    if (2.0 * F.size() * F.size() >= static_cast<double>(L.order()) * L.order()) L.warm_cache();

    // Condition 1: xH = Hx elementwise.
    {
        std::vector<std::uint32_t> l, r;
        for (const std::uint32_t x : F.members) {
            l.clear();
            r.clear();
            for (const std::uint32_t h : H.members) {
                l.push_back(L.mul(x, h));
                r.push_back(L.mul(h, x));
            }
            std::sort(l.begin(), l.end());
            std::sort(r.begin(), r.end());
            if (l != r) return {false, 1, x, x};
        }
    }

    detail::CosetTable t = detail::right_coset_table(L, F.members, H.members);

    // Translation stability of the partition; a failure is an instance of
    // condition 3 with x = h (since Hh = H, so (Hh)y = Hy).
    for (const std::uint32_t h : H.members)
        for (const std::uint32_t y : F.members)
            if (t.setid[L.mul(h, y)] != t.setid[y]) return {false, 3, h, y};

    const std::size_t ncos = t.cosets.size();
    std::vector<std::uint32_t> target(ncos);

    // Condition 2: x * C must land inside a single coset for every coset C.
    for (const std::uint32_t x : F.members) {
        for (std::size_t id = 0; id < ncos; ++id) target[id] = t.setid[L.mul(x, t.reps[id])];
        for (const std::uint32_t c : F.members)
            if (t.setid[L.mul(x, c)] != target[t.setid[c]]) return {false, 2, x, t.reps[t.setid[c]]};
    }

    // Condition 3: C * y must land inside a single coset.
    for (const std::uint32_t y : F.members) {
        for (std::size_t id = 0; id < ncos; ++id) target[id] = t.setid[L.mul(t.reps[id], y)];
        for (const std::uint32_t c : F.members)
            if (t.setid[L.mul(c, y)] != target[t.setid[c]]) return {false, 3, t.reps[t.setid[c]], y};
    }
    return {};
}

[[nodiscard]] inline NormalityResult normality_check(const FiniteLoop& L, const SubloopSet& H) {
    return normality_check(full_subloop(L), H);
}

// ============================================================================
// Derived and power subloops
// ============================================================================

/**
 * Subloop generated by all commutators [a,b] and associators [a,b,c] of S.
 * Pairs are always exhausted; triples are exhausted when |S|^3 fits the
 * multiplication budget, otherwise sampled to a fixpoint (ten quiet epochs)
 * and the result is flagged partial — a certified-closed lower bound.
 */
[[nodiscard]] inline SubloopSet derived_subloop(const SubloopSet& S) {
    detail::require_certified(S, "derived_subloop");
    const FiniteLoop& L = S.parent;
    std::vector<std::uint8_t> flag(L.order(), 0);
    std::vector<std::uint32_t> gens{0};
    flag[0] = 1;
    const auto maybe_add = [&](std::uint32_t e) {
        if (!flag[e]) {
            flag[e] = 1;
            gens.push_back(e);
        }
    };

    std::vector<std::uint32_t> inv_of(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) inv_of[i] = L.inv(S.members[i]);

    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < S.size(); ++j) {
            const std::uint32_t ab = L.mul(S.members[i], S.members[j]);
            maybe_add(L.mul(L.mul(ab, inv_of[i]), inv_of[j]));
        }

    const auto associator_of = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        const std::uint32_t lhs = L.mul(L.mul(a, b), c);
        const std::uint32_t rhs = L.mul(a, L.mul(b, c));
        return L.mul(lhs, L.inv(rhs));
    };

    const double budget = 3e8;
    const double cube = static_cast<double>(S.size()) * S.size() * S.size();
    bool exhaustive = cube <= budget;
    if (exhaustive) {
        for (const std::uint32_t a : S.members)
            for (const std::uint32_t b : S.members) {
                const std::uint32_t ab = L.mul(a, b);
                for (const std::uint32_t c : S.members) {
                    const std::uint32_t rhs = L.mul(a, L.mul(b, c));
                    maybe_add(L.mul(L.mul(ab, c), L.inv(rhs)));
                }
            }
    } else {
        std::mt19937_64 rng(0x5EEDBA5EULL);
        std::uniform_int_distribution<std::size_t> pick(0, S.size() - 1);
        int quiet = 0;
        while (quiet < 10) {
            const std::size_t before = gens.size();
            for (int it = 0; it < 1 << 18; ++it)
                maybe_add(associator_of(S.members[pick(rng)], S.members[pick(rng)],
                                        S.members[pick(rng)]));
            quiet = gens.size() == before ? quiet + 1 : 0;
        }
    }

    SubloopSet out = detail::closure_impl(L, std::move(gens), flag, 0);
    if (!exhaustive) out.status = ClosureStatus::partial;
    return out;
}

/// Subloop generated by the s-th powers of S (powers are unambiguous).
[[nodiscard]] inline SubloopSet power_closure(const SubloopSet& S, const BigInt& s) {
    detail::require_certified(S, "power_closure");
    if (s < 1) throw zorn_error(errc::precondition_violated, "power_closure requires s >= 1");
    std::vector<std::uint32_t> gens;
    gens.reserve(S.size());
    for (const std::uint32_t a : S.members) gens.push_back(S.parent.pow(a, s));
    return closure(S.parent, gens);
}

// ============================================================================
// Kernels and congruence images
// ============================================================================

/// {A in L : A == I mod d} — the image of the level-d congruence subloop.
[[nodiscard]] inline SubloopSet kernel_subloop(const FiniteLoop& L, std::int64_t d) {
    if (d < 1 || L.modulus() % d != 0)
        throw zorn_error(errc::not_divisor,
                         "level " + std::to_string(d) + " does not divide " +
                             std::to_string(L.modulus()),
                         "{\"d\":" + std::to_string(d) + ",\"m\":" + std::to_string(L.modulus()) +
                             "}");
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < L.order(); ++i)
        if (L.is_congruent_identity(i, d)) members.push_back(i);
    const BigInt expected = index_gamma(L.modulus()) / index_gamma(d);
    if (BigInt(members.size()) != expected)
        throw std::logic_error("internal: kernel size disagrees with the index ratio");
    return {L, std::move(members), ClosureStatus::certified_closed};
}

/**
 * Image of the (n, s) subloop in the mod-m quotient: the closure of the
 * commutator-associator subloop of K together with all s-th powers of K,
 * where K is the image of the level-n congruence subloop.
 */
[[nodiscard]] inline SubloopSet gamma_ns_image(const FiniteLoop& L, std::int64_t n,
                                               const BigInt& s) {
    if (n < 1 || s < 1)
        throw zorn_error(errc::precondition_violated, "gamma_ns_image requires n, s >= 1");
    const SubloopSet K = kernel_subloop(L, n);  // validates that n divides the modulus
    const SubloopSet D = derived_subloop(K);
    std::vector<std::uint32_t> gens = D.members;
    for (const std::uint32_t a : K.members) gens.push_back(L.pow(a, s));
    SubloopSet out = closure(L, gens);
    out.status = D.status;
    return out;
}

[[nodiscard]] inline SubloopSet gamma_ns_image(std::int64_t m, std::int64_t n, const BigInt& s) {
    if (m < 1) throw zorn_error(errc::precondition_violated, "gamma_ns_image requires m >= 1");
    return gamma_ns_image(enumerate_sll(m), n, s);
}

// ============================================================================
// Lattice scans
// ============================================================================

/// Intersection of two subloops of the same loop.
[[nodiscard]] inline SubloopSet intersect(const SubloopSet& A, const SubloopSet& B) {
    detail::require_same_parent(A, B, "intersect");
    std::vector<std::uint32_t> out;
    std::set_intersection(A.members.begin(), A.members.end(), B.members.begin(), B.members.end(),
                          std::back_inserter(out));
    const bool certified = A.status == ClosureStatus::certified_closed &&
                           B.status == ClosureStatus::certified_closed;
    return {A.parent, std::move(out),
            certified ? ClosureStatus::certified_closed : ClosureStatus::partial};
}

/// All distinct cyclic subloops <a>, sorted by (size, members).
[[nodiscard]] inline std::vector<SubloopSet> cyclic_subloops(const FiniteLoop& L) {
    std::set<std::vector<std::uint32_t>> found;
    for (std::uint32_t a = 0; a < L.order(); ++a) {
        std::vector<std::uint32_t> orb{0};
        for (std::uint32_t acc = a; acc != 0; acc = L.mul(acc, a)) orb.push_back(acc);
        std::sort(orb.begin(), orb.end());
        found.insert(std::move(orb));
    }
    std::vector<SubloopSet> out;
    out.reserve(found.size());
    for (const auto& m : found) out.push_back({L, m, ClosureStatus::certified_closed});
    std::sort(out.begin(), out.end(), [](const SubloopSet& a, const SubloopSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.members < b.members;
    });
    return out;
}

/**
 * The full subloop lattice, by breadth-first closure of S + one generator.
 * Guarded to loops of order <= 512; the target use is the order-120 loop
 * mod 2, whose lattice is desk scale.
 */
[[nodiscard]] inline std::vector<SubloopSet> all_subloops(const FiniteLoop& L) {
    if (L.order() > 512)
        throw zorn_error(errc::too_large,
                         "subloop lattice scan capped at order 512",
                         "{\"order\":" + std::to_string(L.order()) + "}");
    std::set<std::vector<std::uint32_t>> found;
    std::deque<std::vector<std::uint32_t>> work;
    {
        SubloopSet trivial = closure(L, {});
        found.insert(trivial.members);
        work.push_back(std::move(trivial.members));
    }
    while (!work.empty()) {
        const std::vector<std::uint32_t> S = std::move(work.front());
        work.pop_front();
        for (std::uint32_t g = 1; g < L.order(); ++g) {
            if (std::binary_search(S.begin(), S.end(), g)) continue;
            std::vector<std::uint8_t> flag(L.order(), 0);
            for (const std::uint32_t s : S) flag[s] = 1;
            std::vector<std::uint32_t> list = S;
            list.push_back(g);
            flag[g] = 1;
            SubloopSet T = detail::closure_impl(L, std::move(list), flag, S.size());
            if (found.insert(T.members).second) work.push_back(std::move(T.members));
        }
    }
    std::vector<SubloopSet> out;
    out.reserve(found.size());
    for (const auto& m : found) out.push_back({L, m, ClosureStatus::certified_closed});
    std::sort(out.begin(), out.end(), [](const SubloopSet& a, const SubloopSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.members < b.members;
    });
    return out;
}

}  // namespace zorn
